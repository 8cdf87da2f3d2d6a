"""
Seeded generators of random test operators.

Every function takes an explicit `numpy.random.Generator`; nothing here
touches global random state.
"""

from typing import Sequence

import numpy as np

from spectra.linalg import ComplexMatrix


def random_matrix(rng: np.random.Generator, rows: int, cols: int | None = None) -> ComplexMatrix:
    """Entries with independent standard normal real and imaginary parts."""
    cols = rows if cols is None else cols
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_vector(rng: np.random.Generator, n: int) -> ComplexMatrix:
    return random_matrix(rng, n, 1)


def random_unitary(rng: np.random.Generator, n: int) -> ComplexMatrix:
    """Haar-distributed unitary: QR of a Ginibre matrix with the phases of R fixed."""
    q, r = np.linalg.qr(random_matrix(rng, n))
    d = np.diag(r)
    phases = np.where(d == 0, 1.0, d / np.abs(d))
    return q * phases


def random_hermitian(rng: np.random.Generator, n: int) -> ComplexMatrix:
    g = random_matrix(rng, n)
    return 0.5 * (g + g.conj().T)


def random_normal(
    rng: np.random.Generator, eigenvalues: Sequence[complex]
) -> tuple[ComplexMatrix, ComplexMatrix]:
    """
    Normal matrix T = V·diag(eigenvalues)·V* for a Haar-random unitary V.

    Returns: (T, V)
    """
    d = np.asarray(eigenvalues, dtype=np.complex128)
    v = random_unitary(rng, d.size)
    return (v * d) @ v.conj().T, v
