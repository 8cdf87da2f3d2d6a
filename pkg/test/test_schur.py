import numpy as np
import pytest
from numpy.testing import assert_allclose

from spectra.errors import CapExceeded, ConvergenceError
from spectra.linalg import eigenpair
from spectra.schur import (
    SchurFactorization,
    SchurMethod,
    char_poly_coefficients,
    char_poly_roots,
    durand_kerner,
    find_eigenpair,
    multiset_distance,
    schur_decompose,
)
from spectra.utils import random_matrix, random_normal


def _check_invariants(f: SchurFactorization, a: np.ndarray) -> None:
    a_norm = np.linalg.norm(a)
    assert f.unitarity_defect <= 1e-11
    assert f.lower_mass <= 1e-10 * a_norm
    assert f.residual(a) <= 1e-10 * a_norm
    assert f.reconstruction_error(a) <= 1e-10 * a_norm


# ----------------------------------------------------------------------
# examples
# ----------------------------------------------------------------------
@pytest.mark.parametrize("method", list(SchurMethod))
def test_diagonal(method):
    a = np.diag([1.0, 2.0, 3.0])
    f = schur_decompose(a, method=method)
    assert multiset_distance(f.eigenvalues, [1, 2, 3]) < 1e-14
    assert_allclose(np.abs(f.u) @ np.ones(3), np.ones(3), atol=1e-12)
    _check_invariants(f, a)


@pytest.mark.parametrize("method", list(SchurMethod))
def test_nilpotent(method):
    a = np.array([[0.0, 1.0], [0.0, 0.0]])
    f = schur_decompose(a, method=method)
    assert_allclose(f.eigenvalues, [0, 0], atol=1e-12)
    _check_invariants(f, a)


def test_factorization_is_frozen():
    f = schur_decompose(np.eye(2))
    with pytest.raises(ValueError):
        f.u[0, 0] = 2.0


def test_factorization_rejects_mismatched_shapes():
    with pytest.raises(ValueError):
        SchurFactorization(u=np.eye(2), b=np.eye(3), source_norm=1.0)


# ----------------------------------------------------------------------
# properties
# ----------------------------------------------------------------------
def test_random_reconstruction(rng):
    for _ in range(30):
        n = int(rng.integers(2, 65))
        a = random_matrix(rng, n)
        _check_invariants(schur_decompose(a, rng=rng), a)


def test_deflation_path_matches_qr(rng):
    for n in (2, 5, 9, 16):
        a = random_matrix(rng, n)
        f = schur_decompose(a, method="deflation", rng=rng)
        g = schur_decompose(a, method="qr", rng=rng)
        _check_invariants(f, a)
        assert multiset_distance(f.eigenvalues, g.eigenvalues) <= 1e-9


def test_oracle_agreement(rng):
    for n in range(2, 9):
        a = random_matrix(rng, n)
        f = schur_decompose(a, rng=rng)
        assert multiset_distance(f.eigenvalues, char_poly_roots(a)) <= 1e-8


def test_upper_triangular_input_keeps_diagonal(rng):
    a = np.triu(random_matrix(rng, 7))
    f = schur_decompose(a, rng=rng)
    assert multiset_distance(f.eigenvalues, np.diag(a)) <= 1e-10


def test_normal_input_gives_diagonal_schur_form(rng):
    t, _ = random_normal(rng, rng.standard_normal(10) + 1j * rng.standard_normal(10))
    f = schur_decompose(t, rng=rng)
    off = f.b - np.diag(np.diag(f.b))
    assert np.max(np.abs(off)) <= 1e-8 * np.linalg.norm(t)


@pytest.mark.parametrize("method", list(SchurMethod))
@pytest.mark.parametrize("scale", [1e-13, 1e-6, 1e8])
def test_scaled_input(rng, method, scale):
    a = random_matrix(rng, 5)
    f = schur_decompose(scale * a, method=method, rng=rng)
    g = schur_decompose(a, method=method, rng=rng)
    _check_invariants(f, scale * a)
    assert multiset_distance(f.eigenvalues / scale, g.eigenvalues) <= 1e-9


def test_zero_matrix():
    f = schur_decompose(np.zeros((3, 3)))
    assert_allclose(f.b, 0.0)
    assert f.unitarity_defect <= 1e-14


def test_inaccurate_factorization_is_rejected(rng, monkeypatch):
    def truncates(a, tol, rng):
        return np.eye(a.shape[0], dtype=complex), np.triu(a)

    monkeypatch.setattr("spectra.schur.schur_qr", truncates)
    with pytest.raises(ConvergenceError):
        schur_decompose(random_matrix(rng, 4), rng=rng, retries=1)


def test_retries_exhausted(rng, monkeypatch):
    calls = []

    def never_converges(a, tol, rng):
        calls.append(1)
        raise ConvergenceError("no sweeps left")

    monkeypatch.setattr("spectra.schur.schur_qr", never_converges)
    with pytest.raises(ConvergenceError):
        schur_decompose(random_matrix(rng, 6), rng=rng, retries=2)
    assert len(calls) == 3


# ----------------------------------------------------------------------
# characteristic-polynomial oracle
# ----------------------------------------------------------------------
def test_char_poly_coefficients():
    # det(λI − A) for A = [[0, −1], [1, 0]] is λ² + 1
    assert_allclose(char_poly_coefficients([[0, -1], [1, 0]]), [1, 0, 1], atol=1e-15)


@pytest.mark.parametrize(
    "a, roots",
    [
        (np.diag([1.0, 2.0]), [1, 2]),
        (np.array([[0.0, -1.0], [1.0, 0.0]]), [1j, -1j]),
        (
            np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=float),
            np.exp(2j * np.pi * np.arange(3) / 3),
        ),
    ],
)
def test_char_poly_roots_examples(a, roots):
    assert multiset_distance(char_poly_roots(a), roots) <= 1e-10


def test_char_poly_roots_cap(rng):
    with pytest.raises(CapExceeded):
        char_poly_roots(random_matrix(rng, 9))


def test_durand_kerner_repeated_root():
    # (z − 1)²(z + 2)
    roots = durand_kerner([1, 0, -3, 2])
    assert multiset_distance(roots, [1, 1, -2]) <= 1e-4


def test_multiset_distance_ignores_order():
    assert multiset_distance([1, 2j, -3], [-3, 1, 2j]) == 0.0
    with pytest.raises(ValueError):
        multiset_distance([1], [1, 2])


# ----------------------------------------------------------------------
# eigenpair restarts
# ----------------------------------------------------------------------
def test_find_eigenpair_retries(rng, monkeypatch):
    calls = []

    def flaky(a, tol, rng):
        calls.append(1)
        if len(calls) < 3:
            raise ConvergenceError("stalled")
        return eigenpair(a, tol, rng)

    monkeypatch.setattr("spectra.schur.eigenpair", flaky)
    a = random_matrix(rng, 5)
    lam, x = find_eigenpair(a, rng=rng)
    assert len(calls) == 3
    assert np.linalg.norm(a @ x - lam * x) <= 1e-10 * np.linalg.norm(a)


def test_find_eigenpair_gives_up(rng, monkeypatch):
    def never_converges(a, tol, rng):
        raise ConvergenceError("stalled")

    monkeypatch.setattr("spectra.schur.eigenpair", never_converges)
    with pytest.raises(ConvergenceError):
        find_eigenpair(random_matrix(rng, 3), rng=rng, retries=1)
