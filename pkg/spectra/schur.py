"""
schur.py

Schur triangularization U*·A·U = B.

Two construction paths are shipped:

  - "deflation": the inductive proof taken literally. Find one eigenpair
    (λ, x), complete x to a unitary V, conjugate, and recurse on the trailing
    (n−1)×(n−1) block.
  - "qr": Householder–Hessenberg reduction followed by Wilkinson-shifted QR
    sweeps, which produces the Schur form directly.

The first is the reference for small n and a cross-check of the second.
`char_poly_roots` is an independent eigenvalue oracle for n ≤ 8.

Gabriel Braun, 2026
"""

import logging
from enum import Enum
from typing import Callable, TypeVar

import numpy as np
import numpy.typing as npt
import pydantic as pyd
from scipy.optimize import linear_sum_assignment

from spectra.errors import CapExceeded, ConvergenceError
from spectra.linalg import (
    DEFAULT_TOLERANCE,
    ComplexMatrix,
    MatrixField,
    Tolerance,
    as_matrix,
    eigenpair,
    extend_to_unitary,
    identity,
    require_square,
    schur_qr,
    unitarity_defect,
)

logger = logging.getLogger(__name__)

ORACLE_MAX_N = 8

T = TypeVar("T")


class SchurMethod(str, Enum):
    QR = "qr"
    DEFLATION = "deflation"


# ======================================================================
# DATA MODEL
# ======================================================================
class SchurFactorization(pyd.BaseModel):
    """
    Unitary `u` and upper-triangular `b` with u*·A·u = b. The diagonal of `b`
    lists the eigenvalues of A with multiplicity, in no guaranteed order.
    """

    model_config = pyd.ConfigDict(arbitrary_types_allowed=True, frozen=True)

    u: MatrixField
    b: MatrixField
    source_norm: float = pyd.Field(ge=0.0)
    method: SchurMethod = SchurMethod.QR

    @pyd.model_validator(mode="after")
    def _square_pair(self) -> "SchurFactorization":
        require_square(self.u)
        if self.u.shape != self.b.shape:
            raise ValueError(f"u {self.u.shape} and b {self.b.shape} differ in shape.")
        return self

    @property
    def n(self) -> int:
        return self.u.shape[0]

    @property
    def eigenvalues(self) -> npt.NDArray[np.complex128]:
        return np.diag(self.b).copy()

    @property
    def unitarity_defect(self) -> float:
        return unitarity_defect(self.u)

    @property
    def lower_mass(self) -> float:
        """Largest strictly-lower entry of b in modulus."""
        lower = np.tril(self.b, k=-1)
        return float(np.max(np.abs(lower))) if self.n > 1 else 0.0

    def residual(self, a: npt.ArrayLike) -> float:
        """‖u*·A·u − b‖_F for the originating A."""
        a = as_matrix(a)
        return float(np.linalg.norm(self.u.conj().T @ a @ self.u - self.b, "fro"))

    def reconstruction_error(self, a: npt.ArrayLike) -> float:
        """‖u·b·u* − A‖_F."""
        a = as_matrix(a)
        return float(np.linalg.norm(self.u @ self.b @ self.u.conj().T - a, "fro"))


# ======================================================================
# CONSTRUCTION
# ======================================================================
def _schur_deflation(
    a: ComplexMatrix, tol: Tolerance, rng: np.random.Generator
) -> tuple[ComplexMatrix, ComplexMatrix]:
    n = a.shape[0]
    b = a.copy()
    u = identity(n)

    for k in range(n - 1):
        _, x = eigenpair(b[k:, k:], tol, rng)
        w = identity(n)
        w[k:, k:] = extend_to_unitary(x)
        b = w.conj().T @ b @ w
        u = u @ w

    return u, np.triu(b)


def schur_decompose(
    a: npt.ArrayLike,
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    method: SchurMethod | str = SchurMethod.QR,
    rng: np.random.Generator | None = None,
    retries: int = 3,
) -> SchurFactorization:
    """
    Schur factorization of a square matrix.

    A `ConvergenceError` from the eigen-iteration triggers up to `retries`
    restarts, each drawing fresh exceptional shifts from `rng`; the last
    error propagates once the budget is spent.

    Both paths work on A/‖A‖_F. A factorization whose residual
    ‖u*·A·u − b‖_F exceeds (tol.abs + tol.rel)·‖A‖_F counts as a failed
    attempt.
    """
    a = as_matrix(a)
    require_square(a)
    method = SchurMethod(method)
    rng = rng if rng is not None else np.random.default_rng(0)
    source_norm = float(np.linalg.norm(a, "fro"))
    scale = source_norm or 1.0
    bound = tol.threshold(1.0) * source_norm

    build = _schur_deflation if method is SchurMethod.DEFLATION else schur_qr

    def attempt() -> SchurFactorization:
        u, b = build(a / scale, tol, rng)
        factorization = SchurFactorization(
            u=u, b=scale * b, source_norm=source_norm, method=method
        )
        residual = factorization.residual(a)
        if residual > bound:
            raise ConvergenceError(f"Schur residual {residual:.3e} exceeds bound {bound:.3e}.")
        return factorization

    return _with_retries(attempt, retries, "Schur")


def find_eigenpair(
    a: npt.ArrayLike,
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    rng: np.random.Generator | None = None,
    retries: int = 3,
) -> tuple[complex, ComplexMatrix]:
    """`eigenpair` under the same restart policy as `schur_decompose`."""
    a = as_matrix(a)
    rng = rng if rng is not None else np.random.default_rng(0)
    return _with_retries(lambda: eigenpair(a, tol, rng), retries, "Eigenpair")


def _with_retries(fn: Callable[[], T], retries: int, label: str) -> T:
    last_error: ConvergenceError | None = None
    for attempt in range(retries + 1):
        try:
            return fn()
        except ConvergenceError as exc:
            logger.warning("%s attempt %d failed: %s", label, attempt + 1, exc)
            last_error = exc
    raise last_error


# ======================================================================
# CHARACTERISTIC-POLYNOMIAL ORACLE
# ======================================================================
def char_poly_coefficients(a: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    """
    Coefficients of det(λI − A), highest degree first, by the
    Faddeev–LeVerrier recursion.
    """
    a = as_matrix(a)
    n = require_square(a)
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[0] = 1.0
    m = np.zeros_like(a)
    for k in range(1, n + 1):
        m = a @ m + coeffs[k - 1] * identity(n)
        coeffs[k] = -np.trace(a @ m) / k
    return coeffs


def durand_kerner(
    coeffs: npt.ArrayLike,
    *,
    residual_tol: float = 1e-10,
    max_iter: int = 1000,
    polish: int = 3,
) -> npt.NDArray[np.complex128]:
    """
    All roots of the monic polynomial with `coeffs` (highest degree first) by
    simultaneous Weierstrass corrections.

    Stops when every root has relative residual
    |p(z)| / Σ|c_k||z|^(n−k) ≤ `residual_tol`, then runs `polish` more sweeps.
    """
    c = np.asarray(coeffs, dtype=np.complex128)
    c = c / c[0]
    n = c.size - 1
    if n == 0:
        return np.empty(0, dtype=np.complex128)

    radius = 1.0 + float(np.max(np.abs(c[1:])))
    z = radius * (0.4 + 0.9j) ** np.arange(n)
    abs_c = np.abs(c)

    def _sweep(z: np.ndarray) -> np.ndarray:
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            delta = np.polyval(c, z) / diff.prod(axis=1)
        # coincident approximations of a repeated root stay put
        return z - np.where(np.isfinite(delta), delta, 0.0)

    for _ in range(max_iter):
        z = _sweep(z)
        scale = np.polyval(abs_c, np.abs(z))
        if np.all(np.abs(np.polyval(c, z)) <= residual_tol * scale):
            for _ in range(polish):
                z = _sweep(z)
            return z

    raise ConvergenceError(f"Durand–Kerner did not converge in {max_iter} sweeps.")


def char_poly_roots(a: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    """Eigenvalues of A (n ≤ 8) as roots of its characteristic polynomial."""
    a = as_matrix(a)
    n = require_square(a)
    if n > ORACLE_MAX_N:
        raise CapExceeded(f"Polynomial oracle supports n ≤ {ORACLE_MAX_N}, got {n}.")
    return durand_kerner(char_poly_coefficients(a))


def multiset_distance(x: npt.ArrayLike, y: npt.ArrayLike) -> float:
    """
    Largest pairwise gap under the optimal matching of two equally sized
    multisets of complex numbers.
    """
    x = np.asarray(x, dtype=np.complex128).ravel()
    y = np.asarray(y, dtype=np.complex128).ravel()
    if x.size != y.size:
        raise ValueError(f"Multisets of size {x.size} and {y.size}.")
    if x.size == 0:
        return 0.0
    cost = np.abs(x[:, None] - y[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())
