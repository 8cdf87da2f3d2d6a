"""
linalg.py

Dense complex linear algebra underpinning every SPECTRA module: adjoints,
inner products, norms, Gram–Schmidt completion, Householder–Hessenberg
reduction, the shifted QR sweep and the Hermitian eigensolver.

Matrices are plain `numpy.ndarray` of dtype complex128; vectors are n×1
matrices. All functions are pure.

Gabriel Braun, 2026
"""

import cmath
import logging
from typing import Annotated, Iterable, Sequence, TypeAlias

import numpy as np
import numpy.typing as npt
import pydantic as pyd

from spectra.errors import (
    ConvergenceError,
    DependentVectors,
    DimensionMismatch,
    NonFiniteValue,
    NotHermitian,
    ZeroVector,
)

logger = logging.getLogger(__name__)

ComplexMatrix: TypeAlias = npt.NDArray[np.complex128]

# floor on the relative deflation test of the QR sweep
SWEEP_ULP = 8 * np.finfo(float).eps


# ======================================================================
# TOLERANCE
# ======================================================================
class Tolerance(pyd.BaseModel):
    """
    Mixed absolute/relative tolerance: a quantity passes when it is at most
    `abs + rel * scale`.
    """

    model_config = pyd.ConfigDict(frozen=True)

    abs: float = pyd.Field(default=1e-12, ge=0.0)
    rel: float = pyd.Field(default=1e-10, ge=0.0)

    @pyd.model_validator(mode="after")
    def _not_both_zero(self) -> "Tolerance":
        if self.abs == 0.0 and self.rel == 0.0:
            raise ValueError("Tolerance needs a positive absolute or relative part.")
        return self

    def threshold(self, scale: float = 0.0) -> float:
        return self.abs + self.rel * scale


DEFAULT_TOLERANCE = Tolerance()


# ======================================================================
# COERCION
# ======================================================================
def freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def as_matrix(data: npt.ArrayLike) -> ComplexMatrix:
    """
    Coerce `data` to a finite complex128 matrix; 1-D input becomes a column.
    """
    m = np.array(data, dtype=np.complex128)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionMismatch(f"Expected a non-empty matrix, got shape {m.shape}.")
    if not np.all(np.isfinite(m)):
        raise NonFiniteValue("Matrix contains NaN or Inf entries.")
    return m


def as_vector(data: npt.ArrayLike) -> ComplexMatrix:
    v = as_matrix(data)
    if v.shape[1] != 1:
        raise DimensionMismatch(f"Expected an n×1 vector, got shape {v.shape}.")
    return v


def _frozen_matrix(v: npt.ArrayLike) -> np.ndarray:
    return freeze(as_matrix(v))


# read-only complex matrix field for pydantic models
MatrixField = Annotated[np.ndarray, pyd.BeforeValidator(_frozen_matrix)]


def as_samples(data: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    """Coerce `data` to a finite 1-D complex128 array of samples."""
    s = np.array(data, dtype=np.complex128)
    if s.ndim == 2 and 1 in s.shape:
        s = s.ravel()
    if s.ndim != 1:
        raise DimensionMismatch(f"Expected a 1-D sample array, got shape {s.shape}.")
    if not np.all(np.isfinite(s)):
        raise NonFiniteValue("Samples contain NaN or Inf values.")
    return s


def _frozen_samples(v: npt.ArrayLike) -> np.ndarray:
    return freeze(as_samples(v))


SampleField = Annotated[np.ndarray, pyd.BeforeValidator(_frozen_samples)]


def require_square(m: ComplexMatrix) -> int:
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"Expected a square matrix, got shape {m.shape}.")
    return m.shape[0]


def identity(n: int) -> ComplexMatrix:
    return np.eye(n, dtype=np.complex128)


# ======================================================================
# BASIC OPERATIONS
# ======================================================================
def adjoint(m: npt.ArrayLike) -> ComplexMatrix:
    """Conjugate transpose M*."""
    return as_matrix(m).conj().T


def inner_product(x: npt.ArrayLike, y: npt.ArrayLike) -> complex:
    """⟨x, y⟩ = Σ x_i·conj(y_i), linear in the first argument."""
    x, y = as_vector(x).ravel(), as_vector(y).ravel()
    if x.shape != y.shape:
        raise DimensionMismatch(f"Vectors of length {x.size} and {y.size}.")
    return complex(np.vdot(y, x))


def frobenius_norm(m: npt.ArrayLike) -> float:
    return float(np.linalg.norm(as_matrix(m), "fro"))


def operator_norm_est(m: npt.ArrayLike) -> float:
    """Largest singular value, as sqrt(λ_max(M*M))."""
    m = as_matrix(m)
    gram = m.conj().T @ m
    eigenvalues, _ = hermitian_eig(gram)
    return float(np.sqrt(max(eigenvalues[-1], 0.0)))


def unitarity_defect(u: npt.ArrayLike) -> float:
    """‖U*U − I‖_F."""
    u = as_matrix(u)
    return float(np.linalg.norm(u.conj().T @ u - identity(u.shape[1]), "fro"))


# ======================================================================
# GRAM–SCHMIDT
# ======================================================================
def _project_out(columns: Sequence[np.ndarray], v: np.ndarray) -> np.ndarray:
    # modified Gram–Schmidt, second pass re-orthogonalises
    for _ in range(2):
        for q in columns:
            v = v - q * np.vdot(q, v)
    return v


def orthonormalize(
    vectors: Iterable[npt.ArrayLike],
    *,
    drop_below: float = 1e-8,
    strict: bool = False,
    start: Sequence[np.ndarray] = (),
    limit: int | None = None,
) -> ComplexMatrix:
    """
    Orthonormalize `vectors` against the unit columns in `start` and against
    each other.

    A vector whose residual after projection is below `drop_below` times its
    own norm is skipped, or raises `DependentVectors` when `strict`. Stops
    once `limit` columns have been accepted. Returns the accepted columns
    (those of `start` first) as an n×k matrix.
    """
    accepted = [np.asarray(q, dtype=np.complex128).ravel() for q in start]
    for i, v in enumerate(vectors):
        if limit is not None and len(accepted) >= limit:
            break
        v = as_vector(v).ravel()
        scale = float(np.linalg.norm(v))
        r = _project_out(accepted, v)
        r_norm = float(np.linalg.norm(r))
        if scale == 0.0 or r_norm < drop_below * scale:
            if strict:
                raise DependentVectors(
                    f"Vector {i} has residual {r_norm:.3e} after projection "
                    f"(norm {scale:.3e}); the set is linearly dependent."
                )
            continue
        accepted.append(r / r_norm)

    if not accepted:
        raise ZeroVector("No vector survived orthonormalization.")
    return np.column_stack(accepted)


def extend_to_unitary(x: npt.ArrayLike) -> ComplexMatrix:
    """
    Unitary V whose first column is x/‖x‖, completed from the standard basis.
    """
    x = as_vector(x)
    n = x.shape[0]
    x_norm = float(np.linalg.norm(x))
    if x_norm == 0.0:
        raise ZeroVector("Cannot extend the zero vector to an orthonormal basis.")

    v = orthonormalize(
        (e for e in identity(n).T),
        start=[x.ravel() / x_norm],
        limit=n,
    )
    if v.shape[1] != n:
        raise ConvergenceError(
            f"Completion produced {v.shape[1]} of {n} orthonormal columns."
        )
    return v


# ======================================================================
# HESSENBERG + SHIFTED QR
# ======================================================================
def hessenberg(a: npt.ArrayLike) -> tuple[ComplexMatrix, ComplexMatrix]:
    """
    Householder reduction A = Q·H·Q* with H upper Hessenberg.

    Returns: (H, Q)
    """
    h = as_matrix(a).copy()
    n = require_square(h)
    q = identity(n)

    for k in range(n - 2):
        x = h[k + 1 :, k]
        alpha = float(np.linalg.norm(x))
        if alpha == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * alpha
        v /= np.linalg.norm(v)

        h[k + 1 :, :] -= 2.0 * np.outer(v, v.conj() @ h[k + 1 :, :])
        h[:, k + 1 :] -= 2.0 * np.outer(h[:, k + 1 :] @ v, v.conj())
        q[:, k + 1 :] -= 2.0 * np.outer(q[:, k + 1 :] @ v, v.conj())
        h[k + 2 :, k] = 0.0

    return h, q


def _wilkinson_shift(w: np.ndarray) -> complex:
    """Eigenvalue of the trailing 2×2 block closest to its last diagonal entry."""
    a, b, c, d = complex(w[0, 0]), complex(w[0, 1]), complex(w[1, 0]), complex(w[1, 1])
    mean = 0.5 * (a + d)
    disc = cmath.sqrt(0.25 * (a - d) ** 2 + b * c)
    mu1, mu2 = mean + disc, mean - disc
    return mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2


def schur_qr(
    a: npt.ArrayLike,
    tol: Tolerance = DEFAULT_TOLERANCE,
    rng: np.random.Generator | None = None,
    *,
    max_sweeps: int = 30,
) -> tuple[ComplexMatrix, ComplexMatrix]:
    """
    Complex Schur form by Hessenberg reduction and Wilkinson-shifted QR.

    The subdiagonal entry h = H[l, l−1] is deflated when
    |h| ≤ tol.abs + min(tol.rel, SWEEP_ULP)·(|H[l−1, l−1]| + |H[l, l]|).
    Every tenth sweep without deflation uses a random exceptional shift
    drawn from `rng`. Raises `ConvergenceError` after `max_sweeps`·n sweeps.

    The sweep runs on A/‖A‖_F, so the deflation test is scale-invariant.

    Returns: (Z, T) with A = Z·T·Z*, Z unitary, T upper triangular.
    """
    a = as_matrix(a)
    n = require_square(a)
    rng = rng if rng is not None else np.random.default_rng(0)
    norm = frobenius_norm(a) or 1.0
    h, z = hessenberg(a / norm)

    rel = min(tol.rel, SWEEP_ULP)
    budget = max_sweeps * n
    sweeps = stalled = 0
    hi = n - 1

    while hi > 0:
        lo = hi
        while lo > 0:
            scale = abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])
            if abs(h[lo, lo - 1]) <= tol.abs + rel * scale:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1

        if lo == hi:
            hi -= 1
            stalled = 0
            continue

        sweeps += 1
        stalled += 1
        if sweeps > budget:
            raise ConvergenceError(
                f"Shifted QR did not converge within {budget} sweeps (n={n})."
            )

        if stalled % 10 == 0:
            kick = complex(rng.standard_normal(), rng.standard_normal())
            mu = h[hi, hi] + abs(h[hi, hi - 1]) * kick
            logger.debug("exceptional shift at row %d after %d sweeps", hi, stalled)
        else:
            mu = _wilkinson_shift(h[hi - 1 : hi + 1, hi - 1 : hi + 1])

        block = slice(lo, hi + 1)
        shift = mu * identity(hi - lo + 1)
        q, r = np.linalg.qr(h[block, block] - shift)
        h[block, block] = r @ q + shift
        h[block, hi + 1 :] = q.conj().T @ h[block, hi + 1 :]
        h[:lo, block] = h[:lo, block] @ q
        z[:, block] = z[:, block] @ q

    logger.debug("shifted QR converged in %d sweeps (n=%d)", sweeps, n)
    return z, norm * np.triu(h)


# ======================================================================
# EIGENSOLVERS
# ======================================================================
def eigenpair(
    a: npt.ArrayLike,
    tol: Tolerance = DEFAULT_TOLERANCE,
    rng: np.random.Generator | None = None,
) -> tuple[complex, ComplexMatrix]:
    """
    One eigenpair (λ, x) of A with ‖x‖ = 1 and
    ‖Ax − λx‖ ≤ tol.abs + tol.rel·‖A‖_F·‖x‖.

    The leading Schur vector is an eigenvector, so the pair is read off the
    QR sweep. Raises `ConvergenceError` when the sweep fails or the residual
    check does not pass; callers retry with a fresh `rng`.
    """
    a = as_matrix(a)
    require_square(a)
    z, t = schur_qr(a, tol, rng)

    lam = complex(t[0, 0])
    x = z[:, :1] / np.linalg.norm(z[:, :1])
    residual = float(np.linalg.norm(a @ x - lam * x))
    bound = tol.threshold(frobenius_norm(a))
    if residual > bound:
        raise ConvergenceError(
            f"Eigenpair residual {residual:.3e} exceeds bound {bound:.3e}."
        )
    return lam, x


def hermitian_eig(
    h: npt.ArrayLike, tol: Tolerance = DEFAULT_TOLERANCE
) -> tuple[npt.NDArray[np.float64], ComplexMatrix]:
    """
    Eigen-decomposition H = Q·diag(λ)·Q* of a Hermitian matrix.

    Returns: (eigenvalues ascending, unitary Q)
    """
    h = as_matrix(h)
    require_square(h)
    defect = float(np.linalg.norm(h - h.conj().T, "fro"))
    bound = tol.threshold(float(np.linalg.norm(h, "fro")))
    if defect > bound:
        raise NotHermitian(f"‖H − H*‖_F = {defect:.3e} exceeds {bound:.3e}.")

    eigenvalues, q = np.linalg.eigh(0.5 * (h + h.conj().T))
    return eigenvalues, q.astype(np.complex128)
