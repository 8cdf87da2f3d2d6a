"""
spectral.py

Normal operators and their eigenprojections.

A normal T is unitarily diagonalizable, and its Schur basis is already an
orthonormal eigenbasis. Grouping the Schur columns by (clustered)
eigenvalue yields the resolution

    T = Σ_λ λ·P_λ,        I = Σ_λ P_λ,

with P_λ the orthogonal projection onto the eigenspace ker(T − λI).

Gabriel Braun, 2026
"""

import logging
from typing import Callable, Sequence

import numpy as np
import numpy.typing as npt
import pydantic as pyd
from scipy.cluster.hierarchy import fcluster, linkage

from spectra.errors import ClusterAmbiguity, DimensionMismatch, NotNormal
from spectra.linalg import (
    DEFAULT_TOLERANCE,
    ComplexMatrix,
    MatrixField,
    Tolerance,
    as_matrix,
    as_vector,
    identity,
    orthonormalize,
    require_square,
)
from spectra.schur import schur_decompose

logger = logging.getLogger(__name__)

# clusters closer than this many radii are refused
AMBIGUITY_FACTOR = 10.0


# ======================================================================
# DATA MODEL
# ======================================================================
class SpectralDecomposition(pyd.BaseModel):
    """
    Distinct eigenvalues λ_i of a normal operator with parallel
    eigenprojections P_i and multiplicities. The columns of `eigenbasis`
    are an orthonormal eigenbasis, grouped cluster by cluster in the order
    of `eigenvalues`.
    """

    model_config = pyd.ConfigDict(arbitrary_types_allowed=True, frozen=True)

    eigenvalues: list[complex]
    projections: list[MatrixField]
    multiplicities: list[pyd.PositiveInt]
    eigenbasis: MatrixField
    cluster_radius: float = pyd.Field(ge=0.0)

    @pyd.model_validator(mode="after")
    def _parallel(self) -> "SpectralDecomposition":
        k = len(self.eigenvalues)
        if not (len(self.projections) == len(self.multiplicities) == k):
            raise ValueError("eigenvalues, projections and multiplicities differ in length.")
        n = require_square(self.eigenbasis)
        if sum(self.multiplicities) != n:
            raise ValueError(f"Multiplicities sum to {sum(self.multiplicities)}, not {n}.")
        return self

    @property
    def n(self) -> int:
        return self.eigenbasis.shape[0]

    def blocks(self) -> list[ComplexMatrix]:
        """Eigenbasis columns per eigenvalue."""
        edges = np.cumsum([0, *self.multiplicities])
        return [self.eigenbasis[:, i:j] for i, j in zip(edges[:-1], edges[1:])]

    def reconstruct(self) -> ComplexMatrix:
        """Σ λ·P_λ."""
        return functional_calculus(self, lambda lam: lam)

    # -------------------------------------------------------------- #
    # residual reports
    # -------------------------------------------------------------- #
    def resolution_defect(self) -> float:
        """‖Σ P − I‖_F."""
        total = sum(self.projections, start=np.zeros((self.n, self.n), complex))
        return float(np.linalg.norm(total - identity(self.n), "fro"))

    def idempotence_defects(self) -> list[float]:
        return [float(np.linalg.norm(p @ p - p, "fro")) for p in self.projections]

    def self_adjoint_defects(self) -> list[float]:
        return [float(np.linalg.norm(p.conj().T - p, "fro")) for p in self.projections]

    def trace_defects(self) -> list[float]:
        return [
            abs(complex(np.trace(p)) - m)
            for p, m in zip(self.projections, self.multiplicities)
        ]

    def orthogonality_defect(self) -> float:
        """max ‖P_i·P_j‖_F over i ≠ j."""
        worst = 0.0
        for i, p in enumerate(self.projections):
            for q in self.projections[i + 1 :]:
                worst = max(worst, float(np.linalg.norm(p @ q, "fro")))
        return worst

    def commutation_defects(self, t: npt.ArrayLike) -> list[float]:
        """‖T·P − P·T‖_F per projection."""
        t = as_matrix(t)
        return [float(np.linalg.norm(t @ p - p @ t, "fro")) for p in self.projections]


# ======================================================================
# NORMALITY
# ======================================================================
def normality_defect(t: npt.ArrayLike) -> float:
    """‖TT* − T*T‖_F."""
    t = as_matrix(t)
    require_square(t)
    ts = t.conj().T
    return float(np.linalg.norm(t @ ts - ts @ t, "fro"))


def is_normal(t: npt.ArrayLike, tol: Tolerance = DEFAULT_TOLERANCE) -> tuple[bool, float]:
    """
    Returns: (normal, defect) with normal iff defect ≤ tol.abs + tol.rel·‖T‖²_F.
    """
    t = as_matrix(t)
    defect = normality_defect(t)
    scale = float(np.linalg.norm(t, "fro")) ** 2
    return defect <= tol.threshold(scale), defect


def adjoint_norm_gap(t: npt.ArrayLike, x: npt.ArrayLike) -> float:
    """| ‖Tx‖ − ‖T*x‖ |, zero for normal T."""
    t, x = as_matrix(t), as_vector(x)
    return abs(float(np.linalg.norm(t @ x)) - float(np.linalg.norm(t.conj().T @ x)))


def adjoint_eigen_residual(
    t: npt.ArrayLike, lam: complex, v: npt.ArrayLike
) -> tuple[float, float]:
    """
    Returns: (‖Tv − λv‖, ‖T*v − conj(λ)v‖). For normal T both vanish together.
    """
    t, v = as_matrix(t), as_vector(v)
    if t.shape[1] != v.shape[0]:
        raise DimensionMismatch(f"Operator {t.shape} cannot act on vector {v.shape}.")
    lam = complex(lam)
    forward = float(np.linalg.norm(t @ v - lam * v))
    backward = float(np.linalg.norm(t.conj().T @ v - lam.conjugate() * v))
    return forward, backward


# ======================================================================
# PROJECTIONS
# ======================================================================
def projection_onto_span(vectors: Sequence[npt.ArrayLike]) -> ComplexMatrix:
    """
    Orthogonal projection P = Σ u_i·u_i* onto span(vectors), built from an
    orthonormalization of the input. Dependent input raises `DependentVectors`.
    """
    q = orthonormalize(vectors, strict=True)
    return q @ q.conj().T


def complement_projection(p: npt.ArrayLike) -> ComplexMatrix:
    """Projection onto the orthogonal complement of range(P)."""
    p = as_matrix(p)
    return identity(require_square(p)) - p


# ======================================================================
# SPECTRAL DECOMPOSITION
# ======================================================================
def _cluster(values: np.ndarray, radius: float) -> np.ndarray:
    """Single-linkage labels 0..k−1 of complex `values` at linkage `radius`."""
    if values.size == 1:
        return np.zeros(1, dtype=int)
    points = np.column_stack([values.real, values.imag])
    tree = linkage(points, method="single")
    return fcluster(tree, t=radius, criterion="distance") - 1


def _check_separation(values: np.ndarray, labels: np.ndarray, radius: float) -> None:
    gaps = np.abs(values[:, None] - values[None, :])
    gaps[labels[:, None] == labels[None, :]] = np.inf
    closest = float(gaps.min()) if gaps.size else np.inf
    if closest < AMBIGUITY_FACTOR * radius:
        raise ClusterAmbiguity(closest, radius)


def spectral_decompose(
    t: npt.ArrayLike,
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    rng: np.random.Generator | None = None,
) -> SpectralDecomposition:
    """
    Eigenprojection resolution T = Σ λ·P_λ of a normal operator.

    Raises `NotNormal` when the normality defect exceeds the tolerance and
    `ClusterAmbiguity` when two eigenvalue clusters are closer than ten
    cluster radii.
    """
    t = as_matrix(t)
    n = require_square(t)
    t_norm = float(np.linalg.norm(t, "fro"))

    normal, defect = is_normal(t, tol)
    if not normal:
        raise NotNormal(defect, tol.threshold(t_norm**2))

    factorization = schur_decompose(t, tol, rng=rng)
    diagonal = factorization.eigenvalues

    radius = max(tol.abs, tol.rel * t_norm * n)
    labels = _cluster(diagonal, radius)
    _check_separation(diagonal, labels, radius)

    groups = [np.flatnonzero(labels == k) for k in np.unique(labels)]
    means = [complex(diagonal[g].mean()) for g in groups]
    order = sorted(range(len(groups)), key=lambda i: (means[i].real, means[i].imag))
    logger.info("clustered %d eigenvalues into %d at radius %.3e", n, len(groups), radius)

    columns = [factorization.u[:, groups[i]] for i in order]
    return SpectralDecomposition(
        eigenvalues=[means[i] for i in order],
        projections=[q @ q.conj().T for q in columns],
        multiplicities=[len(groups[i]) for i in order],
        eigenbasis=np.hstack(columns),
        cluster_radius=radius,
    )


def functional_calculus(
    decomposition: SpectralDecomposition, fn: Callable[[complex], complex]
) -> ComplexMatrix:
    """Σ fn(λ)·P_λ."""
    n = decomposition.n
    out = np.zeros((n, n), dtype=np.complex128)
    for lam, p in zip(decomposition.eigenvalues, decomposition.projections):
        out += complex(fn(lam)) * p
    return out


def diagonalize(
    t: npt.ArrayLike,
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    rng: np.random.Generator | None = None,
) -> tuple[ComplexMatrix, ComplexMatrix]:
    """
    Unitary eigenbasis W of a normal T and the conjugated matrix W*·T·W,
    diagonal up to roundoff.

    Returns: (W, W*TW)
    """
    t = as_matrix(t)
    w = spectral_decompose(t, tol, rng=rng).eigenbasis
    return w, w.conj().T @ t @ w


def off_diagonal_mass(m: npt.ArrayLike) -> float:
    """Frobenius norm of the off-diagonal part."""
    m = as_matrix(m)
    return float(np.linalg.norm(m - np.diag(np.diag(m)), "fro"))
