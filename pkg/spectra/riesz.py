"""
riesz.py

Certification of finite vector families {x_1, ..., x_N} ⊂ C^d against the
equivalent descriptions of a Riesz sequence:

  (i)   x_n = U·e_n for a bounded operator U with bounded inverse on its range,
  (ii)  A·Σ|c_n|² ≤ ‖Σ c_n x_n‖² ≤ B·Σ|c_n|² with 0 < A ≤ B,
  (iii) the Gram matrix is bounded and invertible.

Everything is read off the Gram spectrum: since ‖Σ c_n x_n‖² = c*·G·c, the
optimal frame bounds are the extreme eigenvalues of G. Infinite sequences are
only ever analysed through finite windows.

Gabriel Braun, 2026
"""

import logging
import math
from enum import Enum

import numpy as np
import numpy.typing as npt
import pydantic as pyd

from spectra.errors import DimensionMismatch, NotOrthonormal, NotPositiveSemidefinite
from spectra.linalg import (
    ComplexMatrix,
    MatrixField,
    as_matrix,
    as_vector,
    hermitian_eig,
    identity,
)

logger = logging.getLogger(__name__)

DEGENERATE_THRESHOLD = 1e-8
RANK_THRESHOLD = 1e-10
PSD_SLACK = 1e-10
ONB_TOLERANCE = 1e-10


class Verdict(str, Enum):
    RIESZ_SEQUENCE = "RieszSequence"
    DEGENERATE = "Degenerate"


# ======================================================================
# DATA MODELS
# ======================================================================
class VectorFamily(pyd.BaseModel):
    """N ≤ d vectors of C^d, each stored as a d×1 matrix."""

    model_config = pyd.ConfigDict(arbitrary_types_allowed=True, frozen=True)

    ambient_dim: pyd.PositiveInt
    vectors: list[MatrixField] = pyd.Field(min_length=1)

    @pyd.model_validator(mode="after")
    def _columns_fit(self) -> "VectorFamily":
        for i, v in enumerate(self.vectors):
            if v.shape != (self.ambient_dim, 1):
                raise ValueError(
                    f"Vector {i} has shape {v.shape}, expected ({self.ambient_dim}, 1)."
                )
        if len(self.vectors) > self.ambient_dim:
            raise ValueError(
                f"{len(self.vectors)} vectors exceed ambient dimension {self.ambient_dim}."
            )
        return self

    @classmethod
    def from_columns(cls, columns: npt.ArrayLike) -> "VectorFamily":
        m = as_matrix(columns)
        return cls(ambient_dim=m.shape[0], vectors=[m[:, [j]] for j in range(m.shape[1])])

    @property
    def window(self) -> int:
        return len(self.vectors)

    def matrix(self) -> ComplexMatrix:
        """d×N matrix whose columns are the x_n."""
        return np.hstack(self.vectors)

    def synthesize(self, c: npt.ArrayLike) -> ComplexMatrix:
        """Σ c_n·x_n."""
        c = as_vector(c)
        if c.shape[0] != self.window:
            raise DimensionMismatch(f"{c.shape[0]} coefficients for {self.window} vectors.")
        return self.matrix() @ c


class RieszCertificate(pyd.BaseModel):
    """
    Gram analysis of one finite window. `condition` is B/A, infinite for a
    degenerate window; `rank == window` is completeness at the window.
    """

    model_config = pyd.ConfigDict(arbitrary_types_allowed=True, frozen=True)

    gram: MatrixField
    lower_bound_A: float = pyd.Field(ge=0.0)
    upper_bound_B: float = pyd.Field(ge=0.0)
    bessel_constant: float = pyd.Field(ge=0.0)
    synthesis_u: MatrixField
    r_factor: MatrixField
    verdict: Verdict
    condition: float
    window: int
    ambient_dim: int
    rank: int
    degenerate_threshold: float
    characterization_gap: float
    r_residual: float

    @property
    def complete(self) -> bool:
        return self.rank == self.window

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.RIESZ_SEQUENCE


# ======================================================================
# OPERATIONS
# ======================================================================
def gram_matrix(fam: VectorFamily) -> ComplexMatrix:
    """
    G = U*·U, the matrix of the quadratic form c ↦ ‖Σ c_n x_n‖².

    Entry (i, j) is ⟨x_j, x_i⟩; the transpose (= conjugate) of the table
    ⟨x_i, x_j⟩, with the same spectrum.
    """
    x = fam.matrix()
    g = x.conj().T @ x
    return 0.5 * (g + g.conj().T)


def frame_bounds(fam: VectorFamily) -> tuple[float, float]:
    """Optimal (A, B) as the extreme Gram eigenvalues."""
    eigenvalues, _ = hermitian_eig(gram_matrix(fam))
    return max(float(eigenvalues[0]), 0.0), max(float(eigenvalues[-1]), 0.0)


def frame_operator(fam: VectorFamily) -> ComplexMatrix:
    """S = Σ x_n·x_n*."""
    x = fam.matrix()
    return x @ x.conj().T


def bessel_constant(fam: VectorFamily) -> float:
    """Least B with Σ|⟨x, x_n⟩|² ≤ B·‖x‖², i.e. λ_max(S)."""
    eigenvalues, _ = hermitian_eig(frame_operator(fam))
    return max(float(eigenvalues[-1]), 0.0)


def bessel_ratio(fam: VectorFamily, x: npt.ArrayLike) -> float:
    """Σ|⟨x, x_n⟩|² / ‖x‖²."""
    x = as_vector(x)
    coefficients = fam.matrix().conj().T @ x
    return float(np.sum(np.abs(coefficients) ** 2) / np.sum(np.abs(x) ** 2))


def _onb_matrix(onb: "VectorFamily | npt.ArrayLike") -> ComplexMatrix:
    e = onb.matrix() if isinstance(onb, VectorFamily) else as_matrix(onb)
    defect = float(np.linalg.norm(e.conj().T @ e - identity(e.shape[1]), "fro"))
    if defect > ONB_TOLERANCE:
        raise NotOrthonormal(f"‖E*E − I‖_F = {defect:.3e} exceeds {ONB_TOLERANCE:.0e}.")
    return e


def synthesis_operator(
    fam: VectorFamily, onb: "VectorFamily | npt.ArrayLike | None" = None
) -> ComplexMatrix:
    """
    U with U·e_n = x_n, the columns holding x_n in the coordinates of `onb`
    (default: the standard basis).
    """
    x = fam.matrix()
    if onb is None:
        return x
    e = _onb_matrix(onb)
    if e.shape[0] != fam.ambient_dim:
        raise DimensionMismatch(
            f"Basis lives in C^{e.shape[0]}, family in C^{fam.ambient_dim}."
        )
    return e.conj().T @ x


def r_factorization(gram: npt.ArrayLike) -> ComplexMatrix:
    """Hermitian square root R = Q·diag(√λ)·Q* with R*R = G."""
    gram = as_matrix(gram)
    eigenvalues, q = hermitian_eig(gram)
    floor = -PSD_SLACK * float(np.linalg.norm(gram, "fro"))
    if eigenvalues[0] < floor:
        raise NotPositiveSemidefinite(
            f"Gram eigenvalue {eigenvalues[0]:.3e} below {floor:.3e}."
        )
    root = np.sqrt(np.clip(eigenvalues, 0.0, None))
    return (q * root) @ q.conj().T


def riesz_certify(
    fam: VectorFamily, degenerate_threshold: float = DEGENERATE_THRESHOLD
) -> RieszCertificate:
    """
    Assemble the certificate of one window. The verdict is `RieszSequence`
    iff λ_min(G)/λ_max(G) exceeds `degenerate_threshold`; degenerate windows
    are a verdict, not an error.
    """
    gram = gram_matrix(fam)
    eigenvalues, _ = hermitian_eig(gram)
    lower, upper = max(float(eigenvalues[0]), 0.0), max(float(eigenvalues[-1]), 0.0)
    normalized = lower / upper if upper > 0.0 else 0.0
    verdict = (
        Verdict.RIESZ_SEQUENCE if normalized > degenerate_threshold else Verdict.DEGENERATE
    )

    u = synthesis_operator(fam)
    r = r_factorization(gram)
    singular = np.linalg.svd(u, compute_uv=False)
    characterization_gap = max(
        abs(lower - float(singular[-1]) ** 2),
        abs(upper - float(singular[0]) ** 2),
    )
    r_residual = float(np.linalg.norm(r.conj().T @ r - gram, "fro"))
    rank = int(np.sum(eigenvalues >= RANK_THRESHOLD * upper)) if upper > 0.0 else 0

    logger.info(
        "window %d: A=%.6g B=%.6g verdict=%s", fam.window, lower, upper, verdict.value
    )
    return RieszCertificate(
        gram=gram,
        lower_bound_A=lower,
        upper_bound_B=upper,
        bessel_constant=bessel_constant(fam),
        synthesis_u=u,
        r_factor=r,
        verdict=verdict,
        condition=upper / lower if verdict is Verdict.RIESZ_SEQUENCE else math.inf,
        window=fam.window,
        ambient_dim=fam.ambient_dim,
        rank=rank,
        degenerate_threshold=degenerate_threshold,
        characterization_gap=characterization_gap,
        r_residual=r_residual,
    )


# ======================================================================
# WINDOWS
# ======================================================================
def shifted_pair_family(n: int) -> VectorFamily:
    """x_k = e_k + e_{k+1}, k = 1..n, in C^{n+1}."""
    if n < 1:
        raise ValueError(f"Window size must be ≥ 1, got {n}.")
    x = np.zeros((n + 1, n), dtype=np.complex128)
    x[np.arange(n), np.arange(n)] = 1.0
    x[np.arange(1, n + 1), np.arange(n)] = 1.0
    return VectorFamily.from_columns(x)


def shifted_pair_lower_bound(n: int) -> float:
    """Closed form A(n) = 2 + 2cos(nπ/(n+1)) of the window above."""
    return 2.0 + 2.0 * math.cos(n * math.pi / (n + 1))


def transfer_operator(source: VectorFamily, target: VectorFamily) -> ComplexMatrix:
    """
    V with V·x_n = y_n on span{x_n}, vanishing on its complement:
    V = U_y·U_x⁺. Its norm is at most sqrt(B_y / A_x).
    """
    if source.window != target.window:
        raise DimensionMismatch(
            f"Windows of {source.window} and {target.window} vectors."
        )
    return target.matrix() @ np.linalg.pinv(source.matrix())


def transfer_bound(source: VectorFamily, target: VectorFamily) -> float:
    """sqrt(B_target / A_source); infinite for a degenerate source."""
    a_source, _ = frame_bounds(source)
    _, b_target = frame_bounds(target)
    return math.sqrt(b_target / a_source) if a_source > 0.0 else math.inf


def synthesis_pinv_norm(fam: VectorFamily) -> float:
    """‖U⁺‖ on the span, 1/sqrt(A) for a Riesz window."""
    return float(np.linalg.norm(np.linalg.pinv(fam.matrix()), 2))
