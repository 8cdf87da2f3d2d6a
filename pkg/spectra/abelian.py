"""
abelian.py

Finite abelian groups given explicitly as products Z_{N_1} × ... × Z_{N_k},
their dual groups and Fourier analysis on ℓ₂(G).

Elements and characters are integer coordinate tuples, enumerated in
lexicographic order; the group law is written additively per factor. The
character indexed by m is

    ζ_m(a) = exp(2πi·Σ_i m_i·a_i / N_i).

Character values are looked up in a table of L-th roots of unity,
L = lcm(N_i), from the integer phase Σ m_i·a_i·(L/N_i) mod L, so equal phases
give bit-identical values.

Gabriel Braun, 2026
"""

import logging
import math
from functools import lru_cache, reduce
from typing import Literal, Sequence, TypeAlias

import numpy as np
import numpy.typing as npt
import pydantic as pyd

from spectra.errors import CapExceeded, DimensionMismatch
from spectra.linalg import DEFAULT_TOLERANCE, ComplexMatrix, SampleField, Tolerance
from spectra.spectral import SpectralDecomposition, spectral_decompose

logger = logging.getLogger(__name__)

ENUMERATION_CAP = 10**6
TRANSFORM_CAP = 10**4
OPERATOR_CAP = 128

# entries of one character-table block
_BLOCK_ENTRIES = 1 << 22

GroupElement: TypeAlias = tuple[int, ...]
CharacterIndex: TypeAlias = tuple[int, ...]


@lru_cache(maxsize=8)
def unit_roots(order: int) -> npt.NDArray[np.complex128]:
    """
    exp(2πik/order) for k = 0..order−1, computed from the angle reduced to
    (−π, π] so that roots k and order−k are exact conjugates.
    """
    k = np.arange(order)
    k = np.where(2 * k > order, k - order, k)
    roots = np.exp(2j * np.pi * k / order)
    roots.flags.writeable = False
    return roots


# ======================================================================
# DATA MODELS
# ======================================================================
class FiniteAbelianGroup(pyd.BaseModel):
    """
    Z_{N_1} × ... × Z_{N_k}; an empty factor list is the trivial group.
    """

    model_config = pyd.ConfigDict(frozen=True)

    factor_orders: tuple[int, ...] = ()

    @pyd.field_validator("factor_orders")
    @classmethod
    def _orders_at_least_two(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        if any(n < 2 for n in v):
            raise ValueError(f"Cyclic factor orders must be ≥ 2, got {v}.")
        return v

    @pyd.model_validator(mode="after")
    def _within_cap(self) -> "FiniteAbelianGroup":
        if self.order > ENUMERATION_CAP:
            raise CapExceeded(f"|G| = {self.order} exceeds the group cap {ENUMERATION_CAP}.")
        return self

    @classmethod
    def cyclic(cls, n: int) -> "FiniteAbelianGroup":
        return cls(factor_orders=(n,))

    @classmethod
    def product(cls, *groups: "FiniteAbelianGroup") -> "FiniteAbelianGroup":
        return cls(factor_orders=tuple(n for g in groups for n in g.factor_orders))

    @property
    def rank(self) -> int:
        return len(self.factor_orders)

    @property
    def order(self) -> int:
        return math.prod(self.factor_orders)

    @property
    def exponent(self) -> int:
        """lcm of the factor orders: every character value is an exponent-th root of unity."""
        return reduce(math.lcm, self.factor_orders, 1)

    @property
    def identity(self) -> GroupElement:
        return (0,) * self.rank

    def __str__(self) -> str:
        if not self.factor_orders:
            return "Z_1"
        return " × ".join(f"Z_{n}" for n in self.factor_orders)

    # -------------------------------------------------------------- #
    # enumeration
    # -------------------------------------------------------------- #
    def elements(self, cap: int = ENUMERATION_CAP) -> npt.NDArray[np.int64]:
        """All elements as rows of an (|G|, rank) array, lexicographic."""
        if self.order > cap:
            raise CapExceeded(f"|G| = {self.order} exceeds enumeration cap {cap}.")
        if not self.factor_orders:
            return np.zeros((1, 0), dtype=np.int64)
        grid = np.indices(self.factor_orders, dtype=np.int64)
        return grid.reshape(self.rank, -1).T

    def index_of(self, coords: npt.ArrayLike) -> npt.NDArray[np.int64] | int:
        """Lexicographic position of one element (1-D) or many (rows)."""
        c = np.asarray(coords, dtype=np.int64)
        if not self.factor_orders:
            return 0 if c.ndim == 1 else np.zeros(c.shape[0], dtype=np.int64)
        flat = np.ravel_multi_index(tuple(np.atleast_2d(c).T), self.factor_orders)
        return int(flat[0]) if c.ndim == 1 else flat

    def coerce(self, coords: Sequence[int]) -> GroupElement:
        """Validate the shape of `coords` and reduce them mod N_i."""
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise DimensionMismatch(
                f"{len(coords)} coordinates given for a group with {self.rank} factors."
            )
        return tuple(c % n for c, n in zip(coords, self.factor_orders))

    def _phase_weights(self) -> npt.NDArray[np.int64]:
        exponent = self.exponent
        return np.array([exponent // n for n in self.factor_orders], dtype=np.int64)


class GroupSignal(pyd.BaseModel):
    """
    A function G → C as values in lexicographic element order. With
    `domain="dual"` the values are indexed by characters instead (the output
    of `fourier_transform`).
    """

    model_config = pyd.ConfigDict(arbitrary_types_allowed=True, frozen=True)

    group: FiniteAbelianGroup
    values: SampleField
    domain: Literal["group", "dual"] = "group"

    @pyd.model_validator(mode="after")
    def _length_matches_order(self) -> "GroupSignal":
        if self.values.size != self.group.order:
            raise ValueError(
                f"{self.values.size} values for a group of order {self.group.order}."
            )
        return self

    def norm_squared(self) -> float:
        """‖f‖² under the normalised inner product (dual signals: plain ℓ₂)."""
        energy = float(np.sum(np.abs(self.values) ** 2))
        return energy / self.group.order if self.domain == "group" else energy


# ======================================================================
# GROUP LAW
# ======================================================================
def group_op(g: FiniteAbelianGroup, a: Sequence[int], b: Sequence[int]) -> GroupElement:
    a, b = g.coerce(a), g.coerce(b)
    return tuple((x + y) % n for x, y, n in zip(a, b, g.factor_orders))


def group_inverse(g: FiniteAbelianGroup, a: Sequence[int]) -> GroupElement:
    return tuple((-x) % n for x, n in zip(g.coerce(a), g.factor_orders))


# ======================================================================
# CHARACTERS
# ======================================================================
def _phases(
    g: FiniteAbelianGroup, left: npt.NDArray[np.int64], right: npt.NDArray[np.int64]
) -> npt.NDArray[np.int64]:
    """Integer phases Σ_i l_i·r_i·(L/N_i) mod L for all row pairs."""
    exponent = g.exponent
    weighted = (left * g._phase_weights()) % exponent
    return (weighted @ right.T) % exponent


def character_eval(g: FiniteAbelianGroup, m: Sequence[int], a: Sequence[int]) -> complex:
    m, a = np.array([g.coerce(m)]), np.array([g.coerce(a)])
    if g.rank == 0:
        return 1.0 + 0.0j
    return complex(unit_roots(g.exponent)[_phases(g, m, a)[0, 0]])


def character_values(g: FiniteAbelianGroup, m: Sequence[int]) -> GroupSignal:
    """ζ_m as a signal on G."""
    return GroupSignal(group=g, values=character_table(g, [m])[0])


def character_table(
    g: FiniteAbelianGroup, characters: npt.ArrayLike | None = None
) -> ComplexMatrix:
    """
    Rows ζ_m(a) over all elements a, for the given character indices
    (default: the whole dual group).
    """
    elements = g.elements(cap=TRANSFORM_CAP)
    if characters is None:
        chars = elements
    else:
        chars = np.array([g.coerce(m) for m in characters], dtype=np.int64)
    if g.rank == 0:
        return np.ones((len(chars), 1), dtype=np.complex128)
    return unit_roots(g.exponent)[_phases(g, chars, elements)]


def dual_group(g: FiniteAbelianGroup) -> npt.NDArray[np.int64]:
    """All character indices of Ĝ, lexicographic; |Ĝ| = |G|."""
    return g.elements()


def character_multiply(g: FiniteAbelianGroup, m: Sequence[int], k: Sequence[int]) -> CharacterIndex:
    """Index of the pointwise product ζ_m·ζ_k (the dual group law)."""
    return group_op(g, m, k)


def is_character(
    g: FiniteAbelianGroup, values: npt.ArrayLike, tol: Tolerance = DEFAULT_TOLERANCE
) -> bool:
    """
    True iff `values` (lexicographic over G) is nowhere zero and
    multiplicative, f(a·b) = f(a)·f(b) for all a, b within `tol`.
    """
    f = np.asarray(values, dtype=np.complex128).ravel()
    if f.size != g.order:
        raise DimensionMismatch(f"{f.size} values for a group of order {g.order}.")
    if np.any(f == 0):
        return False

    elements = g.elements(cap=TRANSFORM_CAP)
    orders = np.array(g.factor_orders, dtype=np.int64)
    for i, a in enumerate(elements):
        shifted = g.index_of((elements + a) % orders) if g.rank else np.zeros(1, int)
        if np.max(np.abs(f[shifted] - f[i] * f)) > tol.threshold(abs(f[i])):
            return False
    return True


# ======================================================================
# ℓ₂(G)
# ======================================================================
def _same_group(g: FiniteAbelianGroup, *signals: GroupSignal) -> None:
    for s in signals:
        if s.group != g:
            raise DimensionMismatch(f"Signal lives on {s.group}, expected {g}.")


def ell2_inner(g: FiniteAbelianGroup, f: GroupSignal, h: GroupSignal) -> complex:
    """⟨f, h⟩ = (1/|G|)·Σ_a f(a)·conj(h(a))."""
    _same_group(g, f, h)
    return complex(np.vdot(h.values, f.values) / g.order)


def _blocked_transform(
    g: FiniteAbelianGroup, values: np.ndarray, conjugate: bool
) -> np.ndarray:
    # direct summation, one block of table rows at a time
    if g.order > TRANSFORM_CAP:
        raise CapExceeded(f"|G| = {g.order} exceeds transform cap {TRANSFORM_CAP}.")
    if g.rank == 0:
        return values.copy()

    elements = g.elements()
    roots = unit_roots(g.exponent)
    rows = max(1, _BLOCK_ENTRIES // g.order)
    out = np.empty(g.order, dtype=np.complex128)
    for start in range(0, g.order, rows):
        block = roots[_phases(g, elements[start : start + rows], elements)]
        out[start : start + rows] = (block.conj() if conjugate else block) @ values
    return out


def fourier_transform(g: FiniteAbelianGroup, f: GroupSignal) -> GroupSignal:
    """f̂(ζ_m) = ⟨f, ζ_m⟩ for every character, by direct O(|G|²) summation."""
    _same_group(g, f)
    fhat = _blocked_transform(g, f.values, conjugate=True) / g.order
    return GroupSignal(group=g, values=fhat, domain="dual")


def inverse_transform(g: FiniteAbelianGroup, fhat: GroupSignal) -> GroupSignal:
    """f(a) = Σ_m f̂(m)·ζ_m(a)."""
    _same_group(g, fhat)
    return GroupSignal(group=g, values=_blocked_transform(g, fhat.values, conjugate=False))


def plancherel_gap(g: FiniteAbelianGroup, f: GroupSignal) -> float:
    """‖f‖² − Σ_ζ |f̂(ζ)|²."""
    return f.norm_squared() - fourier_transform(g, f).norm_squared()


# ======================================================================
# TRANSLATIONS
# ======================================================================
def _translation_indices(g: FiniteAbelianGroup, a: Sequence[int]) -> npt.NDArray[np.int64]:
    a = np.array(g.coerce(a), dtype=np.int64)
    if g.rank == 0:
        return np.zeros(1, dtype=np.int64)
    orders = np.array(g.factor_orders, dtype=np.int64)
    return g.index_of((g.elements() + a) % orders)


def translate(g: FiniteAbelianGroup, a: Sequence[int], f: GroupSignal) -> GroupSignal:
    """(T_a f)(x) = f(a·x)."""
    _same_group(g, f)
    return GroupSignal(group=g, values=f.values[_translation_indices(g, a)])


def translation_matrix(g: FiniteAbelianGroup, a: Sequence[int]) -> ComplexMatrix:
    """T_a as a permutation matrix on ℓ₂(G); its adjoint is T_{a⁻¹}."""
    if g.order > OPERATOR_CAP:
        raise CapExceeded(f"|G| = {g.order} exceeds operator cap {OPERATOR_CAP}.")
    t = np.zeros((g.order, g.order), dtype=np.complex128)
    t[np.arange(g.order), _translation_indices(g, a)] = 1.0
    return t


def character_eigenspaces(
    g: FiniteAbelianGroup,
    weights: npt.ArrayLike | None = None,
    *,
    rng: np.random.Generator | None = None,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> SpectralDecomposition:
    """
    Spectral decomposition of the translation-algebra element Σ_a w_a·T_a.

    The translations commute and are unitary, so the combination is normal.
    For generic weights (drawn from `rng` when not given) every eigenspace is
    one-dimensional and spanned by a character.
    """
    if weights is None:
        rng = rng if rng is not None else np.random.default_rng(0)
        weights = rng.standard_normal(g.order) + 1j * rng.standard_normal(g.order)
    w = np.asarray(weights, dtype=np.complex128).ravel()
    if w.size != g.order:
        raise DimensionMismatch(f"{w.size} weights for a group of order {g.order}.")

    operator = sum(
        (wa * translation_matrix(g, a) for wa, a in zip(w, g.elements())),
        start=np.zeros((g.order, g.order), dtype=np.complex128),
    )
    return spectral_decompose(operator, tol, rng=rng)


# ======================================================================
# PRODUCTS AND CLASSIFICATION
# ======================================================================
def _index_from_generator_values(
    g: FiniteAbelianGroup, values: npt.ArrayLike
) -> CharacterIndex:
    # ζ(e_i) = exp(2πi m_i / N_i) determines m_i
    angles = np.angle(np.asarray(values, dtype=np.complex128))
    return tuple(
        int(round(theta * n / (2 * np.pi))) % n
        for theta, n in zip(angles, g.factor_orders)
    )


def product_dual_iso(
    g: FiniteAbelianGroup, h: FiniteAbelianGroup, zeta: Sequence[int]
) -> tuple[CharacterIndex, CharacterIndex]:
    """
    ψ(ζ) = (ζ(·, e_H), ζ(e_G, ·)): restrict a character of G×H to each factor.

    The restrictions are evaluated on the unit generators of G and H and the
    character indices read back from those values.
    """
    gh = FiniteAbelianGroup.product(g, h)
    zeta = gh.coerce(zeta)
    unit = np.eye(gh.rank, dtype=np.int64)
    on_g = [character_eval(gh, zeta, unit[i]) for i in range(g.rank)]
    on_h = [character_eval(gh, zeta, unit[g.rank + j]) for j in range(h.rank)]
    return _index_from_generator_values(g, on_g), _index_from_generator_values(h, on_h)


def product_character(
    g: FiniteAbelianGroup, h: FiniteAbelianGroup, m: Sequence[int], k: Sequence[int]
) -> CharacterIndex:
    """ψ⁻¹(ζ_m, ζ_k): the character ρ(a, b) = ζ_m(a)·ζ_k(b) of G×H."""
    return g.coerce(m) + h.coerce(k)


def factor_into_prime_powers(n: int) -> list[int]:
    """Prime-power orders q_i with Z_n ≅ Π Z_{q_i}, by trial division."""
    if n < 2:
        raise ValueError(f"Cyclic order must be ≥ 2, got {n}.")
    powers, p = [], 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            powers.append(q)
        p += 1
    if n > 1:
        powers.append(n)
    return powers


def crt_reindex(
    n: int,
) -> tuple[FiniteAbelianGroup, npt.NDArray[np.int64], npt.NDArray[np.int64]]:
    """
    The CRT isomorphism Z_n ≅ Π Z_{q_i} on elements and on characters.

    Returns: (product group, element map, character map), where row k of each
    map holds the product coordinates of element k, resp. of character e_k,
    so that e_k(j) = ζ_{char_map[k]}(elem_map[j]).
    """
    powers = factor_into_prime_powers(n)
    product = FiniteAbelianGroup(factor_orders=tuple(powers))
    k = np.arange(n, dtype=np.int64)[:, None]
    q = np.array(powers, dtype=np.int64)
    cofactor_inverse = np.array([pow(n // qi, -1, qi) for qi in powers], dtype=np.int64)
    return product, k % q, (k * cofactor_inverse) % q
