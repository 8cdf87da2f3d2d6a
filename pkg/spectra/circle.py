"""
circle.py

Fourier analysis on the unit circle S¹ at quadrature scale.

A function on S¹ is represented by its samples at the Q-th roots of unity
ω_k = exp(2πik/Q); the Haar measure becomes the uniform weight 1/Q, which is
the only rotation-invariant probability on the grid. Integrals are exact for
trigonometric polynomials of degree < Q.

Fourier coefficients follow c_n = ⟨f, e_n⟩ (conjugate on the character), the
convention under which f = Σ c_n e_n holds for band-limited f.

Gabriel Braun, 2026
"""

import inspect
import math
from typing import Callable, ClassVar

import numpy as np
import numpy.typing as npt
import pydantic as pyd

from spectra.abelian import unit_roots
from spectra.errors import AliasingError, ConfigError, GridMismatch
from spectra.linalg import ComplexMatrix, SampleField

# closed-form evaluator on grid angles θ_k = 2πk/Q
BuiltinFn = Callable[..., npt.NDArray]


# ======================================================================
# DATA MODELS
# ======================================================================
class CircleSignal(pyd.BaseModel):
    model_config = pyd.ConfigDict(arbitrary_types_allowed=True, frozen=True)

    samples: SampleField

    _builtins: ClassVar[dict[str, BuiltinFn]] = {}

    @pyd.model_validator(mode="after")
    def _at_least_two_samples(self) -> "CircleSignal":
        if self.samples.size < 2:
            raise ValueError(f"A circle grid needs Q ≥ 2 samples, got {self.samples.size}.")
        return self

    @property
    def quadrature_order(self) -> int:
        return self.samples.size

    @classmethod
    def builtin(cls, name: str):
        def deco(fn: BuiltinFn):
            cls._builtins[name.lower()] = fn
            return fn

        return deco

    @classmethod
    def builtin_names(cls) -> list[str]:
        return sorted(cls._builtins)

    @classmethod
    def from_function(cls, fn: BuiltinFn, q: int, **params) -> "CircleSignal":
        """Sample a closed-form evaluator of θ ∈ [0, 2π) at the grid angles."""
        theta = 2.0 * np.pi * np.arange(q) / q
        return cls(samples=np.broadcast_to(fn(theta, **params), theta.shape))

    @classmethod
    def from_builtin(cls, name: str, q: int, **params) -> "CircleSignal":
        fn = cls._builtins.get(name.lower())
        if fn is None:
            raise KeyError(f"Built-in test function '{name}' not registered.")
        try:
            inspect.signature(fn).bind(None, **params)
        except TypeError as exc:
            raise ConfigError(f"Bad parameters for built-in '{name}': {exc}.") from exc
        return cls.from_function(fn, q, **params)


class FourierSeries(pyd.BaseModel):
    """Coefficients c_n for n = −n_max..n_max, from a grid of order Q."""

    model_config = pyd.ConfigDict(arbitrary_types_allowed=True, frozen=True)

    coefficients: SampleField
    n_max: pyd.NonNegativeInt
    quadrature_order: int

    @pyd.model_validator(mode="after")
    def _no_aliasing(self) -> "FourierSeries":
        if self.coefficients.size != 2 * self.n_max + 1:
            raise ValueError(
                f"{self.coefficients.size} coefficients for n_max = {self.n_max}."
            )
        if 2 * self.n_max + 1 > self.quadrature_order:
            raise ValueError(
                f"2·n_max + 1 = {2 * self.n_max + 1} exceeds Q = {self.quadrature_order}."
            )
        return self

    @property
    def frequencies(self) -> npt.NDArray[np.int64]:
        return np.arange(-self.n_max, self.n_max + 1)

    def __getitem__(self, n: int) -> complex:
        if abs(n) > self.n_max:
            return 0.0j
        return complex(self.coefficients[n + self.n_max])

    def energy(self) -> float:
        return float(np.sum(np.abs(self.coefficients) ** 2))


# ======================================================================
# GRID PRIMITIVES
# ======================================================================
def _character_rows(frequencies: npt.ArrayLike, q: int) -> ComplexMatrix:
    """Rows e_n(ω_k) for each frequency n."""
    n = np.asarray(frequencies, dtype=np.int64).reshape(-1, 1)
    k = np.arange(q, dtype=np.int64).reshape(1, -1)
    return unit_roots(q)[(n * k) % q]


def _same_grid(*signals: CircleSignal) -> int:
    orders = {s.quadrature_order for s in signals}
    if len(orders) != 1:
        raise GridMismatch(f"Signals sampled on different grids {sorted(orders)}.")
    return orders.pop()


def alias_window(q: int) -> npt.NDArray[np.int64]:
    """Q consecutive frequencies centred at 0: one representative per alias class."""
    return np.arange(-((q - 1) // 2), q // 2 + 1)


def haar_integral(s: CircleSignal) -> complex:
    """
    (1/Q)·Σ samples, summed with `math.fsum` so the value does not depend on
    the order of the samples.
    """
    v = s.samples
    return complex(math.fsum(v.real), math.fsum(v.imag)) / s.quadrature_order


def sample_builtin(name: str, q: int, **params) -> CircleSignal:
    """Sample a registered test function (see `circle_functions`) on Q points."""
    return CircleSignal.from_builtin(name, q, **params)


def char_sample(n: int, q: int) -> CircleSignal:
    """e_n(ω) = ωⁿ on the grid."""
    if q < 2:
        raise ValueError(f"A circle grid needs Q ≥ 2, got {q}.")
    return CircleSignal(samples=_character_rows([n], q)[0])


def inner_product(f: CircleSignal, g: CircleSignal) -> complex:
    """⟨f, g⟩ = (1/Q)·Σ f(ω_k)·conj(g(ω_k))."""
    q = _same_grid(f, g)
    return complex(np.vdot(g.samples, f.samples) / q)


def norm_squared(s: CircleSignal) -> float:
    return float(np.mean(np.abs(s.samples) ** 2))


# ======================================================================
# FOURIER SERIES
# ======================================================================
def fourier_coefficients(s: CircleSignal, n_max: int) -> FourierSeries:
    """c_n = ⟨f, e_n⟩ for |n| ≤ n_max; requires 2·n_max + 1 ≤ Q."""
    q = s.quadrature_order
    if n_max < 0 or 2 * n_max + 1 > q:
        raise AliasingError(f"n_max = {n_max} aliases on a grid of Q = {q} points.")
    rows = _character_rows(np.arange(-n_max, n_max + 1), q)
    return FourierSeries(
        coefficients=rows.conj() @ s.samples / q, n_max=n_max, quadrature_order=q
    )


def partial_sum(series: FourierSeries, q: int) -> CircleSignal:
    """Σ_{|n| ≤ n_max} c_n·e_n evaluated on the grid of order `q`."""
    if 2 * series.n_max + 1 > q:
        raise GridMismatch(
            f"Grid Q = {q} cannot carry frequencies up to {series.n_max} without aliasing."
        )
    rows = _character_rows(series.frequencies, q)
    return CircleSignal(samples=series.coefficients @ rows)


def mean_square_error(f: CircleSignal, approx: CircleSignal) -> float:
    """(1/Q)·Σ|f − approx|²."""
    _same_grid(f, approx)
    return float(np.mean(np.abs(f.samples - approx.samples) ** 2))


def plancherel_gap(s: CircleSignal, n_max: int) -> float:
    """‖f‖² − Σ_{|n| ≤ n_max}|c_n|²; non-negative up to roundoff (Bessel)."""
    return norm_squared(s) - fourier_coefficients(s, n_max).energy()


# ======================================================================
# ROTATIONS AND PROJECTIONS
# ======================================================================
def rotate(s: CircleSignal, j: int) -> CircleSignal:
    """(T_ω f)(ξ) = f(ω·ξ) for the grid rotation ω = exp(2πij/Q)."""
    return CircleSignal(samples=np.roll(s.samples, -j))


def rotation_eigenvalue(n: int, j: int, q: int) -> complex:
    """e_n(ω) for ω = exp(2πij/Q): the eigenvalue of rotation by j on e_n."""
    return complex(unit_roots(q)[(n * j) % q])


def character_projection(n: int, q: int) -> ComplexMatrix:
    """Rank-one orthogonal projection f ↦ ⟨f, e_n⟩·e_n on grid signals."""
    e = char_sample(n, q).samples
    return np.outer(e, e.conj()) / q
