"""
Built-in test functions for Fourier series on the circle.

Every function is registered with the `@CircleSignal.builtin("<name>")`
decorator and receives the grid angles θ ∈ [0, 2π) plus keyword parameters:

    (theta, **params) -> samples

Jump discontinuities take the midpoint value.
"""

import numpy as np

from .circle import CircleSignal


@CircleSignal.builtin("constant")
def constant(theta: np.ndarray, value: complex = 1.0):
    return np.full(theta.shape, value, dtype=np.complex128)


@CircleSignal.builtin("character")
def character(theta: np.ndarray, n: int = 1):
    return np.exp(1j * n * theta)


@CircleSignal.builtin("sawtooth")
def sawtooth(theta: np.ndarray):
    """θ/π − 1 on (0, 2π), zero mean."""
    out = theta / np.pi - 1.0
    out[theta == 0.0] = 0.0
    return out


@CircleSignal.builtin("square-wave")
def square_wave(theta: np.ndarray):
    """+1 on (0, π), −1 on (π, 2π)."""
    return np.sign(np.pi - theta) * (theta != 0.0)


@CircleSignal.builtin("triangle")
def triangle(theta: np.ndarray):
    return 1.0 - 2.0 * np.abs(theta - np.pi) / np.pi
