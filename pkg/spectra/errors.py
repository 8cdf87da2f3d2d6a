"""
errors.py

Exception hierarchy for SPECTRA. Every numerical failure raised by the
library derives from `SpectraError`, so the command line can report the
class name verbatim and pick an exit code.

Gabriel Braun, 2026
"""

from pathlib import Path


class SpectraError(Exception):
    """Base class of every SPECTRA error."""


# ----------------------------------------------------------------------
# INPUT ERRORS
# ----------------------------------------------------------------------
class DimensionMismatch(SpectraError, ValueError):
    pass


class NonFiniteValue(SpectraError, ValueError):
    pass


class ZeroVector(SpectraError, ValueError):
    pass


class DependentVectors(SpectraError, ValueError):
    pass


class NotHermitian(SpectraError, ValueError):
    pass


class NotPositiveSemidefinite(SpectraError, ValueError):
    pass


class NotOrthonormal(SpectraError, ValueError):
    pass


class CapExceeded(SpectraError, ValueError):
    pass


class AliasingError(SpectraError, ValueError):
    pass


class GridMismatch(SpectraError, ValueError):
    pass


# ----------------------------------------------------------------------
# NUMERICAL ERRORS
# ----------------------------------------------------------------------
class ConvergenceError(SpectraError, ArithmeticError):
    pass


class NotNormal(SpectraError, ArithmeticError):
    def __init__(self, defect: float, threshold: float):
        self.defect = defect
        self.threshold = threshold
        super().__init__(
            f"‖TT*−T*T‖_F = {defect:.3e} exceeds normality threshold {threshold:.3e}."
        )


class ClusterAmbiguity(SpectraError, ArithmeticError):
    def __init__(self, distance: float, radius: float):
        self.distance = distance
        self.radius = radius
        super().__init__(
            f"Eigenvalue clusters {distance:.3e} apart, "
            f"closer than 10× cluster radius {radius:.3e}."
        )


# ----------------------------------------------------------------------
# SURFACE ERRORS
# ----------------------------------------------------------------------
class ParseError(SpectraError):
    def __init__(self, path: str | Path, message: str, line: int | None = None):
        self.path = Path(path)
        self.line = line
        where = f"{self.path}:{line}" if line is not None else f"{self.path}"
        super().__init__(f"{where}: {message}")


class ConfigError(SpectraError):
    pass
