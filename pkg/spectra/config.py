"""
config.py

Runtime configuration. SPECTRA reads no configuration files: the tolerance
comes from the `--tol` flag, else from the `SPECTRA_TOL` environment
variable, else from `DEFAULT_TOLERANCE`. Each source overrides only the
absolute part.

Gabriel Braun, 2026
"""

import logging
import math
import os
from typing import Mapping

from spectra.errors import ConfigError
from spectra.linalg import DEFAULT_TOLERANCE, Tolerance

logger = logging.getLogger(__name__)

ENV_TOLERANCE = "SPECTRA_TOL"
DEFAULT_SEED = 0


def _with_absolute(value: float, source: str) -> Tolerance:
    if not math.isfinite(value) or value < 0.0:
        raise ConfigError(f"{source}: tolerance must be a finite number ≥ 0, got {value!r}.")
    try:
        return Tolerance(abs=value, rel=DEFAULT_TOLERANCE.rel)
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from exc


def resolve_tolerance(
    flag_abs: float | None = None, env: Mapping[str, str] | None = None
) -> Tolerance:
    """
    Tolerance after applying `flag > SPECTRA_TOL > default` precedence.

    A malformed environment value raises `ConfigError` even when the flag
    takes precedence.
    """
    env = os.environ if env is None else env
    raw = env.get(ENV_TOLERANCE, "").strip()

    from_env = None
    if raw:
        try:
            from_env = _with_absolute(float(raw), ENV_TOLERANCE)
        except ValueError:
            raise ConfigError(f"{ENV_TOLERANCE}={raw!r} is not a number.") from None

    if flag_abs is not None:
        logger.debug("tolerance from --tol: %g", flag_abs)
        return _with_absolute(flag_abs, "--tol")
    if from_env is not None:
        logger.debug("tolerance from %s: %g", ENV_TOLERANCE, from_env.abs)
        return from_env
    return DEFAULT_TOLERANCE
