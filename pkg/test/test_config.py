import pytest

from spectra.config import ENV_TOLERANCE, resolve_tolerance
from spectra.errors import ConfigError
from spectra.linalg import DEFAULT_TOLERANCE


def test_default_when_nothing_set():
    assert resolve_tolerance(env={}) == DEFAULT_TOLERANCE


def test_environment_overrides_default():
    tol = resolve_tolerance(env={ENV_TOLERANCE: "1e-6"})
    assert tol.abs == 1e-6
    assert tol.rel == DEFAULT_TOLERANCE.rel


def test_flag_overrides_environment():
    assert resolve_tolerance(1e-3, env={ENV_TOLERANCE: "1e-6"}).abs == 1e-3


def test_blank_environment_is_ignored():
    assert resolve_tolerance(env={ENV_TOLERANCE: "  "}) == DEFAULT_TOLERANCE


@pytest.mark.parametrize("raw", ["tiny", "-1e-6", "inf", "nan"])
def test_bad_environment_value(raw):
    with pytest.raises(ConfigError):
        resolve_tolerance(env={ENV_TOLERANCE: raw})


def test_bad_environment_value_raises_despite_flag():
    with pytest.raises(ConfigError):
        resolve_tolerance(1e-8, env={ENV_TOLERANCE: "tiny"})


def test_bad_flag_value():
    with pytest.raises(ConfigError):
        resolve_tolerance(-1.0, env={})


def test_reads_process_environment(monkeypatch):
    monkeypatch.setenv(ENV_TOLERANCE, "2e-9")
    assert resolve_tolerance().abs == 2e-9
