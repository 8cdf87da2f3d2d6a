import numpy as np
import pytest
from numpy.testing import assert_allclose

from spectra.bin.main import main, run
from spectra.config import ENV_TOLERANCE
from spectra.io import read_group_signal, read_matrix
from spectra.selftest import SUITES


def _value(report, name: str) -> float:
    return report.metrics[name].value


# ----------------------------------------------------------------------
# linear algebra
# ----------------------------------------------------------------------
def test_schur_writes_factors(fixtures, tmp_path):
    report = run(["schur", str(fixtures / "diagonal.yaml"), "--out", str(tmp_path)])
    assert report.exit_code == 0, report.error
    assert report.outputs == [str(tmp_path / "u.yaml"), str(tmp_path / "b.yaml")]

    u, b = read_matrix(tmp_path / "u.yaml"), read_matrix(tmp_path / "b.yaml")
    assert_allclose(u @ b @ u.conj().T, np.diag([1, 2, 3]), atol=1e-12)
    assert "oracle_distance" in report.verdicts


def test_schur_deflation_method(fixtures, tmp_path):
    report = run(
        ["schur", str(fixtures / "cyclic_shift.yaml"), "--method", "deflation", "--out", str(tmp_path)]
    )
    assert report.exit_code == 0, report.error
    assert len(report.listings["eigenvalues"].rows) == 4


def test_eig_hermitian(fixtures):
    report = run(["eig", str(fixtures / "hermitian.yaml"), "--hermitian"])
    assert report.exit_code == 0, report.error
    rows = report.listings["hermitian_eigenvalues"].rows
    assert_allclose([float(r[1]) for r in rows], [1.0, 3.0], atol=1e-12)


def test_spectral_cyclic_shift(fixtures):
    report = run(["spectral", str(fixtures / "cyclic_shift.yaml")])
    assert report.exit_code == 0, report.error
    rows = report.listings["eigenvalues"].rows
    assert len(rows) == 4
    assert all(r[3] == "1" for r in rows)


def test_spectral_refuses_non_normal(fixtures):
    report = run(["spectral", str(fixtures / "nilpotent.yaml")])
    assert report.exit_code == 1
    assert report.error.startswith("NotNormal")


def test_parse_error_exits_two(fixtures):
    report = run(["schur", str(fixtures / "short_data.yaml")])
    assert report.exit_code == 2
    assert report.error.startswith("ParseError")


def test_bad_environment_tolerance_exits_two(fixtures, monkeypatch):
    monkeypatch.setenv(ENV_TOLERANCE, "tiny")
    assert run(["eig", str(fixtures / "hermitian.yaml")]).exit_code == 2


# ----------------------------------------------------------------------
# groups
# ----------------------------------------------------------------------
def test_group_dual(tmp_path):
    report = run(["group-dual", "--factors", "2,3", "--out", str(tmp_path)])
    assert report.exit_code == 0, report.error
    assert _value(report, "order") == 6
    assert len(report.listings["characters"].rows) == 6
    table = read_matrix(tmp_path / "characters.yaml")
    assert_allclose(table @ table.conj().T, 6 * np.eye(6), atol=1e-12)


def test_group_ft_and_inverse(fixtures, tmp_path):
    report = run(["group-ft", str(fixtures / "delta_z2xz3.yaml"), "--out", str(tmp_path)])
    assert report.exit_code == 0, report.error
    fhat = read_group_signal(tmp_path / "ft.yaml")
    assert_allclose(fhat.values, np.full(6, 1 / 6), atol=1e-15)

    report = run(["group-ft", str(tmp_path / "ft.yaml"), "--inverse", "--out", str(tmp_path)])
    assert report.exit_code == 0, report.error
    f = read_group_signal(tmp_path / "ift.yaml")
    assert_allclose(f.values, [1, 0, 0, 0, 0, 0], atol=1e-15)


# ----------------------------------------------------------------------
# Riesz sequences
# ----------------------------------------------------------------------
def test_riesz_shifted_pair(fixtures):
    report = run(["riesz", str(fixtures / "shifted_pair.yaml")])
    assert report.exit_code == 0, report.error
    assert_allclose(_value(report, "lower_bound_A"), 2 - np.sqrt(2), atol=1e-12)
    assert_allclose(_value(report, "upper_bound_B"), 2 + np.sqrt(2), atol=1e-12)


def test_riesz_degenerate_window_fails(fixtures):
    report = run(["riesz", str(fixtures / "nearly_parallel.yaml")])
    assert report.exit_code == 1
    assert report.error is None
    assert not report.verdicts["riesz_sequence"].passed
    assert "condition" not in report.metrics


# ----------------------------------------------------------------------
# circle
# ----------------------------------------------------------------------
def test_circle_series_from_file(fixtures):
    report = run(["circle-series", str(fixtures / "character_q4.yaml"), "--nmax", "1"])
    assert report.exit_code == 0, report.error
    rows = {r[0]: r for r in report.listings["coefficients"].rows}
    assert_allclose(float(rows["1"][3]), 1.0, atol=1e-15)
    assert abs(float(rows["-1"][3])) <= 1e-15


def test_circle_series_builtin():
    report = run(
        ["circle-series", "--builtin", "sawtooth", "--grid", "64", "--nmax", "8"]
    )
    assert report.exit_code == 0, report.error
    assert report.inputs["grid"] == "64"
    assert _value(report, "mean_square_error") > 0.0


def test_circle_series_builtin_parameters():
    report = run(
        ["circle-series", "--builtin", "character", "--param", "n=2", "--grid", "16", "--nmax", "3"]
    )
    assert report.exit_code == 0, report.error
    assert report.inputs["param.n"] == "2"
    assert _value(report, "mean_square_error") <= 1e-28


def test_circle_series_unknown_parameter():
    report = run(
        ["circle-series", "--builtin", "sawtooth", "--grid", "8", "--nmax", "2", "--param", "foo=1"]
    )
    assert report.exit_code == 2
    assert report.error.startswith("ConfigError")


def test_circle_series_needs_a_source():
    assert run(["circle-series", "--nmax", "2"]).exit_code == 2


def test_circle_series_aliasing(fixtures):
    report = run(["circle-series", str(fixtures / "character_q4.yaml"), "--nmax", "2"])
    assert report.exit_code == 1
    assert report.error.startswith("AliasingError")


# ----------------------------------------------------------------------
# selftest and process exit
# ----------------------------------------------------------------------
@pytest.mark.parametrize("suite", list(SUITES))
def test_selftest_suite_passes(suite):
    report = run(["selftest", "--suite", suite])
    failed = [v.name for v in report.verdicts if not v.passed]
    assert report.exit_code == 0, failed


def test_porcelain_is_deterministic(capsys):
    outputs = []
    for _ in range(2):
        with pytest.raises(SystemExit) as info:
            main(["selftest", "--suite", "abelian", "--suite", "riesz", "--porcelain"])
        assert info.value.code == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
    assert outputs[0].splitlines()[0] == "command=selftest"
    assert outputs[0].splitlines()[-1] == "exit_code=0"


def test_rich_output_exit_code(fixtures, capsys):
    with pytest.raises(SystemExit) as info:
        main(["spectral", str(fixtures / "nilpotent.yaml")])
    assert info.value.code == 1
    assert "NotNormal" in capsys.readouterr().out


def test_unknown_command_exits_two():
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code == 2
