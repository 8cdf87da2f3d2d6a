import numpy as np
import pytest
import yaml
from numpy.testing import assert_allclose

from spectra.abelian import FiniteAbelianGroup, GroupSignal
from spectra.circle import char_sample
from spectra.errors import ParseError
from spectra.io import (
    MatrixDocument,
    dump_document,
    format_float,
    read_circle_signal,
    read_group_signal,
    read_matrix,
    read_vector_family,
    write_group_signal,
    write_matrix,
)
from spectra.riesz import shifted_pair_family


# ----------------------------------------------------------------------
# reading fixtures
# ----------------------------------------------------------------------
def test_read_matrix(fixtures):
    assert_allclose(read_matrix(fixtures / "diagonal.yaml"), np.diag([1, 2, 3]))
    assert_allclose(read_matrix(fixtures / "nilpotent.yaml"), [[0, 1], [0, 0]])
    assert_allclose(read_matrix(fixtures / "cyclic_shift.yaml"), np.roll(np.eye(4), 1, axis=0))


def test_read_group_signal(fixtures):
    s = read_group_signal(fixtures / "delta_z2xz3.yaml")
    assert s.group == FiniteAbelianGroup(factor_orders=(2, 3))
    assert_allclose(s.values, [1, 0, 0, 0, 0, 0])


def test_read_vector_family(fixtures):
    fam = read_vector_family(fixtures / "shifted_pair.yaml")
    assert_allclose(fam.matrix(), shifted_pair_family(3).matrix())


def test_read_circle_signal(fixtures):
    s = read_circle_signal(fixtures / "character_q4.yaml")
    assert_allclose(s.samples, char_sample(1, 4).samples, atol=1e-15)


# ----------------------------------------------------------------------
# parse errors
# ----------------------------------------------------------------------
def test_length_mismatch(fixtures):
    with pytest.raises(ParseError) as info:
        read_matrix(fixtures / "short_data.yaml")
    assert "3 entries" in str(info.value)
    assert info.value.path.name == "short_data.yaml"


def test_invalid_yaml_reports_line(fixtures):
    with pytest.raises(ParseError) as info:
        read_matrix(fixtures / "broken.yaml")
    assert info.value.line in (3, 4)
    assert "invalid YAML" in str(info.value)


def test_bad_field_reports_key_line(tmp_path):
    path = tmp_path / "m.yaml"
    path.write_text("rows: 1\ncols: two\ndata: [[1, 0]]\n")
    with pytest.raises(ParseError) as info:
        read_matrix(path)
    assert info.value.line == 2
    assert str(info.value).startswith(f"{path}:2: cols")


def test_unknown_key_rejected(tmp_path):
    path = tmp_path / "m.yaml"
    path.write_text("rows: 1\ncols: 1\ndata: [[1, 0]]\nscale: 2\n")
    with pytest.raises(ParseError) as info:
        read_matrix(path)
    assert info.value.line == 4


def test_non_mapping_rejected(tmp_path):
    path = tmp_path / "m.yaml"
    path.write_text("- 1\n- 2\n")
    with pytest.raises(ParseError) as info:
        read_matrix(path)
    assert info.value.line == 1


def test_missing_file(tmp_path):
    with pytest.raises(ParseError) as info:
        read_matrix(tmp_path / "absent.yaml")
    assert info.value.line is None


def test_non_finite_entry(tmp_path):
    path = tmp_path / "m.yaml"
    path.write_text("rows: 1\ncols: 1\ndata: [[.nan, 0]]\n")
    with pytest.raises(ParseError):
        read_matrix(path)


def test_group_signal_of_wrong_length(tmp_path):
    path = tmp_path / "g.yaml"
    path.write_text("factors: [2, 3]\nvalues: [[1, 0], [0, 0]]\n")
    with pytest.raises(ParseError):
        read_group_signal(path)


def test_vector_of_wrong_length(tmp_path):
    path = tmp_path / "v.yaml"
    path.write_text("ambient_dim: 3\nvectors:\n  - [[1, 0], [0, 0]]\n")
    with pytest.raises(ParseError):
        read_vector_family(path)


# ----------------------------------------------------------------------
# writing
# ----------------------------------------------------------------------
@pytest.mark.parametrize(
    "x, text",
    [
        (1.0, "1.0"),
        (-2.0, "-2.0"),
        (0.1, "0.10000000000000001"),
        (1e20, "1.0e+20"),
        (2.0**-30, "9.3132257461547852e-10"),
    ],
)
def test_format_float(x, text):
    assert format_float(x) == text
    assert yaml.safe_load(text) == x


def test_written_matrix_reads_back_exactly(tmp_path, rng):
    m = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    path = write_matrix(tmp_path / "out" / "m.yaml", m)
    assert path.exists()
    assert np.array_equal(read_matrix(path), m)


def test_written_group_signal_reads_back(tmp_path):
    g = FiniteAbelianGroup(factor_orders=(2, 2))
    s = GroupSignal(group=g, values=[1, 1j, -1, 0.5])
    back = read_group_signal(write_group_signal(tmp_path / "s.yaml", s))
    assert back.group == g
    assert np.array_equal(back.values, s.values)


def test_dump_document_layout():
    text = dump_document(MatrixDocument.from_matrix([[1, 2j]]))
    assert text.splitlines()[:2] == ["rows: 1", "cols: 2"]
    assert "- [1.0, 0.0]" in text
    assert "- [0.0, 2.0]" in text
