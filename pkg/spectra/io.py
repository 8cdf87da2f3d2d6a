"""
io.py

YAML documents shared by the command line and the test fixtures.

    matrix          {rows, cols, data: [[re, im], ...]}         row-major
    group signal    {factors: [N_1, ...], values: [[re, im], ...]}
    vector family   {ambient_dim, vectors: [[[re, im], ...], ...]}
    circle signal   {samples: [[re, im], ...]}

Documents are loaded with `yaml.safe_load` and validated as pydantic models;
any failure surfaces as a `ParseError` naming the file and, where it can be
located, the line. Writers emit floats with 17 significant digits.

Gabriel Braun, 2026
"""

from pathlib import Path
from typing import TypeVar

import numpy as np
import numpy.typing as npt
import pydantic as pyd
import yaml

from spectra.abelian import FiniteAbelianGroup, GroupSignal
from spectra.circle import CircleSignal
from spectra.errors import ParseError, SpectraError
from spectra.linalg import ComplexMatrix, as_matrix
from spectra.riesz import VectorFamily

Pair = tuple[float, float]
Doc = TypeVar("Doc", bound=pyd.BaseModel)


def _pairs(values: npt.ArrayLike) -> list[list[float]]:
    v = np.asarray(values, dtype=np.complex128).ravel()
    return [[float(z.real), float(z.imag)] for z in v]


def _complex(pairs: list[Pair]) -> npt.NDArray[np.complex128]:
    if not pairs:
        return np.empty(0, dtype=np.complex128)
    a = np.array(pairs, dtype=float)
    return a[:, 0] + 1j * a[:, 1]


# ======================================================================
# DOCUMENT MODELS
# ======================================================================
class MatrixDocument(pyd.BaseModel):
    model_config = pyd.ConfigDict(extra="forbid")

    rows: pyd.PositiveInt
    cols: pyd.PositiveInt
    data: list[Pair]

    @pyd.model_validator(mode="after")
    def _length_matches_shape(self) -> "MatrixDocument":
        if len(self.data) != self.rows * self.cols:
            raise ValueError(
                f"data holds {len(self.data)} entries, expected rows×cols = "
                f"{self.rows * self.cols}"
            )
        return self

    def to_matrix(self) -> ComplexMatrix:
        return as_matrix(_complex(self.data).reshape(self.rows, self.cols))

    @classmethod
    def from_matrix(cls, m: npt.ArrayLike) -> "MatrixDocument":
        m = as_matrix(m)
        return cls(rows=m.shape[0], cols=m.shape[1], data=_pairs(m))


class GroupSignalDocument(pyd.BaseModel):
    model_config = pyd.ConfigDict(extra="forbid")

    factors: list[int] = pyd.Field(default_factory=list)
    values: list[Pair]

    def to_signal(self) -> GroupSignal:
        group = FiniteAbelianGroup(factor_orders=tuple(self.factors))
        return GroupSignal(group=group, values=_complex(self.values))

    @classmethod
    def from_signal(cls, s: GroupSignal) -> "GroupSignalDocument":
        return cls(factors=list(s.group.factor_orders), values=_pairs(s.values))


class VectorFamilyDocument(pyd.BaseModel):
    model_config = pyd.ConfigDict(extra="forbid")

    ambient_dim: pyd.PositiveInt
    vectors: list[list[Pair]] = pyd.Field(min_length=1)

    def to_family(self) -> VectorFamily:
        return VectorFamily(
            ambient_dim=self.ambient_dim,
            vectors=[_complex(v).reshape(-1, 1) for v in self.vectors],
        )

    @classmethod
    def from_family(cls, fam: VectorFamily) -> "VectorFamilyDocument":
        return cls(ambient_dim=fam.ambient_dim, vectors=[_pairs(v) for v in fam.vectors])


class CircleSignalDocument(pyd.BaseModel):
    model_config = pyd.ConfigDict(extra="forbid")

    samples: list[Pair]

    def to_signal(self) -> CircleSignal:
        return CircleSignal(samples=_complex(self.samples))

    @classmethod
    def from_signal(cls, s: CircleSignal) -> "CircleSignalDocument":
        return cls(samples=_pairs(s.samples))


# ======================================================================
# READING
# ======================================================================
def _key_line(text: str, key: object) -> int | None:
    """1-based line of a top-level mapping key, if the document has one."""
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError:
        return None
    if not isinstance(node, yaml.MappingNode):
        return None
    for k, _ in node.value:
        if k.value == key:
            return k.start_mark.line + 1
    return None


def _load(path: str | Path, model: type[Doc]) -> Doc:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(path, exc.strerror or str(exc)) from exc

    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        raise ParseError(path, f"invalid YAML ({getattr(exc, 'problem', exc)})", line) from exc

    if not isinstance(data, dict):
        raise ParseError(path, f"expected a mapping, got {type(data).__name__}", 1)

    try:
        return model.model_validate(data)
    except pyd.ValidationError as exc:
        err = exc.errors()[0]
        loc = ".".join(str(p) for p in err["loc"]) or model.__name__
        line = _key_line(text, err["loc"][0]) if err["loc"] else None
        raise ParseError(path, f"{loc}: {err['msg']}", line) from exc


def _build(path: str | Path, build):
    # domain validation after the document shape is known good
    try:
        return build()
    except (SpectraError, pyd.ValidationError, ValueError) as exc:
        raise ParseError(path, str(exc).splitlines()[0]) from exc


def read_matrix(path: str | Path) -> ComplexMatrix:
    doc = _load(path, MatrixDocument)
    return _build(path, doc.to_matrix)


def read_group_signal(path: str | Path) -> GroupSignal:
    doc = _load(path, GroupSignalDocument)
    return _build(path, doc.to_signal)


def read_vector_family(path: str | Path) -> VectorFamily:
    doc = _load(path, VectorFamilyDocument)
    return _build(path, doc.to_family)


def read_circle_signal(path: str | Path) -> CircleSignal:
    doc = _load(path, CircleSignalDocument)
    return _build(path, doc.to_signal)


# ======================================================================
# WRITING
# ======================================================================
def format_float(x: float) -> str:
    """17 significant digits, always in a form YAML reads back as a float."""
    text = format(x, ".17g")
    mantissa, e, exp = text.partition("e")
    if "." in mantissa or not mantissa.lstrip("-").isdigit():
        return text
    return f"{mantissa}.0{e}{exp}"


class _Dumper(yaml.SafeDumper):
    pass


def _represent_float(dumper: yaml.SafeDumper, value: float) -> yaml.ScalarNode:
    return dumper.represent_scalar("tag:yaml.org,2002:float", format_float(value))


_Dumper.add_representer(float, _represent_float)


def dump_document(doc: pyd.BaseModel) -> str:
    return yaml.dump(
        doc.model_dump(mode="json"),
        Dumper=_Dumper,
        sort_keys=False,
        default_flow_style=None,
        width=100,
    )


def _write(path: str | Path, doc: pyd.BaseModel) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_document(doc))
    return path


def write_matrix(path: str | Path, m: npt.ArrayLike) -> Path:
    return _write(path, MatrixDocument.from_matrix(m))


def write_group_signal(path: str | Path, s: GroupSignal) -> Path:
    return _write(path, GroupSignalDocument.from_signal(s))


def write_vector_family(path: str | Path, fam: VectorFamily) -> Path:
    return _write(path, VectorFamilyDocument.from_family(fam))


def write_circle_signal(path: str | Path, s: CircleSignal) -> Path:
    return _write(path, CircleSignalDocument.from_signal(s))
