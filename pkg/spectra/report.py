"""
report.py

The record of one command-line run: named metrics, pass/fail verdicts
against thresholds and tabular listings. `RunReport.exit_code` is 0 iff every
verdict passed and no error was recorded.

Gabriel Braun, 2026
"""

import math
from typing import Any

import pydantic as pyd

from spectra.utils import ModelList

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def g17(x: float) -> str:
    return format(float(x), ".17g")


class Metric(pyd.BaseModel):
    name: str
    value: float

    @pyd.field_validator("value")
    @classmethod
    def _finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError(f"Metric value must be finite, got {v}.")
        return v


class Check(pyd.BaseModel):
    name: str
    passed: bool
    threshold: float
    value: float | None = None


class Listing(pyd.BaseModel):
    name: str
    header: list[str]
    rows: list[list[str]] = pyd.Field(default_factory=list)


class RunReport(pyd.BaseModel):
    command: str
    inputs: dict[str, str] = pyd.Field(default_factory=dict)
    metrics: ModelList[Metric] = pyd.Field(default_factory=lambda: ModelList[Metric]([]))
    verdicts: ModelList[Check] = pyd.Field(default_factory=lambda: ModelList[Check]([]))
    listings: ModelList[Listing] = pyd.Field(default_factory=lambda: ModelList[Listing]([]))
    outputs: list[str] = pyd.Field(default_factory=list)
    error: str | None = None
    error_exit: int = EXIT_FAILURE

    @pyd.computed_field
    @property
    def passed(self) -> bool:
        return self.error is None and all(v.passed for v in self.verdicts)

    @pyd.computed_field
    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return self.error_exit
        return EXIT_OK if self.passed else EXIT_FAILURE

    # -------------------------------------------------------------- #
    # recording
    # -------------------------------------------------------------- #
    def metric(self, name: str, value: float) -> float:
        self.metrics.append(Metric(name=name, value=float(value)))
        return float(value)

    def check(
        self,
        name: str,
        value: float | None,
        threshold: float,
        *,
        passed: bool | None = None,
    ) -> bool:
        """Record a verdict: `value ≤ threshold` unless `passed` is given explicitly."""
        if passed is None:
            passed = value is not None and value <= threshold
        self.verdicts.append(
            Check(name=name, passed=bool(passed), threshold=threshold, value=value)
        )
        return bool(passed)

    def listing(self, name: str, header: list[str], rows: list[list[Any]]) -> Listing:
        entry = Listing(name=name, header=header, rows=[[str(c) for c in r] for r in rows])
        self.listings.append(entry)
        return entry

    def fail(self, exc: BaseException, exit_code: int = EXIT_FAILURE) -> None:
        self.error = f"{type(exc).__name__}: {exc}"
        self.error_exit = exit_code

    # -------------------------------------------------------------- #
    # porcelain
    # -------------------------------------------------------------- #
    def porcelain(self) -> str:
        """`key=value` lines, numbers at 17 significant digits."""
        lines = [f"command={self.command}"]
        lines += [f"input.{k}={v}" for k, v in self.inputs.items()]
        lines += [f"metric.{m.name}={g17(m.value)}" for m in self.metrics]
        for v in self.verdicts:
            lines.append(f"verdict.{v.name}={'pass' if v.passed else 'fail'}")
            if v.value is not None and math.isfinite(v.value):
                lines.append(f"value.{v.name}={g17(v.value)}")
            lines.append(f"threshold.{v.name}={g17(v.threshold)}")
        for t in self.listings:
            lines.append(f"{t.name}.header={','.join(t.header)}")
            lines += [f"{t.name}.{i}={','.join(r)}" for i, r in enumerate(t.rows)]
        lines += [f"output={p}" for p in self.outputs]
        if self.error is not None:
            lines.append(f"error={self.error}")
        lines.append(f"exit_code={self.exit_code}")
        return "\n".join(lines) + "\n"
