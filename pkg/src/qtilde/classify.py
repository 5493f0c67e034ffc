from __future__ import annotations

from dataclasses import dataclass

from .function import (
    MonotonicityClass,
    NondiffVerdict,
    check_nowhere_differentiability,
    classify_monotonicity,
)
from .integral import SingularityVerdict, singularity_check
from .matrix_spec import SystemSpec, validate


@dataclass(frozen=True)
class ClassificationReport:
    monotonicity: MonotonicityClass
    nowhere_differentiable: NondiffVerdict
    singularity: SingularityVerdict
    # set when the spec breaks 0 < partial sums of p < 1; verdicts still computed
    warning: str = ""

    def summary(self) -> str:
        nd = "true" if self.nowhere_differentiable.holds else "false"
        return (
            f"{self.monotonicity}; nowhere-differentiable: {nd}; "
            f"singularity: {self.singularity}"
        )


def classify(spec: SystemSpec) -> ClassificationReport:
    report = validate(spec)
    warning = ""
    if "P4" in report.conditions():
        warning = "partial sums of some p column leave (0, 1)"
    return ClassificationReport(
        classify_monotonicity(spec),
        check_nowhere_differentiability(spec),
        singularity_check(spec),
        warning,
    )
