"""Calibration of the series classifier on sequences with known behaviour."""

from __future__ import annotations

import math

import numpy as np

from borel_cantelli_lab.check_wrapper import Check, CheckContext, CheckResult
from borel_cantelli_lab.series import CompensatedSum, SeriesClass, TermSequence, classify, partial_sum

# (exponent s of n^-s, expected class)
CALIBRATION = (
    (2.0, SeriesClass.CONVERGENT),
    (1.5, SeriesClass.CONVERGENT),
    (1.05, SeriesClass.INCONCLUSIVE),
    (1.02, SeriesClass.INCONCLUSIVE),
    (1.0, SeriesClass.DIVERGENT),
    (0.5, SeriesClass.DIVERGENT),
)


def _power(s: float) -> TermSequence:
    return TermSequence(eval=lambda n: np.power(n.astype(float), -s), label=f"n^-{s:g}")


def classifier_calibration(ctx: CheckContext) -> CheckResult:
    n_max = 100_000 if ctx.quick else 1_000_000
    wrong = []
    for s, expected in CALIBRATION:
        got = classify(_power(s), n_max).classification
        if got is not expected:
            wrong.append(f"n^-{s:g}: {got.value}, expected {expected.value}")
    if wrong:
        return CheckResult(False, "; ".join(wrong))
    return CheckResult(True, f"{len(CALIBRATION)} power series classified as expected at n_max={n_max}")


def finite_support(ctx: CheckContext) -> CheckResult:
    terms = TermSequence(eval=lambda n: np.where(n <= 50, 1.0, 0.0), label="finite support")
    verdict = classify(terms, 1000)
    ok = verdict.classification is SeriesClass.CONVERGENT and verdict.partial_sum == 50.0
    return CheckResult(ok, f"{verdict.classification.value}, partial sum {verdict.partial_sum!r}")


def compensated_summation(ctx: CheckContext) -> CheckResult:
    acc = CompensatedSum()
    for value in (1.0, 1e100, 1.0, -1e100):
        acc.add(value)
    harmonic = partial_sum(_power(1.0), 1_000_000)
    reference = math.fsum(1.0 / k for k in range(1, 1_000_001))
    ok = acc.value == 2.0 and abs(harmonic - reference) <= 1e-12
    return CheckResult(ok, f"cancellation sum {acc.value!r}, harmonic H_1e6 off by {abs(harmonic - reference):.3g}")


def get_all_checks() -> list[Check]:
    """Return checks exposed by this module for verify registration."""
    return [
        Check(
            fn=classifier_calibration,
            name="series_calibration",
            title="Classifier calibration",
            description="p-series on both sides of s = 1 and one inside the margin.",
        ),
        Check(
            fn=finite_support,
            name="series_finite_support",
            title="Finite support",
            description="A sequence that vanishes after n = 50 is Convergent with the exact sum.",
        ),
        Check(
            fn=compensated_summation,
            name="series_compensated_sum",
            title="Compensated summation",
            description="Neumaier accumulator and chunked fsum against exact references.",
        ),
    ]
