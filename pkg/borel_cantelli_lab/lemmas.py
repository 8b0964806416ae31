"""
Borel-Cantelli style verdicts on P(A_n i.o.).

Given p(n) = P(A_n) and, optionally, q(n) = P(A_n A_{n+1}), this module builds
the series whose convergence or divergence the classical and generalised
lemmas need, classifies them with ``series.classify`` and reports which lemma,
if any, settles P(A_n i.o.).

Conditions, by id:

    1.1 / 1.2   sum P(A_n)                        (< inf / = inf)
    1.3 / 2.2   sum [P(A_n) - P(A_n A_{n+1})]     = sum P(A_n A^c_{n+1})
    1.4 / 2.2'  sum [P(A_{n+1}) - P(A_n A_{n+1})] = sum P(A^c_n A_{n+1})
    2.1         sum P(A_n A_{n+1})
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np

from borel_cantelli_lab.errors import (
    DomainError,
    FrechetViolation,
    InsufficientRange,
    MissingPairSeq,
    OutOfRangeProbability,
)
from borel_cantelli_lab.logger import get_logger
from borel_cantelli_lab.series import (
    DEFAULT_MARGIN,
    MIN_CLASSIFY_RANGE,
    SeriesClass,
    SeriesVerdict,
    TermSequence,
    classify,
    evaluate_terms,
)

logger = get_logger(__name__)

__all__ = [
    "Condition",
    "Conclusion",
    "LemmaVerdict",
    "PairSeq",
    "ProbSeq",
    "Rule",
    "check_frechet",
    "check_tends_to_zero",
    "cond_1_3",
    "cond_1_4",
    "cond_2_1",
    "cond_sum_p",
    "evaluate",
]

FRECHET_TOLERANCE = 1e-12
TENDS_TO_ZERO_TOLERANCE = 1e-3


@dataclass(frozen=True)
class ProbSeq:
    """p(n) = P(A_n), vectorised over int64 index arrays.

    ``tends_to_zero`` is a caller certificate that P(A_n) -> 0. Without it,
    ``evaluate`` falls back to a numeric check on the last decade.
    """

    p: Callable[[np.ndarray], Any]
    tends_to_zero: bool = False
    label: str = "p"

    @classmethod
    def from_values(cls, values: Any, tends_to_zero: bool = False, label: str = "p") -> ProbSeq:
        return cls(p=TermSequence.from_values(values).eval, tends_to_zero=tends_to_zero, label=label)


@dataclass(frozen=True)
class PairSeq:
    """q(n) = P(A_n A_{n+1}), vectorised over int64 index arrays."""

    q: Callable[[np.ndarray], Any]
    label: str = "q"

    @classmethod
    def from_values(cls, values: Any, label: str = "q") -> PairSeq:
        return cls(q=TermSequence.from_values(values).eval, label=label)


class Conclusion(str, Enum):
    IO_ZERO = "IOZero"
    IO_ONE = "IOOne"
    UNKNOWN = "Unknown"


class Rule(str, Enum):
    BC1 = "BC1"
    BC2 = "BC2"
    BARNDORFF_NIELSEN = "BarndorffNielsen"
    BALAKRISHNAN_STEPANOV = "BalakrishnanStepanov"
    LEMMA21 = "Lemma21"
    REMARK21 = "Remark21"
    MONOTONE = "MonotoneProp31"
    NONE = "None"


class Condition(str, Enum):
    C1_1 = "1.1"
    C1_2 = "1.2"
    C1_3 = "1.3"
    C1_4 = "1.4"
    C2_1 = "2.1"
    C2_2 = "2.2"
    C2_2_ALT = "2.2'"


@dataclass(frozen=True)
class LemmaVerdict:
    conclusion: Conclusion
    fired_by: Rule
    condition_reports: tuple[tuple[Condition, SeriesVerdict], ...] = ()
    evidence: tuple[str, ...] = field(default_factory=tuple)

    def report(self, condition: Condition) -> SeriesVerdict | None:
        for cond, verdict in self.condition_reports:
            if cond is condition:
                return verdict
        return None

    def to_record(self) -> dict[str, Any]:
        return {
            "conclusion": self.conclusion.value,
            "fired_by": self.fired_by.value,
            "conditions": {cond.value: verdict.to_record() for cond, verdict in self.condition_reports},
            "evidence": list(self.evidence),
        }


def _probabilities(p: ProbSeq, n: np.ndarray) -> np.ndarray:
    values = np.broadcast_to(np.asarray(p.p(n), dtype=float), n.shape)
    bad = ~((values >= 0.0) & (values <= 1.0))
    if bad.any():
        i = int(np.argmax(bad))
        raise OutOfRangeProbability(int(n[i]), float(values[i]))
    return values


def _frechet_checked(p: ProbSeq, q: PairSeq, n: np.ndarray, tolerance: float) -> tuple[np.ndarray, ...]:
    """Return p(n), p(n+1), q(n) after checking the Frechet-Hoeffding bounds."""
    pn = _probabilities(p, n)
    pn1 = _probabilities(p, n + 1)
    qn = np.broadcast_to(np.asarray(q.q(n), dtype=float), n.shape)

    lower = np.maximum(0.0, pn + pn1 - 1.0)
    upper = np.minimum(pn, pn1)
    bad = ~((qn >= lower - tolerance) & (qn <= upper + tolerance))
    if bad.any():
        i = int(np.argmax(bad))
        raise FrechetViolation(int(n[i]), float(qn[i]), float(lower[i]), float(upper[i]))
    return pn, pn1, qn


def cond_sum_p(p: ProbSeq) -> TermSequence:
    """Terms of conditions 1.1 / 1.2: a_n = P(A_n)."""
    return TermSequence(eval=lambda n: _probabilities(p, n), label=f"sum P(A_n) [{p.label}]")


def cond_1_3(p: ProbSeq, q: PairSeq, tolerance: float = FRECHET_TOLERANCE) -> TermSequence:
    """Terms of conditions 1.3 / 2.2: a_n = P(A_n) - P(A_n A_{n+1})."""

    def terms(n: np.ndarray) -> np.ndarray:
        pn, _, qn = _frechet_checked(p, q, n, tolerance)
        return np.maximum(pn - qn, 0.0)

    return TermSequence(eval=terms, label=f"sum P(A_n A^c_n+1) [{p.label}, {q.label}]")


def cond_1_4(p: ProbSeq, q: PairSeq, tolerance: float = FRECHET_TOLERANCE) -> TermSequence:
    """Terms of conditions 1.4 / 2.2': a_n = P(A_{n+1}) - P(A_n A_{n+1})."""

    def terms(n: np.ndarray) -> np.ndarray:
        _, pn1, qn = _frechet_checked(p, q, n, tolerance)
        return np.maximum(pn1 - qn, 0.0)

    return TermSequence(eval=terms, label=f"sum P(A^c_n A_n+1) [{p.label}, {q.label}]")


def cond_2_1(p: ProbSeq, q: PairSeq, tolerance: float = FRECHET_TOLERANCE) -> TermSequence:
    """Terms of condition 2.1: a_n = P(A_n A_{n+1})."""

    def terms(n: np.ndarray) -> np.ndarray:
        _, _, qn = _frechet_checked(p, q, n, tolerance)
        return np.maximum(qn, 0.0)

    return TermSequence(eval=terms, label=f"sum P(A_n A_n+1) [{p.label}, {q.label}]")


def check_frechet(p: ProbSeq, q: PairSeq, n_max: int, tolerance: float = FRECHET_TOLERANCE) -> None:
    """Raise FrechetViolation at the first n <= n_max outside the bounds."""
    evaluate_terms(cond_2_1(p, q, tolerance), 1, n_max)


def check_tends_to_zero(
    p: ProbSeq,
    n_max: int,
    tolerance: float = TENDS_TO_ZERO_TOLERANCE,
) -> tuple[bool, str]:
    """Decide the hypothesis P(A_n) -> 0, by certificate or by a numeric check.

    The numeric check asks for the last-decade maximum to be below
    ``tolerance`` and for p(n_max) not to exceed p(n_max / 10). It can be
    fooled and is labelled heuristic.
    """
    if p.tends_to_zero:
        return True, "P(A_n) -> 0 certified by the caller"

    lo = max(n_max // 10, 1)
    tail = evaluate_terms(cond_sum_p(p), lo, n_max)
    peak = float(tail.max())
    decreasing = tail[-1] <= tail[0]
    holds = peak < tolerance and decreasing
    why = (
        f"P(A_n) -> 0 {'accepted' if holds else 'rejected'} by heuristic check: "
        f"max over [{lo}, {n_max}] = {peak:.3g} (tolerance {tolerance:g}), "
        f"{'non-increasing' if decreasing else 'increasing'} across the decade"
    )
    if not holds:
        logger.warning(why)
    return holds, why


def evaluate(
    p: ProbSeq,
    q: PairSeq | None = None,
    independent: bool = False,
    monotone_decreasing: bool = False,
    n_max: int = 100_000,
    margin: float = DEFAULT_MARGIN,
    frechet_tolerance: float = FRECHET_TOLERANCE,
) -> LemmaVerdict:
    """Run every applicable lemma and return the first that settles P(A_n i.o.).

    Priority: BC1, MonotoneProp31, Lemma21, BarndorffNielsen, Remark21,
    BalakrishnanStepanov, BC2. Lemma21 and Remark21 take precedence over
    BarndorffNielsen and BalakrishnanStepanov when their full hypothesis sets
    are verified. Every condition that could be evaluated is reported
    whatever the outcome.
    """
    if n_max < MIN_CLASSIFY_RANGE:
        raise InsufficientRange(n_max, MIN_CLASSIFY_RANGE)
    if frechet_tolerance < 0:
        raise DomainError(f"frechet_tolerance must be >= 0, got {frechet_tolerance}")

    evidence: list[str] = []
    s_p = classify(cond_sum_p(p), n_max, margin)
    reports: list[tuple[Condition, SeriesVerdict]] = [(Condition.C1_1, s_p), (Condition.C1_2, s_p)]

    s_13 = s_14 = s_21 = None
    if q is not None:
        s_13 = classify(cond_1_3(p, q, frechet_tolerance), n_max, margin)
        s_14 = classify(cond_1_4(p, q, frechet_tolerance), n_max, margin)
        s_21 = classify(cond_2_1(p, q, frechet_tolerance), n_max, margin)
        reports += [
            (Condition.C1_3, s_13),
            (Condition.C1_4, s_14),
            (Condition.C2_1, s_21),
            (Condition.C2_2, s_13),
            (Condition.C2_2_ALT, s_14),
        ]

    tends, why = check_tends_to_zero(p, n_max)
    evidence.append(why)

    def done(conclusion: Conclusion, rule: Rule) -> LemmaVerdict:
        logger.debug(f"{p.label}: {conclusion.value} by {rule.value}")
        return LemmaVerdict(conclusion, rule, tuple(reports), tuple(evidence))

    convergent = SeriesClass.CONVERGENT
    divergent = SeriesClass.DIVERGENT

    if s_p.classification is convergent:
        return done(Conclusion.IO_ZERO, Rule.BC1)

    if monotone_decreasing and tends:
        return done(Conclusion.IO_ZERO, Rule.MONOTONE)

    if tends:
        if s_13 is None or s_14 is None or s_21 is None:
            missing = MissingPairSeq("1.3/1.4/2.1")
            logger.warning(str(missing))
            evidence.append(f"skipped: {missing}")
        else:
            lemma21_ready = s_p.classification is divergent and s_21.classification is divergent
            if lemma21_ready and s_13.classification is convergent:
                return done(Conclusion.IO_ZERO, Rule.LEMMA21)
            if s_13.classification is convergent:
                return done(Conclusion.IO_ZERO, Rule.BARNDORFF_NIELSEN)
            if lemma21_ready and s_14.classification is convergent:
                return done(Conclusion.IO_ZERO, Rule.REMARK21)
            if s_14.classification is convergent:
                return done(Conclusion.IO_ZERO, Rule.BALAKRISHNAN_STEPANOV)

    if independent and s_p.classification is divergent:
        return done(Conclusion.IO_ONE, Rule.BC2)

    if not independent and s_p.classification is divergent:
        evidence.append("sum P(A_n) diverges but independence was not asserted; BC2 not applied")
    return done(Conclusion.UNKNOWN, Rule.NONE)
