"""
Partial summation and finite-range convergence classification for
nonnegative term sequences.

A machine cannot decide ``sum a_n < inf`` from finitely many terms. The
classifier here looks at the last decade of indices: it fits the decay
exponent ``s`` of ``a_n ~ C n^{-s}`` by least squares in log-log space,
checks that the fitted envelope really bounds the tail, and looks at how the
partial sums grow from decade to decade. Anything it cannot settle within the
caller's margin is reported as Inconclusive. Every verdict is heuristic and
says so in its evidence.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np
from scipy import stats

from borel_cantelli_lab.errors import DomainError, InsufficientRange, NegativeTerm, NonFiniteTerm
from borel_cantelli_lab.logger import get_logger

logger = get_logger(__name__)

__all__ = [
    "CompensatedSum",
    "SeriesClass",
    "SeriesVerdict",
    "TermSequence",
    "classify",
    "evaluate_terms",
    "partial_sum",
]

MIN_CLASSIFY_RANGE = 100
DEFAULT_MARGIN = 0.1
# a_n * n^s may wander by this factor over the fitting window before the
# power-law envelope is rejected
ENVELOPE_FACTOR = 10.0
# per-decade increment below which an all-but-zero tail counts as settled
SETTLED_INCREMENT = 1e-15
MAX_DECADES = 3
# decade increments only count as divergence evidence for fitted exponents
# this close to 1; beyond it a slowly converging p-series looks the same
HARMONIC_TOL = 1e-3
_CHUNK = 1 << 20


@dataclass(frozen=True)
class TermSequence:
    """A nonnegative sequence a_1, a_2, ...

    ``eval`` is vectorised: it receives an int64 array of indices n >= 1 and
    returns the matching terms as a float array (a scalar is broadcast).
    """

    eval: Callable[[np.ndarray], Any]
    label: str = ""

    def at(self, n: int) -> float:
        return float(evaluate_terms(self, n, n)[0])

    @classmethod
    def from_values(cls, values: Any, label: str = "") -> TermSequence:
        """Tabulated terms; ``values[0]`` is a_1."""
        table = np.asarray(values, dtype=float)
        size = table.shape[0]

        def lookup(n: np.ndarray) -> np.ndarray:
            if n.size and int(n.max()) > size:
                raise DomainError(f"index {int(n.max())} beyond the {size} tabulated terms")
            return table[n - 1]

        return cls(eval=lookup, label=label)


class SeriesClass(str, Enum):
    CONVERGENT = "Convergent"
    DIVERGENT = "Divergent"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class SeriesVerdict:
    classification: SeriesClass
    partial_sum: float
    n_scanned: int
    tail_exponent: float | None = None
    evidence: str = ""
    decade_increments: tuple[float, ...] = field(default_factory=tuple)

    def to_record(self) -> dict[str, Any]:
        return {
            "class": self.classification.value,
            "partial_sum": self.partial_sum,
            "n_scanned": self.n_scanned,
            "tail_exponent": self.tail_exponent,
            "decade_increments": list(self.decade_increments),
            "evidence": self.evidence,
        }


class CompensatedSum:
    """Running sum with Neumaier compensation.

    Tracks the rounding error of every addition in ``carry`` so long runs of
    small increments are not swallowed by a large total.
    """

    def __init__(self) -> None:
        self.total = 0.0
        self.carry = 0.0

    def add(self, value: float) -> None:
        t = self.total + value
        if abs(self.total) >= abs(value):
            self.carry += (self.total - t) + value
        else:
            self.carry += (value - t) + self.total
        self.total = t

    @property
    def value(self) -> float:
        return self.total + self.carry


def evaluate_terms(terms: TermSequence, start: int, stop: int) -> np.ndarray:
    """Evaluate and validate a_start .. a_stop (inclusive)."""
    index = np.arange(start, stop + 1, dtype=np.int64)
    values = np.asarray(terms.eval(index), dtype=float)
    if values.shape != index.shape:
        values = np.broadcast_to(values, index.shape).astype(float)

    bad = ~np.isfinite(values)
    if bad.any():
        i = int(np.argmax(bad))
        raise NonFiniteTerm(int(index[i]), float(values[i]))
    negative = values < 0
    if negative.any():
        i = int(np.argmax(negative))
        raise NegativeTerm(int(index[i]), float(values[i]))
    return values


def _scan(terms: TermSequence, n_max: int) -> np.ndarray:
    chunks = [
        evaluate_terms(terms, start, min(start + _CHUNK - 1, n_max)) for start in range(1, n_max + 1, _CHUNK)
    ]
    return np.concatenate(chunks)


def partial_sum(terms: TermSequence, n_max: int) -> float:
    """Compensated sum a_1 + ... + a_{n_max}, in ascending n."""
    if n_max < 1:
        raise InsufficientRange(n_max, 1)
    acc = CompensatedSum()
    for start in range(1, n_max + 1, _CHUNK):
        chunk = evaluate_terms(terms, start, min(start + _CHUNK - 1, n_max))
        acc.add(math.fsum(chunk))
    return acc.value


def _decade_increments(values: np.ndarray) -> tuple[float, ...]:
    """Sums over (n_max/10^(k+1), n_max/10^k], oldest decade first."""
    n_max = values.shape[0]
    bounds = [n_max]
    while len(bounds) <= MAX_DECADES and bounds[-1] // 10 >= 1:
        bounds.append(bounds[-1] // 10)
    increments = [math.fsum(values[lo:hi]) for hi, lo in zip(bounds, bounds[1:], strict=False)]
    return tuple(reversed(increments))


def _fit_tail_exponent(n: np.ndarray, a: np.ndarray) -> float:
    fit = stats.linregress(np.log(n), np.log(a))
    return float(-fit.slope)


def _envelope_holds(n: np.ndarray, a: np.ndarray, s: float) -> tuple[bool, float]:
    """Check a_n <~ C n^{-s} on the window; return the check and the tail bound."""
    scaled = a * np.power(n, s)
    c_env = float(scaled.max())
    stable = c_env <= ENVELOPE_FACTOR * float(np.median(scaled))
    n_max = float(n[-1])
    tail_bound = c_env * n_max ** (1.0 - s) / (s - 1.0)
    return stable and math.isfinite(tail_bound), tail_bound


def classify(terms: TermSequence, n_max: int, margin: float = DEFAULT_MARGIN) -> SeriesVerdict:
    """Classify sum a_n as Convergent, Divergent or Inconclusive from n <= n_max."""
    if n_max < MIN_CLASSIFY_RANGE:
        raise InsufficientRange(n_max, MIN_CLASSIFY_RANGE)
    if not 0.0 < margin < 0.5:
        raise DomainError(f"margin must lie in (0, 0.5), got {margin}")

    values = _scan(terms, n_max)
    total = math.fsum(values)
    increments = _decade_increments(values)
    lo = n_max // 10
    window = values[lo - 1 :]
    index = np.arange(lo, n_max + 1, dtype=float)
    label = terms.label or "series"
    logger.debug(f"classify {label}: n_max={n_max} window=[{lo}, {n_max}] sum={total!r}")

    def verdict(cls: SeriesClass, s: float | None, why: str) -> SeriesVerdict:
        return SeriesVerdict(
            classification=cls,
            partial_sum=total,
            n_scanned=n_max,
            tail_exponent=s,
            evidence=f"{why} (heuristic finite-range decision, margin={margin})",
            decade_increments=increments,
        )

    positive = window > 0
    if positive.mean() < 0.5:
        if increments[-1] < SETTLED_INCREMENT:
            return verdict(SeriesClass.CONVERGENT, None, f"terms vanish on the last decade, increment {increments[-1]:.3g}")
        return verdict(SeriesClass.INCONCLUSIVE, None, "most terms of the last decade are zero but the sum still moves")

    if positive.all():
        # geometric or faster decay has no power-law envelope
        ratio = float(np.max(window[1:] / window[:-1]))
        if ratio < 1.0 - margin:
            return verdict(SeriesClass.CONVERGENT, None, f"term ratio at most {ratio:.4g} < 1 - margin")

    n_fit = index[positive]
    a_fit = window[positive]
    s = _fit_tail_exponent(n_fit, a_fit)

    if s > 1.0 + margin:
        holds, tail_bound = _envelope_holds(n_fit, a_fit, s)
        if holds:
            return verdict(SeriesClass.CONVERGENT, s, f"tail exponent {s:.4f} > 1 + margin; tail bound {tail_bound:.3g}")
        logger.debug(f"{label}: exponent {s:.4f} but the power-law envelope does not bound the tail")

    if s < 1.0 - margin:
        return verdict(SeriesClass.DIVERGENT, s, f"tail exponent {s:.4f} < 1 - margin")

    steady = len(increments) >= 2 and min(increments) >= (1.0 - margin) * increments[0] > 0
    if s <= 1.0 + HARMONIC_TOL and steady:
        return verdict(
            SeriesClass.DIVERGENT,
            s,
            f"per-decade increments stay above {(1.0 - margin) * increments[0]:.4g}: harmonic-like growth",
        )

    return verdict(SeriesClass.INCONCLUSIVE, s, f"tail exponent {s:.4f} within the margin of 1")
