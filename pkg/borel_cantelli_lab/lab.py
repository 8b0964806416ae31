"""
Almost-sure convergence harness.

Analytic route: for X_n -> mu in probability, X_n -> mu almost surely as soon
as, for every small eps, the events A_n(eps) = {X_n not in [mu - eps, mu + eps]}
occur only finitely often. ``theorem31_report`` runs the lemma engine on
each eps of a finite, descending grid; ``corollary31_check`` uses the shortcut
for decreasing event families.

Empirical route: simulate Clayton paths and watch sup_{N <= n <= n_max}
|M_n^(n^alpha) - 1| shrink across checkpoints N, and compare event
frequencies with the closed forms.

Paths are seeded by (seed, path index) and reduced in index order, so every
table is reproducible and independent of the number of worker processes.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from multiprocessing import Pool
from typing import Any, Protocol

import numpy as np

from borel_cantelli_lab.errors import DomainError, EmptyEpsilonGrid, MonotonicityNotAsserted
from borel_cantelli_lab.lemmas import Conclusion, LemmaVerdict, PairSeq, ProbSeq, evaluate
from borel_cantelli_lab.logger import get_logger
from borel_cantelli_lab.models.clayton import (
    ClaytonParams,
    ScaledMaxEvent,
    generator,
    path_seed,
    scaled_max_cdf,
    scaled_max_events,
    simulate_path,
)
from borel_cantelli_lab.series import DEFAULT_MARGIN, MIN_CLASSIFY_RANGE

logger = get_logger(__name__)

__all__ = [
    "ASReport",
    "ClaytonScaledMaxModel",
    "EventModel",
    "ExactComparisonRow",
    "LimitExperiment",
    "Overall",
    "PathSample",
    "SequenceModel",
    "TailSupRow",
    "TailSupTable",
    "corollary31_check",
    "empirical_tail_sup",
    "empirical_vs_exact",
    "sample_paths",
    "theorem31_report",
]

Z_FLAG = 4.0
_BATCH = 256


@dataclass(frozen=True)
class LimitExperiment:
    mu: float = 1.0
    epsilons: tuple[float, ...] = (0.5, 0.1, 0.05)
    n_max: int = 100_000
    paths: int = 1000
    seed: int = 0
    workers: int = 1
    margin: float = DEFAULT_MARGIN

    def __post_init__(self) -> None:
        if not self.epsilons:
            raise EmptyEpsilonGrid()
        if any(not eps > 0 for eps in self.epsilons):
            raise DomainError(f"epsilons must be positive, got {self.epsilons}")
        # the grid is always held in descending order
        object.__setattr__(self, "epsilons", tuple(sorted((float(e) for e in self.epsilons), reverse=True)))
        if self.n_max < MIN_CLASSIFY_RANGE:
            raise DomainError(f"n_max must be >= {MIN_CLASSIFY_RANGE}, got {self.n_max}")
        if self.paths < 1:
            raise DomainError(f"paths must be >= 1, got {self.paths}")
        if self.workers < 1:
            raise DomainError(f"workers must be >= 1, got {self.workers}")


class EventModel(Protocol):
    """A model that turns eps into the events {X_n not in [mu - eps, mu + eps]}."""

    @property
    def label(self) -> str: ...

    @property
    def monotone_decreasing(self) -> bool: ...

    @property
    def independent(self) -> bool: ...

    def events(self, eps: float) -> tuple[ProbSeq, PairSeq | None]: ...


@dataclass(frozen=True)
class ClaytonScaledMaxModel:
    """X_n = M_n^(n^alpha) for the Clayton sequence, mu = 1.

    X_n lies in (0, 1], so P(X_n > 1 + eps) = 0 and the two-sided event is
    the lower tail {X_n <= 1 - eps}.
    """

    alpha: float
    params: ClaytonParams = field(default_factory=ClaytonParams)
    independent: bool = False

    @property
    def monotone_decreasing(self) -> bool:
        # {M_n <= x} shrinks with n; the scaled events do not
        return self.alpha == 0.0

    @property
    def label(self) -> str:
        return f"clayton scaled maxima theta={self.params.theta:g} alpha={self.alpha:g}"

    @classmethod
    def unscaled(cls, params: ClaytonParams | None = None) -> ClaytonScaledMaxModel:
        """Running maxima M_n themselves; a decreasing event family."""
        return cls(alpha=0.0, params=params or ClaytonParams())

    def events(self, eps: float) -> tuple[ProbSeq, PairSeq | None]:
        if not 0.0 < eps < 1.0:
            raise DomainError(f"eps must lie in (0, 1) for maxima of uniforms, got {eps}")
        return scaled_max_events(self.params, ScaledMaxEvent(x=1.0 - eps, alpha=self.alpha))


@dataclass(frozen=True)
class SequenceModel:
    """Caller-supplied p_n(eps) and, optionally, q_n(eps)."""

    p_of_eps: Callable[[float], ProbSeq]
    q_of_eps: Callable[[float], PairSeq] | None = None
    monotone_decreasing: bool = False
    independent: bool = False
    label: str = "sequence model"

    def events(self, eps: float) -> tuple[ProbSeq, PairSeq | None]:
        q = self.q_of_eps(eps) if self.q_of_eps is not None else None
        return self.p_of_eps(eps), q


class Overall(str, Enum):
    AS_CONVERGENT = "ASConvergent"
    NOT_ESTABLISHED = "NotEstablished"


@dataclass(frozen=True)
class TailSupRow:
    checkpoint: int
    alpha: float
    median: float
    p90: float


@dataclass(frozen=True)
class TailSupTable:
    """Quantiles of sup_{N <= n <= n_max} |M_n^(n^alpha) - 1| across paths."""

    alpha: float
    n_max: int
    paths: int
    seed: int
    rows: tuple[TailSupRow, ...]
    control: tuple[TailSupRow, ...] = ()

    def medians(self) -> list[float]:
        return [row.median for row in self.rows]

    def medians_nonincreasing(self) -> bool:
        m = self.medians()
        return all(b <= a for a, b in zip(m, m[1:], strict=False))

    def medians_decreasing(self) -> bool:
        m = self.medians()
        return all(b < a for a, b in zip(m, m[1:], strict=False))


@dataclass(frozen=True)
class ExactComparisonRow:
    n: int
    x: float
    alpha: float
    empirical: float
    exact: float
    std_error: float
    z: float

    @property
    def flagged(self) -> bool:
        return abs(self.z) > Z_FLAG


@dataclass(frozen=True)
class ASReport:
    per_epsilon: tuple[tuple[float, LemmaVerdict], ...]
    overall: Overall
    model: str = ""
    notes: tuple[str, ...] = ()
    empirical: TailSupTable | None = None

    def to_record(self) -> dict[str, Any]:
        record: dict[str, Any] = {
            "model": self.model,
            "overall": self.overall.value,
            "epsilons": [eps for eps, _ in self.per_epsilon],
            "per_epsilon": [{"epsilon": eps, **verdict.to_record()} for eps, verdict in self.per_epsilon],
            "notes": list(self.notes),
        }
        if self.empirical is not None:
            record["empirical"] = [
                {"checkpoint": r.checkpoint, "median": r.median, "p90": r.p90} for r in self.empirical.rows
            ]
            record["empirical_medians_nonincreasing"] = self.empirical.medians_nonincreasing()
        return record


def _overall(per_epsilon: Sequence[tuple[float, LemmaVerdict]]) -> Overall:
    if all(v.conclusion is Conclusion.IO_ZERO for _, v in per_epsilon):
        return Overall.AS_CONVERGENT
    return Overall.NOT_ESTABLISHED


def _grid_note(exp: LimitExperiment) -> str:
    grid = ", ".join(f"{eps:g}" for eps in exp.epsilons)
    return f"'for all small eps' checked on the finite grid {{{grid}}} up to n_max={exp.n_max}"


def theorem31_report(model: EventModel, exp: LimitExperiment, empirical: TailSupTable | None = None) -> ASReport:
    """Lemma-engine verdict for every eps of the grid; a.s. convergence iff all are IOZero."""
    if not exp.epsilons:
        raise EmptyEpsilonGrid()
    per_epsilon = []
    for eps in exp.epsilons:
        p, q = model.events(eps)
        verdict = evaluate(p, q, independent=model.independent, n_max=exp.n_max, margin=exp.margin)
        logger.info(f"{model.label} eps={eps:g}: {verdict.conclusion.value} by {verdict.fired_by.value}")
        per_epsilon.append((eps, verdict))

    notes = [_grid_note(exp)]
    if isinstance(model, ClaytonScaledMaxModel):
        notes.append("X_n <= 1 always: the two-sided event reduces to {X_n <= 1 - eps}")
    return ASReport(tuple(per_epsilon), _overall(per_epsilon), model.label, tuple(notes), empirical)


def corollary31_check(model: EventModel, exp: LimitExperiment) -> ASReport:
    """Decreasing events with P(A_n) -> 0 occur finitely often; no series needed."""
    if not model.monotone_decreasing:
        raise MonotonicityNotAsserted()
    per_epsilon = []
    for eps in exp.epsilons:
        p, _ = model.events(eps)
        verdict = evaluate(p, None, monotone_decreasing=True, n_max=exp.n_max, margin=exp.margin)
        per_epsilon.append((eps, verdict))
    return ASReport(tuple(per_epsilon), _overall(per_epsilon), model.label, (_grid_note(exp),))


def _map_batches(worker: Callable[[tuple[Any, ...]], np.ndarray], tasks: list[tuple[Any, ...]], workers: int) -> np.ndarray:
    if workers > 1 and len(tasks) > 1:
        with Pool(processes=workers) as pool:
            parts = pool.map(worker, tasks)
    else:
        parts = [worker(task) for task in tasks]
    return np.concatenate(parts, axis=0)


def _batches(exp: LimitExperiment) -> list[range]:
    return [range(lo, min(lo + _BATCH, exp.paths)) for lo in range(0, exp.paths, _BATCH)]


def _tail_sup_worker(task: tuple[Any, ...]) -> np.ndarray:
    seed, paths, n_max, alphas, checkpoints, theta = task
    params = ClaytonParams(theta)
    n = np.arange(1, n_max + 1, dtype=float)
    powers = [np.power(n, a) for a in alphas]
    at = np.asarray(checkpoints, dtype=np.int64) - 1
    out = np.empty((len(paths), len(alphas), len(checkpoints)))
    for row, i in enumerate(paths):
        trace = simulate_path(path_seed(seed, i), n_max, params)
        log_max = np.log1p(trace.minima / trace.v) / theta  # -log M_n
        for k, pw in enumerate(powers):
            deviation = -np.expm1(-pw * log_max)
            tail_sup = np.maximum.accumulate(deviation[::-1])[::-1]
            out[row, k] = tail_sup[at]
    return out


def empirical_tail_sup(
    alpha: float,
    exp: LimitExperiment,
    checkpoints: Sequence[int],
    params: ClaytonParams | None = None,
    control: bool = True,
) -> TailSupTable:
    """Median and 90th percentile of the tail sup deviation at each checkpoint.

    With ``control`` the unscaled maxima (alpha = 0) are tabulated alongside.
    """
    params = params or ClaytonParams()
    if not 0.0 <= alpha < 1.0:
        raise DomainError(f"alpha must lie in [0, 1), got {alpha}")
    marks = [int(c) for c in checkpoints]
    if not marks or marks[0] < 1 or any(b <= a for a, b in zip(marks, marks[1:], strict=False)):
        raise DomainError(f"checkpoints must be increasing positive integers, got {list(checkpoints)}")
    if marks[-1] > exp.n_max:
        raise DomainError(f"checkpoint {marks[-1]} beyond n_max={exp.n_max}")

    alphas = [alpha, 0.0] if control and alpha != 0.0 else [alpha]
    tasks = [(exp.seed, batch, exp.n_max, alphas, marks, params.theta) for batch in _batches(exp)]
    logger.info(f"simulating {exp.paths} paths x {exp.n_max} steps in {len(tasks)} batches")
    sups = _map_batches(_tail_sup_worker, tasks, exp.workers)

    def rows(k: int) -> tuple[TailSupRow, ...]:
        med = np.quantile(sups[:, k, :], 0.5, axis=0)
        p90 = np.quantile(sups[:, k, :], 0.9, axis=0)
        return tuple(
            TailSupRow(checkpoint=c, alpha=alphas[k], median=float(m), p90=float(h))
            for c, m, h in zip(marks, med, p90, strict=True)
        )

    return TailSupTable(
        alpha=alpha,
        n_max=exp.n_max,
        paths=exp.paths,
        seed=exp.seed,
        rows=rows(0),
        control=rows(1) if len(alphas) > 1 else (),
    )


@dataclass(frozen=True)
class PathSample:
    """Per-path X_n and M_n at the requested steps; shape (paths, len(steps))."""

    steps: tuple[int, ...]
    values: np.ndarray
    maxima: np.ndarray
    min_ratio: np.ndarray  # min(E_1..E_n) / V


def _sample_worker(task: tuple[Any, ...]) -> np.ndarray:
    seed, paths, steps, theta = task
    params = ClaytonParams(theta)
    at = np.asarray(steps, dtype=np.int64) - 1
    out = np.empty((len(paths), 2, len(steps)))
    for row, i in enumerate(paths):
        trace = simulate_path(path_seed(seed, i), int(at[-1]) + 1, params)
        out[row, 0] = trace.marks[at] / trace.v
        out[row, 1] = trace.minima[at] / trace.v
    return out


def sample_paths(steps: Sequence[int], exp: LimitExperiment, params: ClaytonParams | None = None) -> PathSample:
    params = params or ClaytonParams()
    marks = tuple(sorted({int(s) for s in steps}))
    if not marks or marks[0] < 1:
        raise DomainError(f"steps must be positive integers, got {list(steps)}")
    tasks = [(exp.seed, batch, marks, params.theta) for batch in _batches(exp)]
    ratios = _map_batches(_sample_worker, tasks, exp.workers)
    return PathSample(
        steps=marks,
        values=np.asarray(generator(params, ratios[:, 0, :])),
        maxima=np.asarray(generator(params, ratios[:, 1, :])),
        min_ratio=ratios[:, 1, :],
    )


def empirical_vs_exact(
    n_list: Sequence[int],
    x: float | Sequence[float],
    alpha: float,
    exp: LimitExperiment,
    params: ClaytonParams | None = None,
) -> list[ExactComparisonRow]:
    """Frequency of {M_n^(n^alpha) <= x} across paths against the closed form."""
    params = params or ClaytonParams()
    xs = [float(x)] if isinstance(x, (int, float)) else [float(v) for v in x]
    events = [ScaledMaxEvent(x=v, alpha=alpha) for v in xs]
    if any(int(n) > exp.n_max for n in n_list):
        raise DomainError(f"n_list {list(n_list)} reaches beyond n_max={exp.n_max}")

    sample = sample_paths(n_list, exp, params)
    rows = []
    for ev in events:
        for n in n_list:
            col = sample.steps.index(int(n))
            # M_n <= x^(n^-alpha)  <=>  min(E)/V >= psi^-1(x^(n^-alpha))
            threshold = math.expm1(-params.theta * float(n) ** -alpha * math.log(ev.x))
            empirical = float(np.mean(sample.min_ratio[:, col] >= threshold))
            exact = float(scaled_max_cdf(params, int(n), ev))
            se = math.sqrt(exact * (1.0 - exact) / exp.paths)
            z = (empirical - exact) / se if se > 0 else 0.0
            rows.append(ExactComparisonRow(int(n), ev.x, alpha, empirical, exact, se, z))
    flagged = sum(r.flagged for r in rows)
    if flagged:
        logger.warning(f"{flagged} comparison(s) with |z| > {Z_FLAG}")
    return rows
