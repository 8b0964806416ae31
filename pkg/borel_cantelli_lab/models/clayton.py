"""
Clayton copula sequence and its running maxima.

The sequence X_1, X_2, ... has, for every n, the Clayton copula

    F(x_1, ..., x_n) = psi(psi^-1(x_1) + ... + psi^-1(x_n)),
    psi(t) = (1 + t)^(-1/theta),  psi^-1(u) = u^-theta - 1,

which for theta = 1 is [1/x_1 + ... + 1/x_n - (n - 1)]^-1.

Closed forms are given for P(M_n <= x), for the scaled event
{M_n^(n^alpha) <= x} = {M_n <= x^(n^-alpha)}, for the consecutive pair of
scaled events and for their difference. All of them go through
g = psi^-1(x^(n^-alpha)) = expm1(-theta n^-alpha log x); the naive
``x ** -(n ** -alpha) - 1`` loses most of its digits for large n.

Paths are simulated with the Marshall-Olkin construction: one
Gamma(1/theta, 1) mixing variate V per path and i.i.d. Exp(1) marks E_i give
X_i = psi(E_i / V), so M_n = psi(min(E_1..E_n) / V) and a path costs O(1)
memory per step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from borel_cantelli_lab.errors import DomainError
from borel_cantelli_lab.lemmas import PairSeq, ProbSeq
from borel_cantelli_lab.logger import get_logger

logger = get_logger(__name__)

__all__ = [
    "ClaytonParams",
    "ClaytonPathState",
    "PathTrace",
    "ScaledMaxEvent",
    "diff_term",
    "generator",
    "generator_inverse",
    "joint_cdf",
    "max_cdf",
    "max_events",
    "pair_joint_scaled",
    "path_new",
    "path_seed",
    "path_step",
    "scaled_max_cdf",
    "scaled_max_events",
    "simulate_path",
]


@dataclass(frozen=True)
class ClaytonParams:
    theta: float = 1.0

    def __post_init__(self) -> None:
        if not (self.theta > 0 and math.isfinite(self.theta)):
            raise DomainError(f"theta must be a positive real, got {self.theta}")


@dataclass(frozen=True)
class ScaledMaxEvent:
    """The event {M_n^(n^alpha) <= x}; alpha = 0 is the unscaled maximum."""

    x: float
    alpha: float

    def __post_init__(self) -> None:
        if not 0.0 < self.x < 1.0:
            raise DomainError(f"x must lie in (0, 1), got {self.x}")
        if not 0.0 <= self.alpha < 1.0:
            raise DomainError(f"alpha must lie in [0, 1), got {self.alpha}")


def _as_output(value: np.ndarray, scalar: bool) -> Any:
    return float(value) if scalar else value


def _check_n(n: Any) -> tuple[np.ndarray, bool]:
    arr = np.asarray(n, dtype=float)
    if arr.size and (arr.min() < 1 or not np.all(np.isfinite(arr))):
        raise DomainError(f"n must be an integer >= 1, got min {arr.min()}")
    return arr, arr.ndim == 0


def generator(params: ClaytonParams, t: Any) -> Any:
    """psi(t) = (1 + t)^(-1/theta)."""
    t_arr = np.asarray(t, dtype=float)
    if params.theta == 1.0:
        out = 1.0 / (1.0 + t_arr)
    else:
        out = np.exp(-np.log1p(t_arr) / params.theta)
    return _as_output(out, t_arr.ndim == 0)


def generator_inverse(params: ClaytonParams, u: Any) -> Any:
    """psi^-1(u) = u^-theta - 1, via expm1 so u near 1 keeps its digits."""
    u_arr = np.asarray(u, dtype=float)
    if u_arr.size and not np.all((u_arr > 0.0) & (u_arr <= 1.0)):
        raise DomainError("psi^-1 is defined on (0, 1]")
    return _as_output(np.expm1(-params.theta * np.log(u_arr)), u_arr.ndim == 0)


def joint_cdf(params: ClaytonParams, xs: list[float]) -> float:
    """F(x_1, ..., x_n) of the Clayton copula."""
    if not xs:
        raise DomainError("joint_cdf needs at least one argument")
    if any(not 0.0 < x < 1.0 for x in xs):
        raise DomainError(f"every argument must lie in (0, 1), got {xs}")

    if params.theta == 1.0:
        return 1.0 / (math.fsum(1.0 / x for x in xs) - (len(xs) - 1))
    return float(generator(params, math.fsum(generator_inverse(params, x) for x in xs)))


def max_cdf(params: ClaytonParams, n: Any, x: float) -> Any:
    """P(M_n <= x) = psi(n psi^-1(x)); for theta = 1, [n(1/x - 1) + 1]^-1."""
    if not 0.0 < x < 1.0:
        raise DomainError(f"x must lie in (0, 1), got {x}")
    n_arr, scalar = _check_n(n)
    return _as_output(np.asarray(generator(params, n_arr * generator_inverse(params, x))), scalar)


def _g(params: ClaytonParams, n: np.ndarray, ev: ScaledMaxEvent) -> np.ndarray:
    """psi^-1(x^(n^-alpha)) = expm1(-theta n^-alpha log x)."""
    return np.expm1(-params.theta * np.power(n, -ev.alpha) * math.log(ev.x))


def scaled_max_cdf(params: ClaytonParams, n: Any, ev: ScaledMaxEvent) -> Any:
    """P(M_n^(n^alpha) <= x) = [n g(n) + 1]^-1 for theta = 1."""
    n_arr, scalar = _check_n(n)
    return _as_output(np.asarray(generator(params, n_arr * _g(params, n_arr, ev))), scalar)


def pair_joint_scaled(params: ClaytonParams, n: Any, ev: ScaledMaxEvent) -> Any:
    """P(M_n^(n^alpha) <= x, M_{n+1}^((n+1)^alpha) <= x).

    The thresholds x^(n^-alpha) increase with n, so the first n coordinates
    are bounded by x^(n^-alpha) and the last by x^((n+1)^-alpha):
    psi(n g(n) + g(n+1)), i.e. [n g(n) + x^(-(n+1)^-alpha)]^-1 for theta = 1.
    """
    n_arr, scalar = _check_n(n)
    t = n_arr * _g(params, n_arr, ev) + _g(params, n_arr + 1.0, ev)
    return _as_output(np.asarray(generator(params, t)), scalar)


def diff_term(params: ClaytonParams, n: Any, ev: ScaledMaxEvent) -> Any:
    """P(M_n^(n^alpha) <= x) - P(both scaled events), without cancellation.

    With a = n g(n) and b = g(n+1): psi(a) - psi(a + b)
    = psi(a) * (1 - (1 + b/(1+a))^(-1/theta)); for theta = 1 this is
    b / ((a + 1)(a + b + 1)).
    """
    n_arr, scalar = _check_n(n)
    a = n_arr * _g(params, n_arr, ev)
    b = _g(params, n_arr + 1.0, ev)
    if params.theta == 1.0:
        out = b / ((a + 1.0) * (a + b + 1.0))
    else:
        out = np.asarray(generator(params, a)) * -np.expm1(-np.log1p(b / (1.0 + a)) / params.theta)
    return _as_output(out, scalar)


def scaled_max_events(params: ClaytonParams, ev: ScaledMaxEvent) -> tuple[ProbSeq, PairSeq]:
    """A_n = {M_n^(n^alpha) <= x} as (p, q) sequences for the lemma engine.

    P(A_n) -> 0 for every x < 1 and alpha < 1 since n g(n) grows like
    n^(1 - alpha), so the sequence carries the certificate.
    """
    tag = f"clayton theta={params.theta:g} x={ev.x:g} alpha={ev.alpha:g}"
    p = ProbSeq(p=lambda n: scaled_max_cdf(params, n, ev), tends_to_zero=True, label=tag)
    q = PairSeq(q=lambda n: pair_joint_scaled(params, n, ev), label=tag)
    return p, q


def max_events(params: ClaytonParams, x: float) -> tuple[ProbSeq, PairSeq]:
    """A_n = {M_n <= x}; a decreasing family since M_n is nondecreasing."""
    return scaled_max_events(params, ScaledMaxEvent(x=x, alpha=0.0))


@dataclass(frozen=True)
class ClaytonPathState:
    """Sufficient statistic of one simulated path after ``n`` steps.

    ``m`` is the running minimum of the exponential marks; +inf until the
    first step, when no maximum exists yet.
    """

    v: float
    m: float
    n: int
    params: ClaytonParams = field(default_factory=ClaytonParams)
    rng: np.random.Generator = field(default_factory=np.random.default_rng, compare=False, repr=False)

    @property
    def maximum(self) -> float:
        if self.n == 0:
            raise DomainError("M_0 is undefined: call path_step at least once")
        return float(generator(self.params, self.m / self.v))


def path_seed(seed: int, path_index: int) -> np.random.SeedSequence:
    """Seed of path ``path_index`` under master ``seed``; independent of other paths."""
    return np.random.SeedSequence(seed, spawn_key=(path_index,))


def path_new(seed: int | np.random.SeedSequence, params: ClaytonParams | None = None) -> ClaytonPathState:
    """Start a path: draw V ~ Gamma(1/theta, 1) from a generator seeded by ``seed``."""
    params = params or ClaytonParams()
    rng = np.random.default_rng(seed)
    v = float(rng.gamma(1.0 / params.theta, 1.0))
    return ClaytonPathState(v=v, m=math.inf, n=0, params=params, rng=rng)


def path_step(state: ClaytonPathState) -> tuple[ClaytonPathState, float, float]:
    """Advance one step; return the new state, X_n and M_n."""
    mark = float(state.rng.standard_exponential())
    m = min(state.m, mark)
    x_n = float(generator(state.params, mark / state.v))
    m_n = float(generator(state.params, m / state.v))
    return replace(state, m=m, n=state.n + 1), x_n, m_n


@dataclass(frozen=True)
class PathTrace:
    """Marks and running minima of one path, steps 1..len(marks)."""

    v: float
    marks: np.ndarray
    minima: np.ndarray
    params: ClaytonParams

    def values(self) -> np.ndarray:
        return np.asarray(generator(self.params, self.marks / self.v))

    def maxima(self) -> np.ndarray:
        return np.asarray(generator(self.params, self.minima / self.v))


def simulate_path(seed: int | np.random.SeedSequence, steps: int, params: ClaytonParams | None = None) -> PathTrace:
    """Draw ``steps`` marks at once; same stream as repeated ``path_step`` calls."""
    state = path_new(seed, params)
    marks = state.rng.standard_exponential(size=steps)
    return PathTrace(v=state.v, marks=marks, minima=np.minimum.accumulate(marks), params=state.params)
