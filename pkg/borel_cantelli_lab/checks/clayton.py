"""Clayton closed forms against each other, and the sampler against the closed forms."""

from __future__ import annotations

import math

import numpy as np
from scipy import stats

from borel_cantelli_lab.check_wrapper import Check, CheckContext, CheckResult
from borel_cantelli_lab.lab import LimitExperiment, sample_paths
from borel_cantelli_lab.models.clayton import (
    ClaytonParams,
    ScaledMaxEvent,
    diff_term,
    generator,
    generator_inverse,
    joint_cdf,
    max_cdf,
    pair_joint_scaled,
    scaled_max_cdf,
)

THETAS = (0.5, 1.0, 2.0, 5.0)
KS_PVALUE = 1e-4


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def generator_roundtrip(ctx: CheckContext) -> CheckResult:
    u = np.linspace(0.01, 0.99, 99)
    t = np.logspace(-3, 6, 46)
    worst = 0.0
    for theta in THETAS:
        params = ClaytonParams(theta)
        back_u = np.asarray(generator(params, generator_inverse(params, u)))
        back_t = np.asarray(generator_inverse(params, generator(params, t)))
        worst = max(worst, float(np.max(np.abs(back_u - u) / u)), float(np.max(np.abs(back_t - t) / t)))
    return CheckResult(worst <= 1e-9, f"max relative roundtrip error {worst:.3g}")


def formula_identities(ctx: CheckContext) -> CheckResult:
    rng = np.random.default_rng(ctx.seed)
    failures = []
    for theta in (1.0, 2.0):
        params = ClaytonParams(theta)
        xs = [float(v) for v in rng.uniform(0.05, 0.95, 5)]
        via_generator = float(generator(params, math.fsum(generator_inverse(params, x) for x in xs)))
        if _rel(joint_cdf(params, xs), via_generator) > 1e-12:
            failures.append(f"joint_cdf theta={theta:g}")
        for n in range(1, 7):
            if _rel(max_cdf(params, n, 0.7), joint_cdf(params, [0.7] * n)) > 1e-12:
                failures.append(f"max_cdf n={n} theta={theta:g}")

        ev = ScaledMaxEvent(x=0.5, alpha=0.5)
        for n in (1, 10, 100, 1000):
            thr = ev.x ** (n**-ev.alpha)
            if _rel(scaled_max_cdf(params, n, ev), max_cdf(params, n, thr)) > 1e-9:
                failures.append(f"scaled_max_cdf n={n} theta={theta:g}")
            gap = scaled_max_cdf(params, n, ev) - pair_joint_scaled(params, n, ev)
            if _rel(diff_term(params, n, ev), gap) > 1e-8:
                failures.append(f"diff_term n={n} theta={theta:g}")
        for n in (1, 3):
            thresholds = [ev.x ** (n**-ev.alpha)] * n + [ev.x ** ((n + 1) ** -ev.alpha)]
            if _rel(pair_joint_scaled(params, n, ev), joint_cdf(params, thresholds)) > 1e-12:
                failures.append(f"pair_joint_scaled n={n} theta={theta:g}")
    if failures:
        return CheckResult(False, "mismatch: " + ", ".join(failures))
    return CheckResult(True, "joint, maximum, scaled, pair and difference forms agree")


def sampler_marginals(ctx: CheckContext) -> CheckResult:
    """Kolmogorov-Smirnov tests of X_1 ~ U(0, 1) and of M_10 against max_cdf."""
    exp = LimitExperiment(n_max=100, paths=2000, seed=ctx.seed)
    results = []
    for theta in (1.0, 2.0):
        params = ClaytonParams(theta)
        sample = sample_paths((1, 10), exp, params)
        uniform = stats.kstest(sample.values[:, 0], "uniform")
        maxima = stats.kstest(
            sample.maxima[:, 1], lambda t, params=params: generator(params, 10 * generator_inverse(params, t))
        )
        results.append((theta, float(uniform.pvalue), float(maxima.pvalue)))
    ok = all(pu > KS_PVALUE and pm > KS_PVALUE for _, pu, pm in results)
    detail = ", ".join(f"theta={t:g}: p(X_1)={pu:.3g} p(M_10)={pm:.3g}" for t, pu, pm in results)
    return CheckResult(ok, detail)


def get_all_checks() -> list[Check]:
    """Return checks exposed by this module for verify registration."""
    return [
        Check(
            fn=generator_roundtrip,
            name="generator_roundtrip",
            title="Generator roundtrip",
            description="psi(psi^-1(u)) = u and psi^-1(psi(t)) = t for several theta.",
        ),
        Check(
            fn=formula_identities,
            name="clayton_formula_identities",
            title="Clayton formula identities",
            description="Closed forms agree with the n-dimensional copula and with each other.",
        ),
        Check(
            fn=sampler_marginals,
            name="sampler_marginals",
            title="Sampler marginals",
            description="KS tests of the Marshall-Olkin sampler against the closed forms.",
            quick=False,
        ),
    ]
