"""Agreement of the analytic and empirical routes to almost-sure convergence."""

from __future__ import annotations

from borel_cantelli_lab.check_wrapper import Check, CheckContext, CheckResult
from borel_cantelli_lab.lab import (
    ClaytonScaledMaxModel,
    LimitExperiment,
    Overall,
    corollary31_check,
    empirical_tail_sup,
    theorem31_report,
)
from borel_cantelli_lab.lemmas import Rule


def scaled_maxima_converge(ctx: CheckContext) -> CheckResult:
    exp = LimitExperiment(epsilons=(0.5, 0.1, 0.05), n_max=100_000 if ctx.quick else 1_000_000)
    report = theorem31_report(ClaytonScaledMaxModel(alpha=0.5), exp)
    rules = {verdict.fired_by for _, verdict in report.per_epsilon}
    ok = report.overall is Overall.AS_CONVERGENT and rules == {Rule.LEMMA21}
    return CheckResult(ok, f"{report.overall.value} via {', '.join(sorted(r.value for r in rules))}")


def unscaled_routes_agree(ctx: CheckContext) -> CheckResult:
    exp = LimitExperiment(epsilons=(0.5, 0.1, 0.05), n_max=100_000)
    model = ClaytonScaledMaxModel.unscaled()
    shortcut = corollary31_check(model, exp)
    general = theorem31_report(model, exp)
    ok = shortcut.overall is Overall.AS_CONVERGENT and general.overall is shortcut.overall
    return CheckResult(ok, f"shortcut {shortcut.overall.value}, lemma engine {general.overall.value}")


def empirical_tail_shrinks(ctx: CheckContext) -> CheckResult:
    """ASConvergent analytically implies the median tail sup falls from first to last checkpoint."""
    exp = LimitExperiment(n_max=10_000, paths=200, seed=ctx.seed)
    table = empirical_tail_sup(0.5, exp, (10, 100, 1000), control=False)
    medians = table.medians()
    ok = medians[-1] < medians[0] and table.medians_nonincreasing()
    return CheckResult(ok, "medians " + ", ".join(f"{m:.4g}" for m in medians))


def get_all_checks() -> list[Check]:
    """Return checks exposed by this module for verify registration."""
    return [
        Check(
            fn=scaled_maxima_converge,
            name="scaled_maxima_converge",
            title="Scaled maxima converge a.s.",
            description="Every eps of the grid settles IOZero through the exit-probability lemma.",
        ),
        Check(
            fn=unscaled_routes_agree,
            name="unscaled_routes_agree",
            title="Unscaled routes agree",
            description="The decreasing-events shortcut and the full engine agree on M_n.",
        ),
        Check(
            fn=empirical_tail_shrinks,
            name="empirical_tail_shrinks",
            title="Empirical tail sup",
            description="Simulated tail sup medians decrease across checkpoints.",
            quick=False,
        ),
    ]
