"""Analytic treatment of the scaled Clayton maxima."""

from __future__ import annotations

import math

import click
import numpy as np

from borel_cantelli_lab import lab
from borel_cantelli_lab.app import EXIT_FAILURE, RunConfig, output_options
from borel_cantelli_lab.commands.classify import report_verdict
from borel_cantelli_lab.errors import BorelCantelliError
from borel_cantelli_lab.lemmas import Condition, evaluate
from borel_cantelli_lab.logger import get_logger
from borel_cantelli_lab.models.clayton import (
    ClaytonParams,
    ScaledMaxEvent,
    diff_term,
    pair_joint_scaled,
    scaled_max_cdf,
    scaled_max_events,
)
from borel_cantelli_lab.models.tabulated import write_table
from borel_cantelli_lab.records import Reporter

logger = get_logger(__name__)

__all__ = ["asymptotic_ratios", "emit_terms", "get_all_commands", "run_analyze"]


def asymptotic_ratios(params: ClaytonParams, n: int, ev: ScaledMaxEvent) -> tuple[float | None, float | None]:
    """P(M_n^(n^alpha) <= x) * n^(1-alpha) * (-log x) and diff_term * n^(2-alpha) * (-log x).

    Both tend to 1 for theta = 1 and 0 < alpha < 1; undefined otherwise.
    """
    if params.theta != 1.0 or ev.alpha == 0.0:
        return None, None
    c = -math.log(ev.x)
    ratio_p = float(scaled_max_cdf(params, n, ev)) * n ** (1.0 - ev.alpha) * c
    ratio_diff = float(diff_term(params, n, ev)) * n ** (2.0 - ev.alpha) * c
    return ratio_p, ratio_diff


def emit_terms(path: str, params: ClaytonParams, ev: ScaledMaxEvent, n_max: int) -> None:
    """Write n, p, q for n = 1..n_max + 1 so classify scans exactly n_max."""
    n = np.arange(1, n_max + 2, dtype=np.int64)
    with open(path, "w", encoding="utf-8") as stream:
        write_table(
            stream,
            np.asarray(scaled_max_cdf(params, n, ev)),
            np.asarray(pair_joint_scaled(params, n, ev)),
            tends_to_zero=True,
            comments=[f"clayton scaled maxima: theta={params.theta!r} x={ev.x!r} alpha={ev.alpha!r}"],
        )


def run_analyze(config: RunConfig, reporter: Reporter) -> int:
    try:
        params = ClaytonParams(config.theta)
        ev = ScaledMaxEvent(x=config.x, alpha=config.alpha)
        p, q = scaled_max_events(params, ev)
        verdict = evaluate(
            p,
            q,
            monotone_decreasing=ev.alpha == 0.0,
            n_max=config.n_max,
            margin=config.margin,
            frechet_tolerance=config.frechet_tolerance,
        )
        if config.emit_terms:
            emit_terms(config.emit_terms, params, ev, config.n_max)
            logger.info(f"wrote {config.n_max + 1} rows to {config.emit_terms}")
        report = None
        if config.epsilons:
            exp = lab.LimitExperiment(epsilons=config.epsilons, n_max=config.n_max, margin=config.margin)
            report = lab.theorem31_report(lab.ClaytonScaledMaxModel(alpha=ev.alpha, params=params), exp)
    except OSError as e:
        reporter.error(f"Error writing terms: {e!s}")
        return EXIT_FAILURE
    except BorelCantelliError as e:
        reporter.error(f"Error analyzing: {e!s}")
        return EXIT_FAILURE

    ratio_p, ratio_diff = asymptotic_ratios(params, config.n_max, ev)
    summary = {
        f"condition_{cond.value}": verdict.report(cond).classification.value  # type: ignore[union-attr]
        for cond in (Condition.C1_2, Condition.C2_1, Condition.C2_2)
    }
    reporter.record(
        "analysis",
        {
            "theta": params.theta,
            "x": ev.x,
            "alpha": ev.alpha,
            "n_max": config.n_max,
            **summary,
            "ratio_p": ratio_p,
            "ratio_diff": ratio_diff,
        },
    )
    status = report_verdict(reporter, verdict, x=ev.x, alpha=ev.alpha, n_max=config.n_max)
    if report is not None:
        reporter.record("as_report", report.to_record())
    return status


@click.command("analyze")
@click.option("--x", type=click.FloatRange(0.0, 1.0, min_open=True, max_open=True), default=0.9, show_default=True)
@click.option("--alpha", type=click.FloatRange(0.0, 1.0, max_open=True), default=0.5, show_default=True,
              help="Scaling exponent; 0 selects the unscaled maxima.")
@click.option("--theta", type=click.FloatRange(min=0.0, min_open=True), default=1.0, show_default=True)
@click.option("--n-max", type=click.IntRange(min=100), default=1_000_000, show_default=True)
@click.option("--epsilons", type=str, default="", help="Comma-separated eps grid for an a.s. convergence report.")
@click.option("--emit-terms", type=click.Path(dir_okay=False), default=None, help="Write the (n, p, q) table here.")
@click.option("--frechet-tolerance", type=click.FloatRange(min=0.0), default=1e-12, show_default=True)
@click.option("--margin", type=click.FloatRange(0.0, 0.5, min_open=True, max_open=True), default=0.1, show_default=True)
@output_options
def analyze_command(
    x: float,
    alpha: float,
    theta: float,
    n_max: int,
    epsilons: str,
    emit_terms: str | None,
    frechet_tolerance: float,
    margin: float,
    output_format: str,
) -> None:
    """Classify the conditions for {M_n^(n^alpha) <= x} in closed form."""
    config = RunConfig(
        command="analyze",
        x=x,
        alpha=alpha,
        theta=theta,
        n_max=n_max,
        epsilons=parse_epsilons(epsilons),
        emit_terms=emit_terms,
        frechet_tolerance=frechet_tolerance,
        margin=margin,
        output_format=output_format,
    )
    raise SystemExit(run_analyze(config, Reporter(output_format)))


def parse_epsilons(text: str) -> tuple[float, ...]:
    if not text.strip():
        return ()
    try:
        return tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError as e:
        raise click.BadParameter(f"--epsilons expects comma-separated numbers, got {text!r}") from e


def get_all_commands() -> list[click.Command]:
    return [analyze_command]
