"""Monte Carlo runs of the Clayton maxima."""

from __future__ import annotations

import click
import numpy as np

from borel_cantelli_lab import envs, lab
from borel_cantelli_lab.app import EXIT_FAILURE, EXIT_OK, RESOURCE_LIMIT, RunConfig, output_options
from borel_cantelli_lab.commands.analyze import parse_epsilons
from borel_cantelli_lab.errors import BorelCantelliError, ResourceGuard
from borel_cantelli_lab.logger import get_logger
from borel_cantelli_lab.models.clayton import ClaytonParams, path_seed, simulate_path
from borel_cantelli_lab.records import Reporter

logger = get_logger(__name__)

__all__ = ["default_checkpoints", "get_all_commands", "run_simulate"]

DEFAULT_XS = (0.5, 0.9, 0.99)
DEFAULT_STEPS = (10, 50, 100)


def default_checkpoints(n_max: int) -> tuple[int, ...]:
    """Powers of ten from 100 up to n_max / 10."""
    marks = []
    c = 100
    while c * 10 <= n_max:
        marks.append(c)
        c *= 10
    return tuple(marks) or (max(1, n_max // 10),)


def _trace_rows(config: RunConfig, params: ClaytonParams) -> list[list[object]]:
    trace = simulate_path(path_seed(config.seed, 0), config.trace, params)
    n = np.arange(1, config.trace + 1)
    return [[int(i), float(x), float(m)] for i, x, m in zip(n, trace.values(), trace.maxima(), strict=True)]


def run_simulate(config: RunConfig, reporter: Reporter) -> int:
    work = float(config.paths) * float(config.n_max)
    if work > RESOURCE_LIMIT and not config.force:
        raise click.UsageError(str(ResourceGuard(work, RESOURCE_LIMIT)))

    xs = config.xs or DEFAULT_XS
    checkpoints = config.checkpoints or default_checkpoints(config.n_max)
    steps = [n for n in DEFAULT_STEPS if n <= config.n_max]
    try:
        params = ClaytonParams(config.theta)
        exp = lab.LimitExperiment(
            n_max=config.n_max, paths=config.paths, seed=config.seed, workers=config.workers
        )
        comparison = lab.empirical_vs_exact(steps, xs, config.alpha, exp, params)
        tail = lab.empirical_tail_sup(config.alpha, exp, checkpoints, params)
        report = None
        if config.epsilons:
            grid = lab.LimitExperiment(epsilons=config.epsilons, n_max=config.n_max)
            report = lab.theorem31_report(lab.ClaytonScaledMaxModel(alpha=config.alpha, params=params), grid, tail)
    except BorelCantelliError as e:
        reporter.error(f"Error simulating: {e!s}")
        return EXIT_FAILURE

    reporter.record(
        "simulation",
        {
            "theta": params.theta,
            "alpha": config.alpha,
            "n_max": config.n_max,
            "paths": config.paths,
            "seed": config.seed,
        },
    )
    reporter.table(
        "empirical_vs_exact",
        ["n", "x", "alpha", "empirical", "exact", "std_error", "z", "flagged"],
        [[r.n, r.x, r.alpha, r.empirical, r.exact, r.std_error, r.z, r.flagged] for r in comparison],
    )
    reporter.table(
        "tail_sup",
        ["checkpoint", "alpha", "median", "p90"],
        [[r.checkpoint, r.alpha, r.median, r.p90] for r in tail.rows + tail.control],
    )
    if config.trace:
        reporter.table("trace", ["n", "x_n", "m_n"], _trace_rows(config, params))
    if report is not None:
        reporter.record("as_report", report.to_record())

    flags = sum(r.flagged for r in comparison)
    monotone = tail.medians_nonincreasing()
    reporter.record("simulation_status", {"z_flags": flags, "medians_monotone": monotone})
    return EXIT_OK if flags == 0 and monotone else EXIT_FAILURE


@click.command("simulate")
@click.option("--alpha", type=click.FloatRange(0.0, 1.0, max_open=True), default=0.5, show_default=True)
@click.option("--theta", type=click.FloatRange(min=0.0, min_open=True), default=1.0, show_default=True)
@click.option("--x", "xs", type=click.FloatRange(0.0, 1.0, min_open=True, max_open=True), multiple=True,
              help="Threshold(s) for the exact comparison; default 0.5, 0.9, 0.99.")
@click.option("--n-max", type=click.IntRange(min=100), default=100_000, show_default=True)
@click.option("--paths", type=click.IntRange(min=1), default=10_000, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=lambda: envs.get_default_seed(), show_default="0")
@click.option("--workers", type=click.IntRange(min=1), default=lambda: envs.get_workers(), show_default="1")
@click.option("--checkpoints", type=str, default="", help="Comma-separated checkpoints; default powers of ten.")
@click.option("--epsilons", type=str, default="", help="Comma-separated eps grid for the lemma report.")
@click.option("--trace", type=click.IntRange(min=0), default=0, help="Also print (n, X_n, M_n) of path 0 up to n.")
@click.option("--force", is_flag=True, help="Run even when paths x n_max exceeds the resource guard.")
@output_options
def simulate_command(
    alpha: float,
    theta: float,
    xs: tuple[float, ...],
    n_max: int,
    paths: int,
    seed: int,
    workers: int,
    checkpoints: str,
    epsilons: str,
    trace: int,
    force: bool,
    output_format: str,
) -> None:
    """Simulate Clayton paths and compare with the closed forms."""
    try:
        marks = tuple(int(tok) for tok in checkpoints.split(",") if tok.strip())
    except ValueError as e:
        raise click.BadParameter(f"--checkpoints expects comma-separated integers, got {checkpoints!r}") from e
    config = RunConfig(
        command="simulate",
        alpha=alpha,
        theta=theta,
        xs=xs,
        n_max=n_max,
        paths=paths,
        seed=seed,
        workers=workers,
        checkpoints=marks,
        epsilons=parse_epsilons(epsilons),
        trace=trace,
        force=force,
        output_format=output_format,
    )
    raise SystemExit(run_simulate(config, Reporter(output_format)))


def get_all_commands() -> list[click.Command]:
    return [simulate_command]
