"""Run the invariant-check suite."""

from __future__ import annotations

import importlib
from typing import Any

import click

from borel_cantelli_lab import envs
from borel_cantelli_lab.app import EXIT_FAILURE, EXIT_OK, RunConfig, output_options
from borel_cantelli_lab.check_wrapper import Check, CheckContext, CheckResult
from borel_cantelli_lab.logger import get_logger
from borel_cantelli_lab.records import Reporter

logger = get_logger(__name__)

__all__ = ["MODULE_TO_CHECKS", "collect_checks", "get_all_commands", "run_verify"]

MODULE_TO_CHECKS = {
    "series": lambda: importlib.import_module("borel_cantelli_lab.checks.series").get_all_checks(),
    "lemmas": lambda: importlib.import_module("borel_cantelli_lab.checks.lemmas").get_all_checks(),
    "clayton": lambda: importlib.import_module("borel_cantelli_lab.checks.clayton").get_all_checks(),
    "lab": lambda: importlib.import_module("borel_cantelli_lab.checks.lab").get_all_checks(),
}


def collect_checks(modules: tuple[str, ...], quick: bool) -> list[Check]:
    checks: list[Check] = []
    seen: set[str] = set()
    for module_name in modules or tuple(MODULE_TO_CHECKS):
        for check in MODULE_TO_CHECKS[module_name]():
            if check.name in seen:
                logger.warning(f"Skipping duplicate check: {check.name}")
                continue
            if quick and not check.quick:
                logger.debug(f"Skipping slow check in quick mode: {check.name}")
                continue
            seen.add(check.name)
            checks.append(check)
    logger.info(f"Total checks collected: {len(checks)}")
    return checks


def _run_one(check: Check, ctx: CheckContext) -> CheckResult:
    try:
        return check.run(ctx)
    except Exception as e:
        logger.error(f"Check {check.name} raised: {e!r}")
        return CheckResult(False, f"Error running check: {e!s}")


def run_verify(config: RunConfig, reporter: Reporter) -> int:
    ctx = CheckContext(seed=config.seed, perturb=config.perturb, quick=config.quick)
    failed = 0
    for check in collect_checks(config.modules, config.quick):
        result = _run_one(check, ctx)
        failed += not result.passed
        status = "PASS" if result.passed else "FAIL"
        reporter.line("check", f"{status} {check.name}: {result.detail}", name=check.name, passed=result.passed)
    summary: dict[str, Any] = {"failed": failed, "quick": config.quick, "perturb": config.perturb}
    if reporter.as_json:
        reporter.record("verify_summary", summary)
    return EXIT_OK if failed == 0 else EXIT_FAILURE


@click.command("verify")
@click.option("--quick", is_flag=True, help="Skip the Monte Carlo checks and use shorter scan ranges.")
@click.option("--perturb", type=float, default=0.0, help="Add this to every generated q to exercise the Frechet check.")
@click.option("--seed", type=click.IntRange(min=0), default=lambda: envs.get_default_seed(), show_default="0")
@click.option(
    "--modules",
    type=click.Choice(list(MODULE_TO_CHECKS.keys())),
    multiple=True,
    help="Check modules to run. Default is all.",
)
@output_options
def verify_command(quick: bool, perturb: float, seed: int, modules: tuple[str, ...], output_format: str) -> None:
    """Run the invariant checks; exit 0 iff all pass."""
    config = RunConfig(
        command="verify",
        quick=quick,
        perturb=perturb,
        seed=seed,
        modules=modules,
        output_format=output_format,
    )
    raise SystemExit(run_verify(config, Reporter(output_format)))


def get_all_commands() -> list[click.Command]:
    return [verify_command]
