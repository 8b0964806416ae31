"""
Run configuration shared by all commands.

Every command builds one RunConfig from its click options and hands it to a
plain ``run_*`` function, so the commands can be driven without click.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any, TypeVar

import click

from borel_cantelli_lab import envs
from borel_cantelli_lab.lemmas import FRECHET_TOLERANCE
from borel_cantelli_lab.series import DEFAULT_MARGIN

__all__ = [
    "EXIT_FAILURE",
    "EXIT_INCONCLUSIVE",
    "EXIT_OK",
    "EXIT_USAGE",
    "RESOURCE_LIMIT",
    "RunConfig",
    "output_options",
]

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

# paths x n_max above which simulate needs --force
RESOURCE_LIMIT = 1e10

F = TypeVar("F", bound=Callable[..., Any])


@dataclass(frozen=True)
class RunConfig:
    command: str
    x: float = 0.9
    alpha: float = 0.5
    theta: float = 1.0
    n_max: int = 1_000_000
    paths: int = 10_000
    seed: int = 0
    epsilons: tuple[float, ...] = ()
    input_path: str | None = None
    output_format: str = "table"
    frechet_tolerance: float = FRECHET_TOLERANCE
    margin: float = DEFAULT_MARGIN
    workers: int = 1
    emit_terms: str | None = None
    independent: bool = False
    monotone_decreasing: bool = False
    tends_to_zero: bool = False
    series: bool = False
    force: bool = False
    quick: bool = False
    perturb: float = 0.0
    xs: tuple[float, ...] = ()
    checkpoints: tuple[int, ...] = ()
    trace: int = 0
    modules: tuple[str, ...] = field(default_factory=tuple)


def output_options(fn: F) -> F:
    """Options every command shares."""
    fn = click.option(
        "--output-format",
        type=click.Choice(["table", "json-lines"]),
        default=lambda: envs.get_output_format(),
        show_default="table",
        help="Render reports as an aligned table or one JSON record per line.",
    )(fn)
    return fn
