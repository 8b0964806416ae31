"""
Check wrapper giving every invariant check the same registration interface.
"""

from collections.abc import Callable
from dataclasses import dataclass


@dataclass(frozen=True)
class CheckContext:
    """Run-wide knobs handed to every check."""

    seed: int = 0
    perturb: float = 0.0
    quick: bool = False


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    detail: str


class Check:
    """A named invariant check returning a CheckResult."""

    def __init__(
        self,
        fn: Callable[[CheckContext], CheckResult],
        name: str,
        title: str = "",
        description: str = "",
        quick: bool = True,
    ):
        self.fn = fn
        self.name = name
        self.title = title
        self.description = description
        self.quick = quick
        self.__name__ = name

    def run(self, ctx: CheckContext) -> CheckResult:
        return self.fn(ctx)
