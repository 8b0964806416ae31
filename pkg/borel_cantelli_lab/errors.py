"""
Exception hierarchy for the Borel-Cantelli lab.

Every error raised by the library derives from BorelCantelliError so that the
command layer can catch one type at the boundary and turn it into an exit
status. Errors tied to a position in a sequence carry that index as ``n``.
"""

from __future__ import annotations

__all__ = [
    "BorelCantelliError",
    "DomainError",
    "EmptyEpsilonGrid",
    "FrechetViolation",
    "InsufficientRange",
    "MalformedInput",
    "MissingPairSeq",
    "MonotonicityNotAsserted",
    "NegativeTerm",
    "NonFiniteTerm",
    "OutOfRangeProbability",
    "ResourceGuard",
]


class BorelCantelliError(Exception):
    """Base class for all library errors."""


class IndexedError(BorelCantelliError):
    """An error located at index ``n`` of a sequence."""

    def __init__(self, n: int, message: str) -> None:
        self.n = int(n)
        super().__init__(f"{message} at n={self.n}")


class NegativeTerm(IndexedError):
    def __init__(self, n: int, value: float) -> None:
        self.value = value
        super().__init__(n, f"negative term {value!r}")


class NonFiniteTerm(IndexedError):
    def __init__(self, n: int, value: float) -> None:
        self.value = value
        super().__init__(n, f"non-finite term {value!r}")


class OutOfRangeProbability(IndexedError):
    def __init__(self, n: int, value: float) -> None:
        self.value = value
        super().__init__(n, f"probability {value!r} outside [0, 1]")


class FrechetViolation(IndexedError):
    """P(A_n A_{n+1}) lies outside its Frechet-Hoeffding bounds."""

    def __init__(self, n: int, q: float, lower: float, upper: float) -> None:
        self.q = q
        self.lower = lower
        self.upper = upper
        super().__init__(n, f"joint probability {q!r} outside Frechet bounds [{lower!r}, {upper!r}]")


class InsufficientRange(BorelCantelliError):
    def __init__(self, n_max: int, minimum: int = 100) -> None:
        self.n_max = n_max
        super().__init__(f"n_max={n_max} is below the minimum scan range {minimum}")


class MissingPairSeq(BorelCantelliError):
    """A branch needs P(A_n A_{n+1}) but no pair sequence was supplied."""

    def __init__(self, branch: str) -> None:
        self.branch = branch
        super().__init__(f"branch {branch} needs a pair sequence; none supplied")


class DomainError(BorelCantelliError):
    """A model parameter or argument lies outside its domain."""


class EmptyEpsilonGrid(BorelCantelliError):
    def __init__(self) -> None:
        super().__init__("epsilon grid is empty")


class MonotonicityNotAsserted(BorelCantelliError):
    def __init__(self) -> None:
        super().__init__("the event family must be asserted decreasing in n")


class MalformedInput(BorelCantelliError):
    """A row of tabulated input could not be parsed."""

    def __init__(self, line: int, reason: str) -> None:
        self.line = line
        super().__init__(f"line {line}: {reason}")


class ResourceGuard(BorelCantelliError):
    def __init__(self, work: float, limit: float) -> None:
        self.work = work
        self.limit = limit
        super().__init__(f"paths x n_max = {work:.3g} exceeds {limit:.3g}; pass --force to run anyway")
