"""
Tabulated sequences as plain text.

Rows are ``n p [q]`` separated by whitespace or commas; ``#`` starts a
comment. An optional header row of column names may precede the data.
Indices must run 1, 2, 3, ... without gaps. A comment line
``# tends_to_zero: certified`` records that the producer of the table knows
P(A_n) -> 0 analytically.
"""

from __future__ import annotations

import re
from collections.abc import Iterable
from dataclasses import dataclass
from typing import IO

import numpy as np

from borel_cantelli_lab.errors import DomainError, MalformedInput
from borel_cantelli_lab.lemmas import PairSeq, ProbSeq
from borel_cantelli_lab.logger import get_logger
from borel_cantelli_lab.series import TermSequence

logger = get_logger(__name__)

__all__ = ["Table", "read_table", "read_terms", "write_table"]

CERTIFIED_DIRECTIVE = "tends_to_zero: certified"
_SPLIT = re.compile(r"[,\s]+")


@dataclass(frozen=True)
class Table:
    p: np.ndarray
    q: np.ndarray | None = None
    tends_to_zero: bool = False
    source: str = "table"

    @property
    def rows(self) -> int:
        return int(self.p.shape[0])

    @property
    def scan_limit(self) -> int:
        """Largest n every condition can be evaluated at.

        Conditions on q need p(n + 1), so a table with a q column reaches one
        row less than it holds.
        """
        return self.rows - 1 if self.q is not None else self.rows

    def sequences(self, tends_to_zero: bool = False) -> tuple[ProbSeq, PairSeq | None]:
        certified = tends_to_zero or self.tends_to_zero
        p = ProbSeq.from_values(self.p, tends_to_zero=certified, label=self.source)
        q = PairSeq.from_values(self.q, label=self.source) if self.q is not None else None
        return p, q


def _parse_rows(lines: Iterable[str]) -> tuple[list[list[float]], bool]:
    rows: list[list[float]] = []
    certified = False
    width: int | None = None
    for lineno, raw in enumerate(lines, start=1):
        body, _, comment = raw.partition("#")
        if CERTIFIED_DIRECTIVE in comment.strip():
            certified = True
        body = body.strip()
        if not body:
            continue
        tokens = _SPLIT.split(body)
        try:
            values = [float(tok) for tok in tokens]
        except ValueError:
            if not rows and all(tok.isidentifier() for tok in tokens):
                continue  # header
            raise MalformedInput(lineno, f"non-numeric field in {body!r}") from None

        if width is None:
            if len(values) not in (2, 3):
                raise MalformedInput(lineno, f"expected columns n, p[, q]; got {len(values)} fields")
            width = len(values)
        elif len(values) != width:
            raise MalformedInput(lineno, f"expected {width} fields, got {len(values)}")

        expected = len(rows) + 1
        if values[0] != expected:
            raise MalformedInput(lineno, f"index {tokens[0]} out of sequence, expected {expected}")
        rows.append(values)
    return rows, certified


def read_table(stream: IO[str], source: str = "table") -> Table:
    rows, certified = _parse_rows(stream)
    if not rows:
        raise MalformedInput(0, "no data rows")
    data = np.asarray(rows, dtype=float)
    q = data[:, 2].copy() if data.shape[1] == 3 else None
    logger.debug(f"read {data.shape[0]} rows from {source} (q column: {q is not None}, certified: {certified})")
    return Table(p=data[:, 1].copy(), q=q, tends_to_zero=certified, source=source)


def read_terms(stream: IO[str], source: str = "terms") -> tuple[TermSequence, int]:
    """Two-column (n, a_n) input as a term sequence and its length.

    Terms are not probabilities here, so values above 1 are kept.
    """
    table = read_table(stream, source)
    if table.q is not None:
        raise DomainError(f"{source}: a term table has two columns, n and a_n; found a third")
    return TermSequence.from_values(table.p, label=source), table.rows


def write_table(
    stream: IO[str],
    p: np.ndarray,
    q: np.ndarray | None = None,
    tends_to_zero: bool = False,
    comments: Iterable[str] = (),
) -> None:
    """Write rows in round-trip float repr so they read back bit-identical."""
    for line in comments:
        stream.write(f"# {line}\n")
    if tends_to_zero:
        stream.write(f"# {CERTIFIED_DIRECTIVE}\n")
    stream.write("n p q\n" if q is not None else "n p\n")

    n = np.arange(1, p.shape[0] + 1)
    if q is None:
        for i, pi in zip(n, p, strict=True):
            stream.write(f"{i} {float(pi)!r}\n")
    else:
        for i, pi, qi in zip(n, p, q, strict=True):
            stream.write(f"{i} {float(pi)!r} {float(qi)!r}\n")
