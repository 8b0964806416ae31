"""
Report rendering.

``json-lines`` writes one self-contained JSON object per line, each carrying
``schema_version`` and ``record``; ``table`` writes aligned text meant for
people. Nothing here reads clocks or the environment, so equal inputs give
equal bytes.
"""

from __future__ import annotations

import json
import math
from collections.abc import Sequence
from typing import IO, Any

import click

__all__ = ["SCHEMA_VERSION", "Reporter"]

SCHEMA_VERSION = 1


def _cell(value: Any) -> str:
    if isinstance(value, bool) or value is None:
        return str(value).lower() if value is not None else "-"
    if isinstance(value, float):
        return f"{value:.6g}" if math.isfinite(value) else str(value)
    return str(value)


def _jsonable(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


class Reporter:
    def __init__(self, output_format: str = "table", stream: IO[str] | None = None) -> None:
        self.output_format = output_format
        self.stream = stream

    @property
    def as_json(self) -> bool:
        return self.output_format == "json-lines"

    def _echo(self, text: str) -> None:
        click.echo(text, file=self.stream)

    def record(self, kind: str, payload: dict[str, Any]) -> None:
        """One structured record."""
        if self.as_json:
            self._echo(json.dumps(_jsonable({"schema_version": SCHEMA_VERSION, "record": kind, **payload})))
            return
        self._echo(f"[{kind}]")
        width = max((len(k) for k in payload), default=0)
        for key, value in payload.items():
            if isinstance(value, (dict, list)):
                value = json.dumps(_jsonable(value))
            self._echo(f"  {key:<{width}}  {_cell(value)}")

    def table(self, kind: str, columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
        """Columnar results; one JSON record per row in json-lines mode."""
        if self.as_json:
            for row in rows:
                self.record(kind, dict(zip(columns, row, strict=True)))
            return
        cells = [[_cell(v) for v in row] for row in rows]
        widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
        self._echo(f"[{kind}]")
        self._echo("  ".join(c.rjust(w) for c, w in zip(columns, widths, strict=True)))
        for r in cells:
            self._echo("  ".join(v.rjust(w) for v, w in zip(r, widths, strict=True)))

    def line(self, kind: str, text: str, **fields: Any) -> None:
        """A one-line status message."""
        if self.as_json:
            self.record(kind, {"message": text, **fields})
        else:
            self._echo(text)

    def error(self, text: str) -> None:
        click.echo(text, err=True)
