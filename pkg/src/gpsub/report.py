"""Verification reports: per-bucket rows, a summary verdict, human and JSON output."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .exactnum import format_rational

__all__ = ["Report", "parallel_map"]


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def _cell(x) -> str:
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, tuple):
        return "(" + ",".join(_cell(y) for y in x) + ")"
    if isinstance(x, bool):
        return "ok" if x else "FAIL"
    return str(x)


@dataclass
class Report:
    """Outcome of one verification.

    ``claim`` names the statement being checked; each row is a dict whose
    ``bucket`` entry is a ``(charge, weight)`` pair and whose ``ok`` entry is
    the per-bucket verdict. Remaining entries are the compared quantities.
    """

    claim: str
    lattice: str
    columns: tuple
    rows: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r["ok"] for r in self.rows)

    @property
    def failures(self) -> list:
        return [r for r in self.rows if not r["ok"]]

    def summary(self) -> str:
        verdict = "PASS" if self.passed else f"FAIL ({len(self.failures)} buckets)"
        return f"{self.claim} | {self.lattice} | buckets: {len(self.rows)} | {verdict}"

    def to_human(self) -> str:
        lines = []
        for r in self.rows:
            charge, weight = r["bucket"]
            values = ", ".join(f"{c}={_cell(r[c])}" for c in self.columns)
            verdict = "ok" if r["ok"] else "FAIL"
            lines.append(f"({_cell(charge)}; {_cell(weight)}): " + (f"{values}, {verdict}" if values else verdict))
        lines.extend(f"# {n}" for n in self.notes)
        lines.append(self.summary())
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "lattice": self.lattice,
            "buckets": len(self.rows),
            "passed": self.passed,
            "columns": list(self.columns),
            "rows": [_jsonable(r) for r in self.rows],
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def parallel_map(fn: Callable, items: Iterable, jobs: int = 1) -> list:
    """``[fn(x) for x in items]``, optionally across processes; order is preserved."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))
