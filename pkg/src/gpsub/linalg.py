"""Exact sparse row reduction over rationals and cyclotomic scalars.

Vectors are dicts ``{column: coeff}`` with arbitrary hashable columns. The
reducer keeps its rows in reduced echelon form, so reducing an incoming
vector needs a single pass over the pivot columns it touches.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .exactnum import is_zero, simplify

__all__ = ["RowReducer", "kernel", "rank"]


def _axpy(target: dict, row: dict, factor) -> None:
    for k, x in row.items():
        val = target.get(k, 0) - factor * x
        if is_zero(val):
            target.pop(k, None)
        else:
            target[k] = simplify(val)


class RowReducer:
    """Incremental RREF; optionally tracks each row as a combination of inputs."""

    def __init__(self, track: bool = False):
        self.track = track
        self._rows: dict = {}
        self._combos: dict = {}
        self.relations: list = []
        self._count = 0

    @property
    def rank(self) -> int:
        return len(self._rows)

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; return True iff it was independent of earlier inputs."""
        v = {k: c for k, c in vec.items() if not is_zero(c)}
        combo = {self._count: Fraction(1)} if self.track else None
        self._count += 1
        for col in [k for k in v if k in self._rows]:
            f = v.get(col)
            if f is None:
                continue
            _axpy(v, self._rows[col], f)
            if combo is not None:
                _axpy(combo, self._combos[col], f)
        if not v:
            if combo is not None:
                self.relations.append(combo)
            return False
        piv = next(iter(v))
        inv = 1 / v[piv]
        v = {k: simplify(c * inv) for k, c in v.items()}
        if combo is not None:
            combo = {k: simplify(c * inv) for k, c in combo.items()}
        for col, row in self._rows.items():
            f = row.get(piv)
            if f is not None:
                _axpy(row, v, f)
                if combo is not None:
                    _axpy(self._combos[col], combo, f)
        self._rows[piv] = v
        if combo is not None:
            self._combos[piv] = combo
        return True


def rank(vectors: Iterable[dict]) -> int:
    r = RowReducer()
    for v in vectors:
        r.add(v)
    return r.rank


def kernel(images: list) -> list:
    """Basis of ``{c : sum_j c_j images[j] = 0}`` as dicts ``{j: c_j}``."""
    r = RowReducer(track=True)
    for v in images:
        r.add(v)
    return r.relations
