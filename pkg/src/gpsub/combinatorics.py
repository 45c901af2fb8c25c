"""Combinatorial bases of (shifted) principal subspaces and their characters.

For charge ``i`` and shift ``lam`` (both in basis coordinates) the basis
monomials are ``Psi(e^lam; a_1, m_1; ...)`` with negative offsets, weakly
decreasing along equal letters. The weight of such a monomial is

    (i + lam | i + lam) / 2 + sum_t (-m_t - 1),

so the multigraded character is

    sum_i  q^{(i+lam) A (i+lam) / 2} x^i / ((q)_{i_1} ... (q)_{i_l}).
"""

from __future__ import annotations

import itertools
import json
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, partial
from typing import Sequence

from .exactnum import format_rational, parse_rational
from .freegva import context
from .lattice import Lattice
from .linalg import rank
from .report import Report, parallel_map

__all__ = [
    "BasisBucket",
    "ChargeBoxRequired",
    "QSeries",
    "character",
    "check_extraction",
    "dominates",
    "charge_range",
    "enumerate_basis",
    "monomial_weight",
    "partitions_at_most",
    "verify_character",
]


class ChargeBoxRequired(ValueError):
    """The character sum is infinite for this form without an explicit box."""


# -- series ---------------------------------------------------------------


@dataclass(frozen=True)
class QSeries:
    """Truncated multigraded series ``sum c(i, w) x^i q^w`` with ``w <= cutoff``."""

    cutoff: Fraction
    terms: tuple  # sorted ((charge, weight), coeff) pairs, coeff > 0

    @classmethod
    def from_dict(cls, cutoff, terms: dict) -> "QSeries":
        cutoff = Fraction(cutoff)
        clean = {k: v for k, v in terms.items() if v and k[1] <= cutoff}
        return cls(cutoff, tuple(sorted(clean.items(), key=lambda kv: (kv[0][1], kv[0][0]))))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def coefficient(self, charge: Sequence, weight) -> int:
        return self.as_dict().get((tuple(charge), Fraction(weight)), 0)

    def by_weight(self) -> dict:
        out: dict = {}
        for (_, w), c in self.terms:
            out[w] = out.get(w, 0) + c
        return dict(sorted(out.items()))

    def weight_coefficients(self) -> list:
        """Coefficients of q^0, q^1, ... for integral weights (sums over charge)."""
        bw = self.by_weight()
        return [bw.get(Fraction(n), 0) for n in range(math.floor(self.cutoff) + 1)]

    def truncate(self, cutoff) -> "QSeries":
        cutoff = Fraction(cutoff)
        if cutoff > self.cutoff:
            raise ValueError("cannot truncate above the existing cutoff")
        return QSeries.from_dict(cutoff, self.as_dict())

    def to_human(self) -> str:
        lines = []
        for (charge, w), c in self.terms:
            xs = " ".join(f"x{t + 1}^{e}" for t, e in enumerate(charge) if e)
            lines.append(f"{c} q^{{{format_rational(w)}}}" + (f" {xs}" if xs else ""))
        return "\n".join(lines)

    def to_json(self) -> str:
        payload = {
            "cutoff": format_rational(self.cutoff),
            "terms": [
                {"charge": list(charge), "weight": format_rational(w), "coeff": c}
                for (charge, w), c in self.terms
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "QSeries":
        data = json.loads(text)
        terms = {(tuple(t["charge"]), parse_rational(t["weight"])): t["coeff"] for t in data["terms"]}
        return cls.from_dict(parse_rational(data["cutoff"]), terms)


@lru_cache(maxsize=None)
def partitions_at_most(k: int, n_max: int) -> tuple:
    """Coefficients of ``1/(q)_k`` up to ``q^n_max``: partitions into at most k parts."""
    coeffs = [1] + [0] * n_max
    for r in range(1, k + 1):
        for n in range(r, n_max + 1):
            coeffs[n] += coeffs[n - r]
    return tuple(coeffs)


# -- charges and weights ----------------------------------------------------


def _shift(lattice: Lattice, lam) -> tuple:
    if lam is None:
        return lattice.zero()
    lam = tuple(Fraction(x) for x in lam)
    if len(lam) != lattice.rank:
        raise ValueError(f"shift has {len(lam)} coordinates, lattice rank is {lattice.rank}")
    return lam


def base_weight(lattice: Lattice, lam, charge: Sequence) -> Fraction:
    lam = _shift(lattice, lam)
    return lattice.norm(tuple(c + l for c, l in zip(charge, lam)))


def monomial_weight(lattice: Lattice, lam, letters: Sequence) -> Fraction:
    charge = [0] * lattice.rank
    for a, _ in letters:
        charge[a] += 1
    return base_weight(lattice, lam, charge) - sum(m for _, m in letters) - len(letters)


def charge_range(lattice: Lattice, lam, cutoff, charge_box=None) -> list:
    """All charges ``i >= 0`` whose lowest weight is at most ``cutoff``."""
    lam = _shift(lattice, lam)
    cutoff = Fraction(cutoff)
    if charge_box is not None:
        box = tuple(int(b) for b in charge_box)
        if len(box) != lattice.rank:
            raise ValueError("charge box length must equal the lattice rank")
        if not lattice.positive_definite:
            warnings.warn(
                "form is not positive definite; the character is truncated to the charge box",
                stacklevel=2,
            )
    else:
        if not lattice.positive_definite:
            raise ChargeBoxRequired("form is not positive definite; pass a charge box")
        box = tuple(math.floor(lattice.coordinate_bound(t, cutoff) - lam[t]) for t in range(lattice.rank))
    out = []
    for i in itertools.product(*(range(b + 1) for b in box)):
        if base_weight(lattice, lam, i) <= cutoff:
            out.append(i)
    return out


# -- enumeration --------------------------------------------------------------


@dataclass(frozen=True)
class BasisBucket:
    charge: tuple
    weight: Fraction
    members: tuple

    def __len__(self):
        return len(self.members)


def _partitions(n: int, parts: int, low: int = 0):
    """Weakly increasing tuples of ``parts`` integers >= low summing to n."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(low, n // parts + 1):
        for rest in _partitions(n - first, parts - 1, first):
            yield (first,) + rest


def enumerate_basis(lattice: Lattice, lam, charge: Sequence, max_weight) -> list:
    """Basis buckets of the given charge, one per weight up to ``max_weight``."""
    charge = tuple(int(c) for c in charge)
    if any(c < 0 for c in charge):
        raise ValueError("charge entries must be nonnegative")
    base = base_weight(lattice, lam, charge)
    room = Fraction(max_weight) - base
    if room < 0:
        return []
    buckets = []
    for excess in range(math.floor(room) + 1):
        members = []
        # split the excess weight between letters, then each share into a partition
        for split in _compositions(excess, len(charge)):
            per_letter = [list(_partitions(s, c)) for s, c in zip(split, charge)]
            for choice in itertools.product(*per_letter):
                letters = []
                for a, parts in enumerate(choice):
                    letters.extend((a, -1 - p) for p in parts)
                members.append(tuple(letters))
        if members:
            buckets.append(BasisBucket(charge, base + excess, tuple(sorted(members))))
    return buckets


def _compositions(n: int, k: int):
    if k == 0:
        if n == 0:
            yield ()
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


# -- character ----------------------------------------------------------------


def character(lattice: Lattice, lam=None, cutoff=0, charge_box=None) -> QSeries:
    lam = _shift(lattice, lam)
    cutoff = Fraction(cutoff)
    terms = {}
    for i in charge_range(lattice, lam, cutoff, charge_box):
        q0 = base_weight(lattice, lam, i)
        room = math.floor(cutoff - q0)
        poly = [1] + [0] * room
        for k in i:
            part = partitions_at_most(k, room)
            poly = [sum(poly[a] * part[n - a] for a in range(n + 1)) for n in range(room + 1)]
        for n, c in enumerate(poly):
            if c:
                terms[(i, q0 + n)] = c
    return QSeries.from_dict(cutoff, terms)


# -- three-way verification -------------------------------------------------


def _verify_charge(lattice: Lattice, lam, cutoff, charge) -> list:
    ctx = context(lattice)
    rows = []
    for bucket in enumerate_basis(lattice, lam, charge, cutoff):
        images = [ctx.evaluate_monomial(m, lam) for m in bucket.members]
        r = rank(dict(v.items()) for v in images)
        rows.append((charge, bucket.weight, len(bucket), r))
    return rows


def verify_character(lattice: Lattice, lam=None, cutoff=0, charge_box=None, jobs: int = 1) -> Report:
    """Compare character coefficients, basis counts and Fock ranks bucket by bucket."""
    lam = _shift(lattice, lam)
    cutoff = Fraction(cutoff)
    series = character(lattice, lam, cutoff, charge_box).as_dict()
    charges = charge_range(lattice, lam, cutoff, charge_box)
    found = parallel_map(partial(_verify_charge, lattice, lam, cutoff), charges, jobs)
    report = Report(
        claim="character = basis count = rank of Fock images",
        lattice=str(lattice) + (f" shift={list(map(format_rational, lam))}" if any(lam) else ""),
        columns=("character", "basis", "rank"),
    )
    seen = set()
    for rows in found:
        for charge, w, size, r in rows:
            c = series.get((charge, w), 0)
            seen.add((charge, w))
            report.rows.append(
                {"bucket": (charge, w), "character": c, "basis": size, "rank": r, "ok": c == size == r}
            )
    for key, c in series.items():
        if key not in seen:
            report.rows.append({"bucket": key, "character": c, "basis": 0, "rank": 0, "ok": False})
    report.rows.sort(key=lambda r: (r["bucket"][1], r["bucket"][0]))
    return report


# -- extraction operators -----------------------------------------------------


def dominates(a: Sequence, b: Sequence) -> bool:
    """``a > b``: same letters, and the first differing offset of ``a`` is smaller."""
    if len(a) != len(b) or any(x[0] != y[0] for x, y in zip(a, b)):
        return False
    for (_, m), (_, n) in zip(a, b):
        if m != n:
            return m < n
    return False


def _extraction_charge(lattice: Lattice, cutoff, charge) -> list:
    ctx = context(lattice)
    vac_key = ((), lattice.zero())
    rows = []
    for bucket in enumerate_basis(lattice, None, charge, cutoff):
        images = {m: ctx.evaluate_monomial(m) for m in bucket.members}
        diag_ok = True
        off_ok = True
        pairs = 0
        for a in bucket.members:
            xa = ctx.space.x_operator(a, images[a])
            if xa.is_zero() or set(xa.keys()) != {vac_key}:
                diag_ok = False
            for b in bucket.members:
                if dominates(a, b):
                    pairs += 1
                    if not ctx.space.x_operator(a, images[b]).is_zero():
                        off_ok = False
        rows.append((charge, bucket.weight, len(bucket), pairs, diag_ok, off_ok))
    return rows


def check_extraction(lattice: Lattice, cutoff, jobs: int = 1) -> Report:
    """``X_a(a)`` is a nonzero multiple of the vacuum and ``X_a(b) = 0`` whenever ``a > b``."""
    if not lattice.trivial_cocycle:
        raise ValueError("the extraction identities are stated for the trivial cocycle")
    report = Report(
        claim="extraction operators separate the basis",
        lattice=str(lattice),
        columns=("basis", "pairs", "diagonal", "triangular"),
    )
    charges = charge_range(lattice, None, cutoff)
    for rows in parallel_map(partial(_extraction_charge, lattice, Fraction(cutoff)), charges, jobs):
        for charge, w, size, pairs, d, o in rows:
            report.rows.append(
                {"bucket": (charge, w), "basis": size, "pairs": pairs, "diagonal": d, "triangular": o, "ok": d and o}
            )
    report.rows.sort(key=lambda r: (r["bucket"][1], r["bucket"][0]))
    return report
