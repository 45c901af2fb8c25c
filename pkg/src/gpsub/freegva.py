"""Mode monomials of the free generalized vertex algebra and their normal forms.

A monomial is a tuple of letters ``(a, m)`` read inside-out: the first letter
acts first on the vacuum. The i-th letter acts with the actual mode
``m_i + sum_{j<i} N(a_i, a_j)`` where ``N(a, b) = -(b_a|b_b)``.

:func:`straighten` rewrites any element into the span of the ordered basis
monomials (letters weakly increasing, offsets negative, offsets weakly
decreasing along equal letters) using the three-term locality identity

    a(s) b(t) c = w(a,b) sum_j (-1)^j C(N,j) b(t+N-j) a(s-N+j) c
                 + sum_j (-1)^j C(N,j+1) a(s-1-j) b(t+1+j) c,

``w = omega`` the locality invariant. Terms whose inner part has too large a
degree vanish, which truncates every j-sum.
"""

from __future__ import annotations

import os
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .exactnum import format_scalar, gen_binomial, parse_scalar, simplify
from .fock import FockSpace, FockVector, _accumulate
from .lattice import Lattice

__all__ = [
    "FreeElement",
    "StraighteningError",
    "Straightener",
    "charge_of",
    "context",
    "degree",
    "evaluate_fock",
    "format_element",
    "format_monomial",
    "is_basis_monomial",
    "is_zero_by_degree",
    "parse_element",
    "parse_monomial",
    "straighten",
]

DEFAULT_JMAX = 64


class StraighteningError(RuntimeError):
    """A j-sum did not terminate within the configured cap."""


def _jmax_from_env() -> int:
    raw = os.environ.get("GPSUB_JMAX")
    if raw is None:
        return DEFAULT_JMAX
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"GPSUB_JMAX must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("GPSUB_JMAX must be positive")
    return value


# -- monomial predicates ------------------------------------------------------


def degree(letters: Sequence) -> int:
    return sum(m for _, m in letters)


def charge_of(letters: Sequence, rank: int) -> tuple:
    out = [0] * rank
    for a, _ in letters:
        out[a] += 1
    return tuple(out)


def is_zero_by_degree(letters: Sequence) -> bool:
    """True iff some innermost segment of length r has offset sum > -r."""
    s = 0
    for r, (_, m) in enumerate(letters, start=1):
        s += m
        if s > -r:
            return True
    return False


def is_basis_monomial(letters: Sequence) -> bool:
    prev = None
    for a, m in letters:
        if m >= 0:
            return False
        if prev is not None:
            pa, pm = prev
            if a < pa or (a == pa and m > pm):
                return False
        prev = (a, m)
    return True


# -- elements -------------------------------------------------------------------


class FreeElement:
    """Finite linear combination of monomials (immutable)."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            _accumulate(clean, ((tuple(tuple(x) for x in k), c) for k, c in items))
        self._terms = clean

    @classmethod
    def monomial(cls, letters: Iterable, coeff=1) -> "FreeElement":
        return cls({tuple((int(a), int(m)) for a, m in letters): coeff})

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coefficient(self, letters):
        return self._terms.get(tuple(letters), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other):
        out = dict(self._terms)
        _accumulate(out, other._terms.items())
        e = FreeElement()
        e._terms = out
        return e

    def __neg__(self):
        return FreeElement({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return FreeElement({k: v * c for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return f"FreeElement({len(self)} terms)"


# -- straightening ------------------------------------------------------------


class Straightener:
    """Normal-form engine for one lattice; results are memoized per monomial."""

    def __init__(self, lattice: Lattice, jmax: int | None = None):
        self.lattice = lattice
        self.jmax = _jmax_from_env() if jmax is None else jmax
        self._cache: dict = {}
        rank = lattice.rank
        self._bound = [[-lattice.gram[a][b] for b in range(rank)] for a in range(rank)]
        self._omega = [
            [simplify(lattice.omega(lattice.basis_vector(a), lattice.basis_vector(b))) for b in range(rank)]
            for a in range(rank)
        ]

    def normal_form(self, letters: tuple) -> dict:
        hit = self._cache.get(letters)
        if hit is not None:
            return hit
        if is_zero_by_degree(letters):
            out: dict = {}
        elif len(letters) <= 1 or is_basis_monomial(letters):
            out = {letters: Fraction(1)}
        else:
            out = {}
            last = letters[-1]
            for u, c in self.normal_form(letters[:-1]).items():
                _accumulate(out, ((k, x * c) for k, x in self._top(u, last).items()))
        self._cache[letters] = out
        return out

    def _top(self, u: tuple, last: tuple) -> dict:
        # u is a basis monomial; place `last` on top of it
        c, m = last
        if not u:
            return self.normal_form((last,))
        b, mp = u[-1]
        if (c > b and m <= -1) or (c == b and m <= mp):
            return {u + (last,): Fraction(1)}
        out: dict = {}
        for term, coeff in self._rewrite(u[:-1], (c, m), (b, mp)):
            nf = self.normal_form(term)
            if nf:
                _accumulate(out, ((k, x * coeff) for k, x in nf.items()))
        return out

    def _rewrite(self, pre: tuple, outer: tuple, inner: tuple):
        """Apply the locality identity to the outermost pair ``outer o inner``."""
        c, m = outer
        b, mp = inner
        N = self._bound[c][b]
        w = self._omega[c][b]
        k = len(pre) + 2
        spre = degree(pre)
        j = 0
        while True:
            alive_swap = spre + m + j <= -(k - 1)
            alive_keep = spre + mp + 1 + j <= -(k - 1)
            if not (alive_swap or alive_keep):
                return
            if j > self.jmax:
                raise StraighteningError(
                    f"j-sum exceeded cap {self.jmax} while rewriting {pre + (inner, outer)}"
                )
            sign = -1 if j % 2 else 1
            if alive_swap:
                coef = gen_binomial(N, j)
                if coef:
                    yield pre + ((c, m + j), (b, mp - j)), simplify(w * coef * sign)
            if alive_keep:
                coef = gen_binomial(N, j + 1)
                if coef:
                    yield pre + ((b, mp + 1 + j), (c, m - 1 - j)), coef * sign
            j += 1

    def straighten(self, x: FreeElement) -> FreeElement:
        out: dict = {}
        for letters, c in x.items():
            _accumulate(out, ((k, v * c) for k, v in self.normal_form(letters).items()))
        e = FreeElement()
        e._terms = out
        return e


class _Context:
    def __init__(self, lattice: Lattice):
        self.lattice = lattice
        self.space = FockSpace(lattice)
        self.straightener = Straightener(lattice)
        self._eval: dict = {}

    def evaluate_monomial(self, letters: tuple, start=None) -> FockVector:
        lat = self.lattice
        start = lat.zero() if start is None else tuple(Fraction(x) for x in start)
        key = (letters, start)
        hit = self._eval.get(key)
        if hit is not None:
            return hit
        if not letters:
            v = self.space.exp(start)
        else:
            prev = self.evaluate_monomial(letters[:-1], start)
            a, m = letters[-1]
            alpha = lat.basis_vector(a)
            mode = m - sum((lat.gram[a][b] for b, _ in letters[:-1]), Fraction(0)) - lat.pairing(alpha, start)
            v = self.space.vertex_mode(alpha, mode, prev) if prev else prev
        self._eval[key] = v
        return v

    def evaluate(self, x: FreeElement, start=None) -> FockVector:
        out: dict = {}
        for letters, c in x.items():
            _accumulate(out, ((k, v * c) for k, v in self.evaluate_monomial(letters, start).items()))
        return FockVector._raw(out)


@lru_cache(maxsize=32)
def context(lattice: Lattice) -> _Context:
    """Shared Fock space, straightener and evaluation cache for ``lattice``."""
    return _Context(lattice)


def straighten(x: FreeElement, lattice: Lattice) -> FreeElement:
    return context(lattice).straightener.straighten(x)


def evaluate_fock(x: FreeElement, lattice: Lattice, start=None) -> FockVector:
    """Image of ``x`` in the Fock model, acting on ``e^start`` (default: vacuum)."""
    return context(lattice).evaluate(x, start)


# -- text syntax --------------------------------------------------------------
#
#   element  := "0" | term (("+" | "-") term)*
#   term     := [coeff "*"] monomial
#   coeff    := rational | "[" scalar "]"
#   monomial := "|0>" | letter (" " letter)*
#   letter   := (label | index) "(" integer ")"
#
# Letters are written in application order: the leftmost acts first.

_LETTER = re.compile(r"([^\s()\[\]*+]+)\((-?\d+)\)")


def parse_monomial(text: str, lattice: Lattice) -> tuple:
    text = text.strip()
    if text in ("|0>", "1", ""):
        return ()
    letters = []
    pos = 0
    for mt in _LETTER.finditer(text):
        if text[pos : mt.start()].strip():
            raise ValueError(f"cannot parse monomial {text!r}")
        letters.append((lattice.index(mt.group(1)), int(mt.group(2))))
        pos = mt.end()
    if text[pos:].strip() or not letters:
        raise ValueError(f"cannot parse monomial {text!r}")
    return tuple(letters)


def format_monomial(letters: Sequence, lattice: Lattice) -> str:
    if not letters:
        return "|0>"
    return " ".join(f"{lattice.labels[a]}({m})" for a, m in letters)


def _split_terms(text: str) -> list:
    terms, cur, depth = [], "", 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if depth == 0 and ch in "+-" and (i == 0 or text[i - 1] == " ") and i + 1 < len(text) and text[i + 1] == " ":
            if cur.strip():
                terms.append(cur.strip())
            cur = ch
            continue
        cur += ch
    if cur.strip():
        terms.append(cur.strip())
    return terms


_TERM = re.compile(r"^(?P<sign>[+-]?)\s*(?:(?P<coef>\[[^\]]*\]|\d+(?:/\d+)?)\s*\*\s*)?(?P<mono>.*)$")


def parse_element(text: str, lattice: Lattice) -> FreeElement:
    text = text.strip()
    if text == "0":
        return FreeElement()
    out: dict = {}
    for raw in _split_terms(text):
        raw = raw.strip()
        sign = 1
        if raw.startswith(("+ ", "- ")) or raw in ("+", "-"):
            sign = -1 if raw[0] == "-" else 1
            raw = raw[1:].strip()
        mt = _TERM.match(raw)
        if not mt:
            raise ValueError(f"cannot parse term {raw!r}")
        if mt.group("sign") == "-":
            sign = -sign
        coef = mt.group("coef")
        c = Fraction(1) if coef is None else parse_scalar(coef.strip("[]"))
        _accumulate(out, [(parse_monomial(mt.group("mono"), lattice), c * sign)])
    e = FreeElement()
    e._terms = out
    return e


def format_element(x: FreeElement, lattice: Lattice) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for letters, c in sorted(x.items()):
        mono = format_monomial(letters, lattice)
        c = simplify(c)
        neg = False
        if isinstance(c, Fraction) and c < 0:
            neg, c = True, -c
        if c == 1:
            body = mono
        elif isinstance(c, Fraction):
            body = f"{c} * {mono}"
        else:
            body = f"[{format_scalar(c)}] * {mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)
