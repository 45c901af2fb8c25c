"""Exact scalars: rationals, cyclotomic numbers and generalized binomials.

Elements of ``Q(zeta_N)`` are stored in the power basis ``1, z, ..., z^(phi(N)-1)``
reduced modulo the N-th cyclotomic polynomial, so every element has exactly one
representation and zero testing is syntactic.

Rational values are kept as :class:`fractions.Fraction` wherever possible;
:class:`Scalar` interoperates with ``int`` and ``Fraction`` on both sides of
every operator, so callers can use whichever is cheaper.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Union

__all__ = [
    "CyclotomicField",
    "DivisionByZero",
    "IncompatibleOrder",
    "Scalar",
    "as_fraction",
    "exp2pi",
    "format_rational",
    "format_scalar",
    "gen_binomial",
    "is_zero",
    "parse_rational",
    "parse_scalar",
    "simplify",
]


class IncompatibleOrder(ValueError):
    """A root of unity was requested from a field that does not contain it."""


class DivisionByZero(ZeroDivisionError):
    pass


Number = Union[int, Fraction, "Scalar"]


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # integer polynomials, den monic, coefficient lists low -> high
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        q[shift] = c
        if c:
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    rem = num[: len(den) - 1]
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("cyclotomic polynomial index must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    return tuple(poly)


class CyclotomicField:
    """The field ``Q(zeta_N)`` with ``zeta_N = exp(2 pi i / N)``.

    Instances are interned per order; use :meth:`of` (or the constructor,
    which forwards to it).
    """

    _instances: dict[int, "CyclotomicField"] = {}

    def __new__(cls, order: int) -> "CyclotomicField":
        order = int(order)
        if order < 1:
            raise ValueError(f"cyclotomic order must be positive, got {order}")
        inst = cls._instances.get(order)
        if inst is None:
            inst = super().__new__(cls)
            inst._setup(order)
            cls._instances[order] = inst
        return inst

    def _setup(self, order: int) -> None:
        self.order = order
        modulus = cyclotomic_polynomial(order)
        self.degree = len(modulus) - 1
        # powers[k] = coordinates of zeta^k in the power basis, k = 0..N-1
        powers = []
        vec = [0] * self.degree
        vec[0] = 1
        for _ in range(order):
            powers.append(tuple(vec))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for i in range(self.degree):
                    vec[i] -= top * modulus[i]
        self._powers = tuple(powers)
        self._zero = (Fraction(0),) * self.degree

    def __repr__(self) -> str:
        return f"CyclotomicField({self.order})"

    def __reduce__(self):
        return (CyclotomicField, (self.order,))

    # -- constructors -------------------------------------------------------
    def from_rational(self, value) -> "Scalar":
        coeffs = list(self._zero)
        coeffs[0] = Fraction(value)
        return Scalar(self, tuple(coeffs))

    def zero(self) -> "Scalar":
        return Scalar(self, self._zero)

    def one(self) -> "Scalar":
        return self.from_rational(1)

    def zeta_power(self, k: int) -> "Scalar":
        return Scalar(self, tuple(Fraction(c) for c in self._powers[k % self.order]))

    def root_of_unity(self, r) -> "Scalar":
        """Return ``exp(2 pi i r)``; the denominator of ``r`` must divide N."""
        r = Fraction(r)
        if self.order % r.denominator:
            raise IncompatibleOrder(
                f"e({r}) does not lie in Q(zeta_{self.order})"
            )
        return self.zeta_power(r.numerator * (self.order // r.denominator))

    # -- internals ----------------------------------------------------------
    def _reduce_full(self, full: list) -> tuple:
        # full: length-N coefficient list over 1, z, ..., z^(N-1)
        out = [Fraction(0)] * self.degree
        for k, c in enumerate(full):
            if c:
                for i, p in enumerate(self._powers[k]):
                    if p:
                        out[i] += c * p
        return tuple(out)

    def embed(self, x: "Scalar", target: "CyclotomicField") -> "Scalar":
        if x.field is target:
            return x
        if target.order % self.order:
            raise IncompatibleOrder(f"Q(zeta_{self.order}) is not a subfield of Q(zeta_{target.order})")
        step = target.order // self.order
        full = [Fraction(0)] * target.order
        for k, c in enumerate(x.coeffs):
            if c:
                full[(k * step) % target.order] += c
        return Scalar(target, target._reduce_full(full))


def _common_field(a: CyclotomicField, b: CyclotomicField) -> CyclotomicField:
    if a is b:
        return a
    return CyclotomicField(a.order * b.order // math.gcd(a.order, b.order))


class Scalar:
    """An element of a cyclotomic field, immutable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CyclotomicField, coeffs: tuple):
        if len(coeffs) != field.degree:
            raise ValueError("coefficient vector has the wrong length")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __reduce__(self):
        return (Scalar, (self.field, self.coeffs))

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- coercion -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field is self.field:
                return self, other
            f = _common_field(self.field, other.field)
            return self.field.embed(self, f), other.field.embed(other, f)
        if isinstance(other, (int, Fraction)):
            return self, self.field.from_rational(other)
        return None

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Scalar(a.field, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Scalar(a.field, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar(self.field, tuple(x * other for x in self.coeffs))
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        f = a.field
        full = [Fraction(0)] * f.order
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        full[(i + j) % f.order] += x * y
        return Scalar(f, f._reduce_full(full))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero scalar")
        f = self.field
        n = f.degree
        # columns: self * z^j in the power basis; solve M x = e_0
        cols = [(self * f.zeta_power(j)).coeffs for j in range(n)]
        rows = [[cols[j][i] for j in range(n)] + [Fraction(int(i == 0))] for i in range(n)]
        for c in range(n):
            p = next(r for r in range(c, n) if rows[r][c])
            rows[c], rows[p] = rows[p], rows[c]
            piv = rows[c][c]
            rows[c] = [x / piv for x in rows[c]]
            for r in range(n):
                if r != c and rows[r][c]:
                    fac = rows[r][c]
                    rows[r] = [x - fac * y for x, y in zip(rows[r], rows[c])]
        return Scalar(f, tuple(rows[i][n] for i in range(n)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return Scalar(self.field, tuple(x / other for x in self.coeffs))
        if isinstance(other, Scalar):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    def __hash__(self):
        # equal values across different ambient fields must hash alike;
        # only the rational case is distinguished
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash("gpsub.Scalar")

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)})"

    def __str__(self) -> str:
        return format_scalar(self)


# ---------------------------------------------------------------------------
# helpers that accept int | Fraction | Scalar


def exp2pi(r) -> Number:
    """``exp(2 pi i r)`` in the smallest cyclotomic field containing it.

    Returns a Fraction when the value is rational (i.e. +1 or -1).
    """
    r = Fraction(r) % 1
    if r == 0:
        return Fraction(1)
    if r == Fraction(1, 2):
        return Fraction(-1)
    return CyclotomicField(r.denominator).root_of_unity(r)


def simplify(x: Number) -> Number:
    """Collapse rational scalars to Fraction."""
    if isinstance(x, Scalar):
        return x.coeffs[0] if x.is_rational() else x
    return Fraction(x)


def is_zero(x: Number) -> bool:
    if isinstance(x, Scalar):
        return x.is_zero()
    return x == 0


def as_fraction(x: Number) -> Fraction:
    if isinstance(x, Scalar):
        return x.rational()
    return Fraction(x)


def gen_binomial(top, j: int) -> Fraction:
    """``top (top-1) ... (top-j+1) / j!`` for rational ``top``."""
    if j < 0:
        return Fraction(0)
    top = Fraction(top)
    num = Fraction(1)
    for i in range(j):
        num *= top - i
    return num / math.factorial(j)


# ---------------------------------------------------------------------------
# serialization: rationals as "p/q", roots of unity as "e(p/q)"

_RAT = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def parse_rational(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str) or not _RAT.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text.replace(" ", ""))


def format_rational(x) -> str:
    return str(Fraction(x))


def _as_root(x: Scalar):
    # detect x == c * zeta^k with rational c; returns (c, k) or None
    nz = [(i, c) for i, c in enumerate(x.coeffs) if c]
    if not nz:
        return None
    f = x.field
    lead_i, lead_c = nz[0]
    for k in range(f.order):
        p = f._powers[k]
        piv = next((i for i, c in enumerate(p) if c), None)
        if piv != lead_i:
            continue
        scale = lead_c / p[piv]
        if all(scale * pc == xc for pc, xc in zip(p, x.coeffs)):
            return scale, k
    return None


def _fmt_root(c: Fraction, k: int, order: int) -> str:
    r = Fraction(k, order)
    if not r:
        return format_rational(c)
    body = f"e({r})"
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}*{body}"


def format_scalar(x: Number) -> str:
    """Canonical text form: ``p/q``, ``e(p/q)``, ``c*e(p/q)`` or a ``+``-joined sum."""
    x = simplify(x)
    if isinstance(x, Fraction):
        return format_rational(x)
    hit = _as_root(x)
    if hit is not None:
        return _fmt_root(hit[0], hit[1], x.field.order)
    parts = [_fmt_root(c, k, x.field.order) for k, c in enumerate(x.coeffs) if c]
    return " + ".join(parts).replace("+ -", "- ")


_TERM = re.compile(
    r"^(?P<sign>[+-]?)\s*(?:(?P<coef>\d+(?:/\d+)?)\s*\*?\s*)?(?:e\(\s*(?P<exp>[+-]?\d+(?:/\d+)?)\s*\))?$"
)


def parse_scalar(text) -> Number:
    """Inverse of :func:`format_scalar`; also accepts plain ints/Fractions."""
    if isinstance(text, (int, Fraction, Scalar)):
        return simplify(text)
    s = text.strip()
    if not s:
        raise ValueError("empty scalar literal")
    # split on top-level + / - (outside parentheses)
    terms, depth, cur = [], 0, ""
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur.strip() and not cur.rstrip().endswith(("*", "/")):
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    total: Number = Fraction(0)
    for t in terms:
        m = _TERM.match(t.strip())
        if not m or (m.group("coef") is None and m.group("exp") is None):
            raise ValueError(f"not a scalar literal: {text!r}")
        c = Fraction(m.group("coef") or 1)
        if m.group("sign") == "-":
            c = -c
        val = exp2pi(Fraction(m.group("exp"))) if m.group("exp") is not None else Fraction(1)
        total = total + c * val
    return simplify(total)
