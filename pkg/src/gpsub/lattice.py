"""Lattice data: Gram form, locality bounds and the eta/omega/epsilon pairings.

Charges are coordinate tuples of Fractions in the lattice basis. Integral
tuples are points of the lattice itself; rational ones model points of the
dual lattice or of ``L + Z lambda``.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from .exactnum import CyclotomicField, exp2pi, format_rational, format_scalar, parse_rational

__all__ = [
    "ConstraintViolation",
    "Lattice",
    "LatticeSpecError",
    "SingularGram",
    "builtin_lattice",
    "charge",
    "load_lattice",
]

Charge = tuple  # tuple[Fraction, ...]


class ConstraintViolation(ValueError):
    """eta exponents are incompatible with the Gram matrix."""


class SingularGram(ValueError):
    pass


class LatticeSpecError(ValueError):
    pass


def charge(*coords) -> Charge:
    """Build a charge tuple, accepting ints, Fractions or ``"p/q"`` strings."""
    if len(coords) == 1 and isinstance(coords[0], (list, tuple)):
        coords = tuple(coords[0])
    return tuple(parse_rational(c) if isinstance(c, str) else Fraction(c) for c in coords)


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def _inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if p is None:
            raise SingularGram("Gram matrix is singular")
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def _lcm(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


@dataclass(frozen=True)
class Lattice:
    """A lattice with basis ``labels``, Gram matrix and locality-factor exponents.

    ``eta[i][j]`` is the exponent ``r`` with ``eta(b_i, b_j) = e(r) = exp(2 pi i r)``.
    The default is the symmetric choice ``gram[i][j] / 2``, for which omega and
    the 2-cocycle epsilon are identically 1.
    """

    labels: tuple
    gram: tuple
    eta: tuple = None

    def __post_init__(self):
        gram = tuple(tuple(Fraction(x) for x in row) for row in self.gram)
        l = len(gram)
        if l == 0 or any(len(row) != l for row in gram):
            raise LatticeSpecError("Gram matrix must be square and non-empty")
        if len(self.labels) != l:
            raise LatticeSpecError("need one label per basis vector")
        if len(set(self.labels)) != l:
            raise LatticeSpecError("labels must be distinct")
        if any(gram[i][j] != gram[j][i] for i in range(l) for j in range(l)):
            raise LatticeSpecError("Gram matrix must be symmetric")
        if self.eta is None:
            eta = tuple(tuple(g / 2 for g in row) for row in gram)
        else:
            eta = tuple(tuple(Fraction(x) for x in row) for row in self.eta)
            if len(eta) != l or any(len(row) != l for row in eta):
                raise LatticeSpecError("eta matrix has the wrong shape")
        for i in range(l):
            if (eta[i][i] - gram[i][i] / 2) % 1:
                raise ConstraintViolation(
                    f"eta({self.labels[i]},{self.labels[i]}) must equal e({gram[i][i] / 2})"
                )
            for j in range(l):
                if (eta[i][j] + eta[j][i] - gram[i][j]) % 1:
                    raise ConstraintViolation(
                        f"eta({self.labels[i]},{self.labels[j]}) eta({self.labels[j]},{self.labels[i]})"
                        f" must equal e({gram[i][j]})"
                    )
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "eta", tuple(tuple(x % 1 for x in row) for row in eta))

    # -- basic data ---------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def order(self) -> int:
        """Cyclotomic order N: twice the lcm of all Gram and eta denominators."""
        dens = [x.denominator for row in self.gram for x in row]
        dens += [x.denominator for row in self.eta for x in row]
        return 2 * _lcm(dens)

    @property
    def field(self) -> CyclotomicField:
        return CyclotomicField(self.order)

    def basis_vector(self, i: int) -> Charge:
        return tuple(Fraction(int(i == j)) for j in range(self.rank))

    def index(self, label) -> int:
        if isinstance(label, int):
            if not 0 <= label < self.rank:
                raise IndexError(f"basis index {label} out of range")
            return label
        try:
            return self.labels.index(label)
        except ValueError:
            if re.fullmatch(r"\d+", str(label)):
                return self.index(int(label))
            raise KeyError(f"unknown basis label {label!r}") from None

    def zero(self) -> Charge:
        return (Fraction(0),) * self.rank

    # -- bilinear data ------------------------------------------------------
    def pairing(self, a: Sequence, b: Sequence) -> Fraction:
        g = self.gram
        total = Fraction(0)
        for i, x in enumerate(a):
            if x:
                row = g[i]
                for j, y in enumerate(b):
                    if y:
                        total += x * y * row[j]
        return total

    def locality_bound(self, a: Sequence, b: Sequence) -> Fraction:
        return -self.pairing(a, b)

    def height(self, a: Sequence) -> Fraction:
        return sum((Fraction(x) for x in a), Fraction(0))

    def norm(self, a: Sequence) -> Fraction:
        """Lattice part of the weight, ``(a|a)/2``."""
        return self.pairing(a, a) / 2

    @cached_property
    def _omega_exp(self) -> tuple:
        return tuple(
            tuple((self.eta[i][j] - self.gram[i][j] / 2) % 1 for j in range(self.rank))
            for i in range(self.rank)
        )

    @cached_property
    def _epsilon_exp(self) -> tuple:
        # standard section: eps(b_i, b_j) = omega(b_i, b_j) for i > j, 1 otherwise
        w = self._omega_exp
        return tuple(
            tuple(w[i][j] if i > j else Fraction(0) for j in range(self.rank))
            for i in range(self.rank)
        )

    @cached_property
    def trivial_cocycle(self) -> bool:
        return not any(x for row in self._epsilon_exp for x in row)

    def _bimult(self, table, a, b) -> Fraction:
        total = Fraction(0)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y and table[i][j]:
                        total += x * y * table[i][j]
        return total % 1

    def eta_exponent(self, a, b) -> Fraction:
        return self._bimult(self.eta, a, b)

    def omega_exponent(self, a, b) -> Fraction:
        return self._bimult(self._omega_exp, a, b)

    def epsilon_exponent(self, a, b) -> Fraction:
        return self._bimult(self._epsilon_exp, a, b)

    def eta_value(self, a, b):
        return exp2pi(self.eta_exponent(a, b))

    def omega(self, a, b):
        return exp2pi(self.omega_exponent(a, b))

    def epsilon(self, a, b):
        """The 2-cocycle; bimultiplicative on all rational charges."""
        if self.trivial_cocycle:
            return Fraction(1)
        return exp2pi(self.epsilon_exponent(a, b))

    # -- duals ----------------------------------------------------------------
    @cached_property
    def gram_inverse(self) -> tuple:
        return tuple(tuple(r) for r in _inverse([list(r) for r in self.gram]))

    def determinant(self) -> Fraction:
        return _det([list(r) for r in self.gram])

    def dual_basis(self) -> list:
        """Coordinates (in this basis) of the dual basis vectors."""
        inv = self.gram_inverse
        return [tuple(inv[r][c] for r in range(self.rank)) for c in range(self.rank)]

    def dual_lattice(self) -> "Lattice":
        """The dual lattice in its own dual basis, with the default eta."""
        return Lattice(
            labels=tuple(f"{x}*" if not x.endswith("*") else x[:-1] for x in self.labels),
            gram=self.gram_inverse,
        )

    def to_dual_coords(self, a: Sequence) -> Charge:
        """Coordinates of ``a`` (given in this basis) in the dual basis: ``gram @ a``."""
        return tuple(sum((self.gram[i][j] * a[j] for j in range(self.rank)), Fraction(0))
                     for i in range(self.rank))

    @cached_property
    def positive_definite(self) -> bool:
        m = [list(r) for r in self.gram]
        return all(_det([row[:k] for row in m[:k]]) > 0 for k in range(1, self.rank + 1))

    def coordinate_bound(self, t: int, cap: Fraction) -> int:
        """Largest |x_t| with ``(x|x)/2 <= cap`` (positive definite forms only)."""
        if not self.positive_definite:
            raise ValueError("coordinate bound requires a positive definite form")
        # min of (x|x)/2 with x_t fixed is x_t^2 / (2 inv_tt)
        bound_sq = 2 * Fraction(cap) * self.gram_inverse[t][t]
        if bound_sq < 0:
            return -1
        r = math.isqrt(bound_sq.numerator // bound_sq.denominator)
        while Fraction((r + 1) ** 2) <= bound_sq:
            r += 1
        return r

    # -- serialization --------------------------------------------------------
    def to_spec(self) -> dict:
        return {
            "labels": list(self.labels),
            "gram": [[format_rational(x) for x in row] for row in self.gram],
            "eta": [[format_scalar(exp2pi(x)) for x in row] for row in self.eta],
        }

    def __str__(self):
        rows = ", ".join("[" + ", ".join(format_rational(x) for x in r) + "]" for r in self.gram)
        return f"Lattice(labels={list(self.labels)}, gram=[{rows}])"


_E_LITERAL = re.compile(r"^\s*e\(\s*([+-]?\d+(?:/\d+)?)\s*\)\s*$")


def _parse_eta_entry(x) -> Fraction:
    if isinstance(x, str):
        m = _E_LITERAL.match(x)
        if m:
            return Fraction(m.group(1))
        if x.strip() in ("1", "+1"):
            return Fraction(0)
        if x.strip() == "-1":
            return Fraction(1, 2)
    raise LatticeSpecError(f"eta entries must be roots of unity written e(p/q), got {x!r}")


def lattice_from_spec(spec: dict) -> Lattice:
    try:
        gram = [[parse_rational(x) for x in row] for row in spec["gram"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise LatticeSpecError(f"bad gram entry: {exc}") from exc
    labels = spec.get("labels") or [f"a{i}" for i in range(len(gram))]
    eta = spec.get("eta")
    if eta is not None:
        eta = [[_parse_eta_entry(x) for x in row] for row in eta]
    return Lattice(labels=tuple(labels), gram=tuple(tuple(r) for r in gram), eta=eta)


def _cartan_a(n: int) -> list:
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]


def builtin_lattice(name: str) -> Lattice:
    """Named lattices: ``A1``..``A8`` (root lattices), ``rank1:p/q`` and ``dual:<name>``."""
    name = name.strip()
    if name.startswith("dual:"):
        return builtin_lattice(name[5:]).dual_lattice()
    m = re.fullmatch(r"[Aa](\d+)", name)
    if m and 1 <= int(m.group(1)) <= 8:
        n = int(m.group(1))
        return Lattice(labels=tuple(f"a{i}" for i in range(n)), gram=_cartan_a(n))
    m = re.fullmatch(r"rank1:([+-]?\d+(?:/\d+)?)", name) or re.fullmatch(
        r"\[\[\s*([+-]?\d+(?:/\d+)?)\s*\]\]", name
    )
    if m:
        return Lattice(labels=("a0",), gram=((Fraction(m.group(1)),),))
    raise LatticeSpecError(f"unknown lattice name {name!r}")


def load_lattice(source: str) -> Lattice:
    """Load a lattice from a JSON spec path or a built-in name."""
    path = Path(source)
    if path.suffix == ".json" or path.is_file():
        try:
            spec = json.loads(path.read_text())
        except OSError as exc:
            raise LatticeSpecError(f"cannot read lattice spec {source}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise LatticeSpecError(f"malformed lattice spec {source}: {exc}") from exc
        return lattice_from_spec(spec)
    return builtin_lattice(source)
