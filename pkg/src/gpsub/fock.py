"""The lattice Fock space ``M(1) (x) C[L']`` and its operators.

A basis element is a pair ``(heis, point)``: ``heis`` is a sorted tuple of
``(i, n)`` with ``n < 0`` standing for the creation operator ``b_i(n)``, and
``point`` is the charge ``mu`` of the ``e^mu`` factor. The Heisenberg basis is
the (not orthogonalized) lattice basis, so contractions use the Gram matrix.

Vertex operators follow

    Y(e^a, z) (u e^mu) = eps(a, mu) z^{(a|mu)} E^-(a, z) E^+(a, z) u e^{a+mu},

``E^-`` the creation exponential and ``E^+`` the annihilation exponential.
``E^+`` acts on a Heisenberg polynomial by the substitution
``b_j(-m) -> b_j(-m) - (a|b_j) z^{-m}``, which keeps every step finite.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Sequence

from .exactnum import exp2pi, format_rational, format_scalar, gen_binomial, is_zero, simplify
from .lattice import Lattice

__all__ = ["FockSpace", "FockVector", "heis_weight", "key_weight"]


def _merge(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


def heis_weight(heis: tuple) -> int:
    return -sum(n for _, n in heis)


def key_weight(lattice: Lattice, key) -> Fraction:
    heis, point = key
    return heis_weight(heis) + lattice.norm(point)


def _exp_pi(x):
    """``e^{pi i x}``."""
    return exp2pi(Fraction(x) / 2)


class FockVector:
    """A finite linear combination of Fock basis elements (immutable)."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for k, c in items:
                if not is_zero(c):
                    clean[k] = simplify(c)
        self._terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> "FockVector":
        # terms already cleaned
        v = cls.__new__(cls)
        v._terms = terms
        return v

    @classmethod
    def basis(cls, heis: tuple, point) -> "FockVector":
        return cls._raw({(tuple(sorted(heis)), tuple(Fraction(x) for x in point)): Fraction(1)})

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def coefficient(self, key):
        return self._terms.get(key, Fraction(0))

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "FockVector") -> "FockVector":
        if not isinstance(other, FockVector):
            return NotImplemented
        out = dict(self._terms)
        _accumulate(out, other._terms.items())
        return FockVector._raw(out)

    def __sub__(self, other: "FockVector") -> "FockVector":
        if not isinstance(other, FockVector):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return FockVector._raw({k: -c for k, c in self._terms.items()})

    def __mul__(self, c):
        if isinstance(c, FockVector):
            return NotImplemented
        if is_zero(c):
            return FockVector._raw({})
        c = simplify(c)
        return FockVector._raw({k: simplify(v * c) for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def points(self) -> set:
        return {p for _, p in self._terms}

    def is_multiple_of(self, key) -> bool:
        return set(self._terms) <= {key}

    def dump(self) -> str:
        """One line per basis element: ``coeff * b[i](-n)...e(mu)``."""
        if not self._terms:
            return "0"
        lines = []
        for (heis, point), c in sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0])):
            h = "".join(f"b[{i}]({n})" for i, n in heis)
            mu = ",".join(format_rational(x) for x in point)
            lines.append(f"{format_scalar(c)} * {h}e({mu})")
        return "\n".join(lines)

    def __repr__(self):
        return f"FockVector({len(self)} terms)"


def _sort_key(key):
    heis, point = key
    return (point, heis)


def _accumulate(out: dict, items) -> None:
    for k, c in items:
        prev = out.get(k)
        if prev is None:
            if not is_zero(c):
                out[k] = simplify(c)
        else:
            s = prev + c
            if is_zero(s):
                del out[k]
            else:
                out[k] = simplify(s)


class FockSpace:
    """Operators on the Fock space of ``lattice`` (caches are per instance)."""

    def __init__(self, lattice: Lattice):
        self.lattice = lattice
        self._creation: dict = {}
        self._annihilation: dict = {}
        self._vertex_cache: dict = {}

    # -- vectors ------------------------------------------------------------
    def vacuum(self) -> FockVector:
        return FockVector.basis((), self.lattice.zero())

    def exp(self, point: Sequence) -> FockVector:
        return FockVector.basis((), point)

    def weight(self, key) -> Fraction:
        return key_weight(self.lattice, key)

    def _as_charge(self, alpha) -> tuple:
        if isinstance(alpha, int):
            return self.lattice.basis_vector(alpha)
        return tuple(Fraction(x) for x in alpha)

    # -- Heisenberg modes -----------------------------------------------------
    def heis_mode(self, i: int, n: int, v: FockVector) -> FockVector:
        """``b_i(n) v``."""
        return self.heis_field(self.lattice.basis_vector(i), n, v)

    def heis_field(self, h: Sequence, n: int, v: FockVector) -> FockVector:
        """``h(n) v`` for ``h = sum h_i b_i`` with rational ``h_i``."""
        lat = self.lattice
        h = tuple(Fraction(x) for x in h)
        out: dict = {}
        if n < 0:
            for i, hi in enumerate(h):
                if hi:
                    _accumulate(
                        out,
                        (((_merge(heis, ((i, n),)), pt), c * hi) for (heis, pt), c in v.items()),
                    )
        elif n == 0:
            for (heis, pt), c in v.items():
                s = lat.pairing(h, pt)
                if s:
                    _accumulate(out, [((heis, pt), c * s)])
        else:
            # [h(n), b_j(-n)] = n (h|b_j)
            hv = [sum((h[i] * lat.gram[i][j] for i in range(lat.rank)), Fraction(0)) for j in range(lat.rank)]
            for (heis, pt), c in v.items():
                seen = set()
                for pos, (j, m) in enumerate(heis):
                    if m != -n or not hv[j] or (j, m) in seen:
                        continue
                    seen.add((j, m))
                    mult = sum(1 for f in heis if f == (j, m))
                    rest = heis[:pos] + heis[pos + 1 :]
                    _accumulate(out, [((rest, pt), c * mult * n * hv[j])])
        return FockVector._raw(out)

    # -- vertex operator modes ---------------------------------------------
    def _creation_poly(self, alpha: tuple, k: int) -> dict:
        """Coefficient of z^k in exp(sum_m alpha(-m) z^m / m) as {heis: coeff}."""
        polys = self._creation.setdefault(alpha, [{(): Fraction(1)}])
        while len(polys) <= k:
            kk = len(polys)
            acc: dict = {}
            for m in range(1, kk + 1):
                for i, ai in enumerate(alpha):
                    if not ai:
                        continue
                    for heis, c in polys[kk - m].items():
                        key = _merge(heis, ((i, -m),))
                        val = acc.get(key, 0) + c * ai
                        if val:
                            acc[key] = val
                        else:
                            acc.pop(key, None)
            polys.append({h: c / kk for h, c in acc.items()})
        return polys[k]

    def _annihilation_expansion(self, alpha: tuple, heis: tuple) -> dict:
        """E^+(alpha, z) u as {b: {heis: coeff}} (coefficient of z^{-b})."""
        key = (alpha, heis)
        hit = self._annihilation.get(key)
        if hit is not None:
            return hit
        lat = self.lattice
        contr = [lat.pairing(alpha, lat.basis_vector(j)) for j in range(lat.rank)]
        result = {0: {(): Fraction(1)}}
        for (j, n), e in sorted(Counter(heis).items()):
            m = -n
            c = contr[j]
            new: dict = {}
            kmax = e if c else 0
            for k in range(kmax + 1):
                coef = comb(e, k) * (-c) ** k
                kept = ((j, n),) * (e - k)
                for b, poly in result.items():
                    tgt = new.setdefault(b + m * k, {})
                    for h, x in poly.items():
                        hk = _merge(h, kept)
                        val = tgt.get(hk, 0) + x * coef
                        if val:
                            tgt[hk] = val
                        else:
                            tgt.pop(hk, None)
            result = {b: p for b, p in new.items() if p}
        self._annihilation[key] = result
        return result

    def _vertex_on_key(self, alpha: tuple, n: Fraction, key) -> dict:
        """Image of one basis element as ``{heis: coeff}``; the point is ``alpha + mu``."""
        ck = (alpha, n, key)
        hit = self._vertex_cache.get(ck)
        if hit is not None:
            return hit
        lat = self.lattice
        heis, mu = key
        d = -n - 1 - lat.pairing(alpha, mu)
        out: dict = {}
        if d.denominator == 1:
            d = int(d)
            if heis_weight(heis) + d >= 0:
                eps = simplify(lat.epsilon(alpha, mu))
                for b, poly in self._annihilation_expansion(alpha, heis).items():
                    a = b + d
                    if a < 0:
                        continue
                    cre = self._creation_poly(alpha, a)
                    for h1, c1 in poly.items():
                        for h2, c2 in cre.items():
                            k = _merge(h1, h2)
                            val = out.get(k, 0) + c1 * c2
                            if val:
                                out[k] = val
                            else:
                                out.pop(k, None)
                if eps != 1:
                    out = {k: simplify(c * eps) for k, c in out.items()}
        self._vertex_cache[ck] = out
        return out

    def vertex_mode(self, alpha, n, v: FockVector) -> FockVector:
        """``e^alpha(n) v``: the coefficient of ``z^{-n-1}`` in ``Y(e^alpha, z) v``."""
        alpha = self._as_charge(alpha)
        n = Fraction(n)
        by_point: dict = {}
        for key, c in v.items():
            img = self._vertex_on_key(alpha, n, key)
            if not img:
                continue
            acc = by_point.setdefault(key[1], {})
            for h, x in img.items():
                prev = acc.get(h)
                val = x * c if prev is None else prev + x * c
                if is_zero(val):
                    acc.pop(h, None)
                else:
                    acc[h] = val
        out: dict = {}
        for mu, acc in by_point.items():
            target = tuple(a + b for a, b in zip(alpha, mu))
            for h, x in acc.items():
                out[(h, target)] = simplify(x)
        return FockVector._raw(out)

    # -- other operators ----------------------------------------------------
    def simple_current(self, lam, v: FockVector) -> FockVector:
        """``e_lambda``: shift every lattice point by ``lambda``."""
        lam = self._as_charge(lam)
        return FockVector._raw(
            {(heis, tuple(a + b for a, b in zip(pt, lam))): c for (heis, pt), c in v.items()}
        )

    def translation(self, v: FockVector) -> FockVector:
        """The derivation ``T`` with ``T b_i(-n) = n b_i(-n-1)`` and ``T e^mu = mu(-1) e^mu``."""
        out: dict = {}
        for (heis, pt), c in v.items():
            for pos, (i, m) in enumerate(heis):
                new = _merge(heis[:pos] + heis[pos + 1 :], ((i, m - 1),))
                _accumulate(out, [((new, pt), c * (-m))])
            for i, x in enumerate(pt):
                if x:
                    _accumulate(out, [((_merge(heis, ((i, -1),)), pt), c * x)])
        return FockVector._raw(out)

    def extraction_d(self, i: int, exponent: int, v: FockVector) -> FockVector:
        """``e_{-b_i} o (e_{-b_i^o} o e^{b_i^o}(-1))^exponent`` applied to ``v``."""
        dual = self.lattice.dual_basis()[i]
        neg_dual = tuple(-x for x in dual)
        for _ in range(exponent):
            v = self.simple_current(neg_dual, self.vertex_mode(dual, -1, v))
        return self.simple_current(tuple(-x for x in self.lattice.basis_vector(i)), v)

    def x_operator(self, letters: Sequence, v: FockVector) -> FockVector:
        """``X_a = D_a^k o ... o D_a^1`` for a basis monomial given by ``letters``.

        ``letters`` is the sequence of ``(index, offset)`` pairs of the monomial.
        """
        prev = None
        for pos, (i, m) in enumerate(letters):
            if pos > 0 and prev[0] == i:
                e = -m + prev[1]
            else:
                e = -m - 1
            v = self.extraction_d(i, e, v)
            prev = (i, m)
        return v

    def locality_sum(self, alpha, beta, s, t, v: FockVector) -> FockVector:
        """``l(e^alpha, e^beta, s, t, N, eta) v`` with ``N = -(alpha|beta)``.

        The j-sum stops once both inner modes exceed the weight bound of every
        component of ``v``, past which they act as zero.
        """
        lat = self.lattice
        alpha, beta = self._as_charge(alpha), self._as_charge(beta)
        s, t = Fraction(s), Fraction(t)
        N = lat.locality_bound(alpha, beta)
        factor = simplify(lat.eta_value(alpha, beta) * _exp_pi(N))
        out = FockVector()
        for (mu, w), comp in self.iter_components(v):
            top_b = w + lat.norm(beta) - 1 - lat.norm(tuple(x + y for x, y in zip(mu, beta)))
            top_a = w + lat.norm(alpha) - 1 - lat.norm(tuple(x + y for x, y in zip(mu, alpha)))
            j = 0
            while t + j <= top_b or s + j <= top_a:
                c = gen_binomial(N, j) * (-1) ** j
                if c:
                    first = self.vertex_mode(alpha, s + N - j, self.vertex_mode(beta, t + j, comp))
                    second = self.vertex_mode(beta, t + N - j, self.vertex_mode(alpha, s + j, comp))
                    out = out + (first - second * factor) * c
                j += 1
        return out

    # -- weight spaces ------------------------------------------------------
    def heis_monomials(self, degree: int) -> list:
        """All sorted Heisenberg monomials of total degree ``degree``."""
        l = self.lattice.rank
        parts = [(i, -m) for m in range(1, degree + 1) for i in range(l)]
        parts.sort()
        out = []

        def rec(start: int, left: int, acc: list):
            if left == 0:
                out.append(tuple(acc))
                return
            for idx in range(start, len(parts)):
                i, n = parts[idx]
                if -n <= left:
                    acc.append(parts[idx])
                    rec(idx, left + n, acc)
                    acc.pop()

        rec(0, degree, [])
        return sorted(out)

    def weight_space(self, point, weight) -> list:
        """Basis keys of the weight-``weight`` subspace of ``M(1) e^point``."""
        point = self._as_charge(point)
        d = Fraction(weight) - self.lattice.norm(point)
        if d < 0 or d.denominator != 1:
            return []
        return [(h, point) for h in self.heis_monomials(int(d))]

    def iter_components(self, v: FockVector) -> Iterator:
        groups: dict = {}
        for key, c in v.items():
            groups.setdefault((key[1], self.weight(key)), {})[key] = c
        for gk in sorted(groups):
            yield gk, FockVector._raw(groups[gk])


def zero_vector() -> FockVector:
    return FockVector._raw({})


def combine(terms: Iterable) -> FockVector:
    out: dict = {}
    for c, v in terms:
        _accumulate(out, ((k, x * c) for k, x in v.items()))
    return FockVector._raw(out)
