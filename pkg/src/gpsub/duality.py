"""Invariants of dual generators inside the lattice Fock space.

For a lattice ``L`` with dual basis ``b_i^o``, the generator kernel of a
weight space of ``V_L`` is the joint kernel of all modes ``e^{b_i^o}(n)``
with ``n >= 0``. It always contains the principal subspace ``W_L``; the
checks below certify equality bucket by bucket by comparing the two
dimensions after confirming that every basis vector of ``W_L`` is annihilated.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import partial

from .combinatorics import enumerate_basis
from .fock import FockSpace, FockVector
from .freegva import context
from .lattice import Lattice
from .linalg import RowReducer, kernel
from .report import Report, parallel_map

__all__ = [
    "KernelResult",
    "annihilating_modes",
    "check_commutant_corollary",
    "check_duality",
    "generator_kernel",
    "lattice_sectors",
]


@dataclass(frozen=True)
class KernelResult:
    sector: tuple
    weight: Fraction
    dimension: int
    basis: tuple  # kernel vectors as FockVectors


def annihilating_modes(lattice: Lattice, sector, weight, generator) -> list:
    """The modes ``n >= 0`` of ``e^generator`` that can act nontrivially on the weight space.

    The image has weight ``weight + |g|^2/2 - n - 1`` in the sector
    ``sector + g``, which has no vectors below its lowest weight.
    """
    sector = tuple(Fraction(x) for x in sector)
    g = tuple(Fraction(x) for x in generator)
    shift = -lattice.pairing(g, sector)  # modes live in shift + Z
    target = tuple(a + b for a, b in zip(sector, g))
    n_max = Fraction(weight) + lattice.norm(g) - 1 - lattice.norm(target)
    n = shift - math.floor(shift)  # smallest representative >= 0
    out = []
    while n <= n_max:
        out.append(n)
        n += 1
    return out


def _kernel_images(space: FockSpace, lattice: Lattice, sector, weight):
    keys = space.weight_space(sector, weight)
    gens = lattice.dual_basis()
    images = []
    for key in keys:
        v = FockVector.basis(*key)
        img: dict = {}
        for i, g in enumerate(gens):
            for n in annihilating_modes(lattice, sector, weight, g):
                for k, c in space.vertex_mode(g, n, v).items():
                    img[(i, n, k)] = c
        images.append(img)
    return keys, images


def _annihilated(space: FockSpace, lattice: Lattice, sector, weight, v: FockVector) -> bool:
    for g in lattice.dual_basis():
        for n in annihilating_modes(lattice, sector, weight, g):
            if not space.vertex_mode(g, n, v).is_zero():
                return False
    return True


def generator_kernel(lattice: Lattice, sector, weight) -> KernelResult:
    """Joint kernel of the nonnegative dual-generator modes on one weight space."""
    lattice.gram_inverse  # raises SingularGram early
    sector = tuple(Fraction(x) for x in sector)
    weight = Fraction(weight)
    space = context(lattice).space
    keys, images = _kernel_images(space, lattice, sector, weight)
    rels = kernel(images)
    basis = tuple(FockVector({keys[j]: c for j, c in rel.items()}) for rel in rels)
    return KernelResult(sector, weight, len(basis), basis)


def lattice_sectors(lattice: Lattice, cutoff) -> list:
    """Lattice points ``mu`` (integer coordinates, any sign) with ``|mu|^2/2 <= cutoff``."""
    if not lattice.positive_definite:
        raise ValueError("sector enumeration needs a positive definite form")
    cutoff = Fraction(cutoff)
    box = [lattice.coordinate_bound(t, cutoff) for t in range(lattice.rank)]
    out = []
    for mu in itertools.product(*(range(-b, b + 1) for b in box)):
        if lattice.norm(mu) <= cutoff:
            out.append(mu)
    return sorted(out, key=lambda m: (lattice.norm(m), m))


def _weights(lattice: Lattice, mu, cutoff) -> list:
    w0 = lattice.norm(mu)
    return [w0 + k for k in range(math.floor(Fraction(cutoff) - w0) + 1)]


def _duality_sector(lattice: Lattice, cutoff, mu) -> list:
    space = context(lattice).space
    ctx = context(lattice)
    rows = []
    nonneg = all(x >= 0 for x in mu)
    buckets = {}
    if nonneg:
        buckets = {b.weight: b for b in enumerate_basis(lattice, None, mu, cutoff)}
    for w in _weights(lattice, mu, cutoff):
        ker = generator_kernel(lattice, mu, w).dimension
        bucket = buckets.get(w)
        size = len(bucket) if bucket else 0
        rank = 0
        contained = True
        if bucket:
            red = RowReducer()
            for m in bucket.members:
                v = ctx.evaluate_monomial(m)
                red.add(dict(v.items()))
                contained = contained and _annihilated(space, lattice, mu, w, v)
            rank = red.rank
        rows.append((mu, w, size, rank, contained, ker))
    return rows


def check_duality(lattice: Lattice, cutoff, jobs: int = 1) -> Report:
    """Certify ``W_L = generator kernel`` on every sector and weight up to ``cutoff``."""
    lattice.gram_inverse
    report = Report(
        claim="invariants of the dual generators = principal subspace",
        lattice=str(lattice),
        columns=("dim_W", "contained", "dim_kernel"),
    )
    sectors = lattice_sectors(lattice, cutoff)
    for rows in parallel_map(partial(_duality_sector, lattice, cutoff), sectors, jobs):
        for mu, w, size, rank, contained, ker in rows:
            ok = contained and size == rank == ker
            report.rows.append(
                {"bucket": (mu, w), "dim_W": rank, "contained": contained, "dim_kernel": ker, "ok": ok}
            )
    report.rows.sort(key=lambda r: (r["bucket"][1], r["bucket"][0]))
    report.notes.append("dim_W <= dim(full invariants) <= dim_kernel; equality of the outer two is checked")
    return report


def _commutant_sector(weight_lattice: Lattice, cutoff, nu_and_c) -> list:
    _, c = nu_and_c
    rows = []
    buckets = {}
    if all(x >= 0 for x in c):
        buckets = {b.weight: len(b) for b in enumerate_basis(weight_lattice, None, c, cutoff)}
    for w in _weights(weight_lattice, c, cutoff):
        ker = generator_kernel(weight_lattice, c, w).dimension
        rows.append((w, buckets.get(w, 0), ker))
    return rows


def check_commutant_corollary(root_lattice: Lattice, cutoff, jobs: int = 1) -> Report:
    """Per weight: commutant of ``W_Q`` in ``V_Q`` versus the ``Q``-charged part of ``W_P``.

    ``P`` is the dual of the root lattice ``Q``, written in its own basis, so a
    point ``nu`` of ``Q`` has ``P``-coordinates ``A nu`` and the generators of
    ``W_Q`` are the dual basis of ``P``.
    """
    q = root_lattice
    if any(q.gram[i][i] != 2 for i in range(q.rank)) or any(
        x.denominator != 1 for row in q.gram for x in row
    ):
        raise ValueError("the commutant check expects a simply laced root lattice (even, diagonal 2)")
    p = q.dual_lattice()
    items = []
    for nu in lattice_sectors(q, cutoff):
        c = tuple(sum((q.gram[i][j] * nu[j] for j in range(q.rank)), Fraction(0)) for i in range(q.rank))
        items.append((nu, c))
    per_weight: dict = {}
    for rows in parallel_map(partial(_commutant_sector, p, cutoff), items, jobs):
        for w, size, ker in rows:
            a, b = per_weight.get(w, (0, 0))
            per_weight[w] = (a + size, b + ker)
    report = Report(
        claim="commutant of W_Q in V_Q = Q-charged part of W_P",
        lattice=str(q),
        columns=("dim_W_P_Q", "dim_commutant"),
    )
    for w in sorted(per_weight):
        size, ker = per_weight[w]
        report.rows.append(
            {"bucket": ("Q", w), "dim_W_P_Q": size, "dim_commutant": ker, "ok": size == ker}
        )
    return report
