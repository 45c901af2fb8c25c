"""Defining relations of the lattice vertex algebra, checked in the Fock model.

For ``a, b`` in ``+-Pi`` (basis vectors and their negatives), with
``a~ = a(-1)|0>`` and ``v^a = e^a``:

    a~(0) b~ = 0,   a~(1) b~ = (a|b) |0>,   a~(0) v^b = (a|b) v^b,
    v^a((a|a)-1) v^{-a} = eps(a,-a) |0>,   T v^a = a~(-1) v^a,

together with ``v^a((a|a)-2) v^{-a} = eps(a,-a) a~``, the companion identity
that lets the Heisenberg generators be dropped from the presentation.
"""

from __future__ import annotations


from .fock import FockSpace, FockVector
from .lattice import Lattice
from .report import Report

__all__ = ["check_presentation_relations", "signed_basis"]


def signed_basis(lattice: Lattice) -> list:
    out = []
    for i, label in enumerate(lattice.labels):
        e = lattice.basis_vector(i)
        out.append((f"+{label}", e))
        out.append((f"-{label}", tuple(-x for x in e)))
    return out


def _heis_state(space: FockSpace, h) -> FockVector:
    return space.heis_field(h, -1, space.vacuum())


def check_presentation_relations(lattice: Lattice) -> Report:
    space = FockSpace(lattice)
    vac = space.vacuum()
    report = Report(
        claim="generators and relations of the lattice vertex algebra",
        lattice=str(lattice),
        columns=(),
    )

    def record(name, pair, lhs: FockVector, rhs: FockVector):
        ok = lhs == rhs
        report.rows.append({"bucket": (name, pair), "ok": ok})

    signed = signed_basis(lattice)
    for la, a in signed:
        at = _heis_state(space, a)
        va = space.exp(a)
        for lb, b in signed:
            pair = f"{la},{lb}"
            bt = _heis_state(space, b)
            vb = space.exp(b)
            ab = lattice.pairing(a, b)
            record("a~(0)b~ = 0", pair, space.heis_field(a, 0, bt), FockVector())
            record("a~(1)b~ = (a|b)|0>", pair, space.heis_field(a, 1, bt), vac * ab)
            record("a~(0)v^b = (a|b)v^b", pair, space.heis_field(a, 0, vb), vb * ab)
        minus = tuple(-x for x in a)
        eps = lattice.epsilon(a, minus)
        aa = lattice.pairing(a, a)
        vm = space.exp(minus)
        record("v^a((a|a)-1)v^-a = eps(a,-a)|0>", la, space.vertex_mode(a, aa - 1, vm), vac * eps)
        record("v^a((a|a)-2)v^-a = eps(a,-a)a~", la, space.vertex_mode(a, aa - 2, vm), at * eps)
        record("Tv^a = a~(-1)v^a", la, space.translation(va), space.heis_field(a, -1, va))
    return report
