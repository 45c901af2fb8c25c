from fractions import Fraction as F

import pytest

from gpsub.duality import (
    annihilating_modes,
    check_commutant_corollary,
    check_duality,
    generator_kernel,
)
from gpsub.combinatorics import enumerate_basis
from gpsub.fock import FockSpace
from gpsub.lattice import Lattice, SingularGram, builtin_lattice
from gpsub.presentation import check_presentation_relations

A1 = builtin_lattice("A1")


def test_vacuum_kernel():
    k = generator_kernel(A1, (0,), 0)
    assert k.dimension == 1
    assert k.basis[0] == FockSpace(A1).vacuum() * k.basis[0].coefficient(((), (F(0),)))


def test_kernel_contains_generator():
    k = generator_kernel(A1, (1,), 1)
    assert k.dimension == 1
    assert set(k.basis[0].keys()) == {((), (F(1),))}


def test_kernel_matches_basis_count_a1():
    for c in range(0, 3):
        for b in enumerate_basis(A1, None, (c,), 6):
            assert generator_kernel(A1, (c,), b.weight).dimension == len(b)


def test_mode_range():
    # e^{b/2} on e^b at weight 1: target weight 1 + 1/4 - n - 1 >= |3b/2|^2/2 = 9/4
    assert annihilating_modes(A1, (1,), 1, (F(1, 2),)) == []
    modes = annihilating_modes(A1, (-1,), 1, (F(1, 2),))
    assert modes and all(n >= 0 and n.denominator == 1 for n in modes)


@pytest.mark.parametrize("name,cutoff", [("A1", 6), ("[[1]]", 4), ("A2", 3), ("[[3]]", 5), ("dual:[[3]]", 5)])
def test_duality_reports(name, cutoff):
    rep = check_duality(builtin_lattice(name), cutoff)
    assert rep.passed
    assert all(r["contained"] for r in rep.rows)


def test_commutant_a2():
    rep = check_commutant_corollary(builtin_lattice("A2"), 3)
    assert rep.passed
    assert rep.rows[0]["dim_commutant"] == 1


def test_commutant_rejects_non_root_lattice():
    with pytest.raises(ValueError):
        check_commutant_corollary(builtin_lattice("[[3]]"), 2)


def test_singular_gram_rejected():
    lat = Lattice(labels=("a", "b"), gram=((2, 2), (2, 2)))
    with pytest.raises(SingularGram):
        generator_kernel(lat, (0, 0), 0)


def test_presentation_examples():
    rep = check_presentation_relations(A1)
    assert rep.passed
    names = {r["bucket"][0] for r in rep.rows}
    assert "v^a((a|a)-1)v^-a = eps(a,-a)|0>" in names
    twisted = Lattice(labels=("a", "b"), gram=((2, -1), (-1, 2)), eta=((0, 0), (1, 0)))
    assert check_presentation_relations(twisted).passed


def test_report_outputs():
    rep = check_duality(A1, 2)
    text = rep.to_human()
    assert text.splitlines()[-1].endswith("PASS")
    assert "((0); 0): dim_W=1, contained=ok, dim_kernel=1, ok" in text
    assert rep.to_dict()["buckets"] == len(rep.rows)
