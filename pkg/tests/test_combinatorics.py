import json
from fractions import Fraction as F

import pytest

from gpsub.combinatorics import (
    ChargeBoxRequired,
    QSeries,
    character,
    dominates,
    enumerate_basis,
    monomial_weight,
    partitions_at_most,
    verify_character,
)
from gpsub.lattice import builtin_lattice

A1 = builtin_lattice("A1")


def test_enumeration_examples():
    [b] = enumerate_basis(A1, None, (0,), 5)
    assert b.members == ((),) and b.weight == 0
    ones = enumerate_basis(A1, None, (1,), 4)
    assert [b.weight for b in ones] == [1, 2, 3, 4]
    assert ones[0].members == (((0, -1),),)
    twos = enumerate_basis(A1, None, (2,), 4)
    assert len(twos) == 1 and twos[0].weight == 4 and len(twos[0]) == 1


def test_member_weights_match_buckets():
    a2 = builtin_lattice("A2")
    lam = a2.dual_basis()[1]
    for b in enumerate_basis(a2, lam, (2, 1), 7):
        for m in b.members:
            assert monomial_weight(a2, lam, m) == b.weight


def test_character_examples():
    assert character(A1, None, 6).weight_coefficients() == [1, 1, 1, 1, 2, 2, 3]
    series = character(builtin_lattice("[[1/2]]"), None, 1)
    first = [t for t in series.terms if t[0][0] != (0,)][0]
    assert first == (((1,), F(1, 4)), 1)
    assert character(builtin_lattice("A2"), None, 0).terms == ((((0, 0), F(0)), 1),)


def test_shifted_character_weights():
    series = character(A1, (F(1, 2),), 3)
    assert series.terms[0] == (((0,), F(1, 4)), 1)


def test_partition_sanity_on_degenerate_form():
    lat = builtin_lattice("[[0]]")
    with pytest.raises(ChargeBoxRequired):
        character(lat, None, 4)
    with pytest.warns(UserWarning):
        series = character(lat, None, 6, charge_box=(3,))
    for k in range(4):
        expected = list(partitions_at_most(k, 6))
        got = [series.coefficient((k,), n) for n in range(7)]
        assert got == expected


def test_partitions_at_most():
    # partitions of 6 into at most 2 parts: 6, 51, 42, 33
    assert partitions_at_most(2, 6)[6] == 4
    assert partitions_at_most(0, 3) == (1, 0, 0, 0)


def test_monotone_truncation():
    a2 = builtin_lattice("A2")
    big = character(a2, None, 7)
    small = character(a2, None, 5)
    assert big.truncate(5) == small
    with pytest.raises(ValueError):
        small.truncate(6)


def test_qseries_json_round_trip():
    s = character(builtin_lattice("[[1/2]]"), None, 3)
    assert QSeries.from_json(s.to_json()) == s
    payload = json.loads(s.to_json())
    assert payload["cutoff"] == "3"
    assert "q^{1/4} x1^1" in s.to_human()


@pytest.mark.parametrize(
    "name,lam,cutoff",
    [("A1", None, 6), ("A2", None, 5), ("A1", (F(1, 2),), 5), ("[[1/2]]", None, 5)],
)
def test_three_way(name, lam, cutoff):
    rep = verify_character(builtin_lattice(name), lam, cutoff)
    assert rep.passed
    assert all(r["character"] == r["basis"] == r["rank"] for r in rep.rows)


def test_dominance_order():
    a = ((0, -2), (0, -2))
    b = ((0, -1), (0, -3))
    assert dominates(a, b) and not dominates(b, a)
    assert not dominates(a, a)
    assert not dominates(((0, -1),), ((1, -1),))
