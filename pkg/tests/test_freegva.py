import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpsub.exactnum import exp2pi
from gpsub.freegva import (
    FreeElement,
    Straightener,
    StraighteningError,
    evaluate_fock,
    format_element,
    is_basis_monomial,
    is_zero_by_degree,
    parse_element,
    parse_monomial,
    straighten,
)
from gpsub.fock import FockSpace
from gpsub.lattice import Lattice, builtin_lattice

A1 = builtin_lattice("A1")
A2 = builtin_lattice("A2")


def test_zero_by_degree_examples():
    assert not is_zero_by_degree(((0, -1),))
    assert is_zero_by_degree(((0, 0),))
    assert is_zero_by_degree(((0, -1), (0, 3)))
    assert not is_zero_by_degree(())


def test_basis_predicate():
    assert is_basis_monomial(((0, -1), (0, -2), (1, -1)))
    assert not is_basis_monomial(((1, -1), (0, -1)))
    assert not is_basis_monomial(((0, -2), (0, -1)))
    assert not is_basis_monomial(((0, 0),))


def test_evaluation_examples():
    sp = FockSpace(A1)
    assert evaluate_fock(FreeElement.monomial(()), A1) == sp.vacuum()
    assert evaluate_fock(FreeElement.monomial(((0, -1),)), A1) == sp.exp((F(1),))
    double = evaluate_fock(FreeElement.monomial(((0, -1), (0, -1))), A1)
    assert double == sp.exp((F(2),)) * A1.epsilon((1,), (1,))


def test_basis_elements_are_fixed():
    x = FreeElement.monomial(((0, -1), (0, -3), (1, -2)), 5) + FreeElement.monomial(((1, -1),), -1)
    assert straighten(x, A2) == x


def test_degree_vanishing():
    assert straighten(FreeElement.monomial(((0, -1), (0, 0))), A1).is_zero()
    assert straighten(FreeElement.monomial(((0, 0),)), A2).is_zero()


def test_two_letter_sorting_over_a1():
    rng = random.Random(11)
    for _ in range(60):
        letters = tuple((0, rng.randint(-5, 2)) for _ in range(2))
        x = FreeElement.monomial(letters)
        y = straighten(x, A1)
        assert evaluate_fock(x, A1) == evaluate_fock(y, A1)


def test_twisted_lattice_soundness():
    lat = Lattice(labels=("a", "b"), gram=((2, -1), (-1, 2)), eta=((0, 0), (1, 0)))
    rng = random.Random(2)
    for _ in range(80):
        letters = tuple((rng.randrange(2), rng.randint(-4, 1)) for _ in range(rng.randint(2, 3)))
        x = FreeElement.monomial(letters)
        y = straighten(x, lat)
        assert all(is_basis_monomial(m) for m in y.monomials())
        assert evaluate_fock(x, lat) == evaluate_fock(y, lat)


def test_nontrivial_coefficients_survive():
    lat = Lattice(
        labels=("a", "b"),
        gram=((F(1, 2), F(1, 3)), (F(1, 3), F(1, 2))),
        eta=((F(1, 4), F(1, 3)), (F(0), F(1, 4))),
    )
    x = FreeElement.monomial(((1, -1), (0, -1)))
    y = straighten(x, lat)
    assert evaluate_fock(x, lat) == evaluate_fock(y, lat)
    assert any(not isinstance(c, F) for _, c in y.items())


def test_jmax_cap_is_enforced(monkeypatch):
    tiny = Straightener(A1, jmax=1)
    with pytest.raises(StraighteningError):
        tiny.normal_form(((0, -6), (0, -1)))
    monkeypatch.setenv("GPSUB_JMAX", "3")
    assert Straightener(A1).jmax == 3
    monkeypatch.setenv("GPSUB_JMAX", "x")
    with pytest.raises(ValueError):
        Straightener(A1)


def test_parser_examples():
    assert parse_monomial("a1(-1) a0(-2)", A2) == ((1, -1), (0, -2))
    assert parse_monomial("1(-1) 0(-2)", A2) == ((1, -1), (0, -2))
    assert parse_monomial("|0>", A2) == ()
    x = parse_element("2 * a0(-1) - a1(-1) + 1/3 * |0>", A2)
    assert x.coefficient(((0, -1),)) == 2
    assert x.coefficient(((1, -1),)) == -1
    assert x.coefficient(()) == F(1, 3)
    assert parse_element("0", A2).is_zero()
    with pytest.raises(ValueError):
        parse_monomial("a0(-1", A2)
    with pytest.raises(KeyError):
        parse_monomial("zz(-1)", A2)


_letters = st.lists(st.tuples(st.integers(0, 1), st.integers(-6, 3)), min_size=0, max_size=4)
_coeffs = st.one_of(
    st.fractions(max_denominator=6).filter(lambda c: c != 0),
    st.sampled_from([exp2pi(F(1, 3)), exp2pi(F(1, 4)) * 2, exp2pi(F(1, 6)) + 1]),
)


@settings(max_examples=80)
@given(st.lists(st.tuples(_letters, _coeffs), max_size=4))
def test_format_round_trip(terms):
    x = FreeElement({tuple(l): c for l, c in terms})
    text = format_element(x, A2)
    assert parse_element(text, A2) == x
    assert format_element(parse_element(text, A2), A2) == text
