import json
import random
from fractions import Fraction as F

import pytest

from gpsub.exactnum import exp2pi
from gpsub.lattice import (
    ConstraintViolation,
    Lattice,
    LatticeSpecError,
    SingularGram,
    builtin_lattice,
    lattice_from_spec,
    load_lattice,
)


def test_pairing_examples():
    a1, a2, half = builtin_lattice("A1"), builtin_lattice("A2"), builtin_lattice("[[1/2]]")
    assert a1.pairing((1,), (1,)) == 2
    assert a2.pairing((1, 0), (0, 1)) == -1
    assert half.pairing((2,), (3,)) == 3


def test_locality_bound_examples():
    assert builtin_lattice("A1").locality_bound((1,), (1,)) == -2
    assert builtin_lattice("A2").locality_bound((1, 1), (0, 0)) == 0
    assert builtin_lattice("[[1/2]]").locality_bound((1,), (1,)) == F(-1, 2)


def test_default_eta_is_symmetric():
    a1 = builtin_lattice("A1")
    assert a1.eta_value((1,), (1,)) == 1
    assert a1.omega((1,), (1,)) == 1
    half = builtin_lattice("[[1/2]]")
    assert half.eta_value((1,), (1,)) == exp2pi(F(1, 4))
    assert half.omega((1,), (1,)) == 1
    assert half.trivial_cocycle


def test_dual_basis_examples():
    assert builtin_lattice("A1").dual_basis() == [(F(1, 2),)]
    assert builtin_lattice("[[1]]").dual_basis() == [(F(1),)]
    a2 = builtin_lattice("A2")
    assert a2.dual_basis()[0] == (F(2, 3), F(1, 3))
    for i, d in enumerate(a2.dual_basis()):
        for j in range(2):
            assert a2.pairing(d, a2.basis_vector(j)) == (i == j)


def test_dual_of_dual():
    a2 = builtin_lattice("A2")
    assert a2.dual_lattice().dual_lattice().gram == a2.gram


def test_height():
    a2 = builtin_lattice("A2")
    assert a2.height((0, 0)) == 0
    assert a2.height((1, 1)) == 2
    assert a2.height((2, -1)) == 1


def test_constraint_violations():
    with pytest.raises(ConstraintViolation):
        Lattice(labels=("a",), gram=((2,),), eta=((F(1, 2),),))
    with pytest.raises(ConstraintViolation):
        Lattice(labels=("a", "b"), gram=((2, -1), (-1, 2)), eta=((0, F(1, 3)), (0, 0)))
    with pytest.raises(LatticeSpecError):
        Lattice(labels=("a", "b"), gram=((2, 1), (0, 2)))


def test_singular_gram():
    lat = Lattice(labels=("a", "b"), gram=((2, 2), (2, 2)))
    with pytest.raises(SingularGram):
        lat.dual_basis()


def test_cocycle_identities_with_twisted_eta():
    lat = Lattice(
        labels=("a", "b"),
        gram=((F(1, 2), F(1, 3)), (F(1, 3), F(1, 2))),
        eta=((F(1, 4), F(1, 3)), (F(0), F(1, 4))),
    )
    assert not lat.trivial_cocycle
    rng = random.Random(5)
    for _ in range(100):
        a, b, c = [tuple(F(rng.randint(-3, 3)) for _ in range(2)) for _ in range(3)]
        assert lat.epsilon(a, b) / lat.epsilon(b, a) == lat.omega(a, b)
        ab = tuple(x + y for x, y in zip(a, b))
        bc = tuple(x + y for x, y in zip(b, c))
        assert lat.epsilon(a, b) * lat.epsilon(ab, c) == lat.epsilon(b, c) * lat.epsilon(a, bc)
        assert lat.epsilon(lat.zero(), a) == lat.epsilon(a, lat.zero()) == 1
    for i in range(2):
        for j in range(2):
            bi, bj = lat.basis_vector(i), lat.basis_vector(j)
            assert lat.eta_value(bi, bj) * lat.eta_value(bj, bi) == exp2pi(lat.pairing(bi, bj))


def test_spec_round_trip(tmp_path):
    lat = Lattice(labels=("x", "y"), gram=((2, -1), (-1, 2)), eta=((0, F(1, 3)), (F(2, 3), 0)))
    spec = lat.to_spec()
    assert lattice_from_spec(spec) == lat
    path = tmp_path / "lat.json"
    path.write_text(json.dumps(spec))
    assert load_lattice(str(path)) == lat
    with pytest.raises(LatticeSpecError):
        lattice_from_spec({"gram": [["x"]]})
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(LatticeSpecError):
        load_lattice(str(bad))


def test_builtin_names():
    assert builtin_lattice("rank1:3").gram == ((F(3),),)
    assert builtin_lattice("dual:A1").gram == ((F(1, 2),),)
    assert builtin_lattice("A3").rank == 3
    with pytest.raises(LatticeSpecError):
        builtin_lattice("E8")


def test_positive_definite_and_bounds():
    assert builtin_lattice("A2").positive_definite
    assert not builtin_lattice("[[0]]").positive_definite
    a1 = builtin_lattice("A1")
    # x^2 <= 6  ->  |x| <= 2
    assert a1.coordinate_bound(0, 6) == 2
