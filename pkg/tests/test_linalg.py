import random
from fractions import Fraction as F

import sympy

from gpsub.exactnum import exp2pi
from gpsub.linalg import RowReducer, kernel, rank


def test_rank_against_sympy():
    rng = random.Random(7)
    for _ in range(30):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = [[F(rng.randint(-2, 2)) for _ in range(cols)] for _ in range(rows)]
        if rng.random() < 0.5 and rows > 1:
            m[-1] = [a + b for a, b in zip(m[0], m[1 % rows])]
        vecs = [{j: x for j, x in enumerate(r) if x} for r in m]
        assert rank(vecs) == sympy.Matrix(m).rank()


def test_kernel_relations():
    vecs = [{"a": F(1)}, {"b": F(1)}, {"a": F(2), "b": F(-3)}, {}]
    rels = kernel(vecs)
    assert len(rels) == 2
    for rel in rels:
        total = {}
        for j, c in rel.items():
            for k, x in vecs[j].items():
                total[k] = total.get(k, 0) + c * x
        assert all(v == 0 for v in total.values())


def test_cyclotomic_entries():
    z = exp2pi(F(1, 3))
    r = RowReducer()
    assert r.add({0: F(1), 1: z})
    assert not r.add({0: z, 1: z * z})
    assert r.add({0: F(1), 1: F(1)})
    assert r.rank == 2
