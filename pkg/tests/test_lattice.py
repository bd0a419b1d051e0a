"""Exact integer linear algebra: normal forms and lattice arithmetic."""

import random
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curlywedge.errors import InfiniteIndexError
from curlywedge.lattice import (IntegerLattice, hnf, identity_matrix,
                                lattice_index, lattice_sum, mat_mul,
                                quotient_invariants, saturation,
                                smith_transversal, snf, unimodular_inverse)


def _det(mat):
    n = len(mat)
    if n == 0:
        return 1
    if n == 1:
        return mat[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        total += (-1) ** j * mat[0][j] * _det(minor)
    return total


def random_matrix(rng, rows, cols, span=100):
    return [[rng.randint(-span, span) for _ in range(cols)]
            for _ in range(rows)]


def test_hnf_small_example():
    h, u = hnf([[2, 4], [6, 8]])
    assert mat_mul(u, [[2, 4], [6, 8]]) == h
    assert h == [[2, 0], [0, 4]]


def test_hnf_transform_is_unimodular():
    rng = random.Random(7)
    for _ in range(50):
        m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5), 30)
        h, u = hnf(m)
        assert mat_mul(u, m) == h
        assert abs(_det(u)) == 1


def test_hnf_pivots_positive_and_reduced():
    rng = random.Random(11)
    for _ in range(30):
        m = random_matrix(rng, 4, 4, 40)
        h, _ = hnf(m)
        pivots = []
        for i, row in enumerate(h):
            nz = [j for j, x in enumerate(row) if x]
            if not nz:
                continue
            p = nz[0]
            assert row[p] > 0
            for k in range(i):
                assert 0 <= h[k][p] < row[p]
            pivots.append(p)
        assert pivots == sorted(pivots)


def test_snf_small_examples():
    s, u, v = snf([[2, 0], [0, 3]])
    assert [s[0][0], s[1][1]] == [1, 6]
    s, _, _ = snf([[4, 0], [0, 3], [0, 0]])
    assert s[0][0] == 1 and s[1][1] == 12


def test_snf_transforms_and_divisibility():
    rng = random.Random(13)
    for _ in range(60):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = random_matrix(rng, rows, cols, 50)
        s, u, v = snf(m)
        assert mat_mul(mat_mul(u, m), v) == s
        assert abs(_det(u)) == 1 and abs(_det(v)) == 1
        diag = [s[i][i] for i in range(min(rows, cols))]
        assert all(d >= 0 for d in diag)
        for a, b in zip(diag, diag[1:]):
            if a and b:
                assert b % a == 0
            if a == 0:
                assert b == 0
        for i in range(rows):
            for j in range(cols):
                if i != j:
                    assert s[i][j] == 0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-30, 30), min_size=3, max_size=3),
                min_size=1, max_size=5))
def test_snf_transform_property(rows):
    s, u, v = snf(rows)
    assert mat_mul(mat_mul(u, rows), v) == s


def test_unimodular_inverse_roundtrip():
    rng = random.Random(17)
    for _ in range(20):
        m = random_matrix(rng, 4, 4, 20)
        _, u = hnf(m)
        ui = unimodular_inverse(u)
        assert mat_mul(u, ui) == identity_matrix(4)


def test_unimodular_inverse_rejects_singular():
    with pytest.raises(ValueError):
        unimodular_inverse([[2, 0], [0, 1]])


def test_lattice_membership_and_reduce():
    lat = IntegerLattice.from_rows(3, [[2, 0, 0], [0, 3, 0]])
    assert lat.contains((4, 3, 0))
    assert not lat.contains((1, 0, 0))
    assert not lat.contains((0, 0, 1))
    assert lat.reduce((5, 7, 2)) == (1, 1, 2)
    assert lat.reduce((-1, -1, 0)) == (1, 2, 0)


def test_lattice_canonical_equality():
    a = IntegerLattice.from_rows(2, [[1, 1], [0, 2]])
    b = IntegerLattice.from_rows(2, [[1, 3], [1, 1]])
    assert a == b


def test_lattice_sum_and_containment():
    a = IntegerLattice.from_rows(2, [[2, 0]])
    b = IntegerLattice.from_rows(2, [[0, 2]])
    s = lattice_sum(a, b)
    assert s.contains_lattice(a) and s.contains_lattice(b)
    assert s.rank == 2


def test_saturation_examples():
    lat = IntegerLattice.from_rows(3, [[0, 0, 2]])
    sat = saturation(lat)
    assert sat.basis == ((0, 0, 1),)
    assert saturation(sat) == sat
    assert saturation(IntegerLattice.zero(4)) == IntegerLattice.zero(4)


def test_saturation_random_properties():
    rng = random.Random(19)
    for _ in range(30):
        m = random_matrix(rng, rng.randint(1, 4), 5, 15)
        lat = IntegerLattice.from_rows(5, m)
        sat = saturation(lat)
        assert sat.contains_lattice(lat)
        assert sat.rank == lat.rank
        assert saturation(sat) == sat


def test_quotient_invariants_examples():
    full = IntegerLattice.full(2)
    sub = IntegerLattice.from_rows(2, [[2, 0], [0, 4]])
    assert quotient_invariants(full, sub) == (2, 4)
    assert quotient_invariants(full, full) == ()
    z = IntegerLattice.zero(3)
    assert quotient_invariants(z, z) == ()


def test_quotient_invariants_infinite():
    full = IntegerLattice.full(2)
    sub = IntegerLattice.from_rows(2, [[1, 0]])
    with pytest.raises(InfiniteIndexError):
        quotient_invariants(full, sub)


def test_index_equals_product_of_invariants():
    rng = random.Random(23)
    for _ in range(30):
        base = random_matrix(rng, 3, 3, 10)
        a = IntegerLattice.from_rows(3, base + [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        mult = [[2, 1, 0], [0, 3, 1], [0, 0, 5]]
        b = IntegerLattice.from_rows(3, mat_mul(mult, [list(r) for r in a.basis]))
        idx = lattice_index(a, b)
        inv = quotient_invariants(a, b)
        assert idx == prod(inv, start=1)


def test_smith_transversal_roundtrip():
    a = IntegerLattice.full(2)
    b = IntegerLattice.from_rows(2, [[2, 0], [0, 6]])
    tr = smith_transversal(a, b)
    assert tr.order == 12
    assert sorted(tr.nontrivial) == [2, 6]
    classes = tr.classes()
    assert len(set(classes)) == tr.order
    for cls in classes:
        vec = tr.representative(cls)
        assert tr.to_class(vec) == cls
    zero = tr.zero_class
    for cls in classes[:5]:
        assert tr.add(cls, tr.neg(cls)) == zero
