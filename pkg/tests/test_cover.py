"""The tails cover: consistency lattices, wedges, multipliers."""

import random

import pytest

from curlywedge import catalog, cover as cov, pc
from curlywedge.lattice import IntegerLattice


def test_tail_count():
    p = catalog.get("G243_28").presentation()
    c = cov.build_cover(p)
    assert c.ntails == 5 + 10


def test_consistency_lattice_cyclic():
    # a cyclic group has one relation and no relation between tails
    p = catalog.get("C5").presentation()
    c = cov.build_cover(p)
    assert cov.consistency_lattice(c) == IntegerLattice.zero(1)


def test_consistency_lattice_klein_four():
    # tails (t1, t2, t3) for g1^2, g2^2 and the swap; the single overlap
    # relation is 2*t3 = 0
    p = catalog.get("V4").presentation()
    c = cov.build_cover(p)
    lat = cov.consistency_lattice(c)
    assert lat.basis == ((0, 0, 2),)


def test_cover_group_laws_modulo_consistency():
    # tail components are well-defined only modulo the consistency lattice:
    # C measures exactly the failure of tail confluence, so group laws hold
    # with group parts exact and tails reduced mod C
    rng = random.Random(21)
    for name in ["D4", "Q8", "Heis3", "A4"]:
        p = catalog.get(name).presentation()
        c = cov.build_cover(p)
        lat = cov.consistency_lattice(c)
        els = pc.elements(p)
        m = c.ntails

        def same(u, v):
            return u.gpart == v.gpart and \
                lat.reduce(u.tails) == lat.reduce(v.tails)

        for _ in range(100):
            a = cov.CoverElement(rng.choice(els),
                                 tuple(rng.randrange(-4, 5) for _ in range(m)))
            b = cov.CoverElement(rng.choice(els),
                                 tuple(rng.randrange(-4, 5) for _ in range(m)))
            d = cov.CoverElement(rng.choice(els),
                                 tuple(rng.randrange(-4, 5) for _ in range(m)))
            left = cov.cover_mul(c, cov.cover_mul(c, a, b), d)
            right = cov.cover_mul(c, a, cov.cover_mul(c, b, d))
            assert same(left, right)
            assert same(cov.cover_mul(c, a, cov.cover_inv(c, a)),
                        cov.cover_identity(c))
            assert same(cov.cover_mul(c, cov.cover_inv(c, a), a),
                        cov.cover_identity(c))


def test_wedge_lift_independence_exact():
    rng = random.Random(22)
    p = catalog.get("G243_28").presentation()
    e = cov.exterior_square_data(p)
    els = pc.elements(p)
    m = e.cover.ntails
    for _ in range(200):
        x, y = rng.choice(els), rng.choice(els)
        base = e.wedge(x, y)
        sx = tuple(rng.randrange(-5, 6) for _ in range(m))
        sy = tuple(rng.randrange(-5, 6) for _ in range(m))
        lifted = cov.commutator_of_lifts(
            e.cover, cov.CoverElement(x, sx), cov.CoverElement(y, sy))
        assert lifted == base


def test_wedge_group_part_is_commutator():
    rng = random.Random(23)
    for name in ["D4", "S3", "Heis3"]:
        p = catalog.get(name).presentation()
        e = cov.exterior_square_data(p)
        els = pc.elements(p)
        for _ in range(100):
            x, y = rng.choice(els), rng.choice(els)
            assert e.wedge(x, y).gpart == pc.commutator(p, x, y)


def test_multiplier_values():
    expected = {"C2": (), "C12": (), "V4": (2,), "E27": (3, 3, 3),
                "D4": (2,), "Q8": (), "SD16": (), "Heis3": (3, 3),
                "A4": (2,), "G243_28": (9,)}
    for name, m in expected.items():
        e = cov.exterior_square_data(catalog.get(name).presentation())
        assert e.multiplier == m, name


def test_exterior_square_order():
    e = cov.exterior_square_data(catalog.get("G243_28").presentation())
    assert e.derived_order == 27
    assert cov.exterior_square_order(e) == 243
    assert cov.curly_wedge_order(e, (3,)) == 81


def test_rank_sanity_is_enforced():
    # any consistent presentation passes; the check is that construction
    # succeeds and the quotient has free rank n
    for name in catalog.list_names():
        p = catalog.get(name).presentation()
        e = cov.exterior_square_data(p)
        assert e.cover.ntails - e.consistency.rank == p.ngens


def test_express_as_wedge_word_heis3():
    p = catalog.get("Heis3").presentation()
    e = cov.exterior_square_data(p)
    from curlywedge.lattice import smith_transversal
    tr = smith_transversal(e.saturated, e.consistency)
    assert tr.order == 9
    for cls in tr.classes():
        vec = tr.representative(cls)
        word = cov.express_as_wedge_word(e, vec)
        val = cov.evaluate_wedge_word(e, word)
        assert val.gpart == pc.identity(p)
        assert e.residue(val.tails) == e.residue(vec)


def test_express_as_wedge_word_rejects_outside_sat():
    p = catalog.get("V4").presentation()
    e = cov.exterior_square_data(p)
    with pytest.raises(ValueError):
        cov.express_as_wedge_word(e, (1, 0, 0))


def test_express_as_wedge_word_bound():
    p = catalog.get("G243_28").presentation()
    e = cov.exterior_square_data(p)
    from curlywedge.errors import BoundExceeded
    vec = (0,) * e.cover.ntails
    with pytest.raises(BoundExceeded):
        cov.express_as_wedge_word(e, vec, bound=2)
