"""Polycyclic presentations: parsing, collection, structure computations."""

import random

import pytest

from curlywedge import catalog, pc
from curlywedge.errors import (BoundExceeded, FormatError, InconsistencyError)

D4 = "name D4\norders 2 4\nconj 2 1 = g2^3\n"
Q8 = "name Q8\norders 2 4\npow 1 = g2^2\nconj 2 1 = g2^3\n"


def test_parse_roundtrip():
    p = pc.parse_presentation(D4)
    assert p.name == "D4"
    assert p.orders == (2, 4)
    assert pc.format_presentation(p) == D4


def test_parse_comments_and_blank_lines():
    src = "# dihedral\nname D4\n\norders 2 4  # two generators\nconj 2 1 = g2^3\n"
    p = pc.parse_presentation(src)
    assert p.order() == 8


def test_parse_rejects_malformed():
    with pytest.raises(FormatError):
        pc.parse_presentation("orders 2\npow 1 = g9\n")
    with pytest.raises(FormatError):
        pc.parse_presentation("orders\n")
    with pytest.raises(FormatError):
        pc.parse_presentation("orders 2 2\nconj 1 2 = g2\n")
    with pytest.raises(FormatError):
        pc.parse_presentation("orders 2 2\nbogus line\n")
    with pytest.raises(FormatError):
        pc.parse_presentation("orders 2 2\nconj 2 1 = g2^5\n")


def test_parse_rejects_inconsistent():
    src = "name broken\norders 2 4\nconj 2 1 = g2^2\n"
    with pytest.raises(InconsistencyError) as exc:
        pc.parse_presentation(src)
    assert exc.value.failures


def test_collection_d4():
    p = pc.parse_presentation(D4)
    # g2 g1 = g1 (g1^-1 g2 g1) = g1 g2^3
    assert pc.multiply(p, (0, 1), (1, 0)) == (1, 3)
    assert pc.commutator(p, (0, 1), (1, 0)) == (0, 2)
    assert pc.inverse(p, (1, 1)) == pc.collect(p, [(2, -1), (1, -1)])
    assert pc.power(p, (0, 1), 4) == (0, 0)


def test_group_laws_sampled():
    rng = random.Random(5)
    for name in ["D4", "Q8", "S3", "A4", "Heis3", "G243_28"]:
        p = catalog.get(name).presentation()
        els = pc.elements(p)
        for _ in range(200):
            a, b, c = (rng.choice(els) for _ in range(3))
            left = pc.multiply(p, pc.multiply(p, a, b), c)
            right = pc.multiply(p, a, pc.multiply(p, b, c))
            assert left == right
            assert pc.multiply(p, a, pc.inverse(p, a)) == pc.identity(p)
            assert pc.conjugate(p, a, b) == pc.multiply(
                p, pc.multiply(p, a, b), pc.inverse(p, a))


def test_elements_bound():
    p = catalog.get("G243_28").presentation()
    with pytest.raises(BoundExceeded):
        pc.elements(p, bound=100)


def test_group_table_matches_collection():
    p = catalog.get("A4").presentation()
    t = pc.group_table(p)
    rng = random.Random(9)
    for _ in range(100):
        a, b = rng.choice(t.elements), rng.choice(t.elements)
        assert t.elements[t.mul(t.index[a], t.index[b])] == pc.multiply(p, a, b)


def test_conjugacy_classes_s3():
    p = catalog.get("S3").presentation()
    classes = pc.conjugacy_classes(p)
    assert sorted(size for _, size in classes) == [1, 2, 3]
    assert sum(size for _, size in classes) == 6


def test_conjugacy_classes_partition():
    for name in ["D4", "Q8", "A4", "Heis3"]:
        p = catalog.get(name).presentation()
        classes = pc.conjugacy_classes(p)
        assert sum(size for _, size in classes) == p.order()


def test_centralizer_properties():
    p = catalog.get("D4").presentation()
    cent = pc.centralizer(p, (0, 1))
    assert len(cent) == 4       # <r> centralizes the rotation
    gens = pc.centralizer_generators(p, (0, 1))
    t = pc.group_table(p)
    closure = t.closure([t.index[g] for g in gens])
    assert {t.elements[i] for i in closure} == set(cent)


def test_derived_and_abelianization():
    cases = {"D4": (2, (2, 2)), "Q8": (2, (2, 2)), "S3": (3, (2,)),
             "A4": (4, (3,)), "Heis3": (3, (3, 3)), "C12": (1, (12,))}
    for name, (dorder, ab) in cases.items():
        p = catalog.get(name).presentation()
        assert len(pc.derived_subgroup(p)) == dorder
        assert pc.abelianization(p) == ab


def test_nilpotency_class():
    assert pc.nilpotency_class(catalog.get("C12").presentation()) == 1
    assert pc.nilpotency_class(catalog.get("D4").presentation()) == 2
    assert pc.nilpotency_class(catalog.get("Heis3").presentation()) == 2
    assert pc.nilpotency_class(catalog.get("S3").presentation()) is None
    assert pc.nilpotency_class(catalog.get("G243_28").presentation()) == 4


def test_quotient_presentation_d4_center():
    p = catalog.get("D4").presentation()
    center = {(0, 0), (0, 2)}
    q, project = pc.quotient_presentation(p, center)
    assert q.order() == 4
    assert pc.abelianization(q) == (2, 2)
    # the projection is a homomorphism
    rng = random.Random(3)
    els = pc.elements(p)
    for _ in range(50):
        a, b = rng.choice(els), rng.choice(els)
        assert project(pc.multiply(p, a, b)) == \
            pc.multiply(q, project(a), project(b))


def test_quotient_presentation_a4_derived():
    p = catalog.get("A4").presentation()
    n = pc.derived_subgroup(p)
    q, project = pc.quotient_presentation(p, n)
    assert q.order() == 3
    assert project(pc.identity(p)) == pc.identity(q)
    els = pc.elements(p)
    rng = random.Random(4)
    for _ in range(50):
        a, b = rng.choice(els), rng.choice(els)
        assert project(pc.multiply(p, a, b)) == \
            pc.multiply(q, project(a), project(b))


def test_quotient_presentation_g243_by_derived():
    p = catalog.get("G243_28").presentation()
    n = pc.derived_subgroup(p)
    q, project = pc.quotient_presentation(p, n)
    assert q.order() == 9
    assert pc.abelianization(q) == (3, 3)


def test_quotient_rejects_non_normal():
    p = catalog.get("S3").presentation()
    with pytest.raises(ValueError):
        pc.quotient_presentation(p, {(0, 0), (1, 0)})
