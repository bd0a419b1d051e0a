"""The tails central extension: exterior squares and Schur multipliers.

Appending one central, infinite-order tail generator to every relation of a
polycyclic presentation yields a cover whose elements are pairs
(group normal form, integer tail vector).  Overlap tests evaluated with
tails produce the consistency lattice C in Z^m; the tail quotient Z^m/C is
the relation module of a free presentation, its torsion sat(C)/C is the
Schur multiplier, and wedges x ^ y are evaluated as commutators of lifts.

Tail vectors are exact integers and are never reduced modulo C implicitly;
reduction happens only at comparison points.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import prod

from . import pc
from .errors import BoundExceeded, InconsistencyError
from .lattice import IntegerLattice, quotient_invariants, saturation

__all__ = [
    "TailedCover",
    "CoverElement",
    "build_cover",
    "collect_with_tails",
    "cover_identity",
    "cover_mul",
    "cover_inv",
    "commutator_of_lifts",
    "consistency_lattice",
    "ExtSquareData",
    "exterior_square_data",
    "wedge",
    "multiplier",
    "exterior_square_order",
    "curly_wedge_order",
    "express_as_wedge_word",
    "evaluate_wedge_word",
    "DEFAULT_COVER_BOUND",
]

DEFAULT_COVER_BOUND = 200000


@dataclass(frozen=True)
class TailedCover:
    """A presentation together with its tail bookkeeping.

    Tail count is n + n(n-1)/2: one per power relation (in generator order),
    then one per conjugation relation in (i, j) lexicographic order.
    """

    base: pc.PcPresentation

    @property
    def ntails(self):
        n = self.base.ngens
        return n + n * (n - 1) // 2


@dataclass(frozen=True)
class CoverElement:
    gpart: tuple   # exponent tuple, normal form in the base group
    tails: tuple   # length-m integer vector, unreduced


def build_cover(p):
    return TailedCover(p)


@lru_cache(maxsize=None)
def _tail_collector(cover):
    return pc._Collector(cover.base, tails=True)


def collect_with_tails(cover, word):
    nf, tails = _tail_collector(cover).collect(word)
    return CoverElement(nf, tails)


def cover_identity(cover):
    return CoverElement(pc.identity(cover.base), (0,) * cover.ntails)


def lift(cover, element, offset=None):
    """The lift of a base element with the given tail offset (default 0)."""
    if offset is None:
        offset = (0,) * cover.ntails
    return CoverElement(tuple(element), tuple(offset))


def cover_mul(cover, a, b):
    """Product in the cover: collect the concatenated normal words; tail
    offsets are central and add."""
    c = collect_with_tails(cover, pc.word_of(a.gpart) + pc.word_of(b.gpart))
    tails = tuple(x + y + z for x, y, z in zip(c.tails, a.tails, b.tails))
    return CoverElement(c.gpart, tails)


def cover_inv(cover, a):
    w = [(g, -e) for g, e in reversed(pc.word_of(a.gpart))]
    inv_nf = collect_with_tails(cover, w).gpart
    # (a, 0) * (inv_nf, 0) has trivial group part and tail vector u0, so the
    # inverse of (a, s) carries the offset -u0 - s.
    zero = (0,) * cover.ntails
    u0 = cover_mul(cover, CoverElement(a.gpart, zero),
                   CoverElement(inv_nf, zero)).tails
    return CoverElement(inv_nf, tuple(-u - s for u, s in zip(u0, a.tails)))


def commutator_of_lifts(cover, a, b):
    """[a, b] = a b a^-1 b^-1 in the cover (left convention).

    Tail offsets of the lifts cancel exactly, which is what makes wedge
    values independent of the chosen lifts.
    """
    ai = cover_inv(cover, a)
    bi = cover_inv(cover, b)
    return cover_mul(cover, cover_mul(cover, a, b), cover_mul(cover, ai, bi))


def cover_conjugate(cover, z, a):
    """^z a = z a z^-1 in the cover."""
    return cover_mul(cover, cover_mul(cover, z, a), cover_inv(cover, z))


def consistency_lattice(cover):
    """The lattice C of tail relations extracted from the overlap tests.

    Both sides of every overlap are collected with tails; the group parts
    must agree (base consistency is fatal otherwise) and the tail
    differences generate C.
    """
    base = cover.base
    col = _tail_collector(cover)
    zero = (0,) * cover.ntails

    def gen(i):
        e = [0] * base.ngens
        e[i - 1] = 1
        return CoverElement(tuple(e), zero)

    def pw(i, offset):
        nf, tails = col.collect([(i, base.orders[i - 1] + (offset or 0))])
        return CoverElement(nf, tails)

    def mul(a, b):
        return cover_mul(cover, a, b)

    rows = []
    for test in pc.overlap_tests(base.ngens, base.orders):
        left, right = pc._overlap_sides(mul, gen, pw, test)
        if left.gpart != right.gpart:
            raise InconsistencyError(
                f"base presentation inconsistent at overlap {pc._describe(test)}",
                [pc._describe(test)])
        row = [x - y for x, y in zip(left.tails, right.tails)]
        if any(row):
            rows.append(row)
    return IntegerLattice.from_rows(cover.ntails, rows)


class ExtSquareData:
    """Everything derived from the tails extension of one group.

    Immutable once assembled; the wedge-word search table is built lazily
    and cached.
    """

    def __init__(self, p, element_bound=pc.DEFAULT_ELEMENT_BOUND,
                 cover_bound=DEFAULT_COVER_BOUND):
        self.presentation = p
        self.element_bound = element_bound
        self.cover_bound = cover_bound
        self.cover = build_cover(p)
        self.consistency = consistency_lattice(self.cover)
        # the tail quotient Z^m/C splits as M(G) + Z^n for finite G
        if self.cover.ntails - self.consistency.rank != p.ngens:
            raise InconsistencyError(
                "tail quotient has unexpected free rank; presentation bad")
        self.saturated = saturation(self.consistency)
        self.multiplier = quotient_invariants(self.saturated, self.consistency)
        self.derived = pc.derived_subgroup(p, element_bound)
        self.derived_order = len(self.derived)
        self.exterior_square_order = (
            self.derived_order * prod(self.multiplier, start=1))
        self.wedge_table = {}
        zero = (0,) * self.cover.ntails
        n = p.ngens
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                gi = [0] * n
                gi[i - 1] = 1
                gj = [0] * n
                gj[j - 1] = 1
                self.wedge_table[(i, j)] = commutator_of_lifts(
                    self.cover, CoverElement(tuple(gi), zero),
                    CoverElement(tuple(gj), zero))
        self._bfs = None

    def wedge(self, x, y):
        zero = (0,) * self.cover.ntails
        return commutator_of_lifts(self.cover, CoverElement(tuple(x), zero),
                                   CoverElement(tuple(y), zero))

    def residue(self, tails):
        """Canonical tail residue modulo the consistency lattice."""
        return self.consistency.reduce(tails)

    def in_multiplier(self, tails):
        return self.saturated.contains(tails)


def exterior_square_data(p, element_bound=pc.DEFAULT_ELEMENT_BOUND,
                         cover_bound=DEFAULT_COVER_BOUND):
    return ExtSquareData(p, element_bound, cover_bound)


def wedge(e, x, y):
    return e.wedge(x, y)


def multiplier(e):
    return e.multiplier


def exterior_square_order(e):
    return e.exterior_square_order


def curly_wedge_order(e, bogomolov_invariants):
    return e.derived_order * prod(bogomolov_invariants, start=1)


def _wedge_bfs(e, bound):
    """Breadth-first closure of the wedge-generated derived cover.

    Nodes are (group part, tail residue mod C); edges multiply by a
    generator wedge or conjugate by a generator lift, both of which preserve
    the derived subgroup of the cover.  Parent pointers allow rebuilding
    each node as a signed product of wedges of group elements, using
    ^z (x ^ y) = (^z x) ^ (^z y) to push conjugations into the pairs.
    """
    if e._bfs is not None:
        return e._bfs
    cover = e.cover
    p = e.presentation
    n = p.ngens
    zero = (0,) * cover.ntails
    gens = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            w = e.wedge_table[(i, j)]
            gens.append((("w", i, j, 1), w))
            gens.append((("w", i, j, -1), cover_inv(cover, w)))
    lifts = []
    for k in range(1, n + 1):
        gk = [0] * n
        gk[k - 1] = 1
        lifts.append((k, CoverElement(tuple(gk), zero)))

    start = cover_identity(cover)
    key0 = (start.gpart, e.residue(start.tails))
    nodes = {key0: (start, None, None)}  # key -> (element, parent key, op)
    frontier = [key0]
    while frontier:
        if len(nodes) > bound:
            raise BoundExceeded(
                f"wedge subgroup search exceeded bound {bound}")
        next_frontier = []
        for key in frontier:
            cur = nodes[key][0]
            neighbors = []
            for op, w in gens:
                neighbors.append((op, cover_mul(cover, cur, w)))
            for k, gk in lifts:
                neighbors.append((("c", k, 1),
                                  cover_conjugate(cover, gk, cur)))
            for op, nxt in neighbors:
                reduced = CoverElement(nxt.gpart, e.residue(nxt.tails))
                nkey = (reduced.gpart, reduced.tails)
                if nkey not in nodes:
                    nodes[nkey] = (reduced, key, op)
                    next_frontier.append(nkey)
        frontier = next_frontier
    e._bfs = nodes
    return nodes


def _node_word(e, nodes, key):
    """Rebuild a node as a list of (x, y, sign) wedge factors."""
    ops = []
    while True:
        _, parent, op = nodes[key]
        if parent is None:
            break
        ops.append(op)
        key = parent
    ops.reverse()
    p = e.presentation
    word = []
    for op in ops:
        if op[0] == "w":
            _, i, j, sign = op
            gi = [0] * p.ngens
            gi[i - 1] = 1
            gj = [0] * p.ngens
            gj[j - 1] = 1
            word.append((tuple(gi), tuple(gj), sign))
        else:
            _, k, _ = op
            gk = [0] * p.ngens
            gk[k - 1] = 1
            gk = tuple(gk)
            word = [(pc.conjugate(p, gk, x), pc.conjugate(p, gk, y), sign)
                    for x, y, sign in word]
    return word


def evaluate_wedge_word(e, word):
    """Product of wedge(x, y)^sign factors as a cover element."""
    out = cover_identity(e.cover)
    for x, y, sign in word:
        w = e.wedge(x, y)
        if sign < 0:
            w = cover_inv(e.cover, w)
        out = cover_mul(e.cover, out, w)
    return out


def express_as_wedge_word(e, target, bound=None):
    """Write a multiplier element as a signed product of wedges.

    ``target`` is a tail vector in sat(C); the returned word evaluates to a
    cover element with trivial group part and tail vector congruent to
    ``target`` mod C.  The result is re-evaluated as a validity check.
    """
    if bound is None:
        bound = e.cover_bound
    target = tuple(target)
    if not e.saturated.contains(target):
        raise ValueError("target tail vector is not in sat(C)")
    nodes = _wedge_bfs(e, bound)
    key = (pc.identity(e.presentation), e.residue(target))
    if key not in nodes:
        raise ValueError("target is not represented in the wedge subgroup")
    word = _node_word(e, nodes, key)
    check = evaluate_wedge_word(e, word)
    if check.gpart != pc.identity(e.presentation) or \
            e.residue(check.tails) != e.residue(target):
        raise AssertionError("wedge word failed re-evaluation")
    return word
