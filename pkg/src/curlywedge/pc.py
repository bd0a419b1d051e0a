"""Polycyclic presentations of finite solvable groups.

A presentation has generators g_1..g_n with relative orders r_i >= 2, power
relations g_i^{r_i} = word over higher generators, and conjugation relations
giving g_i^-1 g_j g_i for i < j as a word over generators with index >= i+1.
Every element has a unique normal form g_1^{e_1} ... g_n^{e_n} with
0 <= e_i < r_i; elements are plain exponent tuples.

Group arithmetic is collection from the left: the leftmost violation of
normal form (an out-of-order adjacent pair, an overgrown exponent, or a
mergeable pair) is rewritten using the stored relations until the word is
collected.  Negative exponents are eliminated eagerly through precomputed
generator inverses.

Commutators and conjugation exposed by this module use the left conventions
[x,y] = x y x^-1 y^-1 and ^x y = x y x^-1.  The *stored* conjugation
relations are right conjugates g_i^-1 g_j g_i, which is what makes relations
of the shape "conjugate of a later generator by an earlier one" expressible;
see the file-format notes in the README.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import prod

from .errors import BoundExceeded, FormatError, InconsistencyError
from .lattice import snf

__all__ = [
    "PcPresentation",
    "parse_presentation",
    "format_presentation",
    "word_of",
    "identity",
    "collect",
    "multiply",
    "inverse",
    "power",
    "conjugate",
    "commutator",
    "consistency_failures",
    "is_consistent",
    "group_order",
    "elements",
    "GroupTable",
    "group_table",
    "conjugacy_classes",
    "centralizer",
    "centralizer_generators",
    "derived_subgroup",
    "abelianization",
    "nilpotency_class",
    "quotient_presentation",
    "DEFAULT_ELEMENT_BOUND",
]

DEFAULT_ELEMENT_BOUND = 5000


@dataclass(frozen=True)
class PcPresentation:
    """Validated polycyclic presentation data.

    ``powers[i]`` is the normal word for g_{i+1}^{r_{i+1}} (0-based tuple
    index, 1-based generators).  ``conjugates`` maps each pair i < j to the
    normal word for g_i^-1 g_j g_i; trivial entries are stored explicitly so
    the structure is a pure function of (orders, relations).
    """

    name: str
    orders: tuple
    powers: tuple        # tuple of words; word = tuple of (gen, exp) pairs
    conjugates: tuple    # tuple of ((i, j), word) sorted by (i, j)

    @property
    def ngens(self):
        return len(self.orders)

    def conjugate_word(self, i, j):
        for (a, b), w in self.conjugates:
            if (a, b) == (i, j):
                return w
        raise KeyError((i, j))

    def order(self):
        return prod(self.orders)


def group_order(p):
    return p.order()


def identity(p):
    return (0,) * p.ngens


def word_of(element):
    """Normal word (list of (gen, exp) pairs) of an exponent tuple."""
    return [(i + 1, e) for i, e in enumerate(element) if e]


# ---------------------------------------------------------------------------
# construction and validation

def make_presentation(name, orders, powers, conjugates):
    """Build a PcPresentation from relation dicts and validate its shape.

    ``powers``: dict {i: word}, ``conjugates``: dict {(i,j): word}; missing
    entries default to the trivial relation.  Does not run the consistency
    check; see parse_presentation for the full ingestion path.
    """
    n = len(orders)
    if n == 0:
        raise FormatError("presentation needs at least one generator")
    for r in orders:
        if r < 2:
            raise FormatError("relative orders must be >= 2")
    pw = []
    for i in range(1, n + 1):
        w = tuple(powers.get(i, ()))
        _validate_word(orders, w, min_gen=i + 1, context=f"pow {i}")
        pw.append(w)
    cj = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            w = tuple(conjugates.get((i, j), ((j, 1),)))
            _validate_word(orders, w, min_gen=i + 1, context=f"conj {j} {i}")
            cj.append(((i, j), w))
    return PcPresentation(name, tuple(orders), tuple(pw), tuple(cj))


def _validate_word(orders, word, min_gen, context):
    n = len(orders)
    last = 0
    for g, e in word:
        if not (1 <= g <= n):
            raise FormatError(f"{context}: generator index {g} out of range")
        if g < min_gen:
            raise FormatError(
                f"{context}: generator g{g} below allowed minimum g{min_gen}")
        if g <= last:
            raise FormatError(f"{context}: word is not in normal form "
                              f"(indices must strictly increase)")
        if not (0 <= e < orders[g - 1]):
            raise FormatError(
                f"{context}: exponent {e} of g{g} outside [0, {orders[g - 1]})")
        last = g
    return word


# ---------------------------------------------------------------------------
# text format

def parse_presentation(text):
    """Parse the presentation file format and validate consistency.

    Rejects syntactically malformed input (FormatError) and presentations
    that fail the overlap consistency checks (InconsistencyError, naming the
    failing overlap).
    """
    name = None
    orders = None
    powers = {}
    conjugates = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "name":
                if len(parts) != 2:
                    raise FormatError("name takes exactly one label")
                name = parts[1]
            elif parts[0] == "orders":
                orders = tuple(int(x) for x in parts[1:])
                if not orders:
                    raise FormatError("orders line is empty")
            elif parts[0] == "pow":
                if orders is None:
                    raise FormatError("pow before orders")
                if len(parts) < 4 or parts[2] != "=":
                    raise FormatError("expected: pow i = <word>")
                i = int(parts[1])
                if not (1 <= i <= len(orders)):
                    raise FormatError(f"generator index {i} out of range")
                powers[i] = _parse_word(parts[3:])
            elif parts[0] == "conj":
                if orders is None:
                    raise FormatError("conj before orders")
                if len(parts) < 5 or parts[3] != "=":
                    raise FormatError("expected: conj j i = <word>")
                j, i = int(parts[1]), int(parts[2])
                if not (1 <= i < j <= len(orders)):
                    raise FormatError(f"conj indices must satisfy 1 <= i < j <= n, "
                                      f"got j={j} i={i}")
                conjugates[(i, j)] = _parse_word(parts[4:])
            else:
                raise FormatError(f"unknown directive {parts[0]!r}")
        except FormatError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
        except ValueError:
            raise FormatError(f"line {lineno}: malformed integer") from None
    if orders is None:
        raise FormatError("missing orders line")
    p = make_presentation(name or "unnamed", orders, powers, conjugates)
    failures = consistency_failures(p)
    if failures:
        raise InconsistencyError(
            f"inconsistent presentation: {failures[0]}", failures)
    return p


def _parse_word(atoms):
    if atoms == ["1"]:
        return ()
    word = []
    for atom in atoms:
        if "^" in atom:
            gpart, _, epart = atom.partition("^")
            e = int(epart)
        else:
            gpart, e = atom, 1
        if not gpart.startswith("g"):
            raise FormatError(f"malformed atom {atom!r}")
        word.append((int(gpart[1:]), e))
    return tuple(word)


def format_presentation(p):
    """Render a presentation in the text file format (canonical layout)."""
    lines = [f"name {p.name}", "orders " + " ".join(str(r) for r in p.orders)]
    for i, w in enumerate(p.powers, start=1):
        if w:
            lines.append(f"pow {i} = {_format_word(w)}")
    for (i, j), w in p.conjugates:
        if w != ((j, 1),):
            lines.append(f"conj {j} {i} = {_format_word(w)}")
    return "\n".join(lines) + "\n"


def _format_word(word):
    if not word:
        return "1"
    return " ".join(f"g{g}^{e}" for g, e in word)


# ---------------------------------------------------------------------------
# collection

class _Collector:
    """Collection engine for a presentation, optionally with relation tails.

    With ``tails=True``, each relation carries one central, infinite-order
    tail generator: tails 0..n-1 belong to the power relations in generator
    order, the rest to conjugation relations in (i, j) lexicographic order.
    Rule applications add (inverse applications subtract) one unit of the
    relation's tail.
    """

    def __init__(self, p, tails=False):
        n = p.ngens
        self.p = p
        self.n = n
        self.orders = p.orders
        self.track_tails = tails
        self.ntails = n + n * (n - 1) // 2 if tails else 0
        self.pow_word = {i: list(p.powers[i - 1]) for i in range(1, n + 1)}
        self.conj_word = {}
        self.conj_tail = {}
        idx = n
        for (i, j), w in p.conjugates:
            self.conj_word[(i, j)] = list(w)
            self.conj_tail[(i, j)] = idx
            idx += 1
        self.pow_tail = {i: i - 1 for i in range(1, n + 1)}
        # generator inverses, computed bottom-up: the power word of g_i uses
        # only generators above i, whose inverses are already known.
        self.gen_inv = {}
        for i in range(n, 0, -1):
            word = [(i, self.orders[i - 1] - 1)]
            word.extend((g, -e) for g, e in reversed(self.pow_word[i]))
            nf, tl = self.collect(word)
            if tails:
                tl = list(tl)
                tl[self.pow_tail[i]] -= 1
                tl = tuple(tl)
            self.gen_inv[i] = ([(g, e) for g, e in enumerate_word(nf)], tl)

    def collect(self, word):
        """Collect a word (any integer exponents) to normal form.

        Returns (exponent tuple, tail tuple); the tail tuple is empty when
        tails are not tracked.
        """
        tails = [0] * self.ntails
        w = []
        for g, e in word:
            if e == 0:
                continue
            if e > 0:
                w.append([g, e])
            else:
                inv_letters, inv_tails = self.gen_inv[g]
                for _ in range(-e):
                    w.extend([a, b] for a, b in inv_letters)
                    if self.track_tails:
                        for k, t in enumerate(inv_tails):
                            tails[k] += t
        pos = 0
        orders = self.orders
        while pos < len(w):
            g, e = w[pos]
            if e >= orders[g - 1]:
                # power rule: g^e -> g^(e - r) followed by the power word
                r = orders[g - 1]
                if self.track_tails:
                    tails[self.pow_tail[g]] += 1
                repl = [[a, b] for a, b in self.pow_word[g]]
                rest = e - r
                if rest:
                    repl.insert(0, [g, rest])
                w[pos:pos + 1] = repl
                pos = max(pos - 1, 0)
                continue
            if pos + 1 < len(w):
                h, f = w[pos + 1]
                if h == g:
                    w[pos][1] = e + f
                    del w[pos + 1]
                    continue
                if h < g:
                    # swap rule: g h -> h (h^-1 g h)
                    if self.track_tails:
                        tails[self.conj_tail[(h, g)]] += 1
                    repl = [[h, 1]]
                    repl.extend([a, b] for a, b in self.conj_word[(h, g)])
                    if f > 1:
                        repl.append([h, f - 1])
                    if e > 1:
                        repl.insert(0, [g, e - 1])
                    w[pos:pos + 2] = repl
                    pos = max(pos - 1, 0)
                    continue
            pos += 1
        exps = [0] * self.n
        for g, e in w:
            exps[g - 1] = e
        return tuple(exps), tuple(tails)


def enumerate_word(nf):
    return [(i + 1, e) for i, e in enumerate(nf) if e]


@lru_cache(maxsize=None)
def _collector(p):
    return _Collector(p, tails=False)


def collect(p, word):
    """Normal form of an arbitrary word (indices 1..n, any int exponents)."""
    nf, _ = _collector(p).collect(word)
    return nf


def multiply(p, a, b):
    return collect(p, word_of(a) + word_of(b))


def inverse(p, a):
    return collect(p, [(g, -e) for g, e in reversed(word_of(a))])


def power(p, a, k):
    if k < 0:
        return power(p, inverse(p, a), -k)
    result = identity(p)
    base = a
    while k:
        if k & 1:
            result = multiply(p, result, base)
        base = multiply(p, base, base)
        k >>= 1
    return result


def conjugate(p, x, y):
    """Left conjugate ^x y = x y x^-1."""
    wx = word_of(x)
    return collect(p, wx + word_of(y) + [(g, -e) for g, e in reversed(wx)])


def commutator(p, x, y):
    """Left commutator [x, y] = x y x^-1 y^-1."""
    wx, wy = word_of(x), word_of(y)
    return collect(p, wx + wy
                   + [(g, -e) for g, e in reversed(wx)]
                   + [(g, -e) for g, e in reversed(wy)])


# ---------------------------------------------------------------------------
# consistency

def overlap_tests(n, orders):
    """The overlap test schedule for collection from the left.

    Yields (kind, indices) pairs; see consistency_failures for how each kind
    is evaluated.
    """
    for k in range(3, n + 1):
        for j in range(2, k):
            for i in range(1, j):
                yield ("assoc", (k, j, i))
    for j in range(2, n + 1):
        for i in range(1, j):
            yield ("pow_left", (j, i))
            yield ("pow_right", (j, i))
    for i in range(1, n + 1):
        yield ("pow_self", (i,))


def _overlap_sides(mul, gen, pw, test):
    """Evaluate both bracketings of an overlap; mul/gen/pw are callbacks."""
    kind, idx = test
    if kind == "assoc":
        k, j, i = idx
        return (mul(gen(k), mul(gen(j), gen(i))),
                mul(mul(gen(k), gen(j)), gen(i)))
    if kind == "pow_left":
        j, i = idx
        return (mul(pw(j, None), gen(i)),
                mul(pw(j, -1), mul(gen(j), gen(i))))
    if kind == "pow_right":
        j, i = idx
        return (mul(gen(j), pw(i, None)),
                mul(mul(gen(j), gen(i)), pw(i, -1)))
    k = idx[0]
    return (mul(gen(k), pw(k, None)), mul(pw(k, None), gen(k)))


def _describe(test):
    kind, idx = test
    if kind == "assoc":
        k, j, i = idx
        return f"g{k}*(g{j}*g{i}) vs (g{k}*g{j})*g{i}"
    if kind == "pow_left":
        j, i = idx
        return f"g{j}^r{j}*g{i} vs g{j}^(r{j}-1)*(g{j}*g{i})"
    if kind == "pow_right":
        j, i = idx
        return f"g{j}*g{i}^r{i} vs (g{j}*g{i})*g{i}^(r{i}-1)"
    i = idx[0]
    return f"g{i}*g{i}^r{i} vs g{i}^r{i}*g{i}"


def consistency_failures(p):
    """Descriptions of all overlap tests whose two sides collect apart."""
    col = _collector(p)

    def gen(i):
        e = [0] * p.ngens
        e[i - 1] = 1
        return tuple(e)

    def pw(i, offset):
        exp = p.orders[i - 1] + (offset or 0)
        nf, _ = col.collect([(i, exp)])
        return nf

    def mul(a, b):
        nf, _ = col.collect(enumerate_word(a) + enumerate_word(b))
        return nf

    failures = []
    for test in overlap_tests(p.ngens, p.orders):
        left, right = _overlap_sides(mul, gen, pw, test)
        if left != right:
            failures.append(_describe(test))
    return failures


def is_consistent(p):
    return not consistency_failures(p)


# ---------------------------------------------------------------------------
# enumeration and structure

def elements(p, bound=DEFAULT_ELEMENT_BOUND):
    """All normal forms in lexicographic exponent order."""
    order = p.order()
    if order > bound:
        raise BoundExceeded(f"group order {order} exceeds bound {bound}")
    return [tuple(e) for e in itertools.product(*(range(r) for r in p.orders))]


class GroupTable:
    """Dense multiplication table over the lexicographic element list.

    The full table is built by dynamic programming on normal forms: for
    y = y' * g_j (y' is y with its last nonzero exponent lowered by one),
    x*y = (x*y')*g_j, so each row needs only single-generator products.
    """

    def __init__(self, p, bound=DEFAULT_ELEMENT_BOUND):
        self.p = p
        self.elements = elements(p, bound)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.order = len(self.elements)
        n = p.ngens
        col = _collector(p)
        # right multiplication by each generator
        self.gen_mul = []
        for g in range(1, n + 1):
            table = []
            for e in self.elements:
                nf, _ = col.collect(enumerate_word(e) + [(g, 1)])
                table.append(self.index[nf])
            self.gen_mul.append(table)
        # parent decomposition of each element
        parents = [None] * self.order
        for yi, e in enumerate(self.elements):
            last = max((i for i, x in enumerate(e) if x), default=None)
            if last is None:
                continue
            pe = list(e)
            pe[last] -= 1
            parents[yi] = (self.index[tuple(pe)], last)
        id_index = self.index[identity(p)]
        self.id_index = id_index
        table = []
        for xi in range(self.order):
            row = [0] * self.order
            row[id_index] = xi
            for yi in range(self.order):
                par = parents[yi]
                if par is None:
                    continue
                pi, g = par
                row[yi] = self.gen_mul[g][row[pi]]
            table.append(row)
        self.table = table
        inv = [0] * self.order
        for xi, row in enumerate(table):
            inv[row.index(id_index)] = xi
        self.inverse = inv

    def mul(self, a, b):
        return self.table[a][b]

    def conj(self, z, x):
        """^z x = z x z^-1 (indices)."""
        return self.table[self.table[z][x]][self.inverse[z]]

    def comm(self, x, y):
        """[x, y] = x y x^-1 y^-1 (indices)."""
        return self.table[self.table[self.table[x][y]][self.inverse[x]]][self.inverse[y]]

    def closure(self, seeds):
        """Subgroup generated by the given element indices."""
        seen = {self.id_index}
        frontier = [self.id_index]
        gens = [s for s in seeds]
        while frontier:
            cur = frontier.pop()
            for g in gens:
                nxt = self.table[cur][g]
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return seen

    def normal_closure(self, seeds):
        sub = self.closure(seeds)
        gens = self.generator_indices()
        while True:
            extra = set()
            for x in sub:
                for z in gens:
                    y = self.conj(z, x)
                    if y not in sub:
                        extra.add(y)
            if not extra:
                return sub
            sub = self.closure(sub | extra)

    def generator_indices(self):
        out = []
        for g in range(self.p.ngens):
            e = [0] * self.p.ngens
            e[g] = 1
            out.append(self.index[tuple(e)])
        return out


@lru_cache(maxsize=None)
def _cached_table(p, bound):
    return GroupTable(p, bound)


def group_table(p, bound=DEFAULT_ELEMENT_BOUND):
    return _cached_table(p, bound)


def conjugacy_classes(p, bound=DEFAULT_ELEMENT_BOUND):
    """(representative, class size) pairs; representatives are the
    lexicographically least members, classes sorted by representative."""
    t = group_table(p, bound)
    seen = [False] * t.order
    out = []
    for start in range(t.order):
        if seen[start]:
            continue
        orbit = {start}
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for z in t.generator_indices():
                y = t.conj(z, x)
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        for x in orbit:
            seen[x] = True
        out.append((t.elements[min(orbit)], len(orbit)))
    return out


def centralizer(p, x, bound=DEFAULT_ELEMENT_BOUND):
    """All elements commuting with x."""
    t = group_table(p, bound)
    xi = t.index[x]
    return [t.elements[y] for y in range(t.order)
            if t.table[xi][y] == t.table[y][xi]]


def centralizer_generators(p, x, bound=DEFAULT_ELEMENT_BOUND):
    """A generating set of the centralizer of x, greedily reduced."""
    t = group_table(p, bound)
    xi = t.index[x]
    members = [y for y in range(t.order) if t.table[xi][y] == t.table[y][xi]]
    gens = []
    closure = {t.id_index}
    for y in members:
        if y not in closure:
            gens.append(y)
            closure = t.closure(gens)
    return [t.elements[g] for g in gens]


def derived_subgroup(p, bound=DEFAULT_ELEMENT_BOUND):
    """Element set of the commutator subgroup."""
    t = group_table(p, bound)
    gens = t.generator_indices()
    seeds = {t.comm(a, b) for a in gens for b in gens}
    sub = t.normal_closure(seeds)
    return {t.elements[i] for i in sub}


def abelianization(p):
    """Elementary divisors of G/[G,G] via the abelianized relation matrix."""
    n = p.ngens
    rows = []
    for i in range(1, n + 1):
        row = [0] * n
        row[i - 1] = p.orders[i - 1]
        for g, e in p.powers[i - 1]:
            row[g - 1] -= e
        rows.append(row)
    for (i, j), w in p.conjugates:
        row = [0] * n
        row[j - 1] = 1
        for g, e in w:
            row[g - 1] -= e
        rows.append(row)
    s, _, _ = snf(rows)
    divisors = [s[i][i] for i in range(min(len(rows), n))]
    if len([d for d in divisors if d]) < n:
        raise InconsistencyError("abelianization is infinite; presentation bad")
    return tuple(d for d in divisors if d > 1)


def lower_central_series(p, bound=DEFAULT_ELEMENT_BOUND):
    """Subsets gamma_1 >= gamma_2 >= ... until stabilization."""
    t = group_table(p, bound)
    gens = t.generator_indices()
    series = [set(range(t.order))]
    current = set(range(t.order))
    while True:
        seeds = {t.comm(a, x) for a in gens for x in current}
        nxt = t.normal_closure(seeds) if seeds - {t.id_index} else {t.id_index}
        if nxt == current:
            break
        series.append(nxt)
        current = nxt
        if current == {t.id_index}:
            break
    return [{t.elements[i] for i in s} for s in series]


def nilpotency_class(p, bound=DEFAULT_ELEMENT_BOUND):
    """Nilpotency class, or None when the lower central series stabilizes
    above the identity."""
    series = lower_central_series(p, bound)
    if len(series[-1]) != 1:
        return None
    return len(series) - 1


# ---------------------------------------------------------------------------
# quotients

def _check_normal_subgroup(t, indices):
    ids = set(indices)
    if t.id_index not in ids:
        raise ValueError("subgroup does not contain the identity")
    for a in ids:
        for b in ids:
            if t.table[a][b] not in ids:
                raise ValueError("subset is not closed under multiplication")
    for a in ids:
        for z in t.generator_indices():
            if t.conj(z, a) not in ids:
                raise ValueError("subgroup is not normal")
    return ids


class _CosetGroup:
    """Factor group by coset enumeration; elements are canonical coset
    representatives (minimal element index)."""

    def __init__(self, t, sub_indices):
        self.t = t
        self.sub = sub_indices
        rep_of = {}
        reps = []
        for x in range(t.order):
            if x in rep_of:
                continue
            coset = sorted(t.table[x][s] for s in sub_indices)
            r = min(coset)
            for y in coset:
                rep_of[y] = r
            reps.append(r)
        self.rep_of = rep_of
        self.reps = sorted(set(rep_of.values()))
        self.order = len(self.reps)

    def mul(self, a, b):
        return self.rep_of[self.t.table[a][b]]

    def inv(self, a):
        return self.rep_of[self.t.inverse[a]]

    def identity(self):
        return self.rep_of[self.t.id_index]

    def pow(self, a, k):
        out = self.identity()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def element_order(self, a):
        out = a
        k = 1
        while out != self.identity():
            out = self.mul(out, a)
            k += 1
        return k

    def closure(self, seeds):
        seen = {self.identity()}
        frontier = [self.identity()]
        while frontier:
            cur = frontier.pop()
            for g in seeds:
                nxt = self.mul(cur, g)
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return seen

    def derived(self):
        seeds = set()
        for a in self.reps:
            for b in self.reps:
                c = self.rep_of[self.t.table[self.t.table[self.t.table[a][b]]
                                             [self.t.inverse[a]]][self.t.inverse[b]]]
                seeds.add(c)
        return self.closure(seeds)

    def derived_of(self, subset):
        seeds = set()
        for a in subset:
            for b in subset:
                c = self.rep_of[self.t.table[self.t.table[self.t.table[a][b]]
                                             [self.t.inverse[a]]][self.t.inverse[b]]]
                seeds.add(c)
        return self.closure(seeds) & set(subset)


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _pc_sequence(q):
    """Polycyclic generating sequence with prime relative orders for a coset
    group, refining its derived series.

    Returns (gens, subgroup chain T_1 > T_2 > ... > T_{n+1} = 1) where
    T_k = <g_k, T_{k+1}> and [T_k : T_{k+1}] is prime.  Within each abelian
    section, generators are chosen greedily (smallest representative first)
    and their power chains are refined into prime steps; every intermediate
    subgroup of an abelian section is normal in the section's top group, so
    the chain is subnormal as required.
    """
    series = [set(q.reps)]
    while len(series[-1]) > 1:
        nxt = q.derived_of(sorted(series[-1]))
        if nxt == series[-1]:
            raise ValueError("quotient group is not solvable")
        series.append(nxt)
    gens = []
    chain = []
    for top, bottom in zip(series, series[1:]):
        # grow subgroups from the bottom of the section upward, refining the
        # power chain of each adjoined element into prime steps
        section = []  # (gen, prime, subgroup up to and including gen), bottom-up
        lower = set(bottom)
        while lower != top:
            a = min(x for x in sorted(top) if x not in lower)
            # order of a modulo lower
            m = 1
            x = a
            while x not in lower:
                x = q.mul(x, a)
                m += 1
            c = m
            for prime in _prime_factors(m):
                c //= prime
                g = q.pow(a, c)
                upper = q.closure(sorted(lower) + [g])
                section.append((g, prime, upper))
                lower = upper
        # pc order runs from the top of the group downward
        for g, prime, upper in reversed(section):
            gens.append((g, prime))
            chain.append(upper)
    chain.append({q.identity()})
    return gens, chain


def _express_in_sequence(q, x, gens, chain, start=0):
    """Normal word of a coset element over the pc sequence from index start."""
    word = []
    for k in range(start, len(gens)):
        g, prime = gens[k]
        below = chain[k + 1]
        e = 0
        y = x
        while y not in below:
            y = q.mul(q.inv(g), y)
            e += 1
            if e > prime:
                raise ValueError("element escapes the subgroup chain")
        if e:
            word.append((k + 1, e))
        x = y
    if x != q.identity():
        raise ValueError("element not expressible over the sequence")
    return tuple(word)


def quotient_presentation(p, normal_set, bound=DEFAULT_ELEMENT_BOUND,
                          name=None):
    """Presentation of G/N plus the projection map.

    ``normal_set`` is a set of exponent tuples; it is verified to be a
    normal subgroup.  Returns (presentation, project) where project maps an
    element of G to an element of the quotient.
    """
    t = group_table(p, bound)
    indices = {t.index[e] for e in normal_set}
    _check_normal_subgroup(t, indices)
    q = _CosetGroup(t, sorted(indices))
    gens, chain = _pc_sequence(q)
    n = len(gens)
    orders = tuple(prime for _, prime in gens)
    powers = {}
    conjugates = {}
    for k in range(1, n + 1):
        g, prime = gens[k - 1]
        powers[k] = _express_in_sequence(q, q.pow(g, prime), gens, chain, start=k)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            gi, _ = gens[i - 1]
            gj, _ = gens[j - 1]
            c = q.mul(q.mul(q.inv(gi), gj), gi)
            conjugates[(i, j)] = _express_in_sequence(q, c, gens, chain, start=i)
    qp = make_presentation(name or f"{p.name}/N", orders, powers, conjugates)
    failures = consistency_failures(qp)
    if failures:
        raise InconsistencyError(
            f"derived quotient presentation inconsistent: {failures[0]}", failures)

    # map each coset representative to its normal form in the quotient
    rep_to_element = {}
    for r in q.reps:
        word = _express_in_sequence(q, r, gens, chain)
        rep_to_element[r] = collect(qp, list(word))

    def project(element):
        return rep_to_element[q.rep_of[t.index[element]]]

    return qp, project
