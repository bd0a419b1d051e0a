"""Exact integer matrix and lattice arithmetic.

Row Hermite and Smith normal forms with transformation matrices, lattice
membership and canonical residues, sums, saturation, finite-index tests and
elementary divisors of finite quotients.  All arithmetic uses Python's
arbitrary-precision integers: intermediate coefficient growth in normal-form
computations is unbounded even for small inputs, so fixed-width arithmetic is
never acceptable here.

Matrices are lists (or tuples) of rows of ints.  Lattices are subgroups of
Z^m kept in canonical row-HNF form, so two lattices are equal exactly when
their bases compare equal.
"""

from dataclasses import dataclass
from math import prod

from .errors import InfiniteIndexError

__all__ = [
    "hnf",
    "snf",
    "identity_matrix",
    "mat_mul",
    "unimodular_inverse",
    "IntegerLattice",
    "lattice_sum",
    "saturation",
    "quotient_invariants",
    "lattice_index",
    "smith_transversal",
]


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    rows_b = len(b)
    cols_b = len(b[0]) if rows_b else 0
    out = []
    for row in a:
        acc = [0] * cols_b
        for x, brow in zip(row, b):
            if x:
                for j, y in enumerate(brow):
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def hnf(mat):
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U * mat == H``.  Pivots are
    positive, entries above each pivot are reduced into ``[0, pivot)``, and
    zero rows are collected at the bottom.
    """
    H = [list(row) for row in mat]
    n = len(H)
    m = len(H[0]) if n else 0
    U = identity_matrix(n)
    r = 0
    for c in range(m):
        # gcd-eliminate column c among rows r..n-1
        while True:
            nz = [i for i in range(r, n) if H[i][c]]
            if len(nz) <= 1:
                break
            i0 = min(nz, key=lambda i: abs(H[i][c]))
            for i in nz:
                if i == i0:
                    continue
                q = H[i][c] // H[i0][c]
                if q:
                    _row_sub(H, i, i0, q)
                    _row_sub(U, i, i0, q)
        nz = [i for i in range(r, n) if H[i][c]]
        if not nz:
            continue
        i0 = nz[0]
        if i0 != r:
            H[r], H[i0] = H[i0], H[r]
            U[r], U[i0] = U[i0], U[r]
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                _row_sub(H, i, r, q)
                _row_sub(U, i, r, q)
        r += 1
    return H, U


def _row_sub(mat, i, j, q):
    row_i, row_j = mat[i], mat[j]
    mat[i] = [a - q * b for a, b in zip(row_i, row_j)]


def snf(mat):
    """Smith normal form.

    Returns ``(S, U, V)`` with ``U``, ``V`` unimodular, ``U * mat * V == S``,
    and ``S`` diagonal with nonnegative entries ``d_1 | d_2 | ...``.
    Diagonalization alternates row and column Hermite passes, which keeps
    every intermediate matrix fully reduced and avoids the coefficient
    blowup of naive pivot-and-eliminate sweeps; the divisibility chain is
    then enforced by folding offending diagonal pairs and re-diagonalizing.
    """
    n = len(mat)
    m = len(mat[0]) if n else 0
    S = [list(row) for row in mat]
    U = identity_matrix(n)
    V = identity_matrix(m)
    _alternating_diagonalize(S, U, V)
    rank = sum(1 for i in range(min(n, m)) if S[i][i])
    # compact nonzero diagonal entries to the front (paired row and column
    # swaps keep the matrix diagonal)
    ptr = 0
    for i in range(min(n, m)):
        if S[i][i]:
            if i != ptr:
                _swap_rows(S, U, ptr, i)
                _swap_cols(S, V, ptr, i)
            ptr += 1
    i = 0
    while i < rank - 1:
        a, b = S[i][i], S[i + 1][i + 1]
        if b % a:
            # fold: gcd/lcm the pair, then restore diagonal form
            _col_add(S, i, i + 1, 1)
            _col_add(V, i, i + 1, 1)
            _alternating_diagonalize(S, U, V)
            i = max(i - 1, 0)
        else:
            i += 1
    return S, U, V


def _transpose(mat):
    return [list(col) for col in zip(*mat)]


def _is_diagonal(S):
    for i, row in enumerate(S):
        for j, x in enumerate(row):
            if i != j and x:
                return False
    return True


def _alternating_diagonalize(S, U, V):
    """Reduce S to diagonal form in place, accumulating into U and V."""
    while not _is_diagonal(S):
        h, p = hnf(S)
        S[:] = [list(row) for row in h]
        U[:] = mat_mul(p, U)
        if _is_diagonal(S):
            break
        ht, q = hnf(_transpose(S))
        S[:] = _transpose(ht)
        V[:] = mat_mul(V, _transpose(q))
    # an input that is already diagonal bypasses the Hermite passes, so
    # negative entries must be normalized here
    for k in range(min(len(S), len(S[0]) if S else 0)):
        if S[k][k] < 0:
            for row in S:
                row[k] = -row[k]
            for row in V:
                row[k] = -row[k]


def _smallest_nonzero(S, t, n, m):
    best = None
    best_abs = None
    for i in range(t, n):
        row = S[i]
        for j in range(t, m):
            x = row[j]
            if x:
                if best_abs is None or abs(x) < best_abs:
                    best = (i, j)
                    best_abs = abs(x)
    return best


def _swap_rows(S, U, i, j):
    if i != j:
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]


def _swap_cols(S, V, i, j):
    if i != j:
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]


def _col_sub(mat, j, k, q):
    for row in mat:
        row[j] -= q * row[k]


def _col_add(mat, j, k, q):
    for row in mat:
        row[j] += q * row[k]


def unimodular_inverse(v):
    """Inverse of a unimodular integer matrix (itself integral)."""
    h, u = hnf(v)
    n = len(v)
    if h != identity_matrix(n):
        raise ValueError("matrix is not unimodular")
    return u


@dataclass(frozen=True)
class IntegerLattice:
    """A subgroup of Z^m, basis in canonical row-HNF form, zero rows removed.

    Equality of lattices is equality of canonical bases.
    """

    ambient: int
    basis: tuple  # tuple of row tuples, in HNF

    @staticmethod
    def from_rows(ambient, rows):
        for row in rows:
            if len(row) != ambient:
                raise ValueError("row length does not match ambient dimension")
        h, _ = hnf(list(rows))
        kept = tuple(tuple(row) for row in h if any(row))
        return IntegerLattice(ambient, kept)

    @staticmethod
    def zero(ambient):
        return IntegerLattice(ambient, ())

    @staticmethod
    def full(ambient):
        return IntegerLattice.from_rows(ambient, identity_matrix(ambient))

    @property
    def rank(self):
        return len(self.basis)

    def _pivots(self):
        pivs = []
        for row in self.basis:
            for j, x in enumerate(row):
                if x:
                    pivs.append(j)
                    break
        return pivs

    def contains(self, vector):
        v = list(vector)
        if len(v) != self.ambient:
            raise ValueError("vector has wrong dimension")
        for row, p in zip(self.basis, self._pivots()):
            if v[p] % row[p]:
                return False
            q = v[p] // row[p]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return not any(v)

    def reduce(self, vector):
        """Canonical residue of ``vector`` modulo this lattice.

        Each pivot coordinate is brought into ``[0, pivot)``; non-pivot
        coordinates are untouched.  Vectors are congruent mod the lattice
        iff their residues are equal.
        """
        v = list(vector)
        if len(v) != self.ambient:
            raise ValueError("vector has wrong dimension")
        for row, p in zip(self.basis, self._pivots()):
            q = v[p] // row[p]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return tuple(v)

    def coordinates(self, vector):
        """Express a lattice member in terms of the basis rows."""
        v = list(vector)
        coords = []
        for row, p in zip(self.basis, self._pivots()):
            if v[p] % row[p]:
                raise ValueError("vector is not in the lattice")
            q = v[p] // row[p]
            coords.append(q)
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        if any(v):
            raise ValueError("vector is not in the lattice")
        return coords

    def contains_lattice(self, other):
        return all(self.contains(row) for row in other.basis)


def lattice_sum(a, b):
    if a.ambient != b.ambient:
        raise ValueError("ambient dimensions differ")
    return IntegerLattice.from_rows(a.ambient, list(a.basis) + list(b.basis))


def saturation(lat):
    """Smallest lattice containing ``lat`` whose ambient quotient is
    torsion-free on its span.

    Computed from the Smith decomposition of the basis: if B = U^-1 S V^-1,
    the rational row space of B meets Z^m in the span of the first rank(B)
    rows of V^-1.
    """
    if not lat.basis:
        return lat
    s, _, v = snf([list(row) for row in lat.basis])
    rank = sum(1 for i in range(min(len(s), len(s[0]))) if s[i][i])
    vinv = unimodular_inverse(v)
    return IntegerLattice.from_rows(lat.ambient, vinv[:rank])


def _coordinate_matrix(a, b):
    """Rows of ``b`` expressed in the basis of ``a`` (requires b <= a)."""
    try:
        return [a.coordinates(row) for row in b.basis]
    except ValueError as exc:
        raise ValueError("second lattice is not contained in the first") from exc


def lattice_index(a, b):
    """Index of ``b`` in ``a``; None when infinite (rank drop)."""
    if a.ambient != b.ambient:
        raise ValueError("ambient dimensions differ")
    coords = _coordinate_matrix(a, b)
    if b.rank < a.rank:
        return None
    if not coords:
        return 1
    s, _, _ = snf(coords)
    divisors = [s[i][i] for i in range(min(len(s), len(s[0])))]
    if len([d for d in divisors if d]) < a.rank:
        return None
    return prod(d for d in divisors if d)


def quotient_invariants(a, b):
    """Elementary divisors of the finite abelian group a/b, 1-entries dropped.

    Raises InfiniteIndexError when the quotient is infinite.
    """
    if a.ambient != b.ambient:
        raise ValueError("ambient dimensions differ")
    coords = _coordinate_matrix(a, b)
    if b.rank < a.rank:
        raise InfiniteIndexError("quotient has infinite index")
    if not coords:
        return ()
    s, _, _ = snf(coords)
    divisors = [s[i][i] for i in range(min(len(s), len(s[0])))]
    if len([d for d in divisors if d]) < a.rank:
        raise InfiniteIndexError("quotient has infinite index")
    return tuple(d for d in divisors if d > 1)


class smith_transversal:
    """Explicit model of the finite abelian quotient a/b.

    Provides the elementary divisors, a coordinate map sending a vector of
    ``a`` to its class (a tuple over ``prod Z/d_i`` including d_i = 1 slots
    dropped), and representatives back in Z^m.  Used to enumerate multiplier
    and Bogomolov quotients elementwise.
    """

    def __init__(self, a, b):
        if a.ambient != b.ambient:
            raise ValueError("ambient dimensions differ")
        coords = _coordinate_matrix(a, b)
        if b.rank < a.rank:
            raise InfiniteIndexError("quotient has infinite index")
        if not coords:
            coords = [[0] * a.rank] if a.rank else []
        s, _, v = snf(coords)
        divisors = []
        for i in range(a.rank):
            d = s[i][i] if i < len(s) and i < len(s[0]) else 0
            if d == 0:
                raise InfiniteIndexError("quotient has infinite index")
            divisors.append(d)
        self.lattice = a
        self.sub = b
        self._v = v  # coordinate change: c -> c*V maps b-coords onto diag(d)
        self._vinv = unimodular_inverse(v) if v else []
        self.divisors = tuple(divisors)
        self.nontrivial = tuple(d for d in divisors if d > 1)

    @property
    def order(self):
        return prod(self.divisors) if self.divisors else 1

    def to_class(self, vector):
        """Class of a vector of the ambient lattice ``a`` in a/b."""
        c = self.lattice.coordinates(vector)
        t = [sum(c[k] * self._v[k][j] for k in range(len(c))) for j in range(len(c))]
        return tuple(x % d for x, d in zip(t, self.divisors))

    def representative(self, cls):
        """A vector of ``a`` representing the given class tuple."""
        c = [sum(cls[k] * self._vinv[k][j] for k in range(len(cls)))
             for j in range(len(cls))]
        m = self.lattice.ambient
        out = [0] * m
        for q, row in zip(c, self.lattice.basis):
            for j in range(m):
                out[j] += q * row[j]
        return tuple(out)

    def classes(self):
        """All class tuples, in lexicographic order."""
        out = [()]
        for d in self.divisors:
            out = [t + (x,) for t in out for x in range(d)]
        return out

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.divisors))

    def neg(self, x):
        return tuple((-a) % d for a, d in zip(x, self.divisors))

    @property
    def zero_class(self):
        return (0,) * len(self.divisors)
