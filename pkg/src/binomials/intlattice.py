"""Exact integer matrix normal forms and lattice operations.

Vectors are rows; a lattice is the row span of its basis matrix over ZZ.
All arithmetic is arbitrary-precision.  HNF is the canonical representation
(lattice equality = HNF equality); SNF powers saturations, quotient orders
and the diagonalized inclusions used for character extensions.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd

from . import checks


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    if not a or not b:
        return [[]] * len(a) if a else []
    n, m, p = len(a), len(b), len(b[0])
    out = [[0] * p for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(m):
            c = ai[k]
            if c:
                bk = b[k]
                for j in range(p):
                    if bk[j]:
                        oi[j] += c * bk[j]
    return out


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def det(a):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k]), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def hnf_with_transform(rows):
    """Row Hermite normal form.  Returns (H, T) with T*rows = H, det T = ±1.

    H is in row-echelon shape with positive pivots and entries above each
    pivot reduced to [0, pivot); zero rows sink to the bottom.
    """
    h = [list(r) for r in rows]
    n = len(h)
    ncols = len(h[0]) if h else 0
    t = _identity(n)
    r = 0
    for c in range(ncols):
        # pivot-size heuristic: smallest nonzero magnitude in this column
        piv = None
        best = None
        for i in range(r, n):
            v = abs(h[i][c])
            if v and (best is None or v < best):
                best = v
                piv = i
        if piv is None:
            continue
        h[r], h[piv] = h[piv], h[r]
        t[r], t[piv] = t[piv], t[r]
        # clear below via gcd steps
        for i in range(r + 1, n):
            while h[i][c]:
                q = h[i][c] // h[r][c]
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    t[i] = [x - q * y for x, y in zip(t[i], t[r])]
                if h[i][c]:
                    h[r], h[i] = h[i], h[r]
                    t[r], t[i] = t[i], t[r]
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            t[r] = [-x for x in t[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                t[i] = [x - q * y for x, y in zip(t[i], t[r])]
        r += 1
        if r == n:
            break
    return h, t


def hnf(rows):
    h, _ = hnf_with_transform(rows)
    return [row for row in h if any(row)]


def kernel(rows):
    """Basis (rows) of {x in ZZ^n : sum_i x_i * rows_i-th-coordinate... },

    i.e. the left kernel of the matrix's transpose: all integer row vectors v
    of length n with rows * v^T = 0 where `rows` is m x n.  The result is a
    saturated lattice basis of the solution set.
    """
    if not rows:
        return []
    cols = transpose(rows)  # n x m; want v with v * cols-as-rows... below
    h, t = hnf_with_transform(cols)
    return [t[i] for i in range(len(h)) if not any(h[i])]


def smith_normal_form(rows):
    """(U, D, V) with U*A*V = D diagonal, d_1 | d_2 | ..., U, V unimodular."""
    a = [list(r) for r in rows]
    n = len(a)
    m = len(a[0]) if a else 0
    u = _identity(n)
    v = _identity(m)

    def col_op(j1, j2, q):
        for row in a:
            row[j2] -= q * row[j1]
        for row in v:
            row[j2] -= q * row[j1]

    def col_swap(j1, j2):
        for row in a:
            row[j1], row[j2] = row[j2], row[j1]
        for row in v:
            row[j1], row[j2] = row[j2], row[j1]

    def row_op(i1, i2, q):
        a[i2] = [x - q * y for x, y in zip(a[i2], a[i1])]
        u[i2] = [x - q * y for x, y in zip(u[i2], u[i1])]

    def row_swap(i1, i2):
        a[i1], a[i2] = a[i2], a[i1]
        u[i1], u[i2] = u[i2], u[i1]

    k = 0
    while k < min(n, m):
        # find smallest nonzero entry in the trailing block
        piv = None
        best = None
        for i in range(k, n):
            for j in range(k, m):
                w = abs(a[i][j])
                if w and (best is None or w < best):
                    best = w
                    piv = (i, j)
        if piv is None:
            break
        row_swap(k, piv[0])
        col_swap(k, piv[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(k + 1, n):
                if a[i][k]:
                    q = a[i][k] // a[k][k]
                    row_op(k, i, q)
                    if a[i][k]:
                        row_swap(k, i)
                        dirty = True
            for j in range(k + 1, m):
                if a[k][j]:
                    q = a[k][j] // a[k][k]
                    col_op(k, j, q)
                    if a[k][j]:
                        col_swap(k, j)
                        dirty = True
        # enforce divisibility d_k | a[i][j]
        stable = True
        for i in range(k + 1, n):
            for j in range(k + 1, m):
                if a[i][j] % a[k][k]:
                    # add column j to column k and restart this pivot
                    for row in a:
                        row[k] += row[j]
                    for row in v:
                        row[k] += row[j]
                    stable = False
                    break
            if not stable:
                break
        if stable:
            if a[k][k] < 0:
                for row in a:
                    row[k] = -row[k]
                for row in v:
                    row[k] = -row[k]
            k += 1
    if checks.ENABLED:
        prod = mat_mul(mat_mul(u, [list(r) for r in rows]), v)
        assert prod == a, "SNF transform identity violated"
        assert abs(det(u)) == 1 and abs(det(v)) == 1, "SNF transforms not unimodular"
    return u, a, v


def invariant_factors(rows):
    _, d, _ = smith_normal_form(rows)
    out = []
    for i in range(min(len(d), len(d[0]) if d else 0)):
        if d[i][i]:
            out.append(d[i][i])
    return out


def unimodular_inverse(m):
    """Exact inverse of a unimodular integer matrix."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c])
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    out = [[int(a[i][n + j]) for j in range(n)] for i in range(n)]
    if checks.ENABLED:
        assert mat_mul(m, out) == _identity(n)
    return out


def _p_part(d, p):
    if p == 0:
        return 1
    q = 1
    while d % p == 0:
        d //= p
        q *= p
    return q


class Lattice:
    """Sublattice of ZZ^n, stored via its row HNF basis (canonical form)."""

    __slots__ = ("ambient", "basis")

    def __init__(self, ambient, rows=()):
        self.ambient = ambient
        reduced = hnf(rows) if rows else []
        self.basis = tuple(tuple(r) for r in reduced)

    @classmethod
    def _raw(cls, ambient, hnf_rows):
        inst = object.__new__(cls)
        inst.ambient = ambient
        inst.basis = tuple(tuple(r) for r in hnf_rows)
        return inst

    @classmethod
    def full(cls, n):
        return cls(n, _identity(n))

    @classmethod
    def kernel_of(cls, rows):
        if not rows:
            return cls.full(0)
        return cls(len(rows[0]), kernel(rows))

    @property
    def rank(self):
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Lattice)
            and other.ambient == self.ambient
            and other.basis == self.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Lattice({self.ambient}, {list(map(list, self.basis))})"

    def express(self, v):
        """Integer coordinates of v in the HNF basis, or None."""
        v = list(v)
        coords = []
        for row in self.basis:
            pj = next(j for j, x in enumerate(row) if x)
            if any(v[j] for j in range(pj)):
                return None
            q, r = divmod(v[pj], row[pj])
            if r:
                return None
            coords.append(q)
            v = [x - q * y for x, y in zip(v, row)]
        if any(v):
            return None
        return coords

    def __contains__(self, v):
        return self.express(v) is not None

    def contains_lattice(self, other):
        return all(row in self for row in other.basis)

    def sum(self, other):
        assert other.ambient == self.ambient
        return Lattice(self.ambient, list(self.basis) + list(other.basis))

    def intersection(self, other):
        assert other.ambient == self.ambient
        if not self.basis or not other.basis:
            return Lattice(self.ambient)
        b1, b2 = list(self.basis), list(other.basis)
        stacked = transpose([list(r) for r in b1] + [[-x for x in r] for r in b2])
        ker = kernel(stacked)  # rows (a | b) with a*b1 = b*b2
        rows = [mat_mul([row[: len(b1)]], b1)[0] for row in ker]
        return Lattice(self.ambient, rows)

    def saturation(self):
        if not self.basis:
            return Lattice(self.ambient)
        comp = kernel(self.basis)
        if not comp:
            return Lattice.full(self.ambient)
        return Lattice(self.ambient, kernel(comp))

    def _diagonal_data(self):
        """W rows and invariant factors: lattice = span{d_i * w_i}."""
        u, d, v = smith_normal_form([list(r) for r in self.basis])
        w = unimodular_inverse(v)  # lattice rows = U^{-1} D W; row span of D W
        factors = [d[i][i] for i in range(len(self.basis))]
        return w, factors

    def p_saturations(self, p):
        """(Sat_p, Sat'_p, g) per the p-primary splitting of Sat(L)/L.

        Convention for p = 0: Sat_0 = L and Sat'_0 = Sat(L).
        """
        if not self.basis:
            sat = Lattice(self.ambient)
            return sat, sat, 1
        w, factors = self._diagonal_data()
        sat_p_rows = []
        sat_pp_rows = []
        g = 1
        for d_i, w_i in zip(factors, w):
            q = _p_part(d_i, p)
            rest = d_i // q
            g *= rest
            sat_p_rows.append([rest * x for x in w_i])
            sat_pp_rows.append([q * x for x in w_i])
        sat_p = Lattice(self.ambient, sat_p_rows)
        sat_pp = Lattice(self.ambient, sat_pp_rows)
        if checks.ENABLED:
            assert sat_p.intersection(sat_pp) == self
            assert sat_p.sum(sat_pp) == self.saturation()
        return sat_p, sat_pp, g

    def quotient_order(self):
        """[Sat(L) : L], the product of the invariant factors."""
        if not self.basis:
            return 1
        out = 1
        for f in invariant_factors([list(r) for r in self.basis]):
            out *= f
        return out

    def is_saturated(self):
        return self.quotient_order() == 1

    def diagonalized_inclusion(self, sup):
        """For self ⊆ sup of equal rank-compatible inclusion, diagonalize.

        Returns (sup_rows, factors, self_expr) such that sup_rows is a basis
        of sup, self has basis {factors[i] * sup_rows[i] : i < rank(self)},
        and self_expr[i] expresses that basis row in terms of self.basis.
        """
        assert sup.contains_lattice(self)
        x = [sup.express(row) for row in self.basis]
        u, d, v = smith_normal_form(x)
        w = unimodular_inverse(v)
        sup_rows = mat_mul(w, [list(r) for r in sup.basis])
        factors = [d[i][i] for i in range(len(self.basis))]
        # rows of U * self.basis equal factors[i] * sup_rows[i]
        if checks.ENABLED:
            lhs = mat_mul(u, [list(r) for r in self.basis])
            for i, f in enumerate(factors):
                assert lhs[i] == [f * y for y in sup_rows[i]]
        return sup_rows, factors, u

    def circuits(self):
        """All circuits: primitive lattice vectors of inclusion-minimal support.

        Computed from a kernel presentation of Sat(L) by Cramer determinants
        over (rank-of-presentation + 1)-subsets of coordinates; normalized to
        gcd 1 with positive first nonzero entry; support-unique.
        """
        n = self.ambient
        if not self.basis:
            return []
        pres = kernel(self.basis)  # Sat(L) = kernel of this matrix
        d = len(pres)
        if d == 0:
            # full lattice: circuits are the unit vectors
            return [tuple(int(i == j) for j in range(n)) for i in range(n)]
        cols = transpose(pres)
        out = {}
        for subset in combinations(range(n), d + 1):
            vec = [0] * n
            nonzero = False
            for pos, j in enumerate(subset):
                sub = [cols[jj] for t, jj in enumerate(subset) if t != pos]
                m = det(sub)
                if pos % 2:
                    m = -m
                vec[j] = m
                nonzero = nonzero or bool(m)
            if not nonzero:
                continue
            g = 0
            for x in vec:
                g = gcd(g, x)
            vec = [x // g for x in vec]
            lead = next(x for x in vec if x)
            if lead < 0:
                vec = [-x for x in vec]
            support = tuple(j for j, x in enumerate(vec) if x)
            out.setdefault(support, tuple(vec))
        return [out[s] for s in sorted(out)]


class IntMatrix:
    """Spec-surface wrapper: exact integer matrix with JSON serialization."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        self.entries = tuple(tuple(int(x) for x in row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0

    def smith_normal_form(self):
        u, d, v = smith_normal_form([list(r) for r in self.entries])
        return IntMatrix(u), IntMatrix(d), IntMatrix(v)

    def hnf(self):
        out = hnf([list(r) for r in self.entries])
        return IntMatrix(out) if out else IntMatrix([[]] if self.cols == 0 else [[0] * self.cols])

    def to_json(self):
        return [[str(x) for x in row] for row in self.entries]

    @classmethod
    def from_json(cls, data):
        return cls([[int(x) for x in row] for row in data])

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and other.entries == self.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.entries]})"
