"""Exact coefficient arithmetic: QQ, cyclotomic fields QQ(zeta_N), finite fields GF(p^k).

Rationals are plain ``fractions.Fraction``; cyclotomic scalars are
``CycloElement`` values that remember their order N and mix freely with
rationals (arithmetic lifts both operands into QQ(zeta_lcm)).  Finite-field
scalars are ``FiniteFieldElement`` values tied to an interned ``FiniteField``.
Everything is immutable and exact.
"""

from fractions import Fraction
from math import gcd, lcm

from .errors import (
    DivisionByZero,
    FieldMismatch,
    RootNotCyclotomic,
    RootNotInField,
)


def euler_phi(n):
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def factorint(n):
    """Trial-division factorization; returns {prime: multiplicity}."""
    n = abs(n)
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n):
    if n < 2:
        return False
    return factorint(n) == {n: 1}


def integer_nth_root(x, n):
    """Exact n-th root of a nonnegative integer, or None."""
    if x < 0:
        return None
    if x in (0, 1) or n == 1:
        return x
    lo, hi = 0, 1
    while hi**n <= x:
        hi *= 2
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid**n <= x:
            lo = mid
        else:
            hi = mid
    return lo if lo**n == x else None


def rational_nth_root(q, n):
    """Exact positive rational n-th root of a positive Fraction, or None."""
    if q <= 0:
        return None
    a = integer_nth_root(q.numerator, n)
    b = integer_nth_root(q.denominator, n)
    if a is None or b is None:
        return None
    return Fraction(a, b)


# ---------------------------------------------------------------------------
# cyclotomic polynomials and the QQ(zeta_N) tower


def _poly_divmod_int(num, den):
    # exact division of integer coefficient lists (ascending), den monic
    num = list(num)
    deg_d = len(den) - 1
    quot = [0] * max(len(num) - deg_d, 0)
    for i in range(len(num) - 1, deg_d - 1, -1):
        c = num[i]
        if c:
            quot[i - deg_d] = c
            for j, dj in enumerate(den):
                num[i - deg_d + j] -= c * dj
    while num and num[-1] == 0:
        num.pop()
    return quot, num


_CYCLO_CACHE = {1: (-1, 1)}


def cyclotomic_polynomial(n):
    """Integer coefficients of Phi_n, ascending, monic."""
    if n in _CYCLO_CACHE:
        return _CYCLO_CACHE[n]
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in divisors(n):
        if d != n:
            num, rem = _poly_divmod_int(num, list(cyclotomic_polynomial(d)))
            assert not rem
    _CYCLO_CACHE[n] = tuple(num)
    return _CYCLO_CACHE[n]


class _CycloContext:
    """Cached reduction/embedding data for one cyclotomic order."""

    __slots__ = ("order", "degree", "modulus", "red_rows")

    def __init__(self, order):
        self.order = order
        self.degree = euler_phi(order)
        self.modulus = cyclotomic_polynomial(order)
        deg = self.degree
        rows = []
        # z^(deg+i) expressed in the power basis, for i = 0 .. deg-2
        cur = [-c for c in self.modulus[:deg]]
        rows.append(tuple(cur))
        for _ in range(deg - 2):
            nxt = [0] + cur[:-1]
            top = cur[-1]
            if top:
                for j in range(deg):
                    nxt[j] -= top * self.modulus[j]
            cur = nxt
            rows.append(tuple(cur))
        self.red_rows = tuple(rows)

    def reduce_monomial(self, e):
        """Coefficient tuple of z^e (e >= 0) in the power basis."""
        deg = self.degree
        if e < deg:
            out = [Fraction(0)] * deg
            out[e] = Fraction(1)
            return tuple(out)
        num = [0] * (e + 1)
        num[e] = 1
        _, rem = _poly_divmod_int(num, list(self.modulus))
        rem += [0] * (deg - len(rem))
        return tuple(Fraction(c) for c in rem)


_CTX_CACHE = {}


def _ctx(order):
    ctx = _CTX_CACHE.get(order)
    if ctx is None:
        ctx = _CycloContext(order)
        _CTX_CACHE[order] = ctx
    return ctx


_EMBED_CACHE = {}


def _embedding(n, m):
    """Rows: coefficients of each QQ(zeta_n) basis power inside QQ(zeta_m)."""
    key = (n, m)
    rows = _EMBED_CACHE.get(key)
    if rows is None:
        assert m % n == 0
        ctx_m = _ctx(m)
        step = m // n
        rows = tuple(ctx_m.reduce_monomial(i * step) for i in range(euler_phi(n)))
        _EMBED_CACHE[key] = rows
    return rows


def _as_cyclo_pair(a, b):
    """Lift two char-0 scalars to a common cyclotomic order."""
    na = a.order if isinstance(a, CycloElement) else 1
    nb = b.order if isinstance(b, CycloElement) else 1
    n = lcm(na, nb)
    return _lift(a, n), _lift(b, n), n


def _lift(a, n):
    if n == 1:
        return a if isinstance(a, Fraction) else Fraction(a)
    if isinstance(a, CycloElement):
        if a.order == n:
            return a.coeffs
        rows = _embedding(a.order, n)
        deg = euler_phi(n)
        out = [Fraction(0)] * deg
        for c, row in zip(a.coeffs, rows):
            if c:
                for j in range(deg):
                    if row[j]:
                        out[j] += c * row[j]
        return tuple(out)
    out = [Fraction(0)] * euler_phi(n)
    out[0] = Fraction(a)
    return tuple(out)


def _make(n, coeffs):
    """Build a scalar from power-basis coefficients over QQ(zeta_n)."""
    if n == 1:
        return coeffs if isinstance(coeffs, Fraction) else coeffs[0]
    return CycloElement(n, tuple(coeffs))


class CycloElement:
    """Element of QQ(zeta_N) in the power basis 1, z, ..., z^(phi(N)-1).

    The stored order is not forced to be minimal; ``normalized`` returns the
    canonical minimal-order representative.
    """

    __slots__ = ("order", "coeffs", "_key")

    def __init__(self, order, coeffs):
        self.order = order
        self.coeffs = coeffs
        self._key = None

    # -- ring structure

    def __add__(self, other):
        if isinstance(other, int):
            other = Fraction(other)
        if not isinstance(other, (Fraction, CycloElement)):
            return NotImplemented
        ca, cb, n = _as_cyclo_pair(self, other)
        if n == 1:
            return ca + cb
        return _make(n, tuple(x + y for x, y in zip(ca, cb)))

    __radd__ = __add__

    def __neg__(self):
        return CycloElement(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, CycloElement) else -Fraction(other) if isinstance(other, int) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = Fraction(other)
        if isinstance(other, Fraction):
            if not other:
                return Fraction(0)
            return CycloElement(self.order, tuple(c * other for c in self.coeffs))
        if not isinstance(other, CycloElement):
            return NotImplemented
        ca, cb, n = _as_cyclo_pair(self, other)
        if n == 1:
            return ca * cb
        ctx = _ctx(n)
        deg = ctx.degree
        conv = [Fraction(0)] * (2 * deg - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    if y:
                        conv[i + j] += x * y
        out = conv[:deg]
        for i in range(deg, 2 * deg - 1):
            c = conv[i]
            if c:
                row = ctx.red_rows[i - deg]
                for j in range(deg):
                    if row[j]:
                        out[j] += c * row[j]
        return _make(n, out)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise DivisionByZero("inverse of zero")
        ctx = _ctx(self.order)
        # extended Euclid in QQ[z] against Phi_N
        r0 = [Fraction(c) for c in ctx.modulus]
        r1 = list(self.coeffs)
        while r1 and not r1[-1]:
            r1.pop()
        s0, s1 = [], [Fraction(1)]
        while True:
            if len(r1) == 1:
                inv_c = 1 / r1[0]
                deg = ctx.degree
                out = [c * inv_c for c in s1] + [Fraction(0)] * deg
                return _make(self.order, tuple(out[:deg]))
            q, r = _frac_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _frac_sub(s0, _frac_mul(q, s1))
            if not r1:
                raise DivisionByZero("element not invertible (non-reduced order?)")

    def __truediv__(self, other):
        if isinstance(other, int):
            other = Fraction(other)
        if isinstance(other, Fraction):
            if not other:
                raise DivisionByZero("division by zero")
            return self * Fraction(other.denominator, other.numerator)
        if not isinstance(other, CycloElement):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = Fraction(1)
        base = self
        while e:
            if e & 1:
                result = base * result
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Fraction(other)
        if isinstance(other, Fraction):
            return self.coeffs[0] == other and not any(self.coeffs[1:]) if self.order == 1 else self.is_rational() and self.rational_value() == other
        if isinstance(other, CycloElement):
            if other.order == self.order:
                return self.coeffs == other.coeffs
            ca, cb, _ = _as_cyclo_pair(self, other)
            return ca == cb
        return NotImplemented

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"CycloElement({self.order}, {render_scalar(self)!r})"

    # -- structure helpers

    def is_rational(self):
        return not any(self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("not rational")
        return self.coeffs[0]

    def normalized(self):
        """Equal element stored at the minimal cyclotomic order."""
        n, coeffs = self._minimal()
        return _make(n, coeffs)

    def key(self):
        """Hashable canonical form (minimal order, coefficient tuple)."""
        if self._key is None:
            self._key = self._minimal()
        return self._key

    def _minimal(self):
        for m in divisors(self.order):
            rows = _embedding(m, self.order)
            sol = _solve_fraction_system(rows, self.coeffs)
            if sol is not None:
                if m == 1:
                    return (1, (sol[0],))
                return (m, tuple(sol))
        raise AssertionError("unreachable")


def _frac_divmod(num, den):
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    quot = [Fraction(0)] * max(len(num) - dd, 0)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            q = c / lead
            quot[i - dd] = q
            for j, dj in enumerate(den):
                num[i - dd + j] -= q * dj
    while num and not num[-1]:
        num.pop()
    return quot, num


def _frac_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    while out and not out[-1]:
        out.pop()
    return out


def _frac_sub(a, b):
    out = list(a) + [Fraction(0)] * max(len(b) - len(a), 0)
    for i, y in enumerate(b):
        out[i] -= y
    while out and not out[-1]:
        out.pop()
    return out


def _solve_fraction_system(rows, target):
    """Solve x * rows = target over QQ (rows: tuples); None if inconsistent."""
    if not rows:
        return [] if not any(target) else None
    m = [list(map(Fraction, row)) + [Fraction(0)] * 0 for row in rows]
    ncols = len(m[0])
    aug = [[m[i][j] for i in range(len(rows))] for j in range(ncols)]
    rhs = list(target)
    # Gaussian elimination on the (ncols x nrows) system aug * x = rhs
    nrows = len(rows)
    piv_cols = []
    r = 0
    for c in range(nrows):
        piv = next((i for i in range(r, ncols) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        rhs[r], rhs[piv] = rhs[piv], rhs[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        rhs[r] = rhs[r] * inv
        for i in range(ncols):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
                rhs[i] = rhs[i] - f * rhs[r]
        piv_cols.append(c)
        r += 1
    sol = [Fraction(0)] * nrows
    for i, c in enumerate(piv_cols):
        sol[c] = rhs[i]
    for i in range(r, ncols):
        if rhs[i]:
            return None
    # verify (cheap, guards rank-deficient corner cases)
    for j in range(ncols):
        acc = Fraction(0)
        for i in range(nrows):
            if sol[i]:
                acc += sol[i] * rows[i][j]
        if acc != target[j]:
            return None
    return sol


def zeta(n, j=1):
    """The root of unity zeta_n^j as an exact scalar."""
    j %= n
    if j == 0:
        return Fraction(1)
    g = gcd(j, n)
    n, j = n // g, j // g
    if n == 1:
        return Fraction(1)
    if n == 2:
        return Fraction(-1)
    ctx = _ctx(n)
    return CycloElement(n, ctx.reduce_monomial(j))


def scalar_order(a):
    """Cyclotomic order needed to represent a char-0 scalar."""
    if isinstance(a, CycloElement):
        return a.key()[0]
    return 1


def is_root_of_unity(a):
    if isinstance(a, Fraction):
        return abs(a) == 1
    n = a.order
    e = lcm(2, n)
    return a**e == 1


def unit_decompose(a):
    """Write a nonzero char-0 scalar as q * zeta_o^j with q in QQ_{>0}.

    Returns (q, o, j) with gcd(j, o) = 1 (o = 1 when a is a positive
    rational).  Raises RootNotCyclotomic when no such form exists.
    """
    if isinstance(a, int):
        a = Fraction(a)
    if isinstance(a, Fraction):
        if not a:
            raise DivisionByZero("zero has no unit decomposition")
        if a > 0:
            return (a, 1, 0)
        return (-a, 2, 1)
    if a.is_rational():
        return unit_decompose(a.rational_value())
    n = a.order
    e = lcm(2, n)
    w = a**e
    if isinstance(w, CycloElement):
        if not w.is_rational():
            raise RootNotCyclotomic(f"{render_scalar(a)} is not rational times a root of unity")
        w = w.rational_value()
    q = rational_nth_root(w, e)
    if q is None:
        raise RootNotCyclotomic(f"{render_scalar(a)}^{e} = {w} has no rational {e}-th root")
    z = a / q
    # match z against the E-th roots of unity
    zz = zeta(e)
    power = Fraction(1)
    for j in range(e):
        if power == z:
            if j == 0:
                return (q, 1, 0)
            g = gcd(j, e)
            return (q, e // g, j // g)
        power = power * zz
    raise RootNotCyclotomic(f"{render_scalar(a)} is not rational times a root of unity")


# ---------------------------------------------------------------------------
# finite fields GF(p^k)


def _ff_poly_is_irreducible(coeffs, p):
    """Irreducibility over F_p of a monic poly given ascending (small degree)."""
    k = len(coeffs) - 1
    if k == 1:
        return True
    if coeffs[0] == 0:
        return False
    # x^(p^d) mod f, checking gcd conditions for d | k, plus x^(p^k) = x
    def polymulmod(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] = (out[i + j] + x * y) % p
        # reduce mod coeffs (monic)
        for i in range(len(out) - 1, k - 1, -1):
            c = out[i]
            if c:
                for j in range(k + 1):
                    out[i - k + j] = (out[i - k + j] - c * coeffs[j]) % p
        out = out[:k]
        while out and out[-1] == 0:
            out.pop()
        return out

    def polypow_x(e):
        result = [0, 1]
        base = [0, 1]
        # compute x^e mod f by binary powering on the exponent e
        result = [1]
        while e:
            if e & 1:
                result = polymulmod(result, base)
            base = polymulmod(base, base)
            e >>= 1
        return result

    def polygcd(a, b):
        a, b = list(a), list(b)
        while b:
            # a mod b
            inv = pow(b[-1], p - 2, p)
            while len(a) >= len(b):
                c = (a[-1] * inv) % p
                if c:
                    off = len(a) - len(b)
                    for j in range(len(b)):
                        a[off + j] = (a[off + j] - c * b[j]) % p
                a.pop()
                while a and a[-1] == 0:
                    a.pop()
                if not a:
                    break
            a, b = b, a
        return a

    for q in factorint(k):
        xp = polypow_x(p ** (k // q))
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        while diff and diff[-1] == 0:
            diff.pop()
        if len(polygcd(list(coeffs), diff)) != 1:
            return False
    xpk = polypow_x(p**k)
    xpk = list(xpk) + [0] * max(0, 2 - len(xpk))
    xpk[1] = (xpk[1] - 1) % p
    return not any(xpk)


def default_modulus(p, k):
    """Deterministic smallest monic irreducible of degree k over F_p."""
    if k == 1:
        return (0, 1)
    # enumerate lower coefficients lexicographically
    total = p**k
    for idx in range(total):
        coeffs = []
        v = idx
        for _ in range(k):
            coeffs.append(v % p)
            v //= p
        coeffs.append(1)
        if _ff_poly_is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """GF(p^k) with an explicit monic irreducible modulus over F_p."""

    _registry = {}

    def __new__(cls, p, k=1, modulus=None):
        if modulus is None:
            modulus = default_modulus(p, k)
        key = (p, k, tuple(modulus))
        inst = cls._registry.get(key)
        if inst is None:
            inst = super().__new__(cls)
            inst._init(p, k, tuple(modulus))
            cls._registry[key] = inst
        return inst

    def _init(self, p, k, modulus):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if len(modulus) != k + 1 or modulus[k] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not _ff_poly_is_irreducible(list(modulus), p):
            raise ValueError("modulus is not irreducible over F_p")
        self.p = p
        self.k = k
        self.char = p
        self.modulus = modulus
        self.units_order = p**k - 1
        self._gen = None
        self._dlog = None
        self.zero = FiniteFieldElement(self, (0,) * k)
        self.one = FiniteFieldElement(self, (1,) + (0,) * (k - 1))

    def scalar(self, x):
        if isinstance(x, FiniteFieldElement):
            if x.field is not self:
                raise FieldMismatch("element of a different finite field")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero("denominator divisible by p")
            num = self.scalar(x.numerator)
            return num * self.scalar(x.denominator).inverse()
        return FiniteFieldElement(self, ((x % self.p),) + (0,) * (self.k - 1))

    def element(self, coeffs):
        coeffs = tuple(c % self.p for c in coeffs)
        if len(coeffs) < self.k:
            coeffs = coeffs + (0,) * (self.k - len(coeffs))
        return FiniteFieldElement(self, coeffs)

    def elements(self):
        """All field elements in deterministic (lexicographic) order."""
        out = [self.zero]
        stack = [(0,) * self.k]
        total = self.p**self.k
        for idx in range(1, total):
            coeffs = []
            v = idx
            for _ in range(self.k):
                coeffs.append(v % self.p)
                v //= self.p
            out.append(self.element(coeffs))
        return out

    def generator(self):
        if self._gen is None:
            m = self.units_order
            prime_parts = [m // q for q in factorint(m)]
            for cand in self.elements():
                if not cand:
                    continue
                if all(cand**e != self.one for e in prime_parts):
                    self._gen = cand
                    break
        return self._gen

    def dlog(self, a):
        """Discrete log base generator(); brute-force table, desk scale."""
        if not a:
            raise DivisionByZero("dlog of zero")
        if self._dlog is None:
            table = {}
            g = self.generator()
            cur = self.one
            for i in range(self.units_order):
                table[cur.coeffs] = i
                cur = cur * g
            self._dlog = table
        return self._dlog[a.coeffs]

    def root_of_unity(self, n, j=1):
        if n % self.p == 0:
            raise RootNotInField(f"no {n}-th roots of unity in characteristic {self.p}")
        m = self.units_order
        if m % n != 0:
            kk = 1
            acc = self.p % n
            while acc != 1:
                acc = (acc * self.p) % n
                kk += 1
            raise RootNotInField(
                f"GF({self.p}^{self.k}) has no element of order {n}; "
                f"minimal extension degree is {kk}",
                min_extension=kk,
            )
        return self.generator() ** ((m // n) * j)

    def dth_roots(self, c, d):
        """All d-th roots of c in this field (unique root for the p-part)."""
        if not c:
            return [self.zero]
        p, k = self.p, self.k
        e = 0
        while d % p == 0:
            d //= p
            e += 1
        # p-part: inverse Frobenius is x -> x^(p^(k-1))
        root = c
        for _ in range(e):
            root = root ** (p ** (k - 1))
        if d == 1:
            return [root]
        m = self.units_order
        g0 = gcd(d, m)
        t = self.dlog(root)
        if t % g0 != 0:
            raise RootNotInField(
                f"{render_scalar(c)} has no {d}-th root in GF({p}^{k})"
            )
        minv = pow(d // g0, -1, m // g0)
        s0 = ((t // g0) * minv) % (m // g0)
        gen = self.generator()
        return [gen ** (s0 + i * (m // g0)) for i in range(g0)]

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (FiniteField, (self.p, self.k, self.modulus))


class FiniteFieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, FiniteFieldElement):
            if other.field is not self.field:
                raise FieldMismatch("mixed finite fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FiniteFieldElement(
            self.field, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FiniteFieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        p, k = f.p, f.k
        if k == 1:
            return FiniteFieldElement(f, ((self.coeffs[0] * o.coeffs[0]) % p,))
        conv = [0] * (2 * k - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(o.coeffs):
                    if y:
                        conv[i + j] = (conv[i + j] + x * y) % p
        for i in range(2 * k - 2, k - 1, -1):
            c = conv[i]
            if c:
                for j in range(k + 1):
                    conv[i - k + j] = (conv[i - k + j] - c * f.modulus[j]) % p
        return FiniteFieldElement(f, tuple(conv[:k]))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise DivisionByZero("inverse of zero")
        return self ** (self.field.units_order - 1)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise DivisionByZero("division by zero")
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            try:
                other = self.field.scalar(other)
            except DivisionByZero:
                return False
        if isinstance(other, FiniteFieldElement):
            return self.field is other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.field.modulus, self.coeffs))

    def key(self):
        return (self.field.p, self.field.k, self.coeffs)

    def __repr__(self):
        return f"FiniteFieldElement({render_scalar(self)!r})"


# ---------------------------------------------------------------------------
# field specifications


class CycloField:
    """Char-0 field QQ(zeta_N); N = 1 is plain QQ.

    The order only bounds which roots of unity are *declared* available;
    arithmetic transparently enlarges as needed, and ``union`` tracks the
    declared order across operations that introduce new roots.
    """

    __slots__ = ("order",)
    char = 0

    def __init__(self, order=1):
        self.order = order

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def scalar(self, x):
        if isinstance(x, (int, str)):
            return Fraction(x)
        if isinstance(x, (Fraction, CycloElement)):
            return x
        raise FieldMismatch(f"cannot coerce {x!r} into {self!r}")

    def root_of_unity(self, n, j=1):
        return zeta(n, j)

    def dth_roots(self, c, d):
        if isinstance(c, int):
            c = Fraction(c)
        if not c:
            return [Fraction(0)]
        q, o, j = unit_decompose(c)
        t = rational_nth_root(q, d)
        if t is None:
            raise RootNotCyclotomic(
                f"{render_scalar(c)} has no {d}-th root of the form "
                "(rational) * (root of unity)"
            )
        # solutions of x^d = zeta_o^j are zeta_(o*d)^(j + o*i)
        return [t * zeta(o * d, j + o * i) for i in range(d)]

    def union(self, other):
        if isinstance(other, CycloField):
            return CycloField(lcm(self.order, other.order))
        raise FieldMismatch("cannot merge char-0 and char-p fields")

    def containing(self, scalars):
        n = self.order
        for s in scalars:
            n = lcm(n, scalar_order(s))
        return CycloField(n) if n != self.order else self

    def __eq__(self, other):
        return isinstance(other, CycloField) and other.order == self.order

    def __hash__(self):
        return hash(("cyclo", self.order))

    def __repr__(self):
        return "QQ" if self.order <= 2 else f"QQ(zeta {self.order})"


QQ = CycloField(1)


def field_arith(a, b, op):
    """Uniform scalar arithmetic entry point: op in {add, sub, mul, div}."""
    mixed_p = isinstance(a, FiniteFieldElement) != isinstance(b, FiniteFieldElement)
    if mixed_p and not isinstance(a, (int, Fraction)) and not isinstance(b, (int, Fraction)):
        raise FieldMismatch("cannot mix characteristic 0 and p scalars")
    try:
        if op == "add":
            return a + b
        if op == "sub":
            return a - b
        if op == "mul":
            return a * b
        if op == "div":
            if not b:
                raise DivisionByZero("division by zero")
            return a / b
    except TypeError:
        raise FieldMismatch(f"incompatible operands {a!r}, {b!r}")
    raise ValueError(f"unknown op {op!r}")


def root_of_unity(field, n, j=1):
    """zeta_n^j in the given field; enlarges the declared order in char 0."""
    if field.char == 0:
        return zeta(n, j)
    return field.root_of_unity(n, j)


def dth_root(field, c, d):
    """All exact d-th roots of c available in (an extension of) the field."""
    return field.dth_roots(c, d)


def scalar_key(a):
    """Canonical hashable key of a scalar, stable across stored orders."""
    if isinstance(a, int):
        a = Fraction(a)
    if isinstance(a, Fraction):
        return (1, (a,))
    return a.key()


# ---------------------------------------------------------------------------
# text rendering / parsing of scalars


def _render_qpoly(coeffs, varname):
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            mon = None
        elif i == 1:
            mon = varname
        else:
            mon = f"{varname}^{i}"
        if mon is None:
            body = str(c)
        elif c == 1:
            body = mon
        elif c == -1:
            body = f"-{mon}"
        else:
            body = f"{c}*{mon}"
        if terms and not body.startswith("-"):
            terms.append(f" + {body}")
        elif terms:
            terms.append(f" - {body[1:]}")
        else:
            terms.append(body)
    return "".join(terms) if terms else "0"


def render_scalar(a, gf_suffix=True):
    if isinstance(a, int):
        a = Fraction(a)
    if isinstance(a, Fraction):
        return str(a)
    if isinstance(a, CycloElement):
        return _render_qpoly(a.coeffs, f"z{a.order}")
    if isinstance(a, FiniteFieldElement):
        f = a.field
        body = _render_qpoly([Fraction(c) for c in a.coeffs], "t")
        if not gf_suffix:
            return body
        tag = f"@GF({f.p}^{f.k})" if f.k > 1 else f"@GF({f.p})"
        return body + tag
    raise TypeError(f"not a scalar: {a!r}")


class _ScalarParser:
    """Recursive-descent parser for the scalar grammar.

    atoms: integers, z<N> (char 0), t (char p); operators + - * / ^ and
    parentheses.  An optional @GF(p^k) suffix is accepted and checked.
    """

    def __init__(self, text, field):
        self.text = text
        self.pos = 0
        self.field = field

    def parse(self):
        value = self.expr()
        self.skip()
        if self.pos < len(self.text) and self.text[self.pos] == "@":
            tag = self.text[self.pos:]
            expected = repr(self.field)
            if tag[1:] not in (expected, expected.replace("GF", "GF")):
                if f"@{expected}" != tag:
                    raise RootNotInField(f"scalar tagged {tag} parsed in {expected}")
            self.pos = len(self.text)
        if self.pos != len(self.text):
            raise ValueError(f"trailing input in scalar: {self.text[self.pos:]!r}")
        return value

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self):
        sign = 1
        while self.peek() and self.peek() in "+-":
            if self.text[self.pos] == "-":
                sign = -sign
            self.pos += 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.peek() and self.peek() in "+-":
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek() and self.peek() in "*/":
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if not rhs:
                    raise DivisionByZero("division by zero in scalar literal")
                value = value / rhs
        return value

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            neg = False
            if self.peek() == "-":
                neg = True
                self.pos += 1
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            e = int(self.text[start:self.pos])
            base = base ** (-e if neg else e)
        return base

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                raise ValueError("unbalanced parenthesis in scalar")
            self.pos += 1
            return value
        if ch == "-":
            self.pos += 1
            return -self.atom()
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            value = int(self.text[start:self.pos])
            if self.field.char == 0:
                return Fraction(value)
            return self.field.scalar(value)
        if ch == "z" and self.field.char == 0:
            self.pos += 1
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                raise ValueError("bad root-of-unity token")
            return zeta(int(self.text[start:self.pos]))
        if ch == "t" and self.field.char != 0:
            self.pos += 1
            return self.field.element((0, 1) if self.field.k > 1 else (0,))
        raise ValueError(f"unexpected character {ch!r} in scalar")


def parse_scalar(text, field=QQ):
    return _ScalarParser(text, field).parse()
