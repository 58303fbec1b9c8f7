"""Ideal-level constructions: elimination, colon, saturation, intersection,
homogenization, quasi-powers, cellular localization, blowup presentations.

All auxiliary-variable tricks go through one helper that appends a fresh
variable, which keeps every construction a single elimination Groebner run.
Binomiality of results is asserted where the theory guarantees it.
"""

from math import lcm

from . import checks
from .errors import (
    EscalationLimit,
    InfiniteStandardSet,
    NonzerodivisorViolated,
    NotTwoTerm,
)
from .groebner import groebner_basis
from .poly import (
    DEGREVLEX,
    Polynomial,
    Ring,
    elim_order,
    mono_deg,
    mono_div,
    mono_divides,
    render_poly,
)


class Ideal:
    """Finitely generated ideal with cached reduced Groebner bases."""

    __slots__ = ("ring", "gens", "_gb", "_key")

    def __init__(self, ring, gens=()):
        self.ring = ring
        self.gens = tuple(g for g in gens if g.terms)
        self._gb = {}
        self._key = None

    def gb(self, order=DEGREVLEX):
        got = self._gb.get(order.id())
        if got is None:
            got = groebner_basis(self.gens, order, self.ring)
            self._gb[order.id()] = got
        return got

    # -- predicates

    def is_zero(self):
        return not self.gens

    def is_unit(self):
        if any(len(g.terms) == 1 and not any(g.terms[0][0]) for g in self.gens):
            return True
        gb = self.gb()
        return bool(gb.polys) and gb.is_trivial

    def is_binomial(self):
        return self.gb().is_binomial

    def contains(self, f):
        if isinstance(f, Ideal):
            return all(self.contains(g) for g in f.gens)
        if not f.terms:
            return True
        return self.gb().contains(f)

    def normal_form(self, f, order=DEGREVLEX):
        return self.gb(order).normal_form(f)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if other.ring != self.ring:
            return False
        return self.contains(other) and other.contains(self)

    def __hash__(self):
        return hash((self.ring, self.key()))

    def key(self):
        """Canonical key: the reduced degrevlex GB with canonical scalars."""
        if self._key is None:
            self._key = tuple(p.key() for p in self.gb().polys)
        return self._key

    def __add__(self, other):
        if isinstance(other, Ideal):
            if other.ring != self.ring:
                raise ValueError("ideal sum across rings")
            return Ideal(self.ring, self.gens + other.gens)
        if isinstance(other, Polynomial):
            return Ideal(self.ring, self.gens + (other,))
        return Ideal(self.ring, self.gens + tuple(other))

    def canonical(self):
        """Ideal regenerated by its reduced degrevlex GB."""
        return Ideal(self.ring, self.gb().polys)

    def __reduce__(self):
        # caches hold closures; rebuild from generators on unpickle
        return (Ideal, (self.ring, self.gens))

    def __repr__(self):
        return f"Ideal({', '.join(render_poly(g) for g in self.gens) or '0'})"


def ideal_equal(i, j):
    return i == j


def ideal_contains(i, j):
    """Whether i contains j (as sets: j ⊆ i)."""
    return i.contains(j)


def membership(f, i):
    return i.contains(f)


def is_binomial_ideal(gens, ring=None):
    if isinstance(gens, Ideal):
        return gens.is_binomial()
    gens = list(gens)
    ring = ring or gens[0].ring
    return groebner_basis(gens, DEGREVLEX, ring).is_binomial


# ---------------------------------------------------------------------------
# elimination and auxiliary-variable constructions


def _fresh_name(ring, base):
    name = base
    k = 0
    while name in ring._index:
        name = f"{base}{k}"
        k += 1
    return name


def eliminate(i, keep):
    """I ∩ k[keep] as an ideal of the same ring, via a block elimination order."""
    ring = i.ring
    keep = set(keep)
    drop = [v for v in range(ring.nvars) if v not in keep]
    if not drop:
        return i.canonical()
    gb = i.gb(elim_order(drop, ring.nvars))
    kept = [p for p in gb if not p.involves(drop)]
    out = Ideal(ring, kept)
    if all(len(g.terms) <= 2 for g in i.gens):
        assert all(len(p.terms) <= 2 for p in kept), "elimination broke binomiality"
    return out


def restrict_to_subring(i, keep):
    """Rewrite an ideal generated in k[keep] into the subring on those vars."""
    keep = sorted(keep)
    sub = i.ring.restricted(keep)
    index_map = [None] * i.ring.nvars
    for pos, v in enumerate(keep):
        index_map[v] = pos
    gens = [g.project(sub, index_map) for g in i.gens]
    return Ideal(sub, gens), sub


def embed_from_subring(i, ring, positions):
    """Inverse of restrict_to_subring: positions[j] = index in `ring`."""
    index_map = list(positions)
    gens = [g.project(ring, index_map) for g in i.gens]
    return Ideal(ring, gens)


def _with_aux(i, build):
    """Append a fresh variable t, run `build(up, t)` for extra generators,
    eliminate t, and map back down."""
    ring = i.ring
    n = ring.nvars
    rt = ring.extended(_fresh_name(ring, "_t"))
    up_map = list(range(n))
    t = rt.var(n)

    def up(p):
        return p.project(rt, up_map)

    gens = build(up, t)
    gb = groebner_basis(gens, elim_order([n], n + 1), rt)
    down_map = up_map + [None]
    kept = [p.project(ring, down_map) for p in gb if not p.involves([n])]
    return Ideal(ring, kept)


def intersect(i, j):
    """I ∩ J via eliminating t from t·I + (1−t)·J."""
    if i.ring != j.ring:
        raise ValueError("intersection across rings")
    if i.is_zero() or j.is_zero():
        return Ideal(i.ring)
    if i.is_unit():
        return j.canonical()
    if j.is_unit():
        return i.canonical()
    return _with_aux(
        i,
        lambda up, t: [up(f) * t for f in i.gens]
        + [up(g) * (t.ring.one - t) for g in j.gens],
    )


def intersect_all(ideals, ring):
    """Left fold of pairwise intersections, skipping redundant factors."""
    acc = None
    for k in ideals:
        if k.is_unit():
            continue
        if acc is None:
            acc = k.canonical()
            continue
        if k.contains(acc):
            continue
        if acc.contains(k):
            acc = k.canonical()
            continue
        acc = intersect(acc, k)
    if acc is None:
        return Ideal(ring, (ring.one,))
    return acc


def saturate_poly(i, f):
    """(I : f^∞) by the t-trick: adjoin t, add t·f − 1, eliminate t."""
    if not f.terms:
        raise ValueError("saturation by zero")
    if i.is_zero():
        return Ideal(i.ring)
    return _with_aux(
        i, lambda up, t: [up(g) for g in i.gens] + [t * up(f) - t.ring.one]
    )


def radical_membership(i, f):
    """f ∈ √I, decided by whether (I : f^∞) is the unit ideal... for f with
    1 ∈ I + (t·f − 1), i.e. by Rabinowitsch's trick."""
    if not f.terms:
        return True
    return saturate_poly(i, f).is_unit()


def divide_exact(g, f, order=DEGREVLEX):
    """Exact quotient g / f (raises if not divisible)."""
    ring = g.ring
    quot = {}
    work = g
    lmf, lcf = f.lt(order)
    while work.terms:
        e, c = work.lt(order)
        if not mono_divides(lmf, e):
            raise ValueError("inexact polynomial division")
        q = mono_div(e, lmf)
        qc = c / lcf
        quot[q] = quot.get(q, ring.field.zero) + qc
        work = work - f.mul_term(q, qc)
    return Polynomial.from_dict(ring, {e: c for e, c in quot.items() if c})


def colon_poly(i, f):
    """(I : f) = (I ∩ (f)) / f; general single-polynomial colon."""
    if not f.terms:
        raise ValueError("colon by zero")
    if i.is_zero():
        return Ideal(i.ring)
    w = intersect(i, Ideal(i.ring, (f,)))
    return Ideal(i.ring, tuple(divide_exact(g, f) for g in w.gens))


def colon_monomial(i, m):
    """(I : m) for a monomial m; binomial whenever I is."""
    out = colon_poly(i, m)
    if all(len(g.terms) <= 2 for g in i.gens):
        assert out.is_binomial(), "monomial colon broke binomiality"
    return out


def saturate_monomial(i, m):
    out = saturate_poly(i, m)
    if all(len(g.terms) <= 2 for g in i.gens):
        assert out.is_binomial(), "monomial saturation broke binomiality"
    return out


def saturation_exponent(i, m, bound=256):
    """Smallest k with (I : m^k) = (I : m^∞)."""
    target = saturate_monomial(i, m)
    cur = i
    k = 0
    while cur != target:
        cur = colon_monomial(cur, m)
        k += 1
        if k > bound:
            raise EscalationLimit("saturation exponent exceeded bound")
    return k


def colon_ideal(i, j):
    """(I : J) for a general ideal J: intersection of single colons.

    Not binomial-preserving in general (even a colon by two variables can
    fail); exposed
    as a plain utility.
    """
    acc = None
    for g in j.gens:
        c = colon_poly(i, g)
        acc = c if acc is None else intersect(acc, c)
    if acc is None:
        return Ideal(i.ring, (i.ring.one,))
    return acc


# ---------------------------------------------------------------------------
# homogenization


def homogenize(i, name="x0"):
    """Projective-closure ideal: homogenize a degree-order Groebner basis."""
    ring = i.ring
    n = ring.nvars
    rh = ring.extended(_fresh_name(ring, name))
    gens = []
    for g in i.gb(DEGREVLEX):
        d = g.total_degree()
        terms = {}
        for e, c in g.terms:
            terms[e + (d - mono_deg(e),)] = c
        gens.append(Polynomial.from_dict(rh, terms))
    return Ideal(rh, gens)


# ---------------------------------------------------------------------------
# quasi-powers (the binomial substitute for powers)


def _two_term_parts(b, order=DEGREVLEX):
    if len(b.terms) != 2:
        raise NotTwoTerm(f"{render_poly(b)} does not have exactly two terms")
    (ea, ca), (eb, cb) = (
        b.terms if order == DEGREVLEX else sorted(
            b.terms, key=lambda t: order.key_function(b.ring.nvars)(t[0]), reverse=True
        )
    )
    return ea, eb, -(cb / ca)


def quasi_power(b, d):
    """b^[d] := x^(d·α) − c^d · x^(d·β) for b with monic form x^α − c·x^β."""
    ea, eb, c = _two_term_parts(b)
    ring = b.ring
    return Polynomial.from_dict(
        ring,
        {
            tuple(d * x for x in ea): ring.field.one,
            tuple(d * x for x in eb): -(c**d),
        },
    )


def quasi_power_ratio(b, d, e):
    """The polynomial b^[d] / b^[e] (requires e | d)."""
    if d % e:
        raise ValueError("quasi-power ratio needs e | d")
    ea, eb, c = _two_term_parts(b)
    ring = b.ring
    m = d // e
    terms = {}
    ce = c**e
    for i in range(m):
        exp = tuple(e * (m - 1 - i) * x + e * i * y for x, y in zip(ea, eb))
        terms[exp] = terms.get(exp, ring.field.zero) + ce**i
    return Polynomial.from_dict(ring, {k: v for k, v in terms.items() if v})


def _leading_monomial_poly(b, ring):
    ea, _, _ = _two_term_parts(b)
    return ring.monomial(ea)


def check_nonzerodivisor_lead(i, b):
    """Verify the quasi-power colon precondition exactly: (I : x^a) = I."""
    xa = _leading_monomial_poly(b, i.ring)
    if colon_monomial(i, xa) != i:
        raise NonzerodivisorViolated(
            f"leading monomial {render_poly(xa)} is a zerodivisor mod the ideal"
        )


_LADDER_CACHE = [1]


def _ladder(k):
    """lcm(1..k); the escalation ladder for 'sufficiently divisible' d."""
    while len(_LADDER_CACHE) < k:
        _LADDER_CACHE.append(lcm(_LADDER_CACHE[-1], len(_LADDER_CACHE) + 1))
    return _LADDER_CACHE[k - 1]


def colon_quasipower(i, b, d=None, max_escalation=20):
    """(I : quasi_power(b, d)) with the colon-square stabilization certificate.

    With explicit d the single colon is returned uncertified (useful for
    reproducing fixed examples); otherwise d walks the lcm(1..k) ladder until
    (I:b^[d]) = (I:(b^[d])²) = (I:b^[2d]) = (I:b^[3d]).
    Returns (ideal, d_used).
    """
    check_nonzerodivisor_lead(i, b)
    if d is not None:
        return colon_poly(i, quasi_power(b, d)), d
    for k in range(1, max_escalation + 1):
        d = _ladder(k)
        j = colon_poly(i, quasi_power(b, d))
        if colon_poly(j, quasi_power(b, d)) != j:
            continue
        if colon_poly(i, quasi_power(b, 2 * d)) != j:
            continue
        if colon_poly(i, quasi_power(b, 3 * d)) != j:
            continue
        if all(len(g.terms) <= 2 for g in i.gens):
            assert j.is_binomial(), "stabilized quasi-power colon must be binomial"
        return j, d
    raise EscalationLimit("colon_quasipower escalation exceeded bound")


def colon_quasipower_ratio(i, b, d, e, strict=True):
    """(I : quasi_power_ratio(b, d, e)) via the coprime-factor identity:
    ((I + (I : b^[d]) · b^[e]) : (x^a)^inf).

    With strict=False an insufficiently divisible d is tolerated (callers
    that escalate d check binomiality themselves).
    """
    if d % e:
        raise ValueError("need e | d")
    p = i.ring.field.char
    if p:
        q = 1
        dd = d
        while dd % p == 0:
            dd //= p
            q *= p
        if e % q:
            raise ValueError("need q | e for the p-part q of d")
    check_nonzerodivisor_lead(i, b)
    if d == e:
        return i.canonical()
    k = colon_poly(i, quasi_power(b, d))
    f = quasi_power(b, e)
    j0 = Ideal(i.ring, i.gens + tuple(g * f for g in k.gens))
    out = saturate_monomial(j0, _leading_monomial_poly(b, i.ring))
    if strict and all(len(g.terms) <= 2 for g in i.gens):
        assert out.is_binomial(), "quasi-power ratio colon must be binomial"
    return out


# ---------------------------------------------------------------------------
# cellular localization


def cell_product(ring, cell):
    e = tuple(int(i in set(cell)) for i in range(ring.nvars))
    return ring.monomial(e)


def cellular_localize(i, cell, exps):
    """((I + ({x_i^d_i} for i outside the cell)) : (prod of cell vars)^inf)."""
    ring = i.ring
    cell = sorted(cell)
    inside = set(cell)
    gens = list(i.gens)
    for v in range(ring.nvars):
        if v not in inside:
            gens.append(ring.monomial(tuple(exps[v] if j == v else 0 for j in range(ring.nvars))))
    j = Ideal(ring, gens)
    if not cell:
        return j.canonical()
    return saturate_monomial(j, cell_product(ring, cell))


def nonzerodivisor_variables(i):
    """Indices v with (I : x_v) = I."""
    out = []
    for v in range(i.ring.nvars):
        if colon_monomial(i, i.ring.var(v)) == i:
            out.append(v)
    return tuple(out)


# ---------------------------------------------------------------------------
# standard monomials


def standard_monomials(source, var_indices, order=DEGREVLEX):
    """Monomials in the given variables outside in(I): (all, maximal).

    Requires the staircase restricted to those variables to be finite, i.e.
    a pure power of each variable must appear among the leading monomials;
    otherwise InfiniteStandardSet is raised.
    """
    gb = source.gb(order) if isinstance(source, Ideal) else source
    nv = gb.ring.nvars
    vs = sorted(var_indices)
    vset = set(vs)
    lms = [
        lm
        for lm in gb.leading_monomials()
        if all(i in vset for i, x in enumerate(lm) if x)
    ]
    if any(not any(lm) for lm in lms):
        return [], []  # unit ideal: no standard monomials
    if not vs:
        unit = (0,) * nv
        return [unit], [unit]
    bounds = {}
    for v in vs:
        pure = [lm[v] for lm in lms if all(x == 0 for i, x in enumerate(lm) if i != v)]
        if not pure:
            raise InfiniteStandardSet(
                f"no pure power of variable {gb.ring.names[v]} in the initial ideal"
            )
        bounds[v] = min(pure)
    out = []
    exp = [0] * nv

    def rec(pos):
        if pos == len(vs):
            e = tuple(exp)
            if not any(mono_divides(lm, e) for lm in lms):
                out.append(e)
            return
        v = vs[pos]
        for k in range(bounds[v]):
            exp[v] = k
            rec(pos + 1)
        exp[v] = 0

    rec(0)
    maximal = []
    for e in out:
        top = True
        for v in vs:
            bumped = tuple(x + 1 if i == v else x for i, x in enumerate(e))
            if not any(mono_divides(lm, bumped) for lm in lms):
                top = False
                break
        if top:
            maximal.append(e)
    keyf = order.key_function(nv)
    out.sort(key=keyf)
    maximal.sort(key=keyf)
    return out, maximal


# ---------------------------------------------------------------------------
# blowup-type presentations


def blowup_presentations(b, monomials):
    """Binomial presentations of Sym, blowup R[zI], Rees, gr_I for I = (M)+B/B.

    `monomials` are exponent tuples (or single-term polynomials) generating M
    in the ring of `b`.  Returns a dict with keys 'sym', 'sym_quotient',
    'blowup', 'rees', 'assoc_graded'; the first four live in S[y1..yt]
    (rees additionally has the inverse variable), each paired with its ring.
    """
    ring = b.ring
    n = ring.nvars
    ms = []
    for m in monomials:
        if isinstance(m, Polynomial):
            if len(m.terms) != 1:
                raise ValueError("monomial ideal generators must be terms")
            ms.append(m.terms[0][0])
        else:
            ms.append(tuple(m))
    t = len(ms)
    ynames = [_fresh_name(ring, f"y{i+1}") for i in range(t)]
    ry = Ring(ring.field, ring.names + tuple(ynames))
    up_y = list(range(n))

    # blowup: eliminate z from B + (y_i - m_i z)
    rz = ry.extended(_fresh_name(ry, "z"))
    z = rz.var(rz.nvars - 1)
    gens = [g.project(rz, up_y) for g in b.gens]
    for i, m in enumerate(ms):
        yi = rz.var(n + i)
        gens.append(yi - rz.monomial(tuple(m) + (0,) * (t + 1)) * z)
    gbw = groebner_basis(gens, elim_order([rz.nvars - 1], rz.nvars), rz)
    down = list(range(n + t)) + [None]
    blowup_gens = [p.project(ry, down) for p in gbw if not p.involves([rz.nvars - 1])]
    blowup = Ideal(ry, blowup_gens)

    def ydeg(p):
        return max(sum(e[n:]) for e, _ in p.terms)

    # symmetric algebra: the y-linear slice of the blowup relations, plus B
    lin = [p for p in blowup.gb() if ydeg(p) <= 1]
    sym = Ideal(ry, tuple(g.project(ry, up_y) for g in b.gens) + tuple(lin))

    m_in_ry = [ry.monomial(tuple(m) + (0,) * t) for m in ms]
    sym_quotient = Ideal(ry, sym.gens + tuple(m_in_ry))
    assoc_graded = Ideal(ry, blowup.gens + tuple(m_in_ry))

    # Rees algebra R[z^{-1}, zI]: eliminate z from B + (y_i - m_i z, z z' - 1)
    rzz = rz.extended(_fresh_name(rz, "zi"))
    zz = rzz.var(rzz.nvars - 1)
    gens = [g.project(rzz, up_y) for g in b.gens]
    for i, m in enumerate(ms):
        yi = rzz.var(n + i)
        gens.append(yi - rzz.monomial(tuple(m) + (0,) * (t + 2)) * rzz.var(n + t))
    gens.append(rzz.var(n + t) * zz - rzz.one)
    gbr = groebner_basis(gens, elim_order([n + t], rzz.nvars), rzz)
    ree_ring = Ring(ring.field, ry.names + (rzz.names[-1],))
    down_r = list(range(n + t)) + [None, n + t]
    rees_gens = [p.project(ree_ring, down_r) for p in gbr if not p.involves([n + t])]
    rees = Ideal(ree_ring, rees_gens)

    out = {
        "sym": sym,
        "sym_quotient": sym_quotient,
        "blowup": blowup,
        "rees": rees,
        "assoc_graded": assoc_graded,
    }
    if checks.ENABLED:
        for name, ideal in out.items():
            assert ideal.is_binomial(), f"{name} presentation is not binomial"
    return out
