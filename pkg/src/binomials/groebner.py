"""Buchberger's algorithm, normal forms, and reduced Groebner bases.

Binomial inputs stay binomial throughout: an S-pair of two binomials has at
most two terms and every reduction step of a term against a binomial yields
a term, so the engine asserts (rather than re-derives) that closure as it
runs.  The general path handles arbitrary term counts for colon/intersection
workloads.
"""

from heapq import heappop, heappush

from . import checks
from .poly import (
    DEGREVLEX,
    Polynomial,
    mono_deg,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


def _prepare(p, keyf):
    return [
        (keyf(e), e, c)
        for e, c in sorted(p.terms, key=lambda t: keyf(t[0]), reverse=True)
    ]


def _merge_sub(a, i0, b, shift, factor, keyf):
    """a[i0:] minus factor * x^shift * b, both descending term lists."""
    out = []
    i, j = i0, 0
    nb = len(b)
    while i < len(a) and j < nb:
        kb_exp = mono_mul(b[j][1], shift)
        kb = keyf(kb_exp)
        ka = a[i][0]
        if ka > kb:
            out.append(a[i])
            i += 1
        elif kb > ka:
            out.append((kb, kb_exp, -(factor * b[j][2])))
            j += 1
        else:
            c = a[i][2] - factor * b[j][2]
            if c:
                out.append((ka, a[i][1], c))
            i += 1
            j += 1
    out.extend(a[i:])
    while j < nb:
        e = mono_mul(b[j][1], shift)
        out.append((keyf(e), e, -(factor * b[j][2])))
        j += 1
    return out


def _reduce_prepared(f, basis_lms, basis_terms, keyf, full=True):
    """Normal form of a prepared term list modulo monic prepared divisors."""
    work = f
    out = []
    nb = len(basis_lms)
    while work:
        ke, e0, c0 = work[0]
        hit = -1
        for t in range(nb):
            if mono_divides(basis_lms[t], e0):
                hit = t
                break
        if hit < 0:
            if not full:
                return out + work
            out.append(work[0])
            work = work[1:]
            continue
        shift = mono_div(e0, basis_lms[hit])
        work = _merge_sub(work, 1, basis_terms[hit][1:], shift, c0, keyf)
    return out


class GroebnerBasis:
    """A (reduced) Groebner basis bound to its ring and monomial order."""

    __slots__ = ("ring", "order", "polys", "_keyf", "_lms", "_prepped")

    def __init__(self, ring, order, polys, reduced=True):
        self.ring = ring
        self.order = order
        self.polys = tuple(polys)
        self._keyf = order.key_function(ring.nvars)
        self._prepped = [_prepare(p, self._keyf) for p in self.polys]
        self._lms = [t[0][1] for t in self._prepped]

    @property
    def is_binomial(self):
        return all(len(p.terms) <= 2 for p in self.polys)

    @property
    def is_trivial(self):
        return len(self.polys) == 1 and not any(self._lms[0])

    def leading_monomials(self):
        return list(self._lms)

    def normal_form(self, f):
        if not f.terms:
            return f
        keyf = self._keyf
        red = _reduce_prepared(_prepare(f, keyf), self._lms, self._prepped, keyf)
        if checks.ENABLED and self.is_binomial and len(f.terms) == 1:
            assert len(red) <= 1, "normal form of a term modulo binomials must be a term"
        return Polynomial.from_dict(self.ring, {e: c for _, e, c in red})

    def contains(self, f):
        return not self.normal_form(f).terms

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __repr__(self):
        return f"GroebnerBasis({list(self.polys)!r})"


def groebner_basis(gens, order=DEGREVLEX, ring=None):
    """The unique reduced Groebner basis of the given generators."""
    gens = [g for g in gens if g.terms]
    if ring is None:
        if not gens:
            raise ValueError("need a ring for the zero ideal")
        ring = gens[0].ring
    if not gens:
        return GroebnerBasis(ring, order, ())
    keyf = order.key_function(ring.nvars)
    binomial_input = all(len(g.terms) <= 2 for g in gens)

    basis = []       # prepared term lists, monic
    lms = []
    treated = set()  # pairs already popped or discarded
    heap = []

    def push_poly(prep):
        lead = prep[0]
        if lead[2] != ring.field.one:
            inv = lead[2]
            prep = [(k, e, c / inv) for k, e, c in prep]
        idx = len(basis)
        lm_new = prep[0][1]
        for i in range(idx):
            l = mono_lcm(lms[i], lm_new)
            heappush(heap, (mono_deg(l), i, idx, l))
        basis.append(prep)
        lms.append(lm_new)
        return idx

    for g in sorted(gens, key=lambda p: keyf(p.lm(order))):
        prep = _prepare(g, keyf)
        push_poly(prep)

    while heap:
        deg, i, j, l = heappop(heap)
        treated.add((i, j))
        lmi, lmj = lms[i], lms[j]
        if mono_lcm(lmi, lmj) != l:
            continue
        # criterion 1: coprime leading monomials
        if mono_mul(lmi, lmj) == l:
            continue
        # criterion 2 (chain): a third element divides the lcm and both
        # side pairs were already treated
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if (
                mono_divides(lms[k], l)
                and (min(i, k), max(i, k)) in treated
                and (min(j, k), max(j, k)) in treated
            ):
                skip = True
                break
        if skip:
            continue
        si = mono_div(l, lmi)
        sj = mono_div(l, lmj)
        # S-polynomial of two monic polynomials: tails shifted and subtracted
        tail_i = [(keyf(mono_mul(e, si)), mono_mul(e, si), c) for _, e, c in basis[i][1:]]
        tail_i.sort(reverse=True, key=lambda t: t[0])
        spoly = _merge_sub(tail_i, 0, basis[j][1:], sj, ring.field.one, keyf)
        red = _reduce_prepared(spoly, lms, basis, keyf)
        if red:
            if binomial_input:
                assert len(red) <= 2, "binomial closure violated in Buchberger loop"
            push_poly(red)
            if not any(red[0][1]):
                break  # constant: unit ideal, stop early

    # minimalize: keep only leading monomials not divisible by another's
    order_idx = sorted(range(len(basis)), key=lambda i: keyf(lms[i]))
    kept = []
    for i in order_idx:
        if not any(mono_divides(lms[k], lms[i]) for k in kept):
            kept.append(i)
    min_lms = [lms[i] for i in kept]
    min_polys = [basis[i] for i in kept]

    # tail-reduce to the reduced basis (iterate to a fixpoint)
    changed = True
    while changed:
        changed = False
        for t in range(len(min_polys)):
            other_lms = min_lms[:t] + min_lms[t + 1 :]
            other_terms = min_polys[:t] + min_polys[t + 1 :]
            red = _reduce_prepared(min_polys[t], other_lms, other_terms, keyf)
            if red != min_polys[t]:
                lead = red[0]
                if lead[2] != ring.field.one:
                    red = [(k, e, c / lead[2]) for k, e, c in red]
                min_polys[t] = red
                changed = True

    pairs = sorted(zip(min_lms, min_polys), key=lambda t: keyf(t[0]))
    out = [
        Polynomial.from_dict(ring, {e: c for _, e, c in prep}) for _, prep in pairs
    ]
    gb = GroebnerBasis(ring, order, out)

    if binomial_input:
        assert gb.is_binomial, "reduced GB of a binomial ideal must be binomial"
    if checks.ENABLED:
        _verify_buchberger(gb)
    return gb


def _verify_buchberger(gb):
    polys = gb.polys
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            li = polys[i].lm(gb.order)
            lj = polys[j].lm(gb.order)
            l = mono_lcm(li, lj)
            s = polys[i].mul_term(mono_div(l, li), gb.ring.field.one) - polys[
                j
            ].mul_term(mono_div(l, lj), gb.ring.field.one)
            assert gb.contains(s), "Buchberger criterion failed on final basis"


def normal_form(f, gb):
    return gb.normal_form(f)
