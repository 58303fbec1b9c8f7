"""Partial characters: lattices mapped into k* and their binomial ideals.

A ``PartialCharacter`` lives on a coordinate cell (a subset of the ring's
variables): its lattice sits in ZZ^cell and its values are stored on the HNF
basis rows, so equal characters have equal representations.  The functions
here realize the two-way correspondence with saturated binomial ideals and
the saturation/extension calculus that drives every decomposition step.
"""

from math import lcm

from . import checks
from .errors import MonomialInIdeal, RootNotInField
from .ideals import (
    Ideal,
    cell_product,
    eliminate,
    embed_from_subring,
    restrict_to_subring,
    saturate_monomial,
)
from .intlattice import Lattice, hnf_with_transform, kernel, transpose
from .scalars import factorint, scalar_key, unit_decompose


class PartialCharacter:
    """A homomorphism from a sublattice of ZZ^cell to k*."""

    __slots__ = ("cell", "lattice", "values", "field")

    def __init__(self, cell, lattice, values, field):
        self.cell = tuple(cell)
        self.lattice = lattice
        self.values = tuple(values)
        self.field = field
        assert lattice.ambient == len(self.cell)
        assert len(self.values) == lattice.rank

    @classmethod
    def trivial(cls, cell, field):
        return cls(cell, Lattice(len(cell)), (), field)

    @classmethod
    def from_generators(cls, cell, vectors, values, field, verify=True):
        """Character defined by values on arbitrary lattice generators.

        Re-expresses everything on the HNF basis; checks well-definedness via
        the integer relations among the generators.
        """
        vectors = [list(v) for v in vectors]
        if not vectors:
            return cls.trivial(cell, field)
        if verify:
            rel = kernel(transpose(vectors))
            for a in rel:
                acc = field.one
                for coef, val in zip(a, values):
                    if coef:
                        acc = acc * (val**coef)
                if acc != field.one:
                    raise ValueError("inconsistent character values on relations")
        lat = Lattice(len(cell), vectors)
        h, t = hnf_with_transform(vectors)
        # nonzero HNF rows h[i] = sum_j t[i][j] * vectors[j]
        new_vals = []
        basis_rows = []
        for i, row in enumerate(h):
            if not any(row):
                continue
            acc = field.one
            for coef, val in zip(t[i], values):
                if coef:
                    acc = acc * (val**coef)
            basis_rows.append(tuple(row))
            new_vals.append(acc)
        assert tuple(basis_rows) == lat.basis
        return cls(cell, lat, new_vals, field)

    def value(self, m):
        """rho(m) for m in the lattice (coordinates over the cell)."""
        coords = self.lattice.express(list(m))
        if coords is None:
            raise ValueError("vector not in the character's lattice")
        acc = self.field.one
        for c, v in zip(coords, self.values):
            if c:
                acc = acc * (v**c)
        return acc

    @property
    def rank(self):
        return self.lattice.rank

    def is_saturated(self):
        return self.lattice.is_saturated()

    def restricted(self, sublattice):
        """Restriction to a sublattice of the domain."""
        vals = [self.value(row) for row in sublattice.basis]
        return PartialCharacter(self.cell, sublattice, vals, self.field)

    def scaled(self, d):
        """Restriction to d * L, the rescaling used by quasi-power colons."""
        rows = [[d * x for x in row] for row in self.lattice.basis]
        return PartialCharacter.from_generators(
            self.cell, rows, [v**d for v in self.values], self.field, verify=False
        )

    def key(self):
        return (self.cell, self.lattice.basis, tuple(scalar_key(v) for v in self.values))

    def __eq__(self, other):
        return isinstance(other, PartialCharacter) and other.key() == self.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (
            f"PartialCharacter(cell={self.cell}, basis={list(map(list, self.lattice.basis))}, "
            f"values={list(self.values)})"
        )

    def serialize(self, names=None):
        from .scalars import render_scalar

        cell = list(self.cell) if names is None else [names[i] for i in self.cell]
        return {
            "cell": cell,
            "basis": [[str(x) for x in row] for row in self.lattice.basis],
            "values": [render_scalar(v) for v in self.values],
        }


# ---------------------------------------------------------------------------
# extensions along finite-index inclusions: diagonalize, then take roots


def extend_all(rho, sup):
    """All extensions of rho to the finite-index superlattice sup.

    Deterministic order: per invariant factor, roots are listed by increasing
    root-of-unity exponent; the product is enumerated lexicographically.
    """
    lat = rho.lattice
    if sup == lat:
        return [rho]
    assert sup.contains_lattice(lat)
    if lat.rank == 0:
        if sup.rank == 0:
            return [rho]
        raise ValueError("zero lattice has no finite-index proper superlattice")
    sup_rows, factors, u = lat.diagonalized_inclusion(sup)
    # value on factors[i] * sup_rows[i]: transform through u
    base_vals = []
    for i, f in enumerate(factors):
        acc = rho.field.one
        for coef, val in zip(u[i], rho.values):
            if coef:
                acc = acc * (val**coef)
        base_vals.append(acc)
    root_lists = []
    for f, c in zip(factors, base_vals):
        if f == 1:
            root_lists.append([c])
            continue
        roots = rho.field.dth_roots(c, f)
        expected = f
        p = rho.field.char
        if p:
            while expected % p == 0:
                expected //= p
        if len(roots) != expected:
            raise RootNotInField(
                f"field has only {len(roots)} of the {expected} required {f}-th roots"
            )
        root_lists.append(roots)
    out = []
    idx = [0] * len(root_lists)
    total = 1
    for rl in root_lists:
        total *= len(rl)
    for flat in range(total):
        v = flat
        choice = []
        for rl in reversed(root_lists):
            choice.append(rl[v % len(rl)])
            v //= len(rl)
        choice.reverse()
        out.append(
            PartialCharacter.from_generators(
                rho.cell, sup_rows, choice, rho.field, verify=False
            )
        )
    return out


def extend_unique(rho, sup):
    exts = extend_all(rho, sup)
    assert len(exts) == 1, "extension expected to be unique"
    return exts[0]


def p_saturation(rho):
    """The unique extension to Sat_p(L); in char 0 this is rho itself."""
    p = rho.field.char
    sat_p, _, _ = rho.lattice.p_saturations(p)
    if sat_p == rho.lattice:
        return rho
    return extend_unique(rho, sat_p)


def character_saturations(rho):
    """(rho_p, saturations): the p-part extension and the saturation fan.

    rho_p is the unique extension to Sat_p(L); the saturations are the g
    distinct extensions to Sat'_p(L) pushed uniquely up to Sat(L).
    """
    p = rho.field.char
    sat_p, sat_pp, g = rho.lattice.p_saturations(p)
    rho_p = rho if sat_p == rho.lattice else extend_unique(rho, sat_p)
    sat_full = rho.lattice.saturation()
    partials = extend_all(rho, sat_pp)
    assert len(partials) == g
    full = [
        e if e.lattice == sat_full else extend_unique(e, sat_full) for e in partials
    ]
    return rho_p, full


def is_prime_character(rho):
    return rho.is_saturated()


def laurent_primary_decomposition(rho):
    """Radical and primary data of the Laurent binomial ideal of rho.

    Returns a dict: 'radical' (character of √I(rho)), 'components' (characters
    of the primary components I(rho_j) on Sat'_p), 'associated_primes'
    (saturated characters rho'_j), and 'multiplicity' |Sat_p(L)/L|.
    """
    p = rho.field.char
    sat_p, sat_pp, g = rho.lattice.p_saturations(p)
    rho_p = rho if sat_p == rho.lattice else extend_unique(rho, sat_p)
    comps = extend_all(rho, sat_pp)
    sat_full = rho.lattice.saturation()
    primes = [
        e if e.lattice == sat_full else extend_unique(e, sat_full) for e in comps
    ]
    mult = 1
    for f in _inclusion_factors(rho.lattice, sat_p):
        mult *= f
    return {
        "radical": rho_p,
        "components": comps,
        "associated_primes": primes,
        "multiplicity": mult,
    }


def _inclusion_factors(lat, sup):
    if lat == sup or lat.rank == 0:
        return []
    _, factors, _ = lat.diagonalized_inclusion(sup)
    return factors


# ---------------------------------------------------------------------------
# characters <-> ideals


def ideal_from_character(ring, rho):
    """The contraction of the Laurent binomial ideal of rho to the polynomial ring.

    Generated by the basis binomials x^(m+) − rho(m)·x^(m−) and saturated
    with respect to the product of the cell variables, which realizes the
    full generating set over the whole lattice.
    """
    gens = []
    n = ring.nvars
    for row, val in zip(rho.lattice.basis, rho.values):
        plus = [0] * n
        minus = [0] * n
        for pos, x in zip(rho.cell, row):
            if x > 0:
                plus[pos] = x
            elif x < 0:
                minus[pos] = -x
        gens.append(ring.monomial(tuple(plus)) - ring.monomial(tuple(minus)) * val)
    base = Ideal(ring, gens)
    if not gens:
        return base
    out = saturate_monomial(base, cell_product(ring, rho.cell))
    if checks.ENABLED:
        back = character_from_cellular(out, rho.cell)
        assert back == rho, "character round trip failed"
    return out


def character_from_cellular(i, cell, field=None):
    """The unique rho whose lattice ideal is (I ∩ k[cell] : (∏ cell)^∞).

    Raises MonomialInIdeal when the cell ideal is the unit Laurent ideal.
    """
    ring = i.ring
    field = field or ring.field
    cell = tuple(sorted(cell))
    e = eliminate(i, cell)
    esub, sub = restrict_to_subring(e, cell)
    if esub.is_zero():
        return PartialCharacter.trivial(cell, field)
    esat = saturate_monomial(esub, cell_product(sub, range(sub.nvars)))
    if esat.is_unit():
        raise MonomialInIdeal("cell ideal contains a monomial in the cell variables")
    return _character_of_saturated(esat, cell, field)


def _character_of_saturated(esat, cell, field):
    """Extract the character of a proper, cell-saturated subring ideal."""
    vectors, values = [], []
    for g in esat.gb():
        assert len(g.terms) == 2, "saturated cell ideal must have binomial GB"
        (ea, ca), (eb, cb) = g.terms
        assert ca == esat.ring.field.one or ca == 1
        vectors.append(tuple(a - b for a, b in zip(ea, eb)))
        values.append(-(cb / ca))
    return PartialCharacter.from_generators(
        cell, vectors, values, field, verify=checks.ENABLED
    )


def character_prime_ideal(ring, rho):
    """M(cell) + I_+(rho): the prime/cellular ideal attached to a character."""
    base = ideal_from_character(ring, rho)
    outside = [v for v in range(ring.nvars) if v not in set(rho.cell)]
    gens = tuple(ring.var(v) for v in outside) + base.gens
    return Ideal(ring, gens)


def binomial_prime_components(p_ideal):
    """Primality test for binomial ideals.

    Returns (is_prime, cell, rho_or_None).  A binomial ideal is prime iff it
    splits as (variables outside the cell) + I_+(rho) with rho saturated.
    """
    ring = p_ideal.ring
    if p_ideal.is_unit():
        return (False, (), None)
    n = ring.nvars
    contained = [v for v in range(n) if p_ideal.contains(ring.var(v))]
    cell = tuple(v for v in range(n) if v not in set(contained))
    reduced = [g.substitute_zero(contained) for g in p_ideal.gens]
    reduced = [g for g in reduced if g.terms]
    if not cell:
        rebuilt = Ideal(ring, tuple(ring.var(v) for v in contained))
        ok = rebuilt == p_ideal
        return (ok, cell, PartialCharacter.trivial(cell, ring.field) if ok else None)
    resid_sub, sub = restrict_to_subring(Ideal(ring, reduced), cell)
    if resid_sub.is_zero():
        rho = PartialCharacter.trivial(cell, ring.field)
        rebuilt = Ideal(ring, tuple(ring.var(v) for v in contained))
        return (rebuilt == p_ideal, cell, rho)
    esat = saturate_monomial(resid_sub, cell_product(sub, range(sub.nvars)))
    if esat.is_unit():
        return (False, cell, None)
    if esat != resid_sub:
        return (False, cell, None)
    rho = _character_of_saturated(esat, cell, ring.field)
    if not rho.is_saturated():
        return (False, cell, rho)
    rebuilt = Ideal(
        ring,
        tuple(ring.var(v) for v in contained)
        + embed_from_subring(esat, ring, list(cell)).gens,
    )
    return (rebuilt == p_ideal, cell, rho)


# ---------------------------------------------------------------------------
# multiplicative relation lattices (used by the localization loop)


def relation_lattice(values, field):
    """{a in ZZ^r : prod values_i^(a_i) = 1} as a Lattice."""
    r = len(values)
    if r == 0:
        return Lattice(0)
    if field.char:
        m = field.units_order
        e = [field.dlog(v) for v in values]
        rows = kernel([e + [m]])
        return Lattice(r, [row[:r] for row in rows])
    decomps = [unit_decompose(v) for v in values]
    ebig = 1
    for _, o, _ in decomps:
        ebig = lcm(ebig, o)
    exps = [j * (ebig // o) for _, o, j in decomps]
    primes = sorted({p for q, _, _ in decomps for p in factorint(q.numerator)} |
                    {p for q, _, _ in decomps for p in factorint(q.denominator)})
    vrows = []
    for q, _, _ in decomps:
        fn = factorint(q.numerator)
        fd = factorint(q.denominator)
        vrows.append([fn.get(p, 0) - fd.get(p, 0) for p in primes])
    if primes:
        k1 = kernel(transpose(vrows))
    else:
        k1 = [[int(i == j) for j in range(r)] for i in range(r)]
    if not k1:
        return Lattice(r)
    ts = [sum(a * e for a, e in zip(row, exps)) % ebig for row in k1]
    crows = kernel([ts + [ebig]])
    rows = []
    for c in crows:
        rows.append([sum(c[j] * k1[j][i] for j in range(len(k1))) for i in range(r)])
    return Lattice(r, rows)


def agreement_lattice(sigma, rho):
    """{m in L_sigma ∩ L_rho : sigma(m) = rho(m)}: where the characters agree."""
    assert sigma.cell == rho.cell
    l0 = sigma.lattice.intersection(rho.lattice)
    if l0.rank == 0:
        return l0
    ratios = [sigma.value(row) / rho.value(row) for row in l0.basis]
    rel = relation_lattice(ratios, sigma.field)
    rows = []
    for a in rel.basis:
        rows.append(
            [
                sum(a[j] * l0.basis[j][i] for j in range(l0.rank))
                for i in range(l0.ambient)
            ]
        )
    return Lattice(l0.ambient, rows)
