"""Radical, cellular, associated-prime, hull, and primary decomposition.

The cell scan underlying the radical and minimal-prime computations works
per coordinate cell Z: substitute the off-cell variables by zero, saturate
inside k[Z], and read off the partial character.  Decomposition proper runs
the witness/standard-monomial machinery on cellular pieces, colons embedded
primes away through quasi-power quotients, and certifies every output
(exact intersection, primary test) before returning it.
"""

from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from math import lcm

from . import checks
from .errors import BinomialsError, EscalationLimit
from .characters import (
    PartialCharacter,
    agreement_lattice,
    character_from_cellular,
    character_prime_ideal,
    character_saturations,
    ideal_from_character,
    p_saturation,
    _character_of_saturated,
)
from .ideals import (
    Ideal,
    cell_product,
    cellular_localize,
    colon_monomial,
    colon_poly,
    colon_quasipower_ratio,
    eliminate,
    intersect_all,
    quasi_power,
    restrict_to_subring,
    saturate_monomial,
    saturation_exponent,
    standard_monomials,
    nonzerodivisor_variables,
    radical_membership,
    _ladder,
)
from .intlattice import Lattice
from .poly import Polynomial
from .scalars import scalar_order


def _pmap(fn, jobs, parallel):
    """Deterministic map, optionally over worker processes.

    Jobs and results must be picklable; result order follows job order, so
    parallel and serial runs agree.
    """
    if parallel and len(jobs) > 1:
        with ProcessPoolExecutor() as pool:
            return list(pool.map(fn, jobs))
    return [fn(j) for j in jobs]


class CellularComponent:
    __slots__ = ("ideal", "cell", "exponents")

    def __init__(self, ideal, cell, exponents):
        self.ideal = ideal
        self.cell = tuple(cell)
        self.exponents = tuple(exponents)

    def __repr__(self):
        return f"CellularComponent(cell={self.cell}, ideal={self.ideal!r})"


class PrimaryComponent:
    __slots__ = ("ideal", "prime", "char", "cell", "embedded", "multiplicity")

    def __init__(self, ideal, prime, char, cell, embedded=False, multiplicity=None):
        self.ideal = ideal
        self.prime = prime
        self.char = char
        self.cell = tuple(cell)
        self.embedded = embedded
        self.multiplicity = multiplicity

    def __repr__(self):
        flag = "embedded" if self.embedded else "minimal"
        return f"PrimaryComponent({flag}, cell={self.cell}, ideal={self.ideal!r})"


class PrimaryTestReport:
    """Outcome of the primary test: decision, radical, and NO-witnesses."""

    __slots__ = ("primary", "radical", "sigma", "witnesses", "reason")

    def __init__(self, primary, radical, sigma, witnesses=None, reason=""):
        self.primary = primary
        self.radical = radical
        self.sigma = sigma
        self.witnesses = witnesses
        self.reason = reason

    def __bool__(self):
        return self.primary


# ---------------------------------------------------------------------------
# the cell scan


def _cell_restrict(i, cell):
    """Substitute off-cell variables by zero; ideal in the subring on cell.

    Returns (ideal, subring) or None when a generator collapses to a nonzero
    constant (so I + M(cell-complement) is the unit ideal).
    """
    ring = i.ring
    off = [v for v in range(ring.nvars) if v not in set(cell)]
    gens = []
    for g in i.gens:
        h = g.substitute_zero(off)
        if not h.terms:
            continue
        if not any(h.terms[0][0]) and len(h.terms) == 1:
            return None
        gens.append(h)
    return restrict_to_subring(Ideal(ring, gens), cell)


def cell_scan(i):
    """All proper cells of I with their saturated cell ideals and characters.

    Yields (cell, rho, saturated subring ideal, subring), largest cells
    first.  The proper cells form a meet semilattice, so a cell whose
    intersection with a known proper cell is known empty is skipped without
    a Groebner run.
    """
    ring = i.ring
    n = ring.nvars
    field = ring.field
    unit_cells = set()
    proper_cells = []
    out = []
    for size in range(n, -1, -1):
        for cell in combinations(range(n), size):
            cs = frozenset(cell)
            pruned = False
            for z2 in proper_cells:
                if (cs & z2) in unit_cells:
                    pruned = True
                    break
            if pruned:
                unit_cells.add(cs)
                continue
            restricted = _cell_restrict(i, cell)
            if restricted is None:
                unit_cells.add(cs)
                continue
            jsub, sub = restricted
            if jsub.is_zero():
                rho = PartialCharacter.trivial(cell, field)
                proper_cells.append(cs)
                out.append((cell, rho, jsub, sub))
                continue
            sat = saturate_monomial(jsub, cell_product(sub, range(sub.nvars)))
            if sat.is_unit():
                unit_cells.add(cs)
                continue
            rho = _character_of_saturated(sat, cell, field)
            proper_cells.append(cs)
            out.append((cell, rho, sat, sub))
    return out


# ---------------------------------------------------------------------------
# radical and minimal primes


def radical(i):
    """√I: intersect, over all proper cells, the cell variables plus the
    p-saturated cell lattice ideal (2^n cells instead of the factorial
    variable recursion; the radical of a binomial ideal stays binomial)."""
    ring = i.ring
    if i.is_zero() or i.is_unit():
        return i.canonical()
    pieces = []
    for cell, rho, _, _ in cell_scan(i):
        rho_p = p_saturation(rho)
        pieces.append(character_prime_ideal(ring, rho_p))
    out = intersect_all(pieces, ring)
    if all(len(g.terms) <= 2 for g in i.gens):
        assert out.is_binomial(), "radical of a binomial ideal must be binomial"
    if checks.ENABLED:
        assert out.contains(i)
    return out


def minimal_prime_entries(i):
    """Irredundant minimal primes as (cell, character, ideal) triples."""
    ring = i.ring
    if i.is_unit():
        return []
    if i.is_zero():
        full = tuple(range(ring.nvars))
        return [(full, PartialCharacter.trivial(full, ring.field), i.canonical())]
    entries = []
    for cell, rho, _, _ in cell_scan(i):
        rho_p = p_saturation(rho)
        _, sats = character_saturations(rho_p)
        for s in sats:
            entries.append((cell, s))
    seen = {}
    for cell, s in entries:
        p_ideal = character_prime_ideal(ring, s)
        seen.setdefault(p_ideal.key(), (cell, s, p_ideal))
    items = [seen[k] for k in sorted(seen, key=_key_sort)]
    keep = []
    for idx, (cell, s, p_ideal) in enumerate(items):
        redundant = False
        for jdx, (c2, s2, q_ideal) in enumerate(items):
            if idx != jdx and p_ideal.contains(q_ideal) and p_ideal != q_ideal:
                redundant = True
                break
        if not redundant:
            keep.append((cell, s, p_ideal))
    keep.sort(key=lambda t: _char_sort_key(t[1]))
    return keep


def minimal_primes(i):
    """Irredundant binomial primes intersecting to √I (cell scan form)."""
    return [p for _, _, p in minimal_prime_entries(i)]


def _key_sort(k):
    return repr(k)


def _char_sort_key(ch):
    return (-len(ch.cell), ch.cell, ch.lattice.basis, tuple(repr(v) for v in ch.values))


# ---------------------------------------------------------------------------
# cellular decomposition


def is_cellular(i):
    """(cellular?, cell).  Cellular: cell variables are nonzerodivisors, the
    others nilpotent, and I is saturated with respect to the cell product."""
    if i.is_unit() or i.is_zero():
        return (not i.is_unit(), tuple(range(i.ring.nvars)))
    cell = nonzerodivisor_variables(i)
    off = [v for v in range(i.ring.nvars) if v not in set(cell)]
    for v in off:
        if not radical_membership(i, i.ring.var(v)):
            return (False, cell)
    return (True, cell)


def _localize_cell_job(job):
    ideal, cell, exps = job
    return cellular_localize(ideal, cell, exps)


def cellular_decomposition(i, max_escalation=20, parallel=False):
    """Cellular components with verified exact intersection.

    Starting exponents are the per-variable saturation exponents; all are
    doubled until the intersection identity holds (no a-priori certificate
    exists, so the identity is checked each round).  Cells are independent
    and may be localized in worker processes.
    """
    ring = i.ring
    if i.is_unit():
        return []
    if i.is_zero():
        return [CellularComponent(i.canonical(), tuple(range(ring.nvars)), (1,) * ring.nvars)]
    proper = [cell for cell, _, _, _ in cell_scan(i)]
    exps = []
    for v in range(ring.nvars):
        exps.append(max(saturation_exponent(i, ring.var(v)), 1))
    for _ in range(max_escalation):
        comps = []
        localized = _pmap(
            _localize_cell_job, [(i, cell, exps) for cell in proper], parallel
        )
        for cell, j in zip(proper, localized):
            if not j.is_unit():
                comps.append(CellularComponent(j, cell, tuple(exps)))
        kept = []
        for a in comps:
            minimal = True
            for b in comps:
                if a is not b and a.ideal.contains(b.ideal) and a.ideal != b.ideal:
                    minimal = False
                    break
            if minimal:
                kept.append(a)
        total = intersect_all([c.ideal for c in kept], ring)
        if total == i:
            kept = _drop_redundant_cells(kept, i)
            if checks.ENABLED:
                cells = [c.cell for c in kept]
                assert len(set(cells)) == len(cells)
            return kept
        exps = [2 * e for e in exps]
    raise EscalationLimit("cellular decomposition exponents exceeded escalation bound")


def _drop_redundant_cells(kept, i):
    """Delete intersection-redundant components, smallest cells first."""
    kept = sorted(kept, key=lambda c: (len(c.cell), c.cell))
    changed = True
    while changed and len(kept) > 1:
        changed = False
        for idx in range(len(kept)):
            others = [c.ideal for j, c in enumerate(kept) if j != idx]
            if intersect_all(others, i.ring) == i:
                kept.pop(idx)
                changed = True
                break
    kept.sort(key=lambda c: (-len(c.cell), c.cell))
    return kept


# ---------------------------------------------------------------------------
# witness machinery on a cellular ideal


class _ColonCache:
    """(I : m) along the divisibility tree of standard monomials."""

    def __init__(self, ideal):
        self.ideal = ideal
        self.cache = {(0,) * ideal.ring.nvars: ideal}

    def get(self, exp):
        exp = tuple(exp)
        got = self.cache.get(exp)
        if got is None:
            v = next(i for i, x in enumerate(exp) if x)
            parent = tuple(x - int(i == v) for i, x in enumerate(exp))
            base = self.get(parent)
            got = colon_monomial(base, self.ideal.ring.var(v))
            self.cache[exp] = got
        return got


def primary_test(i, cell=None, colons=None):
    """Decide primariness of a cellular ideal; the radical comes for free.

    Returns a PrimaryTestReport.  In the NO case two distinct associated
    primes are reported as witnesses.
    """
    ring = i.ring
    if cell is None:
        _, cell = is_cellular(i)
    cell = tuple(sorted(cell))
    off = [v for v in range(ring.nvars) if v not in set(cell)]
    sigma = p_saturation(character_from_cellular(i, cell))
    rad = character_prime_ideal(ring, sigma)
    if not sigma.is_saturated():
        _, sats = character_saturations(sigma)
        w1 = character_prime_ideal(ring, sats[0])
        w2 = character_prime_ideal(ring, sats[1])
        return PrimaryTestReport(
            False, rad, sigma, (w1, w2), "radical is not prime"
        )
    _, maximal = standard_monomials(i, off)
    colons = colons or _ColonCache(i)
    sigma_ideal = ideal_from_character(ring, sigma)
    for m in maximal:
        if not any(m):
            continue
        im = colons.get(m)
        em = eliminate(im, cell)
        if all(sigma_ideal.contains(g) for g in em.gens):
            continue
        rho = p_saturation(character_from_cellular(im, cell))
        _, sats = character_saturations(rho)
        w2 = character_prime_ideal(ring, sats[0])
        return PrimaryTestReport(
            False,
            rad,
            sigma,
            (rad, w2),
            f"witness monomial exhibits a second associated prime",
        )
    return PrimaryTestReport(True, rad, sigma)


def is_primary(i, cell=None):
    """Primariness decision for any binomial ideal.

    Cellular input runs the witness test directly.  A primary ideal is necessarily
    cellular (its single associated prime fixes the cell), so non-cellular
    input is decided NO, with two associated primes of the certified primary
    decomposition as witnesses.
    """
    if cell is not None:
        return primary_test(i, cell)
    cellular_ok, inferred = is_cellular(i)
    if cellular_ok:
        return primary_test(i, inferred)
    comps = primary_decomposition(i)
    rad = radical(i)
    witnesses = (comps[0].prime, comps[1].prime) if len(comps) >= 2 else None
    return PrimaryTestReport(False, rad, None, witnesses, "ideal is not cellular")


def associated_prime_characters(i, cell=None, colons=None):
    """Saturated characters of all associated primes of a cellular ideal,
    one witness colon per standard monomial, duplicate-free and ordered."""
    ring = i.ring
    if cell is None:
        _, cell = is_cellular(i)
    cell = tuple(sorted(cell))
    off = [v for v in range(ring.nvars) if v not in set(cell)]
    stand, _ = standard_monomials(i, off)
    colons = colons or _ColonCache(i)
    taus = {}
    for m in stand:
        im = colons.get(m)
        tau = character_from_cellular(im, cell)
        taus.setdefault(tau.key(), tau)
    primes = {}
    for tau in taus.values():
        _, sats = character_saturations(tau)
        for s in sats:
            primes.setdefault(s.key(), s)
    out = sorted(primes.values(), key=_char_sort_key)
    return out


def associated_primes(i, cell=None):
    """The associated primes of a cellular ideal, as ideals."""
    ring = i.ring
    return [character_prime_ideal(ring, s) for s in associated_prime_characters(i, cell)]


# ---------------------------------------------------------------------------
# hull / localization at minimal primes (both colon cases)


def _p_part(d, p):
    if not p:
        return 1
    q = 1
    while d % p == 0:
        d //= p
        q *= p
    return q


def _binomial_from_vector(ring, cell, m, value):
    n = ring.nvars
    plus = [0] * n
    minus = [0] * n
    for pos, x in zip(cell, m):
        if x > 0:
            plus[pos] = x
        elif x < 0:
            minus[pos] = -x
    return ring.monomial(tuple(plus)) - ring.monomial(tuple(minus)) * value


def localize(i, j, cell=None, max_escalation=20):
    """I_(J): intersection of the primary components of I contained in a
    minimal prime of J (both cellular with respect to the same cell).

    The Noetherian loop colons away associated primes outside the minimal
    primes of J: by a quasi-power-ratio quotient when the disagreement is of
    finite index (Case 1) and by a plain quasi-power quotient otherwise
    (Case 2), escalating d until the quotient is certifiably binomial.
    """
    ring = i.ring
    if cell is None:
        _, cell = is_cellular(i)
    cell = tuple(sorted(cell))
    sigma = p_saturation(character_from_cellular(j, cell))
    _, min_sats = character_saturations(sigma)
    min_primes = [character_prime_ideal(ring, s) for s in min_sats]
    cur = i.canonical()
    guard = 0
    while True:
        guard += 1
        if guard > 200:
            raise EscalationLimit("localization loop failed to terminate")
        if cur.is_unit():
            return cur
        ass = associated_prime_characters(cur, cell)
        embedded = []
        for s in ass:
            p_ideal = character_prime_ideal(ring, s)
            if not any(q.contains(p_ideal) for q in min_primes):
                embedded.append((s, p_ideal))
        if not embedded:
            return cur
        rho, p_ideal = embedded[0]
        lat = agreement_lattice(sigma, rho)
        if lat.rank == rho.lattice.rank:
            cur = _colon_case_finite(cur, sigma, rho, cell, max_escalation)
        else:
            cur = _colon_case_infinite(cur, rho, lat, cell, max_escalation)


def _colon_case_finite(cur, sigma, rho, cell, max_escalation):
    """Finite-index case: some m in both lattices has sigma(m) != rho(m)."""
    ring = cur.ring
    l0 = sigma.lattice.intersection(rho.lattice)
    m = None
    for row in l0.basis:
        if sigma.value(row) != rho.value(row):
            m = row
            break
    if m is None:
        raise BinomialsError("agreement lattice computation is inconsistent")
    sv = sigma.value(m)
    b = _binomial_from_vector(ring, cell, m, sv)
    ratio = rho.value(m) / sv
    o = 1
    acc = ratio
    while acc != ring.field.one:
        acc = acc * ratio
        o += 1
        if o > 10_000:
            raise EscalationLimit("root of unity order out of range")
    p = ring.field.char
    for k in range(1, max_escalation + 1):
        d = o * _ladder(k)
        q = _p_part(d, p)
        out = colon_quasipower_ratio(cur, b, d, q, strict=False)
        if not out.is_binomial():
            continue
        if out != cur:
            return out
    raise EscalationLimit("finite-index colon failed to progress")


def _colon_case_infinite(cur, rho, lat, cell, max_escalation):
    """Infinite-index case: colon by quasi_power(b, d) for m of infinite
    order modulo the agreement lattice."""
    ring = cur.ring
    sat = lat.saturation() if lat.rank else Lattice(len(cell))
    m = None
    for row in rho.lattice.basis:
        if sat.rank == 0 or list(row) not in sat:
            m = row
            break
    if m is None:
        raise BinomialsError("no infinite-order direction found")
    b = _binomial_from_vector(ring, cell, m, rho.value(m))
    for k in range(1, max_escalation + 1):
        d = _ladder(k)
        bd = quasi_power(b, d)
        out = colon_poly(cur, bd)
        if not out.is_binomial():
            continue
        if colon_poly(out, bd) != out:
            continue
        if out != cur:
            return out
    raise EscalationLimit("quasi-power colon failed to progress")


def hull(i, cell=None, max_escalation=20):
    """Hull(I) = I_(√I): the intersection of minimal primary components.

    For cellular I this is the Noetherian colon loop; for general
    binomial I each minimal prime is localized inside the cellular component
    of its own cell and the pieces are intersected.  Binomiality of the
    non-cellular hull is checked, not assumed (an open question in general).
    """
    if cell is not None:
        return localize(i, i, cell=cell, max_escalation=max_escalation)
    cellular_ok, inferred = is_cellular(i)
    if cellular_ok:
        return localize(i, i, cell=inferred, max_escalation=max_escalation)
    comps = cellular_decomposition(i, max_escalation)
    by_cell = {c.cell: c for c in comps}
    pieces = []
    for pcell, s, p_ideal in minimal_prime_entries(i):
        comp = by_cell.get(tuple(pcell))
        if comp is None:
            continue
        pieces.append(localize(comp.ideal, p_ideal, comp.cell, max_escalation))
    return intersect_all(pieces, i.ring)


# ---------------------------------------------------------------------------
# primary decomposition


def _frobenius_power(p_ideal, q):
    ring = p_ideal.ring
    gens = []
    for g in p_ideal.gens:
        terms = {tuple(q * x for x in e): c**q for e, c in g.terms}
        gens.append(Polynomial.from_dict(ring, terms))
    return Ideal(ring, gens)


def _char0_component_job(job):
    j, cell, s, max_escalation = job
    ring = j.ring
    k_s = ideal_from_character(ring, s)
    r = Ideal(ring, j.gens + k_s.gens)
    r = saturate_monomial(r, cell_product(ring, cell))
    return localize(r, r, cell, max_escalation)


def _charp_component_job(job):
    j, cell, s, q, max_escalation = job
    ring = j.ring
    pid = character_prime_ideal(ring, s)
    r = Ideal(ring, j.gens + _frobenius_power(pid, q).gens)
    r = saturate_monomial(r, cell_product(ring, cell))
    return localize(r, r, cell, max_escalation)


def _cellular_primary_components(comp, max_escalation=20, parallel=False):
    """Primary components of one cellular piece as (character, ideal) pairs.

    Associated primes are processed independently (optionally in worker
    processes); the Frobenius exponent in char p escalates until the
    intersection identity holds.
    """
    j = comp.ideal
    ring = j.ring
    cell = comp.cell
    colons = _ColonCache(j)
    ass = associated_prime_characters(j, cell, colons)
    p = ring.field.char
    if p == 0:
        hulls = _pmap(
            _char0_component_job,
            [(j, cell, s, max_escalation) for s in ass],
            parallel,
        )
        return list(zip(ass, hulls))
    for e in range(1, max_escalation + 1):
        q = p**e
        hulls = _pmap(
            _charp_component_job,
            [(j, cell, s, q, max_escalation) for s in ass],
            parallel,
        )
        out = list(zip(ass, hulls))
        if intersect_all([qq for _, qq in out], ring) == j:
            return out
    raise EscalationLimit("Frobenius exponent escalation exceeded bound")


def primary_decomposition(i, max_escalation=20, certify=True, parallel=False):
    """Minimal binomial primary decomposition (cellular pass, then hulls).

    Every returned component passes the primary test; the intersection is
    re-verified to equal the input exactly; redundant components are deleted.
    """
    ring = i.ring
    if i.is_unit():
        return []
    cellular_ok, cell = is_cellular(i)
    if cellular_ok:
        cells = [CellularComponent(i.canonical(), cell, (1,) * ring.nvars)]
    else:
        cells = cellular_decomposition(i, max_escalation, parallel)
    raw = []
    for comp in cells:
        for s, q_s in _cellular_primary_components(comp, max_escalation, parallel):
            raw.append(PrimaryComponent(q_s, character_prime_ideal(ring, s), s, comp.cell))
    # deduplicate primes across cells (distinct cells have disjoint
    # associated primes, but non-associated extras can recur)
    by_prime = {}
    for pc in raw:
        key = pc.prime.key()
        if key in by_prime:
            prev = by_prime[key]
            if pc.ideal.contains(prev.ideal):
                continue
            if prev.ideal.contains(pc.ideal):
                by_prime[key] = pc
                continue
            merged = intersect_all([prev.ideal, pc.ideal], ring)
            by_prime[key] = PrimaryComponent(merged, prev.prime, prev.char, prev.cell)
        else:
            by_prime[key] = pc
    comps = sorted(by_prime.values(), key=lambda pc: _char_sort_key(pc.char))
    # minimal/embedded flags
    for pc in comps:
        pc.embedded = any(
            other is not pc and pc.prime.contains(other.prime) and pc.prime != other.prime
            for other in comps
        )
    # remove redundant components (candidates: embedded ones only)
    comps = _remove_redundant(comps, i)
    if certify:
        total = intersect_all([pc.ideal for pc in comps], ring)
        if total != i:
            raise BinomialsError("primary decomposition failed the intersection check")
        for pc in comps:
            report = primary_test(pc.ideal, pc.cell)
            if not report.primary:
                raise BinomialsError("component failed the primary certificate")
            if report.radical != pc.prime:
                raise BinomialsError("component radical differs from its prime")
    return comps


def _remove_redundant(comps, i):
    changed = True
    comps = list(comps)
    while changed:
        changed = False
        for idx, pc in enumerate(comps):
            if not pc.embedded:
                continue
            others = [c.ideal for j, c in enumerate(comps) if j != idx]
            if not others:
                continue
            inter = intersect_all(others, i.ring)
            if pc.ideal.contains(inter):
                comps.pop(idx)
                changed = True
                break
    return comps


# ---------------------------------------------------------------------------
# circuits, faces, unmixed parts


def circuit_ideal(ring, rho):
    """C(rho): binomials of the circuits of the (saturated) lattice."""
    gens = []
    for c in rho.lattice.circuits():
        gens.append(_binomial_from_vector(ring, rho.cell, c, rho.value(c)))
    return Ideal(ring, gens)


def is_face(p_ideal, cell):
    """Z is a face of the toric prime P iff the cell ideal P_Z is proper."""
    restricted = _cell_restrict(p_ideal, tuple(sorted(cell)))
    if restricted is None:
        return False
    jsub, sub = restricted
    if jsub.is_zero():
        return True
    sat = saturate_monomial(jsub, cell_product(sub, range(sub.nvars)))
    return not sat.is_unit()


def unmixed_decomposition(i, cell=None, max_escalation=20):
    """Unmixed pieces (char 0 only): I = ∩_m Hull(I + ((I:m) ∩ k[Z]))."""
    ring = i.ring
    if ring.field.char:
        raise BinomialsError("unmixed decomposition is implemented for char 0 only")
    if cell is None:
        _, cell = is_cellular(i)
    cell = tuple(sorted(cell))
    off = [v for v in range(ring.nvars) if v not in set(cell)]
    stand, _ = standard_monomials(i, off)
    colons = _ColonCache(i)
    pieces = {}
    for m in stand:
        im = colons.get(m)
        km = eliminate(im, cell)
        r = Ideal(ring, i.gens + km.gens)
        r = saturate_monomial(r, cell_product(ring, cell)) if cell else r
        h = localize(r, r, cell, max_escalation)
        pieces.setdefault(h.key(), h)
    out = sorted(pieces.values(), key=lambda x: repr(x.key()))
    total = intersect_all(out, ring)
    if total != i:
        raise BinomialsError("unmixed decomposition failed the intersection check")
    return out


def effective_field(ring, *ideal_groups):
    """Smallest declared field containing every coefficient seen."""
    field = ring.field
    if field.char:
        return field
    n = field.order
    for group in ideal_groups:
        for ideal in group:
            for g in ideal.gens:
                for _, c in g.terms:
                    n = lcm(n, scalar_order(c))
    from .scalars import CycloField

    return CycloField(n)
