"""Brute-force variety oracle over F_5 and F_25 for two-variable binomials.

Independent of the decomposition code under test: field arithmetic is raw
integer pairs (a + b*t with t^2 = 2 over F_5), and varieties are full point
scans using precomputed monomial value tables.
"""

from itertools import combinations

P = 5

# F_25 elements are pairs (a, b) = a + b*t with t^2 = 2 (2 is a non-residue
# mod 5, so t^2 - 2 is irreducible)
F25 = [(a, b) for a in range(P) for b in range(P)]


def f25_mul(x, y):
    a, b = x
    c, d = y
    return ((a * c + 2 * b * d) % P, (a * d + b * c) % P)


def f25_pow(x, e):
    out = (1, 0)
    base = x
    while e:
        if e & 1:
            out = f25_mul(out, base)
        base = f25_mul(base, base)
        e >>= 1
    return out


EXPONENTS = [(i, j) for i in range(3) for j in range(3)]


def _tables(points):
    """tables[(i,j)][point_index] = value of x^i y^j at the point."""
    out = {}
    for e in EXPONENTS:
        col = []
        for (x, y) in points:
            col.append(f25_mul(f25_pow(x, e[0]), f25_pow(y, e[1])))
        out[e] = col
    return out


POINTS_25 = [((a, b), (c, d)) for (a, b) in F25 for (c, d) in F25]
POINTS_5 = [(x, y) for (x, y) in POINTS_25
            if x[1] == 0 and y[1] == 0]
TAB_25 = _tables(POINTS_25)
IDX_5 = [i for i, (x, y) in enumerate(POINTS_25) if x[1] == 0 and y[1] == 0]


def _mono_value(e, point_idx):
    col = TAB_25.get(e)
    if col is not None:
        return col[point_idx]
    x, y = POINTS_25[point_idx]
    return f25_mul(f25_pow(x, e[0]), f25_pow(y, e[1]))


def eval_binomial(gen, point_idx):
    """gen = (e1, c1, e2, c2) with integer coefficients mod 5 (e2 may be None)."""
    e1, c1, e2, c2 = gen
    v = f25_mul((c1 % P, 0), _mono_value(e1, point_idx))
    if e2 is not None:
        w = f25_mul((c2 % P, 0), _mono_value(e2, point_idx))
        v = ((v[0] + w[0]) % P, (v[1] + w[1]) % P)
    return v


def variety(gens, point_indices):
    """Indices (into POINTS_25) where every generator vanishes."""
    out = []
    for i in point_indices:
        if all(eval_binomial(g, i) == (0, 0) for g in gens):
            out.append(i)
    return out


def all_generators():
    """All candidate generators: monomials and monic-normalized binomials."""
    gens = []
    for e in EXPONENTS:
        gens.append((e, 1, None, 0))
    for e1, e2 in combinations(EXPONENTS, 2):
        for c in range(1, P):
            gens.append((e1, 1, e2, -c))
    return gens


def all_ideal_generating_sets():
    gens = all_generators()
    sets = [(g,) for g in gens]
    sets.extend(combinations(gens, 2))
    return sets
