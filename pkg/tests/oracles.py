"""Independent oracles used by the tests.

None of these share code with the package: determinantal divisors come from
sympy minors and coloring counts from plain itertools enumeration.
"""

import itertools
from math import gcd

import sympy


def determinantal_divisors(rows):
    """gcd of all k x k minors for k = 1..min(shape)."""
    M = sympy.Matrix(rows)
    r, c = M.shape
    out = []
    for k in range(1, min(r, c) + 1):
        g = 0
        for ri in itertools.combinations(range(r), k):
            for ci in itertools.combinations(range(c), k):
                g = gcd(g, int(M.extract(list(ri), list(ci)).det()))
        out.append(g)
    return out


def invariant_factors_from_minors(rows):
    """Smith diagonal from determinantal divisors: d_k = D_k / D_{k-1}."""
    divs = determinantal_divisors(rows)
    out, prev = [], 1
    for D in divs:
        if D == 0:
            out.append(0)
            prev = 0
            continue
        out.append(D // prev)
        prev = D
    return out


def count_kernel_naive(rows, ncols, m):
    """Number of x in (Z/m)^ncols with rows . x = 0 mod m, by itertools."""
    total = 0
    for x in itertools.product(range(m), repeat=ncols):
        if all(sum(a * b for a, b in zip(r, x)) % m == 0 for r in rows):
            total += 1
    return total


def count_fox_naive(d, m):
    """Fox colorings counted straight from the crossing rule on arcs."""
    n = len(d.arcs)
    triples = [d.crossing_arcs(c) for c in range(len(d.crossings))]
    return sum(
        1
        for f in itertools.product(range(m), repeat=n)
        if all((f[a] + f[b] - 2 * f[o]) % m == 0 for a, b, o in triples)
    )


def count_dehn_naive(d, m):
    """Dehn colorings counted straight from the quadrant rule."""
    quads = d.quadrants
    return sum(
        1
        for v in itertools.product(range(m), repeat=len(d.faces))
        if all((v[q[0]] + v[q[1]] - v[q[2]] - v[q[3]]) % m == 0 for q in quads)
    )
