"""Brute-force reference computations used by the tests, independent of the package."""

from itertools import product
from math import gcd


def count_sl(n, p):
    """Number of n x n matrices over F_p with determinant 1, by enumeration."""
    count = 0
    for entries in product(range(p), repeat=n * n):
        rows = [entries[i * n:(i + 1) * n] for i in range(n)]
        if _det(rows) % p == 1 % p:
            count += 1
    return count


def _det(m):
    if len(m) == 1:
        return m[0][0]
    total = 0
    for j, a in enumerate(m[0]):
        if a:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * a * _det(minor)
    return total


def determinantal_invariant_factors(rows, ncols):
    """Invariant factors from gcds of k x k minors (dense, tiny matrices only)."""
    from itertools import combinations

    dense = [[r.get(c, 0) for c in range(ncols)] for r in rows]
    out, prev = [], 1
    for k in range(1, min(len(dense), ncols) + 1):
        g = 0
        for rs in combinations(range(len(dense)), k):
            for cs in combinations(range(ncols), k):
                g = gcd(g, _det([[dense[i][j] for j in cs] for i in rs]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out
