"""Integer arithmetic in Sym^2(P) with P = Z^r in the fundamental-weight basis.

The Z-basis used throughout is {w_i w_i} together with {w_i w_j : i < j}.
A cross term w_i w_j collects the contributions of both orders, so the
square of v = sum v_i w_i has coefficient v_i^2 on w_i w_i and 2 v_i v_j on
w_i w_j.
"""

from dataclasses import dataclass, field
from math import gcd

from .errors import DomainError


@dataclass(frozen=True)
class SymSquareElement:
    rank: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), c in self.coeffs.items():
            if i > j:
                i, j = j, i
            if not (0 <= i < self.rank and 0 <= j < self.rank):
                raise DomainError(f"monomial index ({i},{j}) outside rank {self.rank}")
            clean[(i, j)] = clean.get((i, j), 0) + c
        object.__setattr__(self, "coeffs", {k: v for k, v in sorted(clean.items()) if v})

    def __add__(self, other):
        if other.rank != self.rank:
            raise DomainError("rank mismatch in Sym^2 addition")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return SymSquareElement(self.rank, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return SymSquareElement(self.rank, {k: c * v for k, v in self.coeffs.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return isinstance(other, SymSquareElement) and self.rank == other.rank and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.rank, tuple(self.coeffs.items())))

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, i, j):
        if i > j:
            i, j = j, i
        return self.coeffs.get((i, j), 0)

    def gram_matrix(self):
        """Integer symmetric matrix B with x^T B x = 2 q(x)."""
        r = self.rank
        m = [[0] * r for _ in range(r)]
        for (i, j), c in self.coeffs.items():
            if i == j:
                m[i][i] = 2 * c
            else:
                m[i][j] = m[j][i] = c
        return m

    def __repr__(self):
        terms = " + ".join(f"{c}*w{i + 1}w{j + 1}" for (i, j), c in self.coeffs.items())
        return f"SymSquareElement(rank={self.rank}, {terms or '0'})"


def square(v):
    """The symmetric square v*v of an integer vector."""
    r = len(v)
    coeffs = {}
    for i in range(r):
        if v[i]:
            coeffs[(i, i)] = v[i] * v[i]
            for j in range(i + 1, r):
                if v[j]:
                    coeffs[(i, j)] = 2 * v[i] * v[j]
    return SymSquareElement(r, coeffs)


def sum_of_squares(vectors, rank):
    total = {}
    for v in vectors:
        for k, c in square(v).coeffs.items():
            total[k] = total.get(k, 0) + c
    return SymSquareElement(rank, total)


def killing_element(rs):
    """Q = sum over all roots a of a*a; the restriction of the Killing form to the torus."""
    q = sum_of_squares(rs.all_roots, rs.rank)
    if q.is_zero():
        raise AssertionError("Killing element vanished")
    return q


def divisibility_index(q):
    """Largest e such that q is e times a lattice element (gcd of coefficients)."""
    if q.is_zero():
        raise DomainError("divisibility index of the zero element is undefined")
    e = 0
    for c in q.coeffs.values():
        e = gcd(e, c)
    return e


def reduce_and_order(q, modulus):
    """Order of the image of q in Sym^2(P)/modulus, namely modulus / gcd(modulus, e)."""
    if modulus < 1:
        raise DomainError(f"modulus must be >= 1, got {modulus}", modulus=modulus)
    if q.is_zero():
        return 1
    return modulus // gcd(modulus, divisibility_index(q))


def act(w, q):
    """Image of q under the linear map w on P (w acts on column vectors of w-coordinates).

    Substitutes w_k -> column k of the matrix and re-expands each monomial
    as a product of two linear forms.
    """
    r = q.rank
    if len(w) != r or any(len(row) != r for row in w):
        raise DomainError(f"matrix of size {len(w)} does not act on rank {r}")
    cols = [tuple(w[a][k] for a in range(r)) for k in range(r)]
    out = {}
    for (i, j), c in q.coeffs.items():
        u, v = cols[i], cols[j]
        for a in range(r):
            for b in range(a, r):
                t = u[a] * v[a] if a == b else u[a] * v[b] + u[b] * v[a]
                if t:
                    out[(a, b)] = out.get((a, b), 0) + c * t
    return SymSquareElement(r, out)


def weyl_invariance_check(q, weyl_elements):
    """True iff w.q == q for every w in the given set of matrices."""
    return all(act(w, q) == q for w in weyl_elements)
