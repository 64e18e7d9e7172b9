"""Split simple root systems in the basis of fundamental weights.

Everything is expressed in coordinates with respect to the fundamental
weights w_1, ..., w_r, so the weight lattice P is exactly Z^r and the simple
root a_i is row i of the Cartan matrix.  Conventions (node numbering, which
end of B/C/F/G is long) follow Bourbaki.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import prod

from .errors import BudgetExceeded, DomainError

TYPE_LABELS = ("A", "B", "C", "D", "E", "F", "G")

# Degrees of the basic invariants of the Weyl group.  Cross-checked against
# brute-force enumeration for every type of rank <= 4 in the test suite.
_EXCEPTIONAL_DEGREES = {
    ("E", 6): (2, 5, 6, 8, 9, 12),
    ("E", 7): (2, 6, 8, 10, 12, 14, 18),
    ("E", 8): (2, 8, 12, 14, 18, 20, 24, 30),
    ("F", 4): (2, 6, 8, 12),
    ("G", 2): (2, 6),
}

MAX_WEYL_ENUMERATION_RANK = 4


@dataclass(frozen=True)
class RootSystemData:
    type_label: str
    rank: int
    cartan_matrix: tuple
    simple_roots: tuple
    positive_roots: tuple
    all_roots: tuple
    degrees: tuple
    num_positive_roots: int
    weyl_order: int

    @property
    def name(self):
        return f"{self.type_label}{self.rank}"

    @property
    def degree_product(self):
        return prod(self.degrees)


def validate_type(type_label, rank):
    """Raise DomainError unless (type_label, rank) names a simple type."""
    if type_label not in TYPE_LABELS:
        raise DomainError(f"unknown type label {type_label!r}", type_label=type_label)
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise DomainError(f"rank must be an integer, got {rank!r}", rank=rank)
    minimum = {"A": 1, "B": 2, "C": 2, "D": 3}
    if type_label in minimum:
        if rank < minimum[type_label]:
            raise DomainError(
                f"type {type_label} requires rank >= {minimum[type_label]}, got {rank}",
                type_label=type_label,
                rank=rank,
            )
    elif type_label == "E":
        if rank not in (6, 7, 8):
            raise DomainError(f"type E requires rank in {{6,7,8}}, got {rank}", type_label="E", rank=rank)
    elif rank != {"F": 4, "G": 2}[type_label]:
        raise DomainError(
            f"type {type_label} exists only in rank {({'F': 4, 'G': 2})[type_label]}, got {rank}",
            type_label=type_label,
            rank=rank,
        )


def _gram_matrix(type_label, r):
    # Symmetric bilinear form on simple roots, scaled so every entry is an
    # integer and every Cartan entry 2(a_i,a_j)/(a_j,a_j) divides exactly.
    lengths = [2] * r
    edges = []
    if type_label == "A":
        edges = [(i, i + 1) for i in range(r - 1)]
    elif type_label == "B":
        lengths = [4] * (r - 1) + [2]
        edges = [(i, i + 1) for i in range(r - 1)]
    elif type_label == "C":
        lengths = [2] * (r - 1) + [4]
        edges = [(i, i + 1) for i in range(r - 1)]
    elif type_label == "D":
        edges = [(i, i + 1) for i in range(r - 2)] + [(r - 3, r - 1)]
    elif type_label == "E":
        # Bourbaki: 1-3-4-5-6(-7-8), with 2 attached to 4.
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, r - 1)]
    elif type_label == "F":
        lengths = [4, 4, 2, 2]
        edges = [(0, 1), (1, 2), (2, 3)]
    elif type_label == "G":
        lengths = [2, 6]
        edges = [(0, 1)]
    gram = [[0] * r for _ in range(r)]
    for i in range(r):
        gram[i][i] = lengths[i]
    for i, j in edges:
        gram[i][j] = gram[j][i] = -max(lengths[i], lengths[j]) // 2
    return gram


def cartan_matrix(type_label, rank):
    """Cartan matrix with entries <a_i, a_j^vee>, so row i is a_i in the w-basis."""
    validate_type(type_label, rank)
    gram = _gram_matrix(type_label, rank)
    rows = []
    for i in range(rank):
        row = []
        for j in range(rank):
            num = 2 * gram[i][j]
            if num % gram[j][j]:
                raise AssertionError("non-integral Cartan entry")
            row.append(num // gram[j][j])
        rows.append(tuple(row))
    return tuple(rows)


def weyl_degrees(type_label, rank):
    validate_type(type_label, rank)
    if type_label == "A":
        return tuple(range(2, rank + 2))
    if type_label in ("B", "C"):
        return tuple(range(2, 2 * rank + 1, 2))
    if type_label == "D":
        return tuple(sorted(list(range(2, 2 * rank - 1, 2)) + [rank]))
    return _EXCEPTIONAL_DEGREES[(type_label, rank)]


def reflect(v, i, cartan):
    """Simple reflection s_i(v) = v - v_i a_i in w-coordinates."""
    c = v[i]
    if c == 0:
        return tuple(v)
    row = cartan[i]
    return tuple(x - c * a for x, a in zip(v, row))


def _close_roots(cartan):
    r = len(cartan)
    seen = {}
    frontier = []
    for i in range(r):
        coeffs = tuple(1 if j == i else 0 for j in range(r))
        seen[cartan[i]] = coeffs
        frontier.append(cartan[i])
    while frontier:
        nxt = []
        for v in frontier:
            coeffs = seen[v]
            for i in range(r):
                w = reflect(v, i, cartan)
                if w not in seen:
                    c = list(coeffs)
                    c[i] -= v[i]
                    seen[w] = tuple(c)
                    nxt.append(w)
        frontier = nxt
    return seen


def simple_root_coefficients(rs, v):
    """Coefficients of a root v on the simple roots (None if v is not a root)."""
    return _root_coefficients(rs.type_label, rs.rank).get(tuple(v))


@lru_cache(maxsize=None)
def _root_coefficients(type_label, rank):
    return _close_roots(cartan_matrix(type_label, rank))


def _height_key(item):
    v, coeffs = item
    return (sum(coeffs), v)


@lru_cache(maxsize=None)
def build_root_system(type_label, rank):
    """Construct the root system of the given split simple type.

    Parameters
    ----------
    type_label : str
        One of ``"A"`` ... ``"G"``.
    rank : int
        Rank r; D needs r >= 3, B and C r >= 2, E r in {6, 7, 8}.

    Returns
    -------
    RootSystemData
        Roots are obtained by closing the simple roots under the simple
        reflections.  Positive roots are sorted by height, then
        lexicographically in w-coordinates.
    """
    validate_type(type_label, rank)
    cartan = cartan_matrix(type_label, rank)
    closure = _root_coefficients(type_label, rank)
    positive = []
    for v, coeffs in closure.items():
        if all(c >= 0 for c in coeffs):
            positive.append((v, coeffs))
        elif not all(c <= 0 for c in coeffs):
            raise AssertionError(f"root {v} has mixed-sign coefficients {coeffs}")
    positive.sort(key=_height_key)
    pos = tuple(v for v, _ in positive)
    neg = tuple(tuple(-x for x in v) for v in pos)
    degrees = weyl_degrees(type_label, rank)
    n_pos = len(pos)
    if 2 * n_pos != len(closure) or set(neg) | set(pos) != set(closure):
        raise AssertionError("root closure is not symmetric under negation")
    if sum(d - 1 for d in degrees) != n_pos:
        raise AssertionError(f"degree table inconsistent with N={n_pos} for {type_label}{rank}")
    return RootSystemData(
        type_label=type_label,
        rank=rank,
        cartan_matrix=cartan,
        simple_roots=cartan,
        positive_roots=pos,
        all_roots=pos + neg,
        degrees=degrees,
        num_positive_roots=n_pos,
        weyl_order=prod(degrees),
    )


def identity_matrix(r):
    return tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))


def mat_mul(a, b):
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def mat_vec(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def reflection_matrix(cartan, i):
    """Matrix of s_i acting on column vectors of w-coordinates."""
    r = len(cartan)
    return tuple(
        tuple((1 if k == j else 0) - (cartan[i][k] if j == i else 0) for j in range(r))
        for k in range(r)
    )


def weyl_group_elements(rs):
    """All elements of W as integer matrices acting on w-coordinates.

    Refuses ranks above 4; |W(F4)| = 1152 is the largest group admitted.
    """
    if rs.rank > MAX_WEYL_ENUMERATION_RANK:
        raise BudgetExceeded(
            f"Weyl enumeration refused for rank {rs.rank} > {MAX_WEYL_ENUMERATION_RANK}",
            rank=rs.rank,
            limit=MAX_WEYL_ENUMERATION_RANK,
        )
    return _weyl_elements(rs.type_label, rs.rank)


@lru_cache(maxsize=None)
def _weyl_elements(type_label, rank):
    cartan = cartan_matrix(type_label, rank)
    gens = [reflection_matrix(cartan, i) for i in range(rank)]
    ident = identity_matrix(rank)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                ws = mat_mul(s, w)
                if ws not in seen:
                    seen.add(ws)
                    nxt.append(ws)
        frontier = nxt
    return frozenset(seen)
