"""Finite groups given by multiplication tables.

Elements are the indices 0..m-1.  The built-in constructors always put the
identity at index 0, but tables read from text may put it anywhere.
"""

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product

from .errors import DomainError


@dataclass(frozen=True)
class FiniteGroupTable:
    table: tuple
    name: str = ""
    subgroups: tuple = field(default=(), compare=False)
    identity: int = field(init=False, compare=False)
    inverse: tuple = field(init=False, compare=False)

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", table)
        m = len(table)
        if m == 0 or any(len(row) != m for row in table):
            raise DomainError("multiplication table must be a non-empty square")
        if any(not 0 <= x < m for row in table for x in row):
            raise DomainError("table entry out of range")
        ids = [e for e in range(m) if all(table[e][g] == g and table[g][e] == g for g in range(m))]
        if len(ids) != 1:
            raise DomainError("table has no two-sided identity")
        e = ids[0]
        inv = []
        for g in range(m):
            hs = [h for h in range(m) if table[g][h] == e]
            if len(hs) != 1 or table[hs[0]][g] != e:
                raise DomainError(f"element {g} has no two-sided inverse")
            inv.append(hs[0])
        for a, b, c in product(range(m), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise DomainError(f"associativity fails at ({a}, {b}, {c})")
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "inverse", tuple(inv))
        subs = []
        for sub_name, elems in self.subgroups:
            elems = tuple(sorted(elems))
            check_subgroup(self, elems)
            subs.append((sub_name, elems))
        object.__setattr__(self, "subgroups", tuple(subs))

    @property
    def order(self):
        return len(self.table)

    def mul(self, a, b):
        return self.table[a][b]

    def conj(self, g, x):
        """g x g^-1."""
        return self.table[self.table[g][x]][self.inverse[g]]

    def named_subgroup(self, name):
        for n, elems in self.subgroups:
            if n == name:
                return elems
        raise DomainError(f"group {self.name or '?'} has no subgroup named {name!r}")

    def __repr__(self):
        return f"FiniteGroupTable({self.name or '?'}, order={self.order})"


def check_subgroup(G, elems):
    s = set(elems)
    if len(s) != len(elems) or not s:
        raise DomainError("subgroup element list must be non-empty and duplicate free")
    if any(not 0 <= x < G.order for x in s):
        raise DomainError("subgroup element out of range")
    if G.identity not in s:
        raise DomainError("subgroup misses the identity")
    for a in s:
        if G.inverse[a] not in s:
            raise DomainError(f"subgroup not closed under inverses at {a}")
        for b in s:
            if G.table[a][b] not in s:
                raise DomainError(f"subgroup not closed at ({a}, {b})")


@lru_cache(maxsize=None)
def subgroup_table(G, elems):
    """Table of the subgroup whose i-th element is elems[i] (elems sorted)."""
    elems = tuple(elems)
    check_subgroup(G, elems)
    pos = {g: i for i, g in enumerate(elems)}
    table = tuple(tuple(pos[G.table[a][b]] for b in elems) for a in elems)
    return FiniteGroupTable(table, name=f"{G.name or 'G'}<{len(elems)}>")


def generated_subgroup(G, gens):
    elems = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.table[x][g]
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(elems))


def element_order(G, g):
    k, x = 1, g
    while x != G.identity:
        x = G.table[x][g]
        k += 1
    return k


def cyclic_subgroup_of_order(G, k):
    """The cyclic subgroup of order k generated by the least-index element of order k."""
    for g in range(G.order):
        if element_order(G, g) == k:
            return generated_subgroup(G, [g])
    raise DomainError(f"{G.name or 'group'} has no cyclic subgroup of order {k}")


def conjugate_subgroup(G, elems, g):
    """T^g = g^-1 T g as a sorted element tuple."""
    gi = G.inverse[g]
    return tuple(sorted(G.conj(gi, t) for t in elems))


# -- built-in groups ---------------------------------------------------------


def cyclic_group(m):
    if m < 1:
        raise DomainError(f"cyclic group order must be >= 1, got {m}")
    return FiniteGroupTable(tuple(tuple((a + b) % m for b in range(m)) for a in range(m)), name=f"C{m}")


def dihedral_group(n):
    """Symmetries of the n-gon, order 2n; element r^a s^b has index a + n*b."""
    if n < 2:
        raise DomainError(f"dihedral group needs n >= 2, got {n}")

    def mul(x, y):
        a, b = x % n, x // n
        c, d = y % n, y // n
        return (a + (c if b == 0 else -c)) % n + n * ((b + d) % 2)

    table = tuple(tuple(mul(x, y) for y in range(2 * n)) for x in range(2 * n))
    rotations = tuple(range(n))
    return FiniteGroupTable(table, name=f"D{n}", subgroups=((f"C{n}", rotations),))


def quaternion_group():
    # elements +-1, +-i, +-j, +-k as (sign, unit) with unit in 1,i,j,k
    units = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }  # fmt: skip
    elems = [(s, u) for u in range(4) for s in (1, -1)]
    index = {x: i for i, x in enumerate(elems)}
    table = []
    for s1, u1 in elems:
        row = []
        for s2, u2 in elems:
            s, u = units[(u1, u2)]
            row.append(index[(s1 * s2 * s, u)])
        table.append(tuple(row))
    return FiniteGroupTable(tuple(table), name="Q8")


def symmetric_group(n):
    if not 1 <= n <= 4:
        raise DomainError(f"built-in symmetric groups are S1..S4, got S{n}")
    perms = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    table = tuple(tuple(index[tuple(p[q[x]] for x in range(n))] for q in perms) for p in perms)
    return FiniteGroupTable(table, name=f"S{n}")


def direct_product(*groups):
    sizes = [G.order for G in groups]
    elems = list(product(*[range(s) for s in sizes]))
    index = {x: i for i, x in enumerate(elems)}
    table = tuple(
        tuple(index[tuple(G.table[a][b] for G, a, b in zip(groups, x, y))] for y in elems) for x in elems
    )
    return FiniteGroupTable(table, name="x".join(G.name for G in groups))


_NAME_RE = re.compile(r"^(C|D|S)(\d+)$")


def named_group(name):
    """Built-in group by name: Cm, Dn (order 2n), Q8, S1..S4, products like C2xC2."""
    if "x" in name:
        return direct_product(*[named_group(part) for part in name.split("x")])
    if name == "Q8":
        return quaternion_group()
    match = _NAME_RE.match(name)
    if not match:
        raise DomainError(f"unknown group name {name!r}")
    kind, k = match.group(1), int(match.group(2))
    if kind == "C":
        return cyclic_group(k)
    if kind == "D":
        return dihedral_group(k)
    return symmetric_group(k)


def named_subgroup_elements(G, name):
    """Resolve a subgroup name inside G: a registered name, 'C<k>', '1' or G's own name."""
    for n, elems in G.subgroups:
        if n == name:
            return elems
    if name == G.name:
        return tuple(range(G.order))
    if name in ("1", "C1"):
        return (G.identity,)
    match = re.match(r"^C(\d+)$", name)
    if match:
        return cyclic_subgroup_of_order(G, int(match.group(1)))
    raise DomainError(f"cannot resolve subgroup {name!r} of {G.name or 'group'}")


def parse_group_table(text, name=""):
    """Read 'm' on the first line followed by m rows of m element indices."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise DomainError("empty group table")
    try:
        m = int(lines[0])
        rows = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise DomainError(f"malformed group table: {exc}") from None
    if len(rows) != m:
        raise DomainError(f"expected {m} table rows, found {len(rows)}")
    return FiniteGroupTable(tuple(rows), name=name)


def format_group_table(G):
    width = len(str(G.order - 1))
    lines = [str(G.order)]
    lines += [" ".join(str(x).rjust(width) for x in row) for row in G.table]
    return "\n".join(lines) + "\n"
