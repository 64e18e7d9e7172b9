"""Cohomology of small finite groups with trivial coefficients Z or Z/n.

Cochains are normalized inhomogeneous cochains stored as full value tables
on G^k (index = base-|G| number with g_1 most significant).  Cohomology is
computed from the normalized bar complex with exact Smith normal forms:

* the cocycle lattice L = {x : d_k x = 0 mod n} (or = 0 over Z) comes from
  the Smith form of d_k, whose column transform V diagonalises it;
* the boundary lattice B' = im d_{k-1} (+ n Z^N) is written in a basis of L
  and a second Smith form yields the invariant factors, generators and a
  coordinate map used for every "is this a coboundary" question.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd

from .errors import BudgetExceeded, DomainError
from .groups import conjugate_subgroup, direct_product, cyclic_group, subgroup_table
from .snf import smith_form

DEFAULT_CELL_BUDGET = 2**20


def _normalize_modulus(modulus):
    if modulus < 0:
        raise DomainError(f"modulus must be >= 0 (0 meaning Z), got {modulus}")
    return modulus


@dataclass(frozen=True)
class CochainClass:
    """A normalized k-cochain on G with values in Z (modulus 0) or Z/modulus."""

    group: object
    degree: int
    modulus: int
    values: tuple
    is_cocycle: bool = field(init=False, compare=False)

    def __post_init__(self):
        m, k = self.group.order, self.degree
        if k < 0:
            raise DomainError("cochain degree must be >= 0")
        vals = tuple(int(v) for v in self.values)
        if len(vals) != m**k:
            raise DomainError(f"degree-{k} cochain on a group of order {m} needs {m**k} values")
        if self.modulus:
            vals = tuple(v % self.modulus for v in vals)
        object.__setattr__(self, "values", vals)
        e = self.group.identity
        if k:
            for idx, args in enumerate(product(range(m), repeat=k)):
                if e in args and vals[idx]:
                    raise DomainError("cochain is not normalized (nonzero on an identity argument)")
        object.__setattr__(self, "is_cocycle", not any(coboundary_values(self.group, k, vals, self.modulus)))

    def __call__(self, *args):
        idx = 0
        for g in args:
            idx = idx * self.group.order + g
        return self.values[idx]

    def __add__(self, other):
        self._compatible(other)
        return CochainClass(self.group, self.degree, self.modulus, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        self._compatible(other)
        return CochainClass(self.group, self.degree, self.modulus, tuple(a - b for a, b in zip(self.values, other.values)))

    def scale(self, c):
        return CochainClass(self.group, self.degree, self.modulus, tuple(c * a for a in self.values))

    def is_zero(self):
        return not any(self.values)

    def _compatible(self, other):
        if (self.group, self.degree, self.modulus) != (other.group, other.degree, other.modulus):
            raise DomainError("cochains live on different groups, degrees or coefficients")


def zero_cochain(G, k, modulus=0):
    return CochainClass(G, k, modulus, (0,) * G.order**k)


def cochain_from_function(G, k, modulus, fn):
    e = G.identity
    vals = tuple(0 if e in args else fn(*args) for args in product(range(G.order), repeat=k))
    return CochainClass(G, k, modulus, vals)


def coboundary_values(G, k, values, modulus=0):
    """Values of the bar coboundary of a k-cochain table (trivial action)."""
    m = G.order
    t = G.table
    n1 = k + 1
    weights = [m ** (k - 1 - i) for i in range(k)]
    out = []
    for args in product(range(m), repeat=n1):
        # d_0: drop g_1 (trivial action)
        s = _lookup(values, args[1:], weights)
        for i in range(1, n1):
            merged = args[: i - 1] + (t[args[i - 1]][args[i]],) + args[i + 1 :]
            v = _lookup(values, merged, weights)
            s += -v if i % 2 else v
        v = _lookup(values, args[:k], weights)
        s += -v if n1 % 2 else v
        out.append(s % modulus if modulus else s)
    return out


def _lookup(values, args, weights):
    idx = 0
    for a, w in zip(args, weights):
        idx += a * w
    return values[idx]


def coboundary(sigma):
    G, k = sigma.group, sigma.degree
    return CochainClass(G, k + 1, sigma.modulus, coboundary_values(G, k, sigma.values, sigma.modulus))


# -- the normalized bar complex as sparse integer matrices ------------------


class _BarComplex:
    def __init__(self, G):
        self.G = G
        self.nonid = [g for g in range(G.order) if g != G.identity]
        self.pos = {g: i for i, g in enumerate(self.nonid)}
        self.q = len(self.nonid)

    def dim(self, k):
        return self.q**k

    def index(self, args):
        idx = 0
        for g in args:
            idx = idx * self.q + self.pos[g]
        return idx

    def differential_rows(self, k):
        """Rows of d_k : C^k -> C^{k+1}; row y gives (d_k f)(y) as a combination of f-values."""
        G, e = self.G, self.G.identity
        t = G.table
        rows = []
        for y in product(self.nonid, repeat=k + 1):
            row = {}
            faces = [(y[1:], 1)]
            for i in range(1, k + 1):
                merged = t[y[i - 1]][y[i]]
                if merged == e:
                    continue
                faces.append((y[: i - 1] + (merged,) + y[i + 1 :], -1 if i % 2 else 1))
            faces.append((y[:k], -1 if (k + 1) % 2 else 1))
            for face, sign in faces:
                j = self.index(face)
                row[j] = row.get(j, 0) + sign
            rows.append({j: v for j, v in row.items() if v})
        return rows

    def boundary_generators(self, k):
        """Images d_{k-1}(e_x) in C^k for the basis cochains e_x of C^{k-1}."""
        if k == 0:
            return []
        cols = [dict() for _ in range(self.dim(k - 1))]
        for yi, row in enumerate(self.differential_rows(k - 1)):
            for j, v in row.items():
                cols[j][yi] = v
        return [c for c in cols if c]

    def to_vector(self, values, k):
        m = self.G.order
        vec = {}
        for args in product(self.nonid, repeat=k):
            idx = 0
            for a in args:
                idx = idx * m + a
            v = values[idx]
            if v:
                vec[self.index(args)] = v
        return vec

    def to_values(self, vec, k):
        m = self.G.order
        vals = [0] * (m**k)
        for args in product(self.nonid, repeat=k):
            v = vec.get(self.index(args), 0)
            if v:
                idx = 0
                for a in args:
                    idx = idx * m + a
                vals[idx] = v
        return tuple(vals)


@lru_cache(maxsize=None)
def _cocycle_frame(G, k):
    """Smith form of d_k: column transform diagonalising the cocycle condition."""
    bar = _BarComplex(G)
    return bar, smith_form(bar.differential_rows(k), bar.dim(k))


def _columns(row_dicts, n):
    cols = [dict() for _ in range(n)]
    for i, row in enumerate(row_dicts):
        for j, v in row.items():
            cols[j][i] = v
    return cols


class _CohomologyData:
    """Everything needed to name classes in H^k(G, A)."""

    def __init__(self, G, k, modulus):
        bar, frame = _cocycle_frame(G, k)
        self.bar, self.k, self.modulus = bar, k, modulus
        n = bar.dim(k)
        piv = frame.pivot_map()
        self.cocycle_divisors = piv
        self.V = frame.W
        self.Vinv_cols = _columns(frame.Winv, n)
        if modulus:
            self.J = [(j, modulus // gcd(piv[j], modulus) if j in piv else 1) for j in range(n)]
        else:
            self.J = [(j, 1) for j in range(n) if j not in piv]
        self.Jpos = {j: p for p, (j, _) in enumerate(self.J)}
        gens = []
        for b in bar.boundary_generators(k):
            y = self._to_y(b)
            z = self._to_z(y)
            if z is None:
                raise AssertionError("a coboundary failed the cocycle condition")
            gens.append(z)
        if modulus:
            for p, (j, s) in enumerate(self.J):
                gens.append({p: modulus // s})
        sf = smith_form(gens, len(self.J))
        self.smith = sf
        self.Wcols = sf.W
        piv2 = sf.pivot_map()
        self.torsion = [(c, d) for c, d in sf.pivots if d > 1]
        self.free = [c for c in range(len(self.J)) if c not in piv2]

    def _to_y(self, x):
        y = {}
        for i, v in x.items():
            for j, w in self.Vinv_cols[i].items():
                t = y.get(j, 0) + v * w
                if t:
                    y[j] = t
                else:
                    y.pop(j, None)
        return y

    def _to_z(self, y):
        """Coordinates in the basis of L; None if y is not a cocycle."""
        z = {}
        piv = self.cocycle_divisors
        for j, v in y.items():
            if j in piv:
                if not self.modulus or (piv[j] * v) % self.modulus:
                    return None
            p = self.Jpos.get(j)
            if p is None:
                return None
            s = self.J[p][1]
            if v % s:
                return None
            z[p] = v // s
        return z

    def coordinates(self, values):
        """(torsion coordinates mod each factor, free coordinates) of a cocycle table."""
        z = self._to_z(self._to_y(self.bar.to_vector(values, self.k)))
        if z is None:
            raise DomainError("cochain is not a cocycle")
        tors = tuple(sum(v * self.Wcols[c].get(p, 0) for p, v in z.items()) % d for c, d in self.torsion)
        free = tuple(sum(v * self.Wcols[c].get(p, 0) for p, v in z.items()) for c in self.free)
        return tors, free

    def generator(self, c):
        u = self.smith.Winv[c]
        x = {}
        for p, v in u.items():
            j, s = self.J[p]
            for i, w in self.V[j].items():
                t = x.get(i, 0) + s * v * w
                if t:
                    x[i] = t
                else:
                    x.pop(i, None)
        if self.modulus:
            x = {i: v % self.modulus for i, v in x.items() if v % self.modulus}
        return self.bar.to_values(x, self.k)


@dataclass(frozen=True)
class CohomologyGroup:
    """H^degree(G, A) as Z^free_rank + sum Z/factors (factors a divisibility chain)."""

    group: object
    degree: int
    modulus: int
    factors: tuple
    free_rank: int
    representatives: tuple = ()
    _data: object = field(default=None, repr=False, compare=False)

    @property
    def order(self):
        if self.free_rank:
            return None
        out = 1
        for f in self.factors:
            out *= f
        return out

    def coordinates(self, sigma):
        self._check(sigma)
        return self._data.coordinates(sigma.values)

    def is_coboundary(self, sigma):
        tors, free = self.coordinates(sigma)
        return not any(tors) and not any(free)

    def cohomologous(self, a, b):
        return self.is_coboundary(a - b)

    def class_order(self, sigma):
        """Order of the class of sigma (0 for infinite order)."""
        tors, free = self.coordinates(sigma)
        if any(free):
            return 0
        out = 1
        for a, (_, d) in zip(tors, self._data.torsion):
            o = d // gcd(a, d)
            out = out * o // gcd(out, o)
        return out

    def element(self, coeffs):
        """The cocycle sum coeffs[i] * representatives[i]."""
        if len(coeffs) != len(self.representatives):
            raise DomainError("one coefficient per representative required")
        total = zero_cochain(self.group, self.degree, self.modulus)
        for c, rep in zip(coeffs, self.representatives):
            if c:
                total = total + rep.scale(c)
        return total

    def elements(self):
        """Every class, as cocycles (torsion groups only)."""
        if self.free_rank:
            raise DomainError("infinitely many classes")
        for coeffs in product(*[range(f) for f in self.factors]):
            yield self.element(coeffs)

    def _check(self, sigma):
        if self._data is None:
            raise DomainError("closed-form cohomology carries no cochain-level data")
        if (sigma.group, sigma.degree, sigma.modulus) != (self.group, self.degree, self.modulus):
            raise DomainError("cochain does not belong to this cohomology group")


def cell_count(G, k):
    return G.order ** (k + 1)


@lru_cache(maxsize=None)
def _bar_cohomology(G, modulus, k):
    data = _CohomologyData(G, k, modulus)
    reps = []
    for c, _ in data.torsion:
        reps.append(CochainClass(G, k, modulus, data.generator(c)))
    for c in data.free:
        reps.append(CochainClass(G, k, modulus, data.generator(c)))
    return CohomologyGroup(
        group=G,
        degree=k,
        modulus=modulus,
        factors=tuple(d for _, d in data.torsion),
        free_rank=len(data.free),
        representatives=tuple(reps),
        _data=data,
    )


def bar_cohomology(G, modulus, k, budget=DEFAULT_CELL_BUDGET):
    """H^k(G, Z) (modulus 0) or H^k(G, Z/modulus) with trivial action.

    Parameters
    ----------
    G : FiniteGroupTable
    modulus : int
        0 for integer coefficients.
    k : int
        Degree, k >= 0.
    budget : int
        Refuse when |G|^(k+1) exceeds this many cells.

    Returns
    -------
    CohomologyGroup
        Invariant factors (each > 1, divisibility chain), free rank and one
        representative cocycle per cyclic summand.
    """
    _normalize_modulus(modulus)
    if k < 0:
        raise DomainError(f"degree must be >= 0, got {k}")
    cells = cell_count(G, k)
    if cells > budget:
        raise BudgetExceeded(
            f"bar complex for |G| = {G.order}, degree {k} needs {cells} cells > budget {budget}",
            cells=cells,
            budget=budget,
        )
    return _bar_cohomology(G, modulus, k)


def cyclic_closed_form(m, k, modulus=0):
    """H^k(Z/m, A) from the periodic resolution: Z, 0, Z/m, 0, Z/m, ... over Z;
    Z/n in degree 0 and Z/gcd(m, n) above over Z/n."""
    _normalize_modulus(modulus)
    if m < 1 or k < 0:
        raise DomainError("need m >= 1 and k >= 0")
    G = cyclic_group(m)
    if modulus:
        f = modulus if k == 0 else gcd(m, modulus)
        return CohomologyGroup(G, k, modulus, (f,) if f > 1 else (), 0)
    if k == 0:
        return CohomologyGroup(G, k, 0, (), 1)
    if k % 2 or m == 1:
        return CohomologyGroup(G, k, 0, (), 0)
    return CohomologyGroup(G, k, 0, (m,), 0)


# -- maps between subgroups --------------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``parent`` given by its sorted parent indices."""

    parent: object
    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(self.elements)))
        subgroup_table(self.parent, self.elements)

    @property
    def table(self):
        return subgroup_table(self.parent, self.elements)

    @property
    def index(self):
        return self.parent.order // len(self.elements)

    def local(self, g):
        return self.elements.index(g)


def whole_group(G):
    return Subgroup(G, tuple(range(G.order)))


def _pullback(sigma, images, target):
    """Cochain on ``target`` whose value at (h_1..h_k) is sigma(images[h_1], ...)."""
    k = sigma.degree
    vals = tuple(sigma(*(images[h] for h in args)) for args in product(range(target.order), repeat=k))
    return CochainClass(target, k, sigma.modulus, vals)


def restrict(H, K, sigma):
    """Restriction from subgroup H to a subgroup K of H (both Subgroups of one parent)."""
    if sigma.group != H.table:
        raise DomainError("cochain does not live on the source subgroup")
    if not set(K.elements) <= set(H.elements):
        raise DomainError("target is not contained in the source subgroup")
    images = [H.local(g) for g in K.elements]
    return _pullback(sigma, images, K.table)


def restriction(G, H, sigma):
    """Res^G_H of a cochain on G, where H is a Subgroup of G."""
    if sigma.group != G:
        raise DomainError("cochain does not live on G")
    if H.parent != G:
        raise DomainError("embedding is not into G")
    return _pullback(sigma, H.elements, H.table)


def conjugate_class(G, T, g, sigma):
    """Transport sigma on T to T^g = g^-1 T g via sigma^g(x_1..) = sigma(g x_1 g^-1, ..).

    Returns (T^g, sigma^g).
    """
    if sigma.group != T.table:
        raise DomainError("cochain does not live on T")
    Tg = Subgroup(G, conjugate_subgroup(G, T.elements, g))
    images = [T.local(G.conj(g, x)) for x in Tg.elements]
    return Tg, _pullback(sigma, images, Tg.table)


def intersection(A, B):
    if A.parent != B.parent:
        raise DomainError("subgroups of different groups")
    return Subgroup(A.parent, tuple(sorted(set(A.elements) & set(B.elements))))


def double_coset_representatives(G, T):
    """Least element of each double coset T g T, ascending."""
    seen = set()
    reps = []
    for g in range(G.order):
        if g in seen:
            continue
        reps.append(g)
        for a in T.elements:
            for b in T.elements:
                seen.add(G.table[G.table[a][g]][b])
    return reps


def right_coset_section(G, T, rotation=0):
    """One representative per right coset T x.

    rotation = 0 picks the least element of each coset; rotation = r picks
    the r-th element (cyclically, ascending) so alternative sections can be
    compared.
    """
    seen = set()
    reps = []
    for g in range(G.order):
        if g in seen:
            continue
        coset = sorted(G.table[t][g] for t in T.elements)
        seen.update(coset)
        reps.append(coset[rotation % len(coset)])
    return reps


def corestriction(G, T, sigma, section=None):
    """Transfer Cor^T_G on cochains.

    With right coset representatives x and the retraction rho(g) = t for
    g = t * rep(T g),

        Cor(f)(g_1..g_k) = sum_x f(rho(x)^-1 rho(x g_1), rho(x g_1)^-1 rho(x g_1 g_2), ...).
    """
    if sigma.group != T.table:
        raise DomainError("cochain does not live on T")
    if section is None:
        section = right_coset_section(G, T)
    tab, inv = G.table, G.inverse
    coset_rep = {}
    for x in section:
        for t in T.elements:
            coset_rep[tab[t][x]] = x
    if len(coset_rep) != G.order or len(section) * len(T.elements) != G.order:
        raise DomainError("section is not a set of right coset representatives")
    local = {g: i for i, g in enumerate(T.elements)}
    rho = [local[tab[g][inv[coset_rep[g]]]] for g in range(G.order)]
    Tt = T.table
    tinv = Tt.inverse
    k = sigma.degree
    vals = []
    e = G.identity
    for args in product(range(G.order), repeat=k):
        if e in args:
            vals.append(0)
            continue
        total = 0
        for x in section:
            prefix = x
            prev = rho[x]
            targs = []
            for g in args:
                prefix = tab[prefix][g]
                cur = rho[prefix]
                targs.append(Tt.table[tinv[prev]][cur])
                prev = cur
            total += sigma(*targs)
        vals.append(total)
    return CochainClass(G, k, sigma.modulus, tuple(vals))


def _cohomology_of(subgroup, k, modulus):
    return bar_cohomology(subgroup.table, modulus, k)


def is_invariant_class(G, T, sigma):
    """Rest^T_{T cap T^g}(sigma) ~ Rest^{T^g}_{T cap T^g}(sigma^g) for every double coset T g T."""
    if not sigma.is_cocycle:
        raise DomainError("sigma is not a cocycle")
    for g in double_coset_representatives(G, T):
        Tg, sigma_g = conjugate_class(G, T, g, sigma)
        K = intersection(T, Tg)
        a = restrict(T, K, sigma)
        b = restrict(Tg, K, sigma_g)
        if not _cohomology_of(K, sigma.degree, sigma.modulus).cohomologous(a, b):
            return False
    return True


def transfer_identity_check(G, T, sigma):
    """Res^G_T(Cor^T_G(sigma)) ~ [G:T] sigma for an invariant class sigma."""
    if not is_invariant_class(G, T, sigma):
        raise DomainError("sigma is not an invariant class")
    lhs = restriction(G, T, corestriction(G, T, sigma))
    return _cohomology_of(T, sigma.degree, sigma.modulus).cohomologous(lhs, sigma.scale(T.index))


# -- Kunneth / Sym^2 containment ----------------------------------------------


def _prime_power_parts(factors):
    from .primes import factorize

    parts = {}
    for f in factors:
        for p, e in factorize(f).items():
            parts.setdefault(p, []).append(e)
    return {p: sorted(es, reverse=True) for p, es in parts.items()}


def embeds_as_subgroup(small, big):
    """Whether the finite abelian group with invariant factors ``small`` embeds in ``big``."""
    a, b = _prime_power_parts(small), _prime_power_parts(big)
    for p, es in a.items():
        fs = b.get(p, [])
        if len(es) > len(fs) or any(x > y for x, y in zip(es, fs)):
            return False
    return True


def sym2_factors(ms):
    """Invariant-factor data of Sym^2(Z/m_1 + ... + Z/m_r): one Z/gcd(m_i, m_j) per i <= j."""
    out = []
    for i in range(len(ms)):
        for j in range(i, len(ms)):
            g = gcd(ms[i], ms[j])
            if g > 1:
                out.append(g)
    return sorted(out)


def kunneth_sym2_check(ms, budget=DEFAULT_CELL_BUDGET):
    """Does H^4(prod Z/m_i, Z) contain a copy of Sym^2(sum Z/m_i)?"""
    ms = list(ms)
    if not ms or any(m < 1 for m in ms):
        raise DomainError("need a non-empty list of positive orders")
    G = direct_product(*[cyclic_group(m) for m in ms])
    H4 = bar_cohomology(G, 0, 4, budget)
    return embeds_as_subgroup(sym2_factors(ms), list(H4.factors))
