"""Orders of split finite groups of Lie type and order-n certificates in H^4.

For a split simple, simply connected G of rank r with Weyl degrees
d_1..d_r, divisibility index e of the Killing element and a target n, a
certificate prime p satisfies p = 1 mod d_1...d_r*e*n and is tame.  The
invariant class on the torus then has order (p-1)/e, and transfer to G(F_p)
loses at most the l-part of the index, which equals the l-part of
d_1...d_r.  Every step is recomputed with exact integers.
"""

import os
from dataclasses import dataclass, field
from importlib import resources
from math import gcd, prod

from .errors import BudgetExceeded, CertificateError, DomainError
from .primes import factorize, is_prime, valuation
from .rootsys import build_root_system
from .symsq import divisibility_index, killing_element, reduce_and_order

KB_ENV_VAR = "H4CERT_KB_DIR"
EXCEPTIONS_FILE = "steinberg_exceptions.txt"
DEFAULT_SEARCH_BUDGET = 10**6


def group_order(rs, p):
    """|G(F_p)| = p^N (p^d_1 - 1) ... (p^d_r - 1)."""
    if p < 2:
        raise DomainError(f"p must be >= 2, got {p}", p=p)
    return p**rs.num_positive_roots * prod(p**d - 1 for d in rs.degrees)


def torus_order(rank, p):
    """|T(F_p)| = (p-1)^r for a split torus."""
    if p < 2:
        raise DomainError(f"p must be >= 2, got {p}", p=p)
    return (p - 1) ** rank


def l_valuation(x, l):
    if x == 0:
        raise DomainError("valuation of zero is undefined", x=0, l=l)
    if l < 2 or not is_prime(l):
        raise DomainError(f"l must be prime, got {l}", l=l)
    return valuation(x, l)


def valuation_lemma_check(x, d, l):
    """Check v_l(x^d - 1) = v_l(d) + v_l(x - 1) for x = 1 mod 2l by direct arithmetic."""
    if l < 2 or not is_prime(l):
        raise DomainError(f"l must be prime, got {l}", l=l)
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}", d=d)
    if (x - 1) % (2 * l) or x == 1:
        raise DomainError(f"x = {x} violates x = 1 mod {2 * l}, x != 1", x=x, l=l)
    return valuation(x**d - 1, l) == valuation(d, l) + valuation(x - 1, l)


def index_l_part(rs, p, l):
    """v_l([G(F_p):T(F_p)]), cross-checked against v_l(d_1...d_r)."""
    if (p - 1) % (2 * l):
        raise DomainError(f"p = {p} violates p = 1 mod {2 * l}", p=p, l=l)
    g, t = group_order(rs, p), torus_order(rs.rank, p)
    if g % t:
        raise CertificateError(f"|T(F_{p})| does not divide |G(F_{p})| for {rs.name}")
    exact = valuation(g // t, l)
    predicted = valuation(rs.degree_product, l)
    if exact != predicted:
        raise CertificateError(
            f"v_{l} of the index is {exact} but v_{l}(d_1...d_r) = {predicted} for {rs.name}, p = {p}"
        )
    return exact


# -- tame primes -------------------------------------------------------------


@dataclass(frozen=True)
class ExceptionEntry:
    type_label: str
    rank: str
    prime: int

    def matches(self, type_label, rank, p):
        return (
            p == self.prime
            and self.type_label in ("*", type_label)
            and self.rank in ("*", str(rank))
        )

    def __str__(self):
        return f"{self.type_label} {self.rank} {self.prime}"


@dataclass(frozen=True)
class ExceptionList:
    entries: tuple = ()
    version: str = "unversioned"

    def hit(self, type_label, rank, p):
        for entry in self.entries:
            if entry.matches(type_label, rank, p):
                return entry
        return None

    def extended(self, more):
        return ExceptionList(self.entries + tuple(more), self.version)


def parse_exception_list(text):
    entries = []
    version = "unversioned"
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("version:"):
                version = body.split(":", 1)[1].strip()
            continue
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise DomainError(f"line {lineno}: expected 'TYPE RANK PRIME', got {raw!r}")
        t, r, p = parts
        if t != "*" and t not in "ABCDEFG":
            raise DomainError(f"line {lineno}: bad type {t!r}")
        if r != "*" and not r.isdigit():
            raise DomainError(f"line {lineno}: bad rank {r!r}")
        if not p.isdigit() or not is_prime(int(p)):
            raise DomainError(f"line {lineno}: {p!r} is not a prime")
        entries.append(ExceptionEntry(t, r, int(p)))
    return ExceptionList(tuple(entries), version)


def knowledge_base_text(filename):
    override = os.environ.get(KB_ENV_VAR)
    if override:
        with open(os.path.join(override, filename), encoding="utf-8") as fh:
            return fh.read()
    return resources.files("h4cert").joinpath("data", filename).read_text(encoding="utf-8")


def load_exception_list(path=None):
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            return parse_exception_list(fh.read())
    return parse_exception_list(knowledge_base_text(EXCEPTIONS_FILE))


@dataclass(frozen=True)
class TameContext:
    """Configuration for the tame-prime conditions.

    ``excluded`` is the finite set S, ``cong_order`` the order of the
    congruence kernel and ``bad_primes`` the primes at which the chosen
    Z-model is not hyperspecial.
    """

    type_label: str
    rank: int
    n: int = 1
    excluded: frozenset = frozenset()
    cong_order: int = 1
    bad_primes: frozenset = frozenset()
    exceptions: ExceptionList = field(default_factory=load_exception_list)


@dataclass(frozen=True)
class Condition:
    name: str
    holds: bool
    evidence: str = ""


@dataclass(frozen=True)
class TamePrimeReport:
    p: int
    conditions: tuple

    @property
    def tame(self):
        return all(c.holds for c in self.conditions)

    def failed(self):
        return [c for c in self.conditions if not c.holds]


def tame_classify(p, context):
    """Evaluate the six tame-prime conditions at p."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime", p=p)
    conds = []
    conds.append(
        Condition("not_in_S", p not in context.excluded, f"{p} is in S" if p in context.excluded else "")
    )
    divides_cong = context.cong_order % p == 0
    conds.append(
        Condition(
            "coprime_to_congruence_kernel",
            not divides_cong,
            f"{p} divides |Cong(G)| = {context.cong_order}" if divides_cong else "",
        )
    )
    divides_n = context.n % p == 0
    conds.append(Condition("coprime_to_n", not divides_n, f"{p} divides n = {context.n}" if divides_n else ""))
    conds.append(Condition("unramified", True, "split model"))
    bad = p in context.bad_primes
    conds.append(
        Condition("hyperspecial", not bad, f"{p} is a configured bad prime of the model" if bad else "")
    )
    hit = context.exceptions.hit(context.type_label, context.rank, p)
    conds.append(
        Condition(
            "steinberg_vanishing",
            hit is None,
            f"exceptional list entry '{hit}'" if hit is not None else "",
        )
    )
    return TamePrimeReport(p, tuple(conds))


def find_certificate_prime(modulus, context, budget=DEFAULT_SEARCH_BUDGET):
    """Least tame prime p = 1 mod modulus, testing at most ``budget`` candidates."""
    if modulus < 1:
        raise DomainError(f"modulus must be >= 1, got {modulus}", modulus=modulus)
    if budget < 1:
        raise DomainError(f"budget must be >= 1, got {budget}", budget=budget)
    p = 1
    for _ in range(budget):
        p += modulus
        if is_prime(p) and tame_classify(p, context).tame:
            return p
    raise BudgetExceeded(
        f"no tame prime in the residue class 1 mod {modulus} among the first {budget} candidates",
        modulus=modulus,
        budget=budget,
        last_candidate=p,
    )


# -- certificates ------------------------------------------------------------


@dataclass(frozen=True)
class PrimeLedger:
    """Per prime l | n: the transfer bookkeeping at l."""

    l: int
    t: int
    v_degree_product: int
    v_index: int
    v_class_order: int
    corollary_d: int
    concluded_exponent: int

    @property
    def concluded_order(self):
        return self.l**self.concluded_exponent


@dataclass(frozen=True)
class OrderCertificate:
    type_label: str
    rank: int
    n: int
    n_factorization: dict
    degrees: tuple
    degree_product: int
    e: int
    modulus: int
    p: int
    tame_report: TamePrimeReport
    class_order: int
    group_order: int
    torus_order: int
    index: int
    ledger: tuple
    concluded_order: int
    transfer_order: int

    @property
    def conclusion(self):
        return f"H^4({self.type_label}{self.rank}(F_{self.p}), Z) contains an element of order {self.n}"

    @property
    def h3_corollary(self):
        return f"H^3({self.type_label}{self.rank}(F_{self.p}), Z/{self.n}) contains an element of order {self.n}"


def _check(cond, message):
    if not cond:
        raise CertificateError(message)


def verify_certificate(cert):
    """Recompute every arithmetic claim of a certificate; raise CertificateError on mismatch."""
    rs = build_root_system(cert.type_label, cert.rank)
    q = killing_element(rs)
    e = divisibility_index(q)
    _check(e == cert.e, f"e recomputed as {e}, certificate says {cert.e}")
    _check(prod(rs.degrees) == cert.degree_product, "degree product mismatch")
    _check(prod(l**t for l, t in cert.n_factorization.items()) == cert.n, "factorisation of n is wrong")
    _check(all(is_prime(l) for l in cert.n_factorization), "factorisation of n has a composite")
    _check(cert.modulus == cert.degree_product * e * cert.n, "modulus != D*e*n")
    p = cert.p
    _check(is_prime(p), f"{p} is not prime")
    _check((p - 1) % cert.modulus == 0, f"p = {p} is not 1 mod {cert.modulus}")
    _check((p - 1) % e == 0, "e does not divide p-1")
    _check(cert.class_order * e == p - 1, "class order * e != p - 1")
    _check(reduce_and_order(q, p - 1) == cert.class_order, "order of q in Sym^2(P)/(p-1) mismatch")
    _check(cert.tame_report.tame and cert.tame_report.p == p, "certificate prime is not tame")
    g, t = group_order(rs, p), torus_order(rs.rank, p)
    _check(g == cert.group_order and t == cert.torus_order, "group or torus order mismatch")
    _check(g % t == 0 and g // t == cert.index, "index mismatch")
    # Order of Res(Cor(q)) on the torus: class_order / gcd(class_order, index).
    transfer_order = cert.class_order // gcd(cert.class_order, cert.index)
    _check(transfer_order == cert.transfer_order, "order of Res(Cor q) mismatch")
    concluded = 1
    _check(sorted(x.l for x in cert.ledger) == sorted(cert.n_factorization), "ledger primes differ from n's")
    for row in cert.ledger:
        l, tl = row.l, row.t
        _check(cert.n_factorization[l] == tl, f"t_{l} mismatch")
        _check((p - 1) % (2 * l) == 0, f"p is not 1 mod 2*{l}")
        vd = valuation(cert.degree_product, l)
        vi = valuation(cert.index, l)
        vo = valuation(cert.class_order, l)
        _check(row.v_degree_product == vd, f"v_{l}(D) mismatch")
        _check(row.v_index == vi == vd, f"v_{l}(index) = {vi} differs from v_{l}(D) = {vd}")
        for d in rs.degrees:
            _check(
                valuation(p**d - 1, l) == valuation(d, l) + valuation(p - 1, l),
                f"valuation lemma fails at p = {p}, d = {d}, l = {l}",
            )
        _check(row.v_class_order == vo, f"v_{l}(class order) mismatch")
        _check(vo >= vd + tl, f"v_{l}(class order) = {vo} < v_{l}(D) + t = {vd + tl}")
        # a class of order d * l^s with |d|_l = |index|_l transfers to order l^s in G
        s = vo - vd
        _check(row.concluded_exponent == s, f"concluded exponent at {l} mismatch")
        _check(row.corollary_d * l**s == cert.class_order, "d * l^s != class order")
        _check(valuation(row.corollary_d, l) == vi, "|d|_l != |index|_l")
        _check(valuation(transfer_order, l) == s, f"v_{l} of the Res(Cor q) order is not {s}")
        _check(s >= tl, f"concluded order {l}^{s} below {l}^{tl}")
        concluded *= l**s
    _check(concluded == cert.concluded_order, "concluded order mismatch")
    _check(cert.concluded_order % cert.n == 0, "concluded order not divisible by n")
    _check(((p - 1) // (cert.degree_product * e)) % cert.n == 0, "n does not divide (p-1)/(D*e)")
    return True


def certify_order_n(type_label, rank, n, context=None, budget=DEFAULT_SEARCH_BUDGET):
    """Produce a self-verified certificate that H^4(G(F_p), Z) has an element of order n.

    Parameters
    ----------
    type_label, rank
        The split simple type of G.
    n : int
        Target order, n >= 2.
    context : TameContext, optional
        Tame-prime configuration; its type, rank and n are overwritten with
        the arguments here.  Defaults to the shipped exceptional list.
    budget : int
        Maximum number of candidates p = 1 + kM tried.
    """
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n}", n=n)
    rs = build_root_system(type_label, rank)
    if context is None:
        context = TameContext(type_label, rank, n)
    else:
        context = TameContext(
            type_label,
            rank,
            n,
            excluded=context.excluded,
            cong_order=context.cong_order,
            bad_primes=context.bad_primes,
            exceptions=context.exceptions,
        )
    q = killing_element(rs)
    e = divisibility_index(q)
    dprod = rs.degree_product
    modulus = dprod * e * n
    p = find_certificate_prime(modulus, context, budget)
    report = tame_classify(p, context)
    class_order = reduce_and_order(q, p - 1)
    g, t = group_order(rs, p), torus_order(rank, p)
    index = g // t
    factors = factorize(n)
    ledger = []
    concluded = 1
    for l, tl in sorted(factors.items()):
        vd = index_l_part(rs, p, l)
        vo = valuation(class_order, l)
        s = vo - vd
        ledger.append(
            PrimeLedger(
                l=l,
                t=tl,
                v_degree_product=valuation(dprod, l),
                v_index=vd,
                v_class_order=vo,
                corollary_d=class_order // l**s,
                concluded_exponent=s,
            )
        )
        concluded *= l**s
    cert = OrderCertificate(
        type_label=type_label,
        rank=rank,
        n=n,
        n_factorization=dict(sorted(factors.items())),
        degrees=rs.degrees,
        degree_product=dprod,
        e=e,
        modulus=modulus,
        p=p,
        tame_report=report,
        class_order=class_order,
        group_order=g,
        torus_order=t,
        index=index,
        ledger=tuple(ledger),
        concluded_order=concluded,
        transfer_order=class_order // gcd(class_order, index),
    )
    verify_certificate(cert)
    return cert
