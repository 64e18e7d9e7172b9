"""Rank bookkeeping for real forms: (m, b_R, b_C), compact-dual cohomology, bounds on c.

Per-family values come from a versioned knowledge base; families outside it
are rejected, never extrapolated.  Restriction of scalars from a totally
real field of degree f multiplies (m, b_R, b_C) by f; it is accepted for the
SL and Sp families only, whose real points are the same at every real place.
"""

import json
import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError
from .liecount import knowledge_base_text

REAL_FORMS_FILE = "real_forms.txt"
FAMILY_PARAMS = {"SL": ("n",), "Sp": ("n",), "Spin": ("r", "s")}
RESTRICTABLE = ("SL", "Sp")

_ATOM = re.compile(r"^([a-z]+|\d+)(>=|=)([a-z]+|\d+)$")


@dataclass(frozen=True)
class CatalogEntry:
    family: str
    constraints: tuple
    m: int
    b_real: int
    b_complex: int
    excluded: bool = False

    def admits(self, params):
        for lhs, op, rhs in self.constraints:
            a = params[lhs] if lhs.isalpha() else int(lhs)
            b = params[rhs] if rhs.isalpha() else int(rhs)
            if op == ">=" and not a >= b:
                return False
            if op == "=" and a != b:
                return False
        return True

    @property
    def domain(self):
        return ",".join(f"{a}{op}{b}" for a, op, b in self.constraints)


@dataclass(frozen=True)
class Catalog:
    entries: tuple
    version: str

    def lookup(self, family, params):
        hits = [e for e in self.entries if e.family == family and e.admits(params)]
        if not hits:
            shown = ", ".join(f"{k}={v}" for k, v in params.items())
            raise DomainError(f"{family}({shown}) is outside the real-form catalog", family=family)
        if len(hits) > 1:
            raise DomainError(f"catalog entries overlap for {family}{params}")
        return hits[0]


def parse_catalog(text):
    entries = []
    version = "unversioned"
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("version:"):
                version = body.split(":", 1)[1].strip()
            continue
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (5, 6) or (len(parts) == 6 and parts[5] != "excluded"):
            raise DomainError(f"line {lineno}: expected 'family domain m bR bC [excluded]'")
        family, domain = parts[0], parts[1]
        if family not in FAMILY_PARAMS:
            raise DomainError(f"line {lineno}: unknown family {family!r}")
        constraints = []
        for atom in domain.split(","):
            match = _ATOM.match(atom)
            if not match:
                raise DomainError(f"line {lineno}: bad constraint {atom!r}")
            lhs, op, rhs = match.groups()
            for side in (lhs, rhs):
                if side.isalpha() and side not in FAMILY_PARAMS[family]:
                    raise DomainError(f"line {lineno}: {family} has no parameter {side!r}")
            constraints.append((lhs, op, rhs))
        try:
            m, br, bc = (int(x) for x in parts[2:5])
        except ValueError:
            raise DomainError(f"line {lineno}: m, bR, bC must be integers") from None
        if min(m, br, bc) < 0 or br + bc == 0:
            raise DomainError(f"line {lineno}: invalid profile ({m}, {br}, {bc})")
        entries.append(CatalogEntry(family, tuple(constraints), m, br, bc, len(parts) == 6))
    return Catalog(tuple(entries), version)


@lru_cache(maxsize=None)
def _default_catalog_text():
    return knowledge_base_text(REAL_FORMS_FILE)


def load_catalog(path=None):
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            return parse_catalog(fh.read())
    return parse_catalog(_default_catalog_text())


@dataclass(frozen=True)
class RealFormSpec:
    """A Q-form: ``family`` in SL, Sp (Sp_2n), Spin (signature r, s), Res or generic.

    ``params`` is a tuple: (n,), (n,), (r, s), (f, inner RealFormSpec) or
    (m, b_R, b_C) for generic.
    """

    family: str
    params: tuple

    def __str__(self):
        if self.family == "Res":
            f, inner = self.params
            return f"Res_{{k/Q}}({inner}), [k:Q]={f}"
        if self.family == "SL":
            return f"SL_{self.params[0]}"
        if self.family == "Sp":
            return f"Sp_{2 * self.params[0]}"
        if self.family == "Spin":
            return f"Spin({self.params[0]},{self.params[1]})"
        return "generic(m={}, bR={}, bC={})".format(*self.params)


def SL(n):
    return RealFormSpec("SL", (n,))


def Sp(n):
    """Sp_{2n}."""
    return RealFormSpec("Sp", (n,))


def Spin(r, s):
    return RealFormSpec("Spin", (r, s))


def Res(f, inner):
    return RealFormSpec("Res", (f, inner))


def Generic(m, b_real, b_complex):
    return RealFormSpec("generic", (m, b_real, b_complex))


@dataclass(frozen=True)
class Profile:
    m: int
    b_real: int
    b_complex: int
    excluded: bool


def _ints(params, count, family):
    if len(params) != count or not all(isinstance(x, int) and not isinstance(x, bool) for x in params):
        raise DomainError(f"{family} takes {count} integer parameter(s), got {params!r}")
    return params


def profile(spec, catalog=None):
    """(m, b_R, b_C, excluded) of a spec, validated against the catalog."""
    catalog = catalog or load_catalog()
    if spec.family == "generic":
        m, br, bc = _ints(spec.params, 3, "generic")
        if min(m, br, bc) < 0 or br + bc == 0:
            raise DomainError(f"generic profile ({m}, {br}, {bc}) needs nonnegative entries and a factor")
        return Profile(m, br, bc, False)
    if spec.family == "Res":
        if len(spec.params) != 2:
            raise DomainError("Res takes (degree, inner spec)")
        f, inner = spec.params
        if not isinstance(f, int) or f < 1:
            raise DomainError(f"[k:Q] must be a positive integer, got {f!r}")
        if not isinstance(inner, RealFormSpec) or inner.family not in RESTRICTABLE:
            raise DomainError(f"restriction of scalars is catalogued for {', '.join(RESTRICTABLE)} only")
        p = profile(inner, catalog)
        # A factor with infinite congruence kernel over Q is fine over k != Q.
        return Profile(f * p.m, f * p.b_real, f * p.b_complex, p.excluded and f == 1)
    if spec.family not in FAMILY_PARAMS:
        raise DomainError(f"family {spec.family!r} is outside the catalog")
    names = FAMILY_PARAMS[spec.family]
    values = _ints(spec.params, len(names), spec.family)
    entry = catalog.lookup(spec.family, dict(zip(names, values)))
    return Profile(entry.m, entry.b_real, entry.b_complex, entry.excluded)


def factor_profile(spec, catalog=None):
    p = profile(spec, catalog)
    return p.b_real, p.b_complex


def compact_center_dim(spec, catalog=None):
    return profile(spec, catalog).m


def symmetric_space_dims(spec, catalog=None):
    """Betti numbers (h1, h2, h3) of the compact dual symmetric space: (0, m, b_C)."""
    p = profile(spec, catalog)
    return 0, p.m, p.b_complex


def lie_h3_dim(spec, catalog=None):
    """dim H^3 of the Lie algebra over C: one per simple factor of G x C, b_R + 2 b_C."""
    p = profile(spec, catalog)
    return p.b_real + 2 * p.b_complex


@dataclass(frozen=True)
class RankReport:
    spec: RealFormSpec
    m: int
    b_real: int
    b_complex: int
    excluded: bool

    @property
    def b(self):
        return self.b_real + 2 * self.b_complex

    @property
    def h2_dim(self):
        return self.m

    @property
    def h3_dim(self):
        return self.b_complex

    @property
    def c_lower(self):
        return self.b_real + self.b_complex + self.m

    @property
    def c_upper(self):
        return self.b_real + 2 * self.b_complex + self.m

    @property
    def c_exact(self):
        return self.c_lower if self.b_complex == 0 else None

    def as_dict(self):
        return {
            "spec": str(self.spec),
            "m": self.m,
            "b_R": self.b_real,
            "b_C": self.b_complex,
            "b": self.b,
            "h2_dim": self.h2_dim,
            "h3_dim": self.h3_dim,
            "c_lower": self.c_lower,
            "c_upper": self.c_upper,
            "c_exact": self.c_exact,
            "excluded_from_theorem": self.excluded,
        }


def rank_bounds(spec, catalog=None):
    p = profile(spec, catalog)
    return RankReport(spec, p.m, p.b_real, p.b_complex, p.excluded)


# -- the table of examples ------------------------------------------------------

_DEGREE = "[k:Q]"


def _symbolic(value, scaled):
    if not scaled or value == 0:
        return str(value)
    return _DEGREE if value == 1 else f"{value}{_DEGREE}"


@dataclass(frozen=True)
class TableRow:
    group: str
    domain: str
    instance: RealFormSpec
    symbolic_inner: RealFormSpec = None

    def symbolic(self, catalog=None):
        """(m, b_R, c) as strings, in terms of [k:Q] for restriction-of-scalars rows."""
        if self.symbolic_inner is None:
            r = rank_bounds(self.instance, catalog)
            return str(r.m), str(r.b_real), str(r.c_exact)
        r = rank_bounds(self.symbolic_inner, catalog)
        return _symbolic(r.m, True), _symbolic(r.b_real, True), _symbolic(r.c_exact, True)

    def as_dict(self, catalog=None):
        m, br, c = self.symbolic(catalog)
        return {
            "group": self.group,
            "domain": self.domain,
            "m": m,
            "b_R": br,
            "c": c,
            "instance": rank_bounds(self.instance, catalog).as_dict(),
        }


TABLE1_ROWS = (
    TableRow("SL_n/Q", "n >= 3", SL(3)),
    TableRow("Sp_2n/Q", "n >= 2", Sp(2)),
    TableRow("Spin(r,s)", "r >= s >= 3", Spin(3, 3)),
    TableRow("Spin(r,2)", "r >= 3", Spin(3, 2)),
    TableRow("Spin(2,2)", "", Spin(2, 2)),
    TableRow("Res_{k/Q}(SL_n/k)", "n >= 3, k totally real", Res(2, SL(3)), SL(3)),
    TableRow("Res_{k/Q}(SL_2/k)", "k totally real, k != Q", Res(2, SL(2)), SL(2)),
    TableRow("Res_{k/Q}(Sp_2n/k)", "k totally real", Res(2, Sp(2)), Sp(2)),
)


def table1(catalog=None):
    """The rows of the examples table, symbolic and instantiated."""
    return [row.as_dict(catalog) for row in TABLE1_ROWS]


def table1_text(catalog=None):
    """The symbolic columns of the table, one canonical JSON object per line."""
    rows = []
    for row in table1(catalog):
        keep = {k: row[k] for k in ("group", "domain", "m", "b_R", "c")}
        rows.append("  " + json.dumps(keep, sort_keys=True, ensure_ascii=True))
    return "[\n" + ",\n".join(rows) + "\n]\n"
