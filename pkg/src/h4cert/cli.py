"""Command-line front end: every operation emits one canonical JSON report.

Exit status 0 on success, 1 on a well-formed refusal (domain or budget),
2 on a usage error.  Reports go to stdout, diagnostics to stderr.
"""

import argparse
import json
import os
import sys
from itertools import product

from . import __version__
from .cohomology import (
    DEFAULT_CELL_BUDGET,
    Subgroup,
    bar_cohomology,
    is_invariant_class,
    transfer_identity_check,
)
from .errors import BudgetExceeded, CertificateError, DomainError
from .groups import named_group, named_subgroup_elements, parse_group_table
from .liecount import (
    DEFAULT_SEARCH_BUDGET,
    TameContext,
    certify_order_n,
    load_exception_list,
    tame_classify,
)
from .primes import MILLER_RABIN_SEED
from .rootsys import TYPE_LABELS, build_root_system
from .symsq import divisibility_index, killing_element
from .symspace import Generic, Res, RealFormSpec, load_catalog, rank_bounds, table1

MAX_SAFE_INT = 2**53 - 1
MAX_TRANSFER_CLASSES = 4096


def _jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj if abs(obj) <= MAX_SAFE_INT else str(obj)
    if isinstance(obj, float):
        raise TypeError("floating point values are not allowed in reports")
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, frozenset, set)):
        items = sorted(obj) if isinstance(obj, (frozenset, set)) else obj
        return [_jsonable(x) for x in items]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj):
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def kb_version():
    return {
        "steinberg_exceptions": load_exception_list().version,
        "real_forms": load_catalog().version,
    }


def envelope(command, inputs, result=None, refusal=None):
    out = {
        "command": command,
        "input": inputs,
        "tool_version": __version__,
        "kb_version": kb_version(),
        "seed": {"miller_rabin": MILLER_RABIN_SEED},
    }
    if refusal is None:
        out["result"] = result
    else:
        out["refusal"] = refusal
    return out


# -- commands ------------------------------------------------------------------


def cmd_degrees(args):
    rs = build_root_system(args.type, args.rank)
    return {
        "type": rs.name,
        "degrees": list(rs.degrees),
        "degree_product": rs.degree_product,
        "weyl_order": rs.weyl_order,
        "num_positive_roots": rs.num_positive_roots,
        "cartan_matrix": [list(r) for r in rs.cartan_matrix],
    }


def cmd_killing(args):
    rs = build_root_system(args.type, args.rank)
    q = killing_element(rs)
    e = divisibility_index(q)
    return {
        "type": rs.name,
        "Q": [[i, j, c] for (i, j), c in q.coeffs.items()],
        "e": e,
        "Q_over_e": [[i, j, c // e] for (i, j), c in q.coeffs.items()],
    }


def _context(args, n=1):
    exceptions = load_exception_list()
    return TameContext(
        args.type,
        args.rank,
        n,
        excluded=frozenset(args.exclude),
        cong_order=args.cong_order,
        bad_primes=frozenset(args.bad_prime),
        exceptions=exceptions,
    )


def _report_dict(report):
    return {
        "p": report.p,
        "tame": report.tame,
        "conditions": [{"name": c.name, "holds": c.holds, "evidence": c.evidence} for c in report.conditions],
    }


def cmd_tame(args):
    build_root_system(args.type, args.rank)
    return _report_dict(tame_classify(args.p, _context(args, args.n)))


def cmd_certify(args):
    if args.cong_order < 1:
        raise DomainError("--cong-order must be >= 1", cong_order=args.cong_order)
    cert = certify_order_n(args.type, args.rank, args.n, _context(args, args.n), args.budget)
    return {
        "type": f"{cert.type_label}{cert.rank}",
        "n": cert.n,
        "n_factorization": {str(l): t for l, t in sorted(cert.n_factorization.items())},
        "degrees": list(cert.degrees),
        "degree_product": cert.degree_product,
        "e": cert.e,
        "modulus": cert.modulus,
        "p": cert.p,
        "tame_report": _report_dict(cert.tame_report),
        "class_order": cert.class_order,
        "group_order": cert.group_order,
        "torus_order": cert.torus_order,
        "index": cert.index,
        "ledger": [
            {
                "l": x.l,
                "t": x.t,
                "v_degree_product": x.v_degree_product,
                "v_index": x.v_index,
                "v_class_order": x.v_class_order,
                "corollary_d": x.corollary_d,
                "concluded_exponent": x.concluded_exponent,
                "concluded_order": x.concluded_order,
            }
            for x in cert.ledger
        ],
        "concluded_order": cert.concluded_order,
        "transfer_order": cert.transfer_order,
        "verified": True,
        "conclusion": cert.conclusion,
        "h3_corollary": cert.h3_corollary,
    }


def _load_group(spec):
    if os.path.isfile(spec):
        with open(spec, encoding="utf-8") as fh:
            return parse_group_table(fh.read(), name=os.path.basename(spec))
    return named_group(spec)


def _cohomology_dict(H):
    return {"factors": list(H.factors), "free_rank": H.free_rank, "order": H.order}


def cmd_cohomology(args):
    G = _load_group(args.group)
    H = bar_cohomology(G, args.modulus, args.degree, args.budget)
    out = {"group": G.name, "group_order": G.order, "modulus": args.modulus, "degree": args.degree}
    out.update(_cohomology_dict(H))
    return out


def cmd_transfer(args):
    G = _load_group(args.group)
    T = Subgroup(G, named_subgroup_elements(G, args.subgroup))
    # both complexes must fit in the budget before any class is examined
    bar_cohomology(G, args.modulus, args.degree, args.budget)
    HT = bar_cohomology(T.table, args.modulus, args.degree, args.budget)
    if HT.free_rank:
        raise DomainError("H^k(T) has a free part; only finite groups of classes are enumerated")
    if HT.order > MAX_TRANSFER_CLASSES:
        raise BudgetExceeded(f"{HT.order} classes exceed {MAX_TRANSFER_CLASSES}", classes=HT.order)
    invariant = passed = 0
    failures = []
    for coeffs, sigma in zip(_coefficient_tuples(HT.factors), HT.elements()):
        if not is_invariant_class(G, T, sigma):
            continue
        invariant += 1
        if transfer_identity_check(G, T, sigma):
            passed += 1
        else:
            failures.append(list(coeffs))
    return {
        "group": G.name,
        "subgroup": args.subgroup,
        "subgroup_elements": list(T.elements),
        "index": T.index,
        "modulus": args.modulus,
        "degree": args.degree,
        "H_T": _cohomology_dict(HT),
        "classes": HT.order,
        "invariant_classes": invariant,
        "identity_holds": passed,
        "failures": failures,
        "passed": not failures,
    }


def _coefficient_tuples(factors):
    return product(*[range(f) for f in factors])


def _parse_spec(tokens):
    if not tokens:
        raise DomainError("missing family")
    family, rest = tokens[0], tokens[1:]
    if family == "Res":
        if len(rest) < 2:
            raise DomainError("usage: Res <degree> <family> <params...>")
        return Res(_int(rest[0]), _parse_spec(rest[1:]))
    ints = tuple(_int(x) for x in rest)
    if family == "generic":
        return Generic(*ints) if len(ints) == 3 else RealFormSpec("generic", ints)
    return RealFormSpec(family, ints)


def _int(token):
    try:
        return int(token)
    except ValueError:
        raise DomainError(f"expected an integer, got {token!r}") from None


def cmd_rank(args):
    spec = _parse_spec([args.family] + args.params)
    return rank_bounds(spec).as_dict()


def cmd_table1(args):
    return {"rows": table1()}


# -- parser --------------------------------------------------------------------


def _tame_options(p):
    p.add_argument("--cong-order", type=int, default=1, help="order of the congruence kernel (default 1)")
    p.add_argument("--exclude", type=int, nargs="*", default=[], metavar="P", help="primes in S")
    p.add_argument("--bad-prime", type=int, nargs="*", default=[], metavar="P", help="non-hyperspecial primes")


def build_parser():
    parser = argparse.ArgumentParser(prog="h4cert", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"h4cert {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def typed(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("type", choices=TYPE_LABELS)
        p.add_argument("rank", type=int)
        return p

    typed("degrees", "degrees, Weyl order, Cartan matrix").set_defaults(func=cmd_degrees)
    typed("killing", "the element Q of Sym^2(P) and its divisibility index e").set_defaults(func=cmd_killing)

    p = typed("certify", "certificate that H^4(G(F_p), Z) has an element of order n")
    p.add_argument("n", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET, help="max candidates 1 + kM")
    _tame_options(p)
    p.set_defaults(func=cmd_certify)

    p = typed("tame", "evaluate the tame-prime conditions at p")
    p.add_argument("p", type=int)
    p.add_argument("--n", type=int, default=1)
    _tame_options(p)
    p.set_defaults(func=cmd_tame)

    oracle = sub.add_parser("oracle", help="finite-group cohomology oracles")
    osub = oracle.add_subparsers(dest="oracle", required=True)
    p = osub.add_parser("cohomology", help="H^k(G, Z) (modulus 0) or H^k(G, Z/modulus)")
    p.add_argument("group", help="built-in name (C4, D4, Q8, S3, C2xC2) or a table file")
    p.add_argument("modulus", type=int)
    p.add_argument("degree", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_CELL_BUDGET)
    p.set_defaults(func=cmd_cohomology, name="oracle cohomology")
    p = osub.add_parser("transfer", help="check Res Cor = [G:T] on every invariant class")
    p.add_argument("group")
    p.add_argument("subgroup", help="registered name or C<k>")
    p.add_argument("degree", type=int)
    p.add_argument("--modulus", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_CELL_BUDGET)
    p.set_defaults(func=cmd_transfer, name="oracle transfer")

    sub.add_parser("table1", help="the examples table of (m, b_R, c)").set_defaults(func=cmd_table1)

    p = sub.add_parser("rank", help="(m, b_R, b_C) and bounds on c for a Q-form")
    p.add_argument("family", choices=["SL", "Sp", "Spin", "Res", "generic"])
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_rank)
    return parser


def _inputs(args):
    skip = {"func", "command", "oracle", "name"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    command = getattr(args, "name", None) or args.command
    inputs = _inputs(args)
    try:
        result = args.func(args)
    except BudgetExceeded as exc:
        refusal = {"kind": "budget", "reason": exc.reason, "details": exc.details}
        stdout.write(dumps(envelope(command, inputs, refusal=refusal)))
        print(f"h4cert: refused: {exc.reason}", file=stderr)
        return 1
    except DomainError as exc:
        refusal = {"kind": "domain", "reason": exc.reason, "details": exc.details}
        stdout.write(dumps(envelope(command, inputs, refusal=refusal)))
        print(f"h4cert: refused: {exc.reason}", file=stderr)
        return 1
    except CertificateError as exc:
        print(f"h4cert: certificate failed self-check: {exc}", file=stderr)
        return 3
    stdout.write(dumps(envelope(command, inputs, result)))
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
