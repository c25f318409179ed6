"""Batch command-line front end.

One command per invocation; inputs are JSON files, the verdict goes to
standard output as canonical JSON.  Exit codes: 0 affirmative/success,
1 negative verdict, 2 undecided, 3 input or parse error, 4 enumeration budget
exceeded.  The environment variable RBX_BUDGET overrides the default
enumeration budget; a --budget flag overrides both.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import io
from .abelian import abelianize
from .errors import BudgetExceeded, InvalidStructure, ParseError
from .inducibility import (
    AutomorphismPair,
    check_wells_exactness,
    decide_inducible,
    verify_inducibility_witness,
    wells_is_trivial,
    wells_restricted_g,
    wells_restricted_h,
)
from .liealg import check_jacobi, check_rota_baxter
from .linalg import DEFAULT_BUDGET, Matrix
from .nonabelian import (
    build_extension,
    canonical_section,
    check_extension_equivalence,
    extract_cocycle,
    solve_cocycle_equivalence,
    validate_cocycle,
    validate_extension,
)
from .reps import check_representation, semidirect_product
from .cohomology import second_cohomology
from .results import Verdict


def _emit(payload) -> None:
    sys.stdout.write(io.canonical_dumps(payload))


def _budget(args) -> int:
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get("RBX_BUDGET")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ParseError(f"RBX_BUDGET is not an integer: {env!r}") from None
    return DEFAULT_BUDGET


_VERDICT_EXIT = {Verdict.YES: 0, Verdict.NO: 1, Verdict.UNDECIDED: 2}


# ---------------------------------------------------------------------------
# command handlers
# ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    data = io.load_json(args.file)
    kind = io.detect_kind(data)
    source = str(args.file)
    if kind == "algebra":
        a = io.parse_algebra(data, "algebra", source)
        payload = {
            "jacobi": check_jacobi(a.lie),
            "rota_baxter": check_rota_baxter(a.lie, a.op),
        }
        ok = all(payload.values())
    elif kind == "representation":
        r = io.parse_representation(data, "representation", source, base_dir=Path(args.file).parent)
        base_ok = check_jacobi(r.base.lie) and check_rota_baxter(r.base.lie, r.base.op)
        payload = {
            "base_valid": base_ok,
            "representation": base_ok and check_representation(r),
        }
        ok = payload["representation"]
    elif kind == "cocycle":
        c = io.parse_cocycle(data, "cocycle", source)
        report = validate_cocycle(c)
        payload = {
            "cocycle": report.ok,
            "conditions": {label: passed for label, passed in report.checks},
            "first_failure": report.first_failure,
        }
        ok = report.ok
    elif kind == "extension":
        x = io.parse_extension(data, "extension", source)
        report = validate_extension(x)
        payload = {
            "extension": report.ok,
            "checks": {label: passed for label, passed in report.checks},
            "first_failure": report.first_failure,
        }
        ok = report.ok
    else:
        raise ParseError(f"cannot validate files of kind {kind!r}", source=source)
    _emit(payload)
    return 0 if ok else 1


def cmd_cohomology(args) -> int:
    if args.degree != 2:
        raise ParseError("only degree 2 is supported")
    r = io.load_representation(args.rep)
    summary = second_cohomology(r)
    _emit({"zdim": summary.zdim, "bdim": summary.bdim, "hdim": summary.hdim})
    return 0


def cmd_derivations(args) -> int:
    from .cohomology import derivation_space

    r = io.load_representation(args.rep)
    basis = derivation_space(r)
    _emit({"dim": len(basis), "basis": [io.matrix_to_data(d) for d in basis]})
    return 0


def cmd_extend(args) -> int:
    c = io.load_cocycle(args.cocycle)
    x, _ = build_extension(c)
    data = io.extension_to_data(x)
    if args.output:
        io.save(args.output, data)
        _emit({"written": str(args.output), "dim": x.e.dim})
    else:
        _emit(data)
    return 0


def cmd_extract(args) -> int:
    x = io.load_extension(args.extension)
    if args.section:
        s = io.parse_section(io.load_json(args.section), x, "section", str(args.section))
    else:
        s = canonical_section(x)
    c = extract_cocycle(x, s)
    _emit(io.cocycle_to_data(c))
    return 0


def cmd_equivalent(args) -> int:
    data_a = io.load_json(args.a)
    data_b = io.load_json(args.b)
    kind_a = io.detect_kind(data_a)
    kind_b = io.detect_kind(data_b)
    if kind_a != kind_b:
        raise ParseError(f"cannot compare a {kind_a} with a {kind_b}")
    budget = _budget(args)
    if kind_a == "cocycle":
        c1 = io.load_cocycle(args.a)
        c2 = io.load_cocycle(args.b)
        res = solve_cocycle_equivalence(c1, c2, budget=budget)
        payload = {
            "verdict": {Verdict.YES: "equivalent", Verdict.NO: "not_equivalent",
                        Verdict.UNDECIDED: "undecided"}[res.verdict],
            "witness": io.matrix_to_data(res.phi) if res.phi is not None else None,
            "failing_condition": res.failing_condition,
            "detail": res.detail,
        }
        _emit(payload)
        return _VERDICT_EXIT[res.verdict]
    if kind_a == "extension":
        x1 = io.load_extension(args.a)
        x2 = io.load_extension(args.b)
        res = check_extension_equivalence(x1, x2, budget=budget)
        payload = {
            "verdict": {Verdict.YES: "equivalent", Verdict.NO: "not_equivalent",
                        Verdict.UNDECIDED: "undecided"}[res.verdict],
            "mapping": io.matrix_to_data(res.mapping) if res.mapping is not None else None,
            "failing_condition": res.failing_condition,
            "detail": res.detail,
        }
        _emit(payload)
        return _VERDICT_EXIT[res.verdict]
    raise ParseError(f"cannot compare files of kind {kind_a!r}")


def cmd_inducible(args) -> int:
    x = io.load_extension(args.extension)
    pair = io.parse_pair(io.load_json(args.pair), x, "pair", str(args.pair))
    if args.witness:
        lam = io.parse_witness(io.load_json(args.witness), x, "witness", str(args.witness))
        s = canonical_section(x)
        ok = verify_inducibility_witness(x, s, pair, lam)
        _emit({"witness_valid": ok})
        return 0 if ok else 1
    res = decide_inducible(x, pair, budget=_budget(args))
    payload = {
        "verdict": {Verdict.YES: "inducible", Verdict.NO: "not_inducible",
                    Verdict.UNDECIDED: "undecided"}[res.verdict],
        "gamma": io.matrix_to_data(res.gamma) if res.gamma is not None else None,
        "failing_condition": (f"({res.failing_condition})"
                              if res.failing_condition else None),
        "detail": res.detail,
    }
    _emit(payload)
    return _VERDICT_EXIT[res.verdict]


def cmd_wells(args) -> int:
    x = io.load_extension(args.extension)
    budget = _budget(args)
    if args.pair:
        pair = io.parse_pair(io.load_json(args.pair), x, "pair", str(args.pair))
        res = wells_is_trivial(x, pair, budget=budget)
    elif args.alpha:
        data = io.load_json(args.alpha)
        if not isinstance(data, dict) or "alpha" not in data:
            raise ParseError("alpha file needs an 'alpha' matrix", source=str(args.alpha))
        alpha = io.parse_matrix(data["alpha"], x.e.field, x.g.dim, x.g.dim,
                                "alpha", str(args.alpha))
        res = wells_restricted_g(x, alpha, budget=budget)
    else:
        data = io.load_json(args.beta)
        if not isinstance(data, dict) or "beta" not in data:
            raise ParseError("beta file needs a 'beta' matrix", source=str(args.beta))
        beta = io.parse_matrix(data["beta"], x.e.field, x.h.dim, x.h.dim,
                               "beta", str(args.beta))
        res = wells_restricted_h(x, beta, budget=budget)
    payload = {
        "verdict": {Verdict.YES: "trivial", Verdict.NO: "nontrivial",
                    Verdict.UNDECIDED: "undecided"}[res.verdict],
        "witness": io.matrix_to_data(res.phi) if res.phi is not None else None,
        "failing_condition": res.failing_condition,
        "detail": res.detail,
    }
    _emit(payload)
    return _VERDICT_EXIT[res.verdict]


def cmd_exactness(args) -> int:
    x = io.load_extension(args.extension)
    report = check_wells_exactness(x, budget=_budget(args))
    _emit(io.report_to_data(report, x.e.field))
    return 0 if report.ok else 1


def cmd_semidirect(args) -> int:
    r = io.load_representation(args.rep)
    e = semidirect_product(r)
    f = r.field
    n, m = r.gdim, r.hdim
    i = Matrix.from_rows(f, [[f.zero] * m for _ in range(n)]
                         + [[f.one if a == b else f.zero for b in range(m)] for a in range(m)])
    p = Matrix.from_rows(f, [[f.one if i_ == j else f.zero for j in range(n)] + [f.zero] * m
                             for i_ in range(n)])
    from .nonabelian import Extension

    x = Extension(e=e, i=i, p=p, g=r.base, h=r.coefficient_algebra())
    data = io.extension_to_data(x)
    if args.output:
        io.save(args.output, data)
        _emit({"written": str(args.output), "dim": e.dim})
    else:
        _emit(data)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rbx",
        description="Exact computations with Rota-Baxter Lie algebra extensions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="validate an algebra, representation, cocycle, or extension file")
    s.add_argument("file")
    s.set_defaults(handler=cmd_validate)

    s = sub.add_parser("cohomology", help="dimensions of the degree-2 combined cohomology")
    s.add_argument("--rep", required=True)
    s.add_argument("--degree", type=int, default=2)
    s.set_defaults(handler=cmd_cohomology)

    s = sub.add_parser("derivations", help="basis of operator-compatible module derivations")
    s.add_argument("--rep", required=True)
    s.set_defaults(handler=cmd_derivations)

    s = sub.add_parser("extend", help="build the extension determined by a cocycle")
    s.add_argument("--cocycle", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(handler=cmd_extend)

    s = sub.add_parser("extract", help="extract the twisting cocycle of an extension")
    s.add_argument("--extension", required=True)
    s.add_argument("--section")
    s.set_defaults(handler=cmd_extract)

    s = sub.add_parser("equivalent", help="decide equivalence of two cocycles or two extensions")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--budget", type=int)
    s.set_defaults(handler=cmd_equivalent)

    s = sub.add_parser("inducible", help="decide inducibility of an automorphism pair")
    s.add_argument("--extension", required=True)
    s.add_argument("--pair", required=True)
    s.add_argument("--witness")
    s.add_argument("--budget", type=int)
    s.set_defaults(handler=cmd_inducible)

    s = sub.add_parser("wells", help="triviality of the obstruction class of a pair")
    s.add_argument("--extension", required=True)
    group = s.add_mutually_exclusive_group(required=True)
    group.add_argument("--pair")
    group.add_argument("--alpha")
    group.add_argument("--beta")
    s.add_argument("--budget", type=int)
    s.set_defaults(handler=cmd_wells)

    s = sub.add_parser("exactness", help="verify the induced exact sequences by enumeration")
    s.add_argument("--extension", required=True)
    s.add_argument("--budget", type=int)
    s.set_defaults(handler=cmd_exactness)

    s = sub.add_parser("semidirect", help="split extension of a representation")
    s.add_argument("--rep", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(handler=cmd_semidirect)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as exc:
        _emit({"error": {"kind": "parse", "message": str(exc)}})
        return 3
    except InvalidStructure as exc:
        _emit({"error": {"kind": "invalid_input", "message": str(exc)}})
        return 3
    except BudgetExceeded as exc:
        _emit({"error": {"kind": "budget_exceeded", "message": str(exc),
                         "required": exc.required, "budget": exc.budget}})
        return 4


if __name__ == "__main__":
    sys.exit(main())
