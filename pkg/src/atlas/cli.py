"""Command-line entry point: ``atlas <command> [options]``.

Exit codes: 0 success, 1 error or failed check, 2 classify found the maps
not equivalent.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field

from .exactnum import format_number, parse_number, to_number
from .invarings import catalog_json, exceptional_rows, family_instances, lookup_row, verify_basic_pair, verify_branch_row
from .polyring import INFINITE, parse_poly
from .propermaps import (
    PolyMap,
    classify,
    critical_locus,
    degree_report,
    milnor_multiset,
    parse_map_spec,
    properness_test,
    verify_branch_containment,
)
from .refgroups import (
    count_reflections,
    expected_reflections,
    group_from_spec,
    parse_group_spec,
    verify_presentation,
)
from .reproduce import TARGETS, Check, run
from .singular import (
    NotInGamma,
    gamma_membership,
    kang_tag,
    milnor_brieskorn,
    milnor_plane,
    ordinary_point_form,
    quartic_cross_ratio_invariant,
)

SCHEMA = 1


@dataclass
class RunReport:
    command: str
    checks: list = field(default_factory=list)
    result: dict = field(default_factory=dict)
    exit_code: int | None = None
    elapsed_ms: float | None = None

    @property
    def status(self) -> str:
        return "ok" if all(c.passed for c in self.checks) else "failed"

    def code(self) -> int:
        if self.exit_code is not None:
            return self.exit_code
        return 0 if self.status == "ok" else 1

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA,
            "command": self.command,
            "status": self.status,
            "checks": [c.to_json() for c in sorted(self.checks, key=lambda c: c.name)],
            "result": self.result,
        }
        if self.elapsed_ms is not None:
            out["timing_ms"] = round(self.elapsed_ms, 1)
        return out

    def render(self) -> str:
        lines = []
        for key in sorted(self.result):
            value = self.result[key]
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=True)
            lines.append(f"{key}: {value}")
        for c in sorted(self.checks, key=lambda c: c.name):
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"{mark} {c.name} (expected {c.expected}, got {c.actual})")
        if self.checks:
            npass = sum(c.passed for c in self.checks)
            lines.append(f"{npass}/{len(self.checks)} checks passed")
        lines.append(f"status: {self.status}")
        if self.elapsed_ms is not None:
            lines.append(f"time: {self.elapsed_ms / 1000:.2f} s")
        return "\n".join(lines)


def _num(v):
    if v is INFINITE:
        return "infinite"
    if isinstance(v, int):
        return v
    return format_number(v)


def _load_map(text: str) -> PolyMap:
    if os.path.isfile(text):
        with open(text) as fh:
            return PolyMap.from_json(json.load(fh))
    return parse_map_spec(text)


# commands

def cmd_group(args) -> RunReport:
    spec = parse_group_spec(args.spec)
    report = RunReport("group", result={"group": spec.name, "spec": spec.to_json()})
    every = not (args.verify_order or args.verify_presentation or args.count_reflections)
    g = group_from_spec(spec)
    report.result["order"] = g.order
    if every or args.verify_order:
        report.checks.append(Check("order", spec.expected_order, g.order))
    if every or args.count_reflections:
        n = count_reflections(g)
        report.result["reflections"] = n
        report.checks.append(Check("reflections", expected_reflections(spec), n))
    if spec.kind == "exceptional" and (every or args.verify_presentation):
        pres = verify_presentation(g, spec)
        report.result["presentation"] = pres.to_json()
        for rel, ok in pres.relations.items():
            report.checks.append(Check(f"relation {rel}", True, ok))
        report.checks.append(Check("(ST)^p = Z^k3 for some p", True, bool(pres.satisfying_p)))
    return report


def cmd_normal_forms(args) -> RunReport:
    report = RunReport("table4")
    if args.row:
        rows = [lookup_row(args.row)]
    elif args.verify_all:
        rows = exceptional_rows() + family_instances(args.max_m)
    else:
        report.result = catalog_json()
        return report
    for row in rows:
        pr = verify_basic_pair(row.pair)
        br = verify_branch_row(row)
        report.checks.append(Check(f"{row.name}/basic invariants", True, pr.ok))
        report.checks.append(Check(f"{row.name}/branch divisibility", True, br.divides))
        entry = {"row": row.to_json(), "pair": pr.to_json(), "branch": br.to_json()}
        report.result[row.name] = entry
    return report


def cmd_map(args) -> RunReport:
    source = args.file or args.spec
    if not source:
        raise ValueError("map analyze needs --file or --spec")
    f = _load_map(source)
    mode = args.degree or ("modp" if args.modp else "exact")
    report = RunReport("map analyze", result={"map": f.to_json()})
    deg = degree_report(f, mode, args.seed)
    report.result["degree"] = deg.degree
    report.result["degree_mode"] = mode
    report.result["degree_samples"] = deg.to_json()
    if args.crit:
        jac = critical_locus(f)
        report.result["jacobian"] = str(jac)
        if f.n == 2:
            ms, note = milnor_multiset(f)
            report.result["critical_milnor"] = ms if ms is not None else note
    if args.proper:
        report.result["proper"] = properness_test(f).to_json()
    if args.branch:
        ok = verify_branch_containment(f, parse_poly(args.branch, 2))
        report.checks.append(Check("branch containment", True, ok))
    return report


def cmd_classify(args) -> RunReport:
    f, g = _load_map(args.left), _load_map(args.right)
    mode = "modp" if args.modp else "exact"
    res = classify(f, g, mode, args.seed)
    report = RunReport("classify", result=res.to_json())
    if res.verdict == "NotEquivalent":
        report.exit_code = 2
    return report


def cmd_milnor(args) -> RunReport:
    report = RunReport("milnor")
    if args.brieskorn:
        d, *a = args.brieskorn
        res = milnor_brieskorn(d, a)
        report.result = {"d": d, "a": a, **res.to_json()}
    elif args.poly:
        res = milnor_plane(parse_poly(args.poly, 2))
        report.result = {"poly": args.poly, **res.to_json()}
    else:
        raise ValueError("milnor needs --poly or --brieskorn")
    return report


def cmd_gamma(args) -> RunReport:
    lam = to_number(parse_number(args.lam))
    member = gamma_membership(args.d, lam)
    report = RunReport("gamma", result={"d": args.d, "lambda": format_number(lam), "in_gamma": member})
    if member and args.d >= 4:
        report.result["kang_tag"] = _num(kang_tag(args.d, lam))
    if member and args.d == 4:
        i, j = quartic_cross_ratio_invariant(lam)
        report.result["quartic_invariants"] = {"I": _num(i), "J": _num(j)}
    if member and args.d >= 2:
        report.result["milnor"] = _num(milnor_plane(ordinary_point_form(args.d, lam)).milnor)
    return report


def cmd_reproduce(args) -> RunReport:
    checks = run(args.target, args.seed, args.modp)
    return RunReport(f"reproduce {args.target}", checks=checks)


# parser

class _Parser(argparse.ArgumentParser):
    # exit code 2 is reserved for NotEquivalent
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--json", action="store_true", default=default if suppress else False,
                        help="emit a JSON report")
    parser.add_argument("--seed", type=int, default=default if suppress else 0,
                        help="seed for randomized degree and certificate checks")
    parser.add_argument("--modp", action="store_true", default=default if suppress else False,
                        help="use the modular fast path for fibre counting")
    parser.add_argument("--timing", action="store_true", default=default if suppress else False,
                        help="include wall-clock time in the report")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="atlas", description="Finite reflection groups in dimension two "
                                     "and the proper polynomial maps they define.")
    _global_options(parser, suppress=False)
    common = _Parser(add_help=False)
    _global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", parents=[common], help="build and check a reflection group")
    p.add_argument("--spec", required=True, help='e.g. ST4, "G(4,2,2)", Z2xZ3, Z5')
    p.add_argument("--verify-order", action="store_true")
    p.add_argument("--verify-presentation", action="store_true")
    p.add_argument("--count-reflections", action="store_true")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("table4", parents=[common], help="normal-form rows: invariants and branch curves")
    p.add_argument("--verify-all", action="store_true")
    p.add_argument("--row", help="row name, e.g. ft8 or f_4,2,2")
    p.add_argument("--max-m", type=int, default=6, help="largest m for family rows under --verify-all")
    p.set_defaults(func=cmd_normal_forms)

    p = sub.add_parser("map", parents=[common], help="analyze a polynomial map")
    msub = p.add_subparsers(dest="action", required=True)
    a = msub.add_parser("analyze", parents=[common])
    a.add_argument("--file", help="JSON map file")
    a.add_argument("--spec", help='inline map, e.g. "thmB:3,2" or ft8')
    a.add_argument("--degree", choices=["exact", "modp"])
    a.add_argument("--crit", action="store_true", help="report the critical locus")
    a.add_argument("--proper", action="store_true", help="run the properness certificates")
    a.add_argument("--branch", help="check that the critical values lie on this curve")
    a.set_defaults(func=cmd_map)

    p = sub.add_parser("classify", parents=[common], help="compare two maps by their invariants")
    p.add_argument("--left", required=True, help="JSON map file or inline spec")
    p.add_argument("--right", required=True, help="JSON map file or inline spec")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("milnor", parents=[common], help="Milnor number at the origin")
    p.add_argument("--poly", help="bivariate polynomial in x, y")
    p.add_argument("--brieskorn", type=int, nargs="+", metavar="N", help="d a1 a2 ...")
    p.set_defaults(func=cmd_milnor)

    p = sub.add_parser("gamma", parents=[common], help="ordinary d-fold point y^d + lambda x^(d-1) y + x^d")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("reproduce", parents=[common], help="batch verification")
    p.add_argument("target", choices=list(TARGETS) + ["all"])
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        report = args.func(args)
    except (ValueError, ArithmeticError, RuntimeError, NotImplementedError, KeyError, OSError, NotInGamma) as exc:
        if args.json:
            print(json.dumps({"schema": SCHEMA, "status": "error", "error": f"{type(exc).__name__}: {exc}"},
                             indent=2, sort_keys=True))
        else:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.timing:
        report.elapsed_ms = (time.perf_counter() - start) * 1000
    if args.json:
        print(json.dumps(report.to_json(), indent=2, sort_keys=True, default=str))
    else:
        print(report.render())
    return report.code()


if __name__ == "__main__":
    sys.exit(main())
