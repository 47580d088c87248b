"""Command-line front end.

Exit codes: 0 success, 2 usage or input error, 3 I/O failure,
4 internal-consistency failure, 5 infeasible certificate problem.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds as bnd
from .certificates import (
    bound_text,
    derive_bound,
    optimize_certificate,
    theorem1_certificate,
)
from .core import format_rational, parse_rational
from .errors import (
    EmptyFeasibleRegion,
    IdentityViolation,
    ProjarrError,
    UnboundedObjective,
)
from .generators import FamilySpec, dumps_arrangement, read_arrangement
from .inequalities import check_all, get_builtin, load_spec
from .profile import compute_profile, region_count_oracle

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INTERNAL = 4
EXIT_INFEASIBLE = 5


class CliError(Exception):
    def __init__(self, message, code=EXIT_USAGE):
        super().__init__(message)
        self.code = code


class _Fmt:
    def __init__(self, decimal=False):
        self.decimal = decimal

    def __call__(self, value) -> str:
        if value is None:
            return "-"
        value = Fraction(value)
        if self.decimal and value.denominator != 1:
            return f"{float(value):.6g}"
        return format_rational(value)


def _emit_json(obj) -> None:
    print(json.dumps(obj))


# -- generate ------------------------------------------------------------------

def cmd_generate(args) -> int:
    try:
        spec = FamilySpec(args.family, args.n, args.seed)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    arr = spec.build()
    text = dumps_arrangement(arr)
    if args.out is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        Path(args.out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot write {args.out}: {exc}", EXIT_IO) from exc
    print(f"{spec.family} n={spec.n} -> {args.out}")
    return EXIT_OK


# -- analyze -------------------------------------------------------------------

def cmd_analyze(args) -> int:
    try:
        arr = read_arrangement(args.path)
    except OSError as exc:
        raise CliError(f"cannot read {args.path}: {exc}", EXIT_IO) from exc
    if arr.n < 2:
        raise CliError("analysis needs at least two lines")
    fmt = _Fmt(args.decimal)
    profile = compute_profile(arr)
    f_oracle = region_count_oracle(arr)
    reports = check_all(profile)
    pair_ok = profile.pair_sum() == arr.n * (arr.n - 1)
    violated = [r.name for r in reports if r.assertable and r.applicable and not r.satisfied]
    status = EXIT_OK if (f_oracle == profile.f and pair_ok and not violated) else EXIT_INTERNAL

    if args.json:
        _emit_json({
            "label": arr.label,
            "profile": profile.to_dict(),
            "f_oracle": f_oracle,
            "pair_identity": pair_ok,
            "inequalities": [r.to_dict() for r in reports],
        })
        return status

    print(f"arrangement: {arr.label or '(unlabelled)'}  n={profile.n}  m={profile.m}")
    print("t_k:")
    for k, v in profile.t.items():
        print(f"  k={k:<3d} {v}")
    print(f"f (formula) = {profile.f}")
    print(f"f (oracle)  = {f_oracle}  [{'agree' if f_oracle == profile.f else 'DISAGREE'}]")
    print(f"pair identity: sum k(k-1)t_k = {profile.pair_sum()}, n(n-1) = {arr.n * (arr.n - 1)}"
          f"  [{'ok' if pair_ok else 'FAILED'}]")
    print("inequalities:")
    width = max(len(r.name) for r in reports)
    for r in reports:
        if not r.applicable:
            verdict = "inapplicable"
        elif not r.assertable:
            verdict = f"{'holds' if r.satisfied else 'fails'} ({r.note})"
        else:
            verdict = "satisfied" if r.satisfied else "VIOLATED"
        print(f"  {r.name:<{width}}  lhs={fmt(r.lhs)}  rhs={fmt(r.rhs)}  slack={fmt(r.slack)}  {verdict}")
    return status


# -- bounds --------------------------------------------------------------------

def cmd_bounds(args) -> int:
    try:
        report = bnd.all_bounds(args.n, args.m)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if args.json:
        _emit_json(report.to_dict())
        return EXIT_OK
    fmt = _Fmt(args.decimal)
    print(f"lower bounds on f for n={report.n}, m={report.m}")
    width = max(len(r.name) for r in report.results)
    for r in report.results:
        if r.applicable:
            shown = fmt(r.value)
            if args.ceil:
                shown += f"  (ceil {math.ceil(r.value)})"
            if r.note:
                shown += f"  [{r.note}]"
        else:
            shown = "inapplicable"
        print(f"  {r.name:<{width}}  {shown:<24}  guard: {r.guard}")
    print(f"best: {', '.join(report.best)}")
    return EXIT_OK


# -- certify -------------------------------------------------------------------

def _resolve_spec(name_or_path: str):
    try:
        return get_builtin(name_or_path)
    except KeyError:
        pass
    path = Path(name_or_path)
    if not path.exists():
        raise CliError(f"unknown inequality {name_or_path!r} (not a builtin name or a file)")
    try:
        return load_spec(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from exc


def cmd_certify(args) -> int:
    spec = _resolve_spec(args.ineq)
    if args.m < 2:
        raise CliError("--m must be at least 2")
    objective = args.objective.replace("-", "_")
    if objective == "at_n" and args.n is None:
        raise CliError("--objective at-n requires --n")
    try:
        cert = optimize_certificate(spec, args.m, objective, n=args.n)
    except (EmptyFeasibleRegion, UnboundedObjective) as exc:
        raise CliError(str(exc), EXIT_INFEASIBLE) from exc

    reference = theorem1_certificate(args.m) if spec.name == "bojanowski" else None
    value = None
    if args.n is not None:
        value = derive_bound(cert, spec, args.n)

    if args.json:
        out = cert.to_dict(spec)
        out["objective"] = objective
        if reference is not None:
            out["theorem1_certificate"] = {"c1": format_rational(reference.c1), "c2": format_rational(reference.c2)}
            out["matches_theorem1"] = cert.same_pair(reference)
        if value is not None:
            out["n"] = args.n
            out["value"] = format_rational(value)
        _emit_json(out)
        return EXIT_OK

    fmt = _Fmt(args.decimal)
    print(f"inequality: {spec.name}  m={args.m}  objective={objective}")
    print(f"c1 = {fmt(cert.c1)}")
    print(f"c2 = {fmt(cert.c2)}")
    if not cert.uses_inequality:
        print("note: c2 = 0, incidence inequality unused")
    print("slacks (k-1) - c1*k(k-1) - c2*alpha_k:")
    for k, s in cert.slacks.items():
        print(f"  k={k:<3d} {fmt(s)}{'  tight' if s == 0 else ''}")
    print(f"bound: f >= {bound_text(spec)}")
    if reference is not None:
        print(f"Theorem 1 certificate: c1 = {fmt(reference.c1)}, c2 = {fmt(reference.c2)}")
        print(f"matches Theorem 1 certificate: {'yes' if cert.same_pair(reference) else 'no'}")
    if value is not None:
        print(f"bound at n={args.n}: {fmt(value)}")
    return EXIT_OK


# -- compare -------------------------------------------------------------------

def _parse_range(text: str) -> range:
    try:
        lo, hi = (int(v) for v in text.split(":"))
    except ValueError as exc:
        raise CliError(f"bad range {text!r}; expected LO:HI") from exc
    if lo > hi:
        raise CliError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _parse_grid(text: str):
    if text == "default":
        return bnd.DEFAULT_DOMINANCE_N, bnd.DEFAULT_DOMINANCE_M
    try:
        n_part, m_part = text.split(":")
        ns = [int(v) for v in n_part.split(",")]
        ms = []
        for tok in m_part.split(","):
            tok = tok.strip()
            if tok.startswith("n/"):
                d = int(tok[2:])
                ms.append(lambda n, d=d: n // d)
            else:
                ms.append(int(tok))
    except ValueError as exc:
        raise CliError(f"bad grid {text!r}; expected 'default' or N1,N2:M1,M2,n/5") from exc
    return ns, ms


def _parse_brackets(text: str):
    try:
        out = []
        for pair in text.split(";"):
            lo, hi = (parse_rational(v.strip()) for v in pair.split(","))
            out.append((lo, hi))
        return tuple(out)
    except (ValueError, ProjarrError) as exc:
        raise CliError(f"bad brackets {text!r}; expected LO,HI;LO,HI") from exc


def _compare_m6(args, fmt):
    rows = bnd.m6_equality(_parse_range(args.n_range))
    ok = all(a == b for _, a, b in rows)
    if args.json:
        _emit_json({
            "mode": "m6-equality",
            "rows": [{"n": n, "theorem1": format_rational(a), "shnurnikov_quadratic": format_rational(b),
                      "equal": a == b} for n, a, b in rows],
            "passed": ok,
        })
    else:
        for n, a, b in rows:
            print(f"n={n:<5d} theorem1={fmt(a):<12} shnurnikov_quadratic={fmt(b):<12} "
                  f"{'PASS' if a == b else 'FAIL'}")
        print(f"m=6 equality: {'PASS' if ok else 'FAIL'} ({len(rows)} values of n)")
    return ok


def _compare_crossover(args, fmt):
    checks = bnd.crossover_brackets(args.n, _parse_brackets(args.brackets) if args.brackets
                                    else bnd.DEFAULT_BRACKETS)
    extra = bnd.crossover_scan([parse_rational(p) for p in args.p], args.n) if args.p else []
    ok = all(c.passed for c in checks)
    if args.json:
        _emit_json({
            "mode": "crossover",
            "n": args.n,
            "brackets": [c.to_dict() for c in checks],
            "scan": [r.to_dict() for r in extra],
            "passed": ok,
        })
        return ok

    def show(r):
        flag = "" if r.theorem1_applicable else "  (m > 2n/3: expression only)"
        return (f"p={fmt(r.p):<6} m={r.m:<6d} theorem1={fmt(r.theorem1):<16} "
                f"arnold_purdy={fmt(r.arnold_purdy):<10} dominant={r.dominant}{flag}")

    for c in checks:
        print(show(c.low))
        print(show(c.high))
        print(f"  flip {c.expected[0]} -> {c.expected[1]}: {'PASS' if c.passed else 'FAIL'}")
    for r in extra:
        print(show(r))
    print(f"crossover at n={args.n}: {'PASS' if ok else 'FAIL'}")
    return ok


def _compare_dominance(args, fmt):
    ns, ms = _parse_grid(args.grid)
    report = bnd.dominance_region_check(ns, ms)
    if args.json:
        _emit_json({
            "mode": "dominance",
            "rows": [{"n": r.n, "m": r.m, "theorem1": format_rational(r.theorem1),
                      "runner_up": r.runner_up, "runner_up_value": format_rational(r.runner_up_value),
                      "strict": r.strict} for r in report.rows],
            "passed": report.passed,
        })
    else:
        for r in report.rows:
            print(f"n={r.n:<5d} m={r.m:<4d} theorem1={fmt(r.theorem1):<14} "
                  f"next={r.runner_up} {fmt(r.runner_up_value):<14} {'PASS' if r.strict else 'FAIL'}")
        print(f"dominance for 7 <= m <= n/5: {'PASS' if report.passed else 'FAIL'}")
    return report.passed


def cmd_compare(args) -> int:
    fmt = _Fmt(args.decimal)
    modes = {"m6-equality": _compare_m6, "crossover": _compare_crossover, "dominance": _compare_dominance}
    try:
        ok = modes[args.mode](args, fmt)
    except ProjarrError as exc:
        if isinstance(exc, IdentityViolation):
            raise
        raise CliError(str(exc)) from exc
    return EXIT_OK if ok else EXIT_INTERNAL


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="projarr",
        description="Exact analysis of projective line arrangements and region lower bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--decimal", action="store_true", help="show non-integers as 6-digit decimals")

    p = sub.add_parser("generate", help="write an arrangement from a named family")
    p.add_argument("--family", required=True, choices=["pencil", "near-pencil", "near_pencil", "generic", "random"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", default=None, help="output path (stdout if omitted)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("analyze", help="profile, region count and incidence inequalities of a file")
    p.add_argument("path")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("bounds", help="every catalogued lower bound for given n and m")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--ceil", action="store_true", help="also show integer ceilings")
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("certify", help="optimal (c1, c2) certificate for an inequality")
    p.add_argument("--ineq", required=True, help="builtin name or path to a custom inequality JSON")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--objective", default="lexicographic", choices=["lexicographic", "at-n", "at_n"])
    p.add_argument("--n", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("compare", help="check the comparison claims between bounds")
    p.add_argument("--mode", required=True, choices=["crossover", "dominance", "m6-equality"])
    p.add_argument("--n", type=int, default=6000, help="line count for crossover")
    p.add_argument("--n-range", default="9:100", help="LO:HI for m6-equality")
    p.add_argument("--grid", default="default", help="'default' or N1,N2:M1,M2,n/5 for dominance")
    p.add_argument("--brackets", default=None, help="LO,HI;LO,HI p-brackets for crossover")
    p.add_argument("--p", nargs="*", default=[], help="extra p values to scan in crossover mode")
    common(p)
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except IdentityViolation as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (EmptyFeasibleRegion, UnboundedObjective) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ProjarrError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
