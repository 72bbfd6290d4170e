"""Command-line front end.

Exit codes: 0 success, 1 a checked property failed (a counterexample is
rendered), 2 malformed input or flags.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import curve as curve_mod
from . import idealizer as ideal_mod
from . import torsion as torsion_mod
from .errors import InputError, PropertyViolation, WeylkitError
from .linalg import format_rational, to_rational
from .parse import parse_poly, parse_toperator, parse_weyl
from .weyl import act, weyl_mul

DEFAULT_MAX_LEVEL = 16


def max_level() -> int:
    raw = os.environ.get("WEYLKIT_MAX_LEVEL", str(DEFAULT_MAX_LEVEL))
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"WEYLKIT_MAX_LEVEL must be an integer, got {raw!r}") from None


def _level(value: int, name: str) -> int:
    if value < 0:
        raise InputError(f"--{name} must be >= 0")
    cap = max_level()
    if value > cap:
        raise InputError(f"--{name}={value} exceeds WEYLKIT_MAX_LEVEL={cap}")
    return value


def _pair(text: str, name: str, cast=int) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise InputError(f"--{name} expects two comma-separated values, got {text!r}")
    try:
        return cast(parts[0]), cast(parts[1])
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--{name}: cannot parse {text!r}") from None


def _curve_from_args(args):
    """Resolve exactly one of --f / --curve into (CurvePoly, inputs dict)."""
    f_text = getattr(args, "f", None)
    pair = getattr(args, "curve", None)
    if (f_text is None) == (pair is None):
        raise InputError("give exactly one of --f POLY or --curve A,B")
    if pair is not None:
        a, b = _pair(pair, "curve")
        mc = curve_mod.MonomialCurve(a, b)
        return ideal_mod.CurvePoly(mc.f), {"curve": [a, b], "f": str(mc.f)}
    c = ideal_mod.CurvePoly(parse_poly(f_text))
    return c, {"f": str(c.f)}


def _point(args):
    if getattr(args, "point", None) is None:
        return None
    return _pair(args.point, "point", cast=to_rational)


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


# subcommand handlers: each returns (inputs, results, violations) -------------


def cmd_weyl_eval(args):
    theta, p = parse_weyl(args.op), parse_poly(args.poly)
    return {"op": str(theta), "poly": str(p)}, [{"result": str(act(theta, p))}], []


def cmd_weyl_mul(args):
    lhs, rhs = parse_weyl(args.lhs), parse_weyl(args.rhs)
    return {"lhs": str(lhs), "rhs": str(rhs)}, [{"result": str(weyl_mul(lhs, rhs))}], []


def cmd_idealizer_member(args):
    c, inputs = _curve_from_args(args)
    theta = parse_weyl(args.op)
    inputs["op"] = str(theta)
    if args.g is not None:
        g = parse_poly(args.g)
        inputs["g"] = str(g)
        member = ideal_mod.colon_member(theta, c, g)
    else:
        member = ideal_mod.idealizer_member(theta, c)
    row = {"member": member}
    if args.g is None and not member:
        w = ideal_mod.action_witness(theta, c)
        row["witness"] = list(w) if w else None
    return inputs, [row], []


def cmd_idealizer_basis(args):
    c, inputs = _curve_from_args(args)
    n = _level(args.n, "n")
    inputs["n"] = n
    pt = _point(args)
    if pt is not None:
        inputs["point"] = [format_rational(pt[0]), format_rational(pt[1])]
        basis = ideal_mod.point_colon_basis(c, pt[0], pt[1], n)
    else:
        basis = ideal_mod.idealizer_filtered_basis(c, n)
    return inputs, [{"n": n, "dim": basis.dim, "elements": basis.as_strings()}], []


def cmd_idealizer_dims(args):
    c, inputs = _curve_from_args(args)
    top = _level(args.max_deg, "max-deg")
    inputs["max_deg"] = top
    results = [{"n": r["n"], "dim": r["dim"]} for r in ideal_mod.idealizer_dims(c, top)]
    if args.quotient:
        results = [
            {**r, "quotient_dim": q["quotient_dim"]}
            for r, q in zip(results, ideal_mod.idealizer_dims(c, top))
        ]
    return inputs, results, []


def cmd_torsion_dims(args):
    c, inputs = _curve_from_args(args)
    top = _level(args.max_n, "max-n")
    inputs["max_n"] = top
    pt = _point(args)
    if pt is not None:
        inputs["point"] = [format_rational(pt[0]), format_rational(pt[1])]
        table = torsion_mod.point_module_dims(c, pt[0], pt[1], top)
    else:
        table = torsion_mod.growth_table(c, top)
    inputs["stable_from"] = table.stable_from
    inputs["slope"] = table.slope
    return inputs, table.rows, []


def cmd_torsion_check(args):
    c, inputs = _curve_from_args(args)
    top = _level(args.max_n, "max-n")
    inputs["max_n"] = top
    results, violations = [], []

    def record(rep):
        results.append(rep.as_dict())
        if not rep.ok:
            violations.append(rep.as_dict())

    for n in range(top + 1):
        record(torsion_mod.bound_check(c, n, raise_on_failure=False))
        if n >= c.N:
            record(torsion_mod.independence_check(c, n, raise_on_failure=False))
            record(torsion_mod.leading_term_check(c, n, raise_on_failure=False))
    table = torsion_mod.growth_table(c, top)
    if top >= c.N + 1:
        growth = {
            "check": "growth",
            "f": str(c.f),
            "n": top,
            "ok": table.stable_from is not None and table.stable_from <= c.N,
            "stable_from": table.stable_from,
            "slope": table.slope,
        }
        results.append(growth)
        if not growth["ok"]:
            violations.append(growth)
    if args.filtration is not None:
        fm = _level(args.filtration, "filtration")
        inputs["filtration"] = fm
        for n in range(fm + 1):
            for m in range(fm + 1):
                record(torsion_mod.filtration_action_check(c, n, m, raise_on_failure=False))
    return inputs, results, violations


def cmd_torsion_probe(args):
    c, inputs = _curve_from_args(args)
    n0 = _level(args.n0, "n0")
    m_max = _level(args.m_max, "m-max")
    cap = _level(args.cap if args.cap is not None else n0, "cap")
    inputs.update({"n0": n0, "m_max": m_max, "cap": cap, "shift": args.shift})
    rep = torsion_mod.generation_probe(c, n0, m_max, cap=cap, shift=args.shift)
    # heuristic: a missing witness is reported, never a violation
    return inputs, [rep.as_dict()], []


def cmd_curve_dmod_basis(args):
    a, b = _pair(args.curve, "curve")
    mc = curve_mod.MonomialCurve(a, b)
    order = _level(args.order, "order")
    K, L = _pair(args.window, "window")
    _level(K, "window"), _level(L, "window")
    ops = curve_mod.dmod_box_basis(mc.semigroup, order, (K, L))
    inputs = {"curve": [a, b], "order": order, "window": [-K, L]}
    results = [{"operator": str(D), "order": D.order, "preserves": curve_mod.preserves_ring(D, mc.semigroup)} for D in ops]
    violations = [r for r in results if not r["preserves"]]
    return inputs, results, violations


def cmd_curve_correspond(args):
    a, b = _pair(args.curve, "curve")
    mc = curve_mod.MonomialCurve(a, b)
    top = _level(args.n, "n")
    results, violations = [], []
    for n in range(top + 1):
        rep = curve_mod.correspondence_check(mc, n)
        row = rep.as_dict()
        if not args.show_images:
            row.pop("images")
        results.append(row)
        if not rep.ok:
            violations.append({"check": "correspondence", "n": n, "counterexample": rep.counterexample})
    return {"curve": [a, b], "n": top}, results, violations


def cmd_curve_preserves(args):
    a, b = _pair(args.curve, "curve")
    S = curve_mod.MonomialCurve(a, b).semigroup
    D = parse_toperator(args.op)
    fail = curve_mod.preservation_failure(D, S)
    row = {"operator": str(D), "preserves": fail is None}
    if fail is not None:
        row["counterexample"] = {"exponent": fail[0], "lands_on": fail[1]}
    inputs = {"curve": [a, b], "frobenius": S.frobenius, "conductor": S.conductor}
    return inputs, [row], []


# rendering ------------------------------------------------------------------


def render(command: str, inputs: dict, results: list, violations: list, fmt: str) -> str:
    if fmt == "json":
        doc = {"command": command, "inputs": inputs, "results": results, "violations": violations}
        return json.dumps(_jsonable(doc), indent=2) + "\n"
    if fmt == "csv":
        return _render_csv(command, results)
    return _render_text(results, violations)


def _cell(v) -> str:
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, (list, dict)):
        return json.dumps(_jsonable(v))
    if v is None:
        return "-"
    return str(v)


def _render_csv(command: str, results: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if command == "torsion dims":
        writer.writerow(["n", "dim", "bound"])
        for r in results:
            writer.writerow([r["n"], r["dim"], r["bound_cardinality"]])
        return buf.getvalue()
    keys: list = []
    for r in results:
        keys += [k for k in r if k not in keys]
    writer.writerow(keys)
    for r in results:
        writer.writerow([_cell(r.get(k)) for k in keys])
    return buf.getvalue()


def _render_text(results: list, violations: list) -> str:
    lines = []
    if results and all(list(r) == ["result"] for r in results):
        lines = [r["result"] for r in results]
    elif results:
        keys: list = []
        for r in results:
            keys += [k for k in r if k not in keys]
        grid = [keys] + [[_cell(r.get(k)) for k in keys] for r in results]
        widths = [max(len(row[i]) for row in grid) for i in range(len(keys))]
        for row in grid:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    for v in violations:
        lines.append("VIOLATION " + json.dumps(_jsonable(v)))
    return "\n".join(lines) + "\n"


# parser ---------------------------------------------------------------------


def _add_output(p):
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--out", help="write output to FILE instead of stdout")


def _add_curve(p):
    p.add_argument("--f", help="curve polynomial, e.g. 'y^2 - x^3'")
    p.add_argument("--curve", help="monomial curve y^a = x^b given as A,B")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weylkit", description="Exact idealizer and D-module computations in A_2.")
    groups = parser.add_subparsers(dest="group", required=True)

    weyl = groups.add_parser("weyl").add_subparsers(dest="action", required=True)
    p = weyl.add_parser("eval", help="apply an operator to a polynomial")
    p.add_argument("--op", required=True)
    p.add_argument("--poly", required=True)
    p.set_defaults(handler=cmd_weyl_eval)
    p = weyl.add_parser("mul", help="normal-form product")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.set_defaults(handler=cmd_weyl_mul)

    ideal = groups.add_parser("idealizer").add_subparsers(dest="action", required=True)
    p = ideal.add_parser("member")
    _add_curve(p)
    p.add_argument("--op", required=True)
    p.add_argument("--g", help="test the colon ideal (gA2 : fA2) instead")
    p.set_defaults(handler=cmd_idealizer_member)
    p = ideal.add_parser("basis")
    _add_curve(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--point", help="GAMMA,DELTA: basis of ((x-g,y-d)A2 : fA2) instead")
    p.set_defaults(handler=cmd_idealizer_basis)
    p = ideal.add_parser("dims")
    _add_curve(p)
    p.add_argument("--max-deg", type=int, required=True)
    p.add_argument("--quotient", action="store_true", help="also report dim F_n")
    p.set_defaults(handler=cmd_idealizer_dims)

    tors = groups.add_parser("torsion").add_subparsers(dest="action", required=True)
    p = tors.add_parser("dims")
    _add_curve(p)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--point", help="GAMMA,DELTA (default: the origin)")
    p.set_defaults(handler=cmd_torsion_dims)
    p = tors.add_parser("check")
    _add_curve(p)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--filtration", type=int, help="also check M(n)F_m inside M(n+m) for n, m <= this")
    p.set_defaults(handler=cmd_torsion_check)
    p = tors.add_parser("probe")
    _add_curve(p)
    p.add_argument("--n0", type=int, required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--cap", type=int)
    p.add_argument("--shift", type=int)
    p.set_defaults(handler=cmd_torsion_probe)

    crv = groups.add_parser("curve").add_subparsers(dest="action", required=True)
    p = crv.add_parser("dmod-basis")
    p.add_argument("--curve", required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--window", required=True, help="K,L: term shifts t^k dt^i with k-i in [-K, L]")
    p.set_defaults(handler=cmd_curve_dmod_basis)
    p = crv.add_parser("correspond")
    p.add_argument("--curve", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--show-images", action="store_true")
    p.set_defaults(handler=cmd_curve_correspond)
    p = crv.add_parser("preserves")
    p.add_argument("--curve", required=True)
    p.add_argument("--op", required=True)
    p.set_defaults(handler=cmd_curve_preserves)

    for sub in (weyl, ideal, tors, crv):
        for action in sub.choices.values():
            _add_output(action)
    return parser


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    command = f"{args.group} {args.action}"
    try:
        inputs, results, violations = args.handler(args)
    except PropertyViolation as exc:
        inputs, results = {}, []
        violations = [{"check": exc.kind, "message": str(exc), "counterexample": exc.counterexample}]
    except WeylkitError as exc:
        print(f"weylkit: error: {exc}", file=sys.stderr)
        return 2
    text = render(command, inputs, results, violations, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 1 if violations else 0


if __name__ == "__main__":
    sys.exit(main())
