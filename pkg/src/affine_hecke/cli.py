"""Command line entry point: ``hecke <command> ...``.

Exit status is 0 on success, 1 when a check fails or an object cannot be
built, and 2 on usage errors.  Root and simple-reflection indices are
1-based here (``a1``, ``a1+a2``); JSON words are 0-based index arrays.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .calibration import build_graph, tableaux, to_dot
from .hecke import principal_series, verify_defining_relations
from .roots import CartanKind, RootSystem, RootSystemError, build_root_system
from .scalars import parse_rational
from .serialize import (
    dumps,
    graph_to_json,
    rep_to_json,
    report_to_json,
    root_system_to_json,
    shape_to_json,
    skew_to_json,
    weight_to_json,
    word_of,
)
from .skew import SkewShapeError, build_skew_module, classify_calibrated, g2_case2_block
from .suite import SweepConfig, run_acceptance, run_sweep
from .weights import WeightError, real_weight
from .weyl import WeylCapError


class UsageError(Exception):
    pass


def parse_gamma(text: str, rank: int) -> tuple[Fraction, ...]:
    parts = [p for p in text.split(",")]
    if len(parts) != rank:
        raise UsageError(f"--gamma needs {rank} entries, got {len(parts)}")
    out = []
    for pos, p in enumerate(parts, 1):
        try:
            out.append(parse_rational(p))
        except ValueError as exc:
            raise UsageError(f"--gamma entry {pos}: {exc}") from None
    return tuple(out)


def parse_J(rs: RootSystem, text: str) -> frozenset[int]:
    text = text.strip().strip("{}").strip()
    if not text:
        return frozenset()
    try:
        return frozenset(rs.parse_label(tok) for tok in text.split(","))
    except RootSystemError as exc:
        raise UsageError(str(exc)) from None


def _root_system(args) -> RootSystem:
    if args.type is None:
        raise UsageError("--type is required")
    try:
        if args.rank is not None:
            kind = CartanKind(args.type, args.rank)
        else:
            kind = CartanKind.parse(args.type)
    except RootSystemError as exc:
        raise UsageError(str(exc)) from None
    return build_root_system(kind)


def _weight(args):
    rs = _root_system(args)
    if args.gamma is None:
        raise UsageError("--gamma is required")
    return rs, real_weight(rs, parse_gamma(args.gamma, rs.rank))


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---- commands -----------------------------------------------------------
def cmd_roots(args) -> int:
    _emit(dumps(root_system_to_json(_root_system(args))), args.out)
    return 0


def cmd_graph(args) -> int:
    rs, t = _weight(args)
    g = build_graph(rs, t, args.cap)
    _emit(to_dot(g) if args.dot else dumps(graph_to_json(g)), args.out)
    return 0


def cmd_shapes(args) -> int:
    rs, t = _weight(args)
    shapes = classify_calibrated(rs, t, args.cap)
    body = {
        "weight": weight_to_json(t),
        "shapes": [dict(shape_to_json(rs, c.shape), skew=c.skew, reason=c.reason) for c in shapes],
        "summary": {"shapes": len(shapes), "skew": sum(c.skew for c in shapes)},
    }
    _emit(dumps(body), args.out)
    print(f"{len(shapes)} placed shapes, {body['summary']['skew']} skew", file=sys.stderr)
    return 0


def cmd_tableaux(args) -> int:
    rs, t = _weight(args)
    J = parse_J(rs, args.J or "")
    tabs = tableaux(rs, t, J, args.cap)
    _emit(dumps({"weight": weight_to_json(t), "J": [rs.label(k) for k in sorted(J)], "tableaux": [word_of(w) for w in tabs]}), args.out)
    return 0


def cmd_module(args) -> int:
    if args.case_g2_demo:
        b = g2_case2_block(args.cap)
        doc = skew_to_json(b.module)
        doc["block"] = {"w": word_of(b.w), "long": b.long_index + 1, "short": b.short_index + 1}
        _emit(dumps(doc), args.out)
        return 0
    rs, t = _weight(args)
    if args.principal:
        M = principal_series(rs, t, args.cap)
        report = verify_defining_relations(M)
        doc = rep_to_json(M)
        doc["report"] = report_to_json(report)
        _emit(dumps(doc), args.out)
        return 0 if report.ok else 1
    if args.J is None:
        raise UsageError("module needs --J, --principal or --case-g2-demo")
    J = parse_J(rs, args.J)
    mod = build_skew_module(rs, t, J, args.cap, force=args.force_check)
    _emit(dumps(skew_to_json(mod)), args.out)
    if not mod.report.ok:
        print(f"relation check failed: {mod.report.summary()}", file=sys.stderr)
        return 1
    return 0


def cmd_verify(args) -> int:
    if args.acceptance:
        nums = None
        if args.criteria:
            try:
                nums = [int(x) for x in args.criteria.split(",")]
            except ValueError:
                raise UsageError(f"malformed --criteria {args.criteria!r}") from None
            if any(n not in range(1, 9) for n in nums):
                raise UsageError("criteria are numbered 1 to 8")
        results = run_acceptance(nums)
        for r in results:
            print(r.line())
        return 0 if all(r.passed for r in results) else 1
    if not args.config:
        raise UsageError("verify needs --config or --acceptance")
    try:
        with open(args.config) as fh:
            data = json.load(fh)
        config = SweepConfig.from_dict(data)
    except (OSError, ValueError, TypeError, RootSystemError) as exc:
        raise UsageError(f"bad config: {exc}") from None
    if args.jobs:
        config.jobs = args.jobs
    report = run_sweep(config)
    body = report.to_json()
    if not args.full:
        body.pop("cases")
    _emit(dumps(body), args.out)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hecke", description="Calibrated modules of affine Hecke algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, weight=True):
        sp.add_argument("--type", help="Cartan type, e.g. A2 (or A with --rank 2)")
        sp.add_argument("--rank", type=int)
        if weight:
            sp.add_argument("--gamma", help='exponents of the weight, e.g. "2/3,1/3"')
        sp.add_argument("--cap", type=int, help="Weyl group size cap (default HECKE_WEYL_CAP)")
        sp.add_argument("--out", help="write output to this file")

    common(sub.add_parser("roots", help="root system data"), weight=False)
    g = sub.add_parser("graph", help="calibration graph")
    common(g)
    g.add_argument("--dot", action="store_true", help="Graphviz output")
    common(sub.add_parser("shapes", help="placed shapes and whether they are skew"))
    t = sub.add_parser("tableaux", help="standard tableaux of a placed shape")
    common(t)
    t.add_argument("--J", help="comma separated positive roots, e.g. a1,a1+a2")
    m = sub.add_parser("module", help="build a module and check its relations")
    common(m)
    m.add_argument("--J")
    m.add_argument("--principal", action="store_true", help="principal series on the T_w basis")
    m.add_argument("--force-check", action="store_true", help="build even when the shape is not skew")
    m.add_argument("--case-g2-demo", action="store_true", help="the G2 module with a two-dimensional long block")
    v = sub.add_parser("verify", help="run a sweep or the acceptance suite")
    v.add_argument("--config", help="JSON sweep configuration")
    v.add_argument("--acceptance", action="store_true")
    v.add_argument("--criteria", help="comma separated criterion numbers")
    v.add_argument("--jobs", type=int)
    v.add_argument("--full", action="store_true", help="include passing cases in the report")
    v.add_argument("--out")
    return p


COMMANDS = {
    "roots": cmd_roots,
    "graph": cmd_graph,
    "shapes": cmd_shapes,
    "tableaux": cmd_tableaux,
    "module": cmd_module,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"hecke: error: {exc}", file=sys.stderr)
        return 2
    except (SkewShapeError, WeightError, WeylCapError, ValueError) as exc:
        print(f"hecke: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
