"""Command-line interface.

Subcommands: validate, leafspace, decompose, canon, iso, realize, render.
JSON reports go to stdout.  Exit codes: 0 success (or isomorphic), 1
validation failure (or not isomorphic), 2 parse error, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import Side, SurfaceError, is_connected
from .decomposition import (
    Mode,
    Shape,
    canonical_code,
    canonicalize,
    check_cycle_components,
    classify_component,
    component_closures,
    decompose,
    is_isomorphic,
)
from .homeo import realize_half_strip
from .io import ParseError, leafspace_json, parse, render, serialize
from .leafspace import build_leaf_space

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        print(json.dumps({"error": "io", "message": str(e)}))
        raise SystemExit(EXIT_PARSE)
    try:
        return parse(text)
    except ParseError as e:
        print(json.dumps({"error": "parse", "message": str(e)}))
        raise SystemExit(EXIT_PARSE)
    except SurfaceError as e:
        print(json.dumps({"error": "validation", "rule": e.rule, "message": e.message}))
        raise SystemExit(EXIT_INVALID)


def _point_order(ls):
    """Points in first-incidence order: by strip position, side, interval index."""
    order = {}
    rank = 0
    for sid in ls.arcs:
        for side in (Side.LOWER, Side.UPPER):
            for pid in ls.points_on((sid, side)):
                if pid not in order:
                    order[pid] = rank
                    rank += 1
    return lambda pid: order.get(pid, rank)


def _cmd_validate(args) -> int:
    surface = _load(args.file)
    from .core import validate_class_f

    report = validate_class_f(surface)
    print(
        json.dumps(
            {
                "ok": report.ok,
                "connected": report.connected,
                "components": [list(c) for c in report.components],
                "glued_leaves": [
                    {
                        "id": r.gluing_id,
                        "collars": [
                            {"strip": s, "side": side.value} for s, side in r.collar_sides
                        ],
                        "distinct": r.distinct,
                    }
                    for r in report.glued_leaves
                ],
                "warnings": list(report.warnings),
            },
            indent=2,
        )
    )
    return EXIT_OK if report.ok else EXIT_INVALID


def _cmd_leafspace(args) -> int:
    surface = _load(args.file)
    ls = build_leaf_space(surface)
    if args.format == "dot":
        sys.stdout.write(render(ls, "dot"))
    else:
        sys.stdout.write(leafspace_json(ls))
    return EXIT_OK


def _cmd_decompose(args) -> int:
    surface = _load(args.file)
    if not is_connected(surface):
        print(json.dumps({"error": "validation", "rule": "DisconnectedSurface"}))
        return EXIT_INVALID
    mode = Mode.INTERIOR if args.mode == "interior" else Mode.WITH_BOUNDARY
    ls = build_leaf_space(surface)
    comps, cut = decompose(surface, mode, ls)
    key = _point_order(ls)
    cycle_check = check_cycle_components(surface, comps)
    out = {
        "mode": mode.value,
        "cut": sorted((p.id for p in cut), key=key),
        "components": [],
        "cycle_check_ok": cycle_check.ok,
    }
    for comp in comps:
        rec = {
            "strips": [{"id": s, "flipped": f} for s, f in comp.strips],
            "shape": comp.shape.value,
            "class": classify_component(comp).value,
            "interfaces": list(comp.interfaces),
        }
        if comp.shape is Shape.CHAIN:
            lower, upper, overlap = component_closures(comp)
            rec["closures"] = {
                "lower": [p.id for p in lower.base_points],
                "upper": [p.id for p in upper.base_points],
                "overlap": sorted((p.id for p in overlap), key=key),
            }
            if comp.retained_lower or comp.retained_upper:
                rec["retained"] = {
                    "lower": comp.retained_lower,
                    "upper": comp.retained_upper,
                }
        else:
            rec["monodromy"] = comp.monodromy
        out["components"].append(rec)
    print(json.dumps(out, indent=2))
    return EXIT_OK


def _cmd_canon(args) -> int:
    surface = _load(args.file)
    if not is_connected(surface):
        print(json.dumps({"error": "validation", "rule": "DisconnectedSurface"}))
        return EXIT_INVALID
    canon = canonicalize(surface)
    sys.stdout.write(serialize(canon))
    print(json.dumps({"code": canonical_code(canon).hex()}))
    return EXIT_OK


def _cmd_iso(args) -> int:
    a = _load(args.file1)
    b = _load(args.file2)
    for name, s in (("file1", a), ("file2", b)):
        if not is_connected(s):
            print(json.dumps({"error": "validation", "rule": "DisconnectedSurface", "which": name}))
            return EXIT_INVALID
    same = is_isomorphic(a, b)
    print(json.dumps({"isomorphic": same}))
    return EXIT_OK if same else EXIT_INVALID


def _cmd_realize(args) -> int:
    surface = _load(args.file)
    if not is_connected(surface):
        print(json.dumps({"error": "validation", "rule": "DisconnectedSurface"}))
        return EXIT_INVALID
    ls = build_leaf_space(surface)
    comps, _ = decompose(surface, Mode.WITH_BOUNDARY, ls)
    comp = next((c for c in comps if args.component in c.strip_ids()), None)
    if comp is None:
        print(json.dumps({"error": "usage", "message": f"no component contains strip {args.component!r}"}))
        return EXIT_USAGE
    lower, upper, _ = component_closures(comp)
    closure = lower if args.side == "lower" else upper
    chart, eta = realize_half_strip(surface, comp, closure, depth=args.depth, samples=args.samples)

    n = args.samples
    rows = ["x_in,y_in,x_out,y_out,leaf_id"]

    def leaf_id(x_out: float, y_out: float) -> str:
        if y_out <= -1.0 + 1e-12:
            # base leaves are identified by which leaf interval contains x_out
            for p in closure.base_points:
                member = next(
                    m
                    for m in p.members
                    if surface.side_end_of(m)
                    == (comp.outer_lower if args.side == "lower" else comp.outer_upper)
                )
                lo, hi = surface.interval(member).effective_endpoints()
                if lo < x_out < hi:
                    return p.id
            return "base"
        return f"level:{y_out:.9f}"

    xs_lo = min((a for a, _, _ in chart.rectangles), default=-1.0) - 1.0
    xs_hi = max((b for _, b, _ in chart.rectangles), default=1.0) + 1.0
    for i in range(n):
        for j in range(n):
            x = xs_lo + (xs_hi - xs_lo) * i / max(n - 1, 1)
            y = -1.0 + (j + 1) / n
            X, Y = eta.apply(x, y)
            rows.append(f"{x:.9g},{y:.9g},{X:.9g},{Y:.9g},{leaf_id(X, Y)}")
    for (a, b, _), span in zip(chart.rectangles, chart.base_intervals):
        for i in range(1, n):
            x = a + (b - a) * i / n
            X, Y = eta.apply(x, -1.0)
            rows.append(f"{x:.9g},-1,{X:.9g},{Y:.9g},{leaf_id(X, Y)}")
    sys.stdout.write("\n".join(rows) + "\n")
    return EXIT_OK


def _cmd_render(args) -> int:
    surface = _load(args.file)
    sys.stdout.write(render(surface, args.format))
    return EXIT_OK


def main(argv=None) -> int:
    parser = _Parser(prog="stripfol", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a surface document")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("leafspace", help="emit the leaf space")
    p.add_argument("file")
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.set_defaults(fn=_cmd_leafspace)

    p = sub.add_parser("decompose", help="cut along special leaves and classify")
    p.add_argument("file")
    p.add_argument("--mode", choices=("interior", "with-boundary"), default="with-boundary")
    p.set_defaults(fn=_cmd_decompose)

    p = sub.add_parser("canon", help="canonicalize and print the code")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_canon)

    p = sub.add_parser("iso", help="decide foliated-homeomorphism equivalence")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(fn=_cmd_iso)

    p = sub.add_parser("realize", help="sample the half-strip realization as CSV")
    p.add_argument("file")
    p.add_argument("--component", required=True, help="a strip id inside the component")
    p.add_argument("--side", choices=("lower", "upper"), default="lower")
    p.add_argument("--samples", type=int, default=16)
    p.add_argument("--depth", type=int, default=3)
    p.set_defaults(fn=_cmd_realize)

    p = sub.add_parser("render", help="emit an SVG or DOT diagram")
    p.add_argument("file")
    p.add_argument("--format", choices=("svg", "dot"), default="svg")
    p.set_defaults(fn=_cmd_render)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
