"""Command-line front end.

Exit codes: 0 yes/success, 3 no (non-member, nothing found), 2 a failed
verification, 1 usage or parse errors.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import classify, generators, groupoid
from .dyadic import Dyadic
from .io import ParseError, PointFile, dumps_report, parse_point, report
from .svg import render_svg
from .verify import BUNDLES, run_bundle

EXIT_YES, EXIT_ERROR, EXIT_FAILED, EXIT_NO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _emit(doc: dict) -> None:
    print(dumps_report(doc))


def _points_echo(pf: PointFile) -> dict:
    return {"dim": pf.dim, "points": list(pf.points)}


def cmd_member(args) -> int:
    pf = PointFile.read(args.gens)
    p = parse_point(args.point, pf.dim)
    desc = groupoid.GeneratorSet(pf.points).descriptor
    result = desc.member(p)
    _emit(report("member", {"gens": _points_echo(pf), "point": p}, result, evidence=desc.evidence(p)))
    return EXIT_YES if result else EXIT_NO


def cmd_closure(args) -> int:
    pf = PointFile.read(args.gens)
    rep = groupoid.closure_bfs(pf.points, args.exp_cap, args.slack, max_points=args.max_points)
    found = rep.sorted_found()
    result = {
        "points": found,
        "count": len(found),
        "saturated": rep.saturated,
        "limit_reached": rep.limit_reached,
        "rounds": rep.rounds,
        "frontier_size": rep.frontier_size,
    }
    inputs = {"gens": _points_echo(pf), "exp_cap": args.exp_cap, "slack": args.slack}
    _emit(report("closure", inputs, result))
    if rep.limit_reached:
        print(f"warning: point limit reached after {rep.total_points} points; listing is partial",
              file=sys.stderr)
    if args.svg:
        Path(args.svg).write_text(render_svg(pf.points, found, title="midpoint closure"))
    return EXIT_YES


def _parse_params(text: str) -> tuple[int, int, int, int]:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"bad parameter list {text!r}") from None
    if len(vals) != 4:
        raise ParseError("expected four parameters i,j,m,n")
    return vals


def cmd_classify(args) -> int:
    if args.shape == "interval":
        pf = PointFile.read(args.gens)
        desc = classify.interval_type(pf.points)
        result = {"type_k": desc.type_k, "endpoints": list(desc.endpoints), "lattice_step": desc.lattice_step}
        _emit(report("classify-interval", {"gens": _points_echo(pf)}, result))
        return EXIT_YES
    if args.params:
        i, j, m, n = _parse_params(args.params)
        cls = classify.classify_representative(i, j, m, n)
        verts = classify.representative_vertices(i, j, m, n)
        result = {"class": str(cls), "boundary": list(classify.boundary_type(*verts))}
        _emit(report("classify-triangle", {"params": [i, j, m, n]}, result))
        return EXIT_YES
    pf = PointFile.read(args.vertices)
    if pf.dim != 2 or len(pf.points) != 3:
        raise ParseError("a triangle file needs exactly three planar points")
    inputs = {"vertices": _points_echo(pf), "bound": args.bound}
    try:
        desc, f = classify.normalize_triangle(*pf.points, bound=args.bound)
    except classify.NoRepresentativeFound as exc:
        _emit(report("classify-triangle", inputs, None, evidence={"message": str(exc)}))
        return EXIT_NO
    result = {
        "params": list(desc.params),
        "class": str(desc.cls),
        "boundary": list(desc.boundary),
        "pointed_vertex": desc.pointed,
    }
    certificate = {
        "matrix": [[str(Dyadic.from_fraction(x)) for x in row] for row in f.matrix],
        "translation": [str(Dyadic.from_fraction(x)) for x in f.translation],
        "images": [f(v) for v in pf.points],
    }
    evidence = {"area_odd_part": classify.area_odd_part(*pf.points)}
    _emit(report("classify-triangle", inputs, result, certificate, evidence))
    return EXIT_YES


def cmd_gens(args) -> int:
    path = args.polytope or args.semipolytope
    pf = PointFile.read(path)
    build = generators.generating_set_polytope if args.polytope else generators.generating_set_semipolytope
    cert = build(pf.points)
    if args.reduce:
        cert = cert.reduced()
    ok = cert.validate()
    kind = "polytope" if args.polytope else "semipolytope"
    result = {"generators": sorted(cert.produced, key=lambda p: p.sort_key()), "count": len(cert.produced)}
    certificate = {"validated": ok, "log": [list(map(_plain, step)) for step in cert.construction_log]}
    _emit(report("gens", {kind: _points_echo(pf), "reduce": args.reduce}, result, certificate))
    return EXIT_YES if ok else EXIT_FAILED


def _plain(x):
    return x if isinstance(x, (int, str, list)) else str(x)


def cmd_verify(args) -> int:
    names = list(BUNDLES) if args.example == "all" else [args.example]
    failed = 0
    for name in names:
        checks = run_bundle(name)
        for c in checks:
            mark = "ok  " if c.passed else "FAIL"
            line = f"[{mark}] {name}: {c.name}"
            if not c.passed:
                line += f"\n       expected: {c.expected!r}\n       actual:   {c.actual!r}"
            elif c.actual is not None and not isinstance(c.actual, bool) and c.expected is None:
                line += f"  ({c.actual})"
            print(line)
        failed += sum(not c.passed for c in checks)
    print(f"{failed} failing check(s)")
    return EXIT_FAILED if failed else EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dyconvex", description="Exact convex geometry over the dyadic rationals.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log construction steps")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("member", help="decide membership in a generated groupoid")
    p.add_argument("--gens", required=True, help="point file of generators")
    p.add_argument("--point", required=True, help="comma-separated dyadic literals")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("closure", help="capped breadth-first midpoint closure")
    p.add_argument("--gens", required=True)
    p.add_argument("--exp-cap", type=int, required=True)
    p.add_argument("--slack", type=int, default=4)
    p.add_argument("--max-points", type=int, default=None,
                   help="stop after this many points (default $DYCONVEX_POINT_LIMIT or 10^6)")
    p.add_argument("--svg", help="write a figure of a planar closure here")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("classify", help="interval types and triangle classes")
    shapes = p.add_subparsers(dest="shape", required=True, parser_class=_Parser)
    q = shapes.add_parser("interval")
    q.add_argument("--gens", required=True)
    q = shapes.add_parser("triangle")
    group = q.add_mutually_exclusive_group(required=True)
    group.add_argument("--params", help="i,j,m,n of a representative triangle")
    group.add_argument("--vertices", help="point file with three vertices")
    q.add_argument("--bound", type=int, default=classify.DEFAULT_BOUND,
                   help="largest representative parameter searched")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("gens", help="synthesize a generating set")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--polytope", help="points whose hull is the target polytope")
    group.add_argument("--semipolytope", help="generators of the target semipolytope")
    p.add_argument("--reduce", action="store_true", help="drop redundant generators")
    p.set_defaults(func=cmd_gens)

    p = sub.add_parser("verify", help="run a regression bundle")
    p.add_argument("--example", required=True, choices=list(BUNDLES) + ["all"])
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (ParseError, ValueError, OSError, OverflowError) as exc:
        print(f"dyconvex: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
