"""Command-line front end: ``foliate {check,fiber,germ,generate}``.

Every command builds one JSON-serializable report.  ``--json`` prints it
as canonical JSON (sorted keys); otherwise a short text rendering of the
same record is printed.  Exit status is 0 when every check passes, 1 when a
mathematical check fails and 2 on input or usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .direction import (
    Direction,
    check_expanding,
    check_local_orientation,
    cyclic_cover,
    isoperimetric_constant,
    parse_direction,
    render_direction,
    require_total_order,
)
from .errors import BadLink, Degenerate, FoliateError, NotClosed
from .fibration import (
    build_fibration_map,
    check_theta,
    default_theta,
    extract_fiber,
    render_weights,
    solve_triangle_system,
    verify_vertex_links,
)
from .generators import generate_pentachoron, generate_product, seven_vertex_torus, tetrahedron_boundary
from .germ import DEFAULT_CAP, Filler, build_germ, germ_acyclic
from .normal import render_normal_vector, surface_stats, validate_normal_vector
from .triangulation import parse_triangulation, render_triangulation

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(FoliateError):
    """Bad command-line input that argparse cannot catch."""


class Report:
    def __init__(self, command: str, timing: bool = True):
        self.command = command
        self.timing = timing
        self.inputs = []
        self.checks = []
        self.outputs = []

    def add_input(self, path: Path, data: bytes):
        self.inputs.append({"name": path.name, "sha256": hashlib.sha256(data).hexdigest()})

    def record(self, name, verdict, witness=None, seconds=None, informational=False):
        entry = {"name": name, "verdict": bool(verdict), "witness": witness}
        if informational:
            entry["informational"] = True
        if self.timing and seconds is not None:
            entry["seconds"] = round(seconds, 6)
        self.checks.append(entry)

    @property
    def passed(self):
        return all(c["verdict"] for c in self.checks if not c.get("informational"))

    def to_dict(self):
        return {
            "tool": "foliate",
            "version": __version__,
            "command": self.command,
            "inputs": self.inputs,
            "checks": self.checks,
            "outputs": self.outputs,
            "status": "pass" if self.passed else "fail",
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_text(self):
        lines = [f"foliate {self.command}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            tag = "info" if c.get("informational") else ("pass" if c["verdict"] else "FAIL")
            line = f"  {c['name']:<20} {tag}"
            if c["witness"] is not None:
                line += "  " + json.dumps(c["witness"], sort_keys=True)
            lines.append(line)
        for out in self.outputs:
            lines.append(f"  wrote {out}")
        return "\n".join(lines)


def _timed(fn, *args, **kwargs):
    start = time.perf_counter()
    value = fn(*args, **kwargs)
    return value, time.perf_counter() - start


def _read(report: Report, path: str) -> str:
    p = Path(path)
    data = p.read_bytes()
    report.add_input(p, data)
    return data.decode("utf-8")


def _load(report: Report, tri_path: str, dir_path: str | None):
    T = parse_triangulation(_read(report, tri_path))
    d = parse_direction(T, _read(report, dir_path)) if dir_path else None
    return T, d


def _write(report: Report, path: str, text: str):
    Path(path).write_text(text, encoding="utf-8")
    report.outputs.append(Path(path).name)


# -- commands ----------------------------------------------------------------

def cmd_check(args, report: Report):
    try:
        T, seconds = _timed(parse_triangulation, _read(report, args.tri))
    except (NotClosed, BadLink, Degenerate) as exc:
        report.record("validation", False, {"error": str(exc)})
        return
    report.record("validation", True,
                  {"f_vector": list(T.f_vector), "euler_characteristic": T.euler_characteristic()},
                  seconds)
    d = parse_direction(T, _read(report, args.dir))

    lo, seconds = _timed(check_local_orientation, d)
    info = lo.to_dict()
    report.record("link_condition", lo.link_ok,
                  {"failed_vertices": info["link_condition"]["failed_vertices"]}, seconds)
    report.record("tet_order", lo.tet_order_ok, info["tet_order_condition"]["failures"] or None)
    report.record("recurrence", lo.recurrence.ok, lo.recurrence.to_dict())

    if lo.tet_order_ok:
        ex, seconds = _timed(check_expanding, d)
        report.record("expanding", ex.expanding, ex.to_dict(), seconds, informational=True)
    else:
        # the expansion graph needs every face totally ordered
        report.record("expanding", False, {"skipped": "tet_order"}, informational=True)
    if lo.recurrence.ok:
        iso, seconds = _timed(isoperimetric_constant, d)
        report.record("isoperimetric", True, iso.to_dict(), seconds, informational=True)

    if args.cover is not None:
        _check_cover(d, args.cover, report)


def _check_cover(d: Direction, n: int, report: Report):
    if n < 1:
        raise UsageError("--cover needs a positive degree")
    if not check_local_orientation(d).tet_order_ok:
        report.record("cover", False, {"reason": "a tetrahedron is not totally ordered"})
        return
    start = time.perf_counter()
    system, outcome = solve_triangle_system(d)
    if not outcome.feasible:
        report.record("cover", False, {"reason": "triangle equations have no positive solution"})
        return
    cover = cyclic_cover(d, system.weights_from(outcome.weights), n)
    witness = {
        "degree": n,
        "f_vector": list(cover.triangulation.f_vector),
        "components": cover.components,
    }
    verdict = True
    if cover.components == 1:
        lifted = check_local_orientation(cover.direction)
        witness["lift_local_orientation"] = lifted.ok
        verdict = lifted.ok
    report.record("cover", verdict, witness, time.perf_counter() - start)


def cmd_fiber(args, report: Report):
    T, d = _load(report, args.tri, args.dir)
    require_total_order(d)
    (system, outcome), seconds = _timed(solve_triangle_system, d)
    if not outcome.feasible:
        report.record("triangle_system", False, {
            "rows": len(system.rows),
            "columns": len(system.edges),
            "certificate": [str(y) for y in outcome.certificate],
            "combination": [str(c) for c in outcome.combination(system.rows)],
        }, seconds)
        report.record("certificate_check", outcome.verify(system.rows))
        return
    weights = system.weights_from(outcome.weights)
    report.record("triangle_system", outcome.verify(system.rows), {
        "rows": len(system.rows),
        "columns": len(system.edges),
        "max_weight": max(outcome.weights),
    }, seconds)
    if args.out:
        _write(report, args.out + ".wts", render_weights(d, weights))

    m = build_fibration_map(d, weights)
    links, seconds = _timed(verify_vertex_links, m)
    report.record("vertex_links", links.ok, {
        "period": m.period,
        "circles": {str(v): c for v, c in links.circles.items()},
        "failed_vertices": [v for v, c in links.circles.items() if c != 1],
    }, seconds)
    if not links.ok:
        return

    theta = check_theta(m, _parse_theta(args.theta)) if args.theta else default_theta(m)
    start = time.perf_counter()
    fiber = extract_fiber(m, theta)
    valid = validate_normal_vector(T, fiber)
    witness = {"theta": str(theta)}
    if valid:
        witness.update(surface_stats(T, fiber).to_dict())
    else:
        witness["invalid"] = valid.reason
    report.record("fiber", valid.ok, witness, time.perf_counter() - start)
    if args.out:
        _write(report, args.out + ".nsv", render_normal_vector(fiber))


def _parse_theta(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--theta expects a rational p/q, got {text!r}") from None


def cmd_germ(args, report: Report):
    T, d = _load(report, args.tri, args.dir)
    base = T.vertices[0] if args.base is None else args.base
    if args.m > DEFAULT_CAP:
        # refuse before doing any work
        build_germ(T, d, base, args.m)
    filler = Filler(T)
    counts = []
    start = time.perf_counter()
    for k in range(args.m + 1):
        g = build_germ(T, d, base, k, filler=filler)
        counts.append({"m": k, "nodes": len(g.nodes), "arcs": len(g.arcs)})
    seconds = time.perf_counter() - start
    report.record("germ_counts", True, {"base": base, "counts": counts}, seconds, informational=True)
    verdict = germ_acyclic(g)
    report.record("germ_acyclic", verdict.acyclic, verdict.to_dict().get("witness"))
    if args.out:
        _write(report, args.out + ".dot", g.to_dot())


SURFACES = {"product-s2": tetrahedron_boundary, "product-t2": seven_vertex_torus}


def cmd_generate(args, report: Report):
    if args.type == "pentachoron":
        T, d = generate_pentachoron(), None
    else:
        bundle = generate_product(SURFACES[args.type](), args.layers)
        T, d = bundle.triangulation, bundle.direction
    _write(report, args.out + ".tri", render_triangulation(T))
    if d is not None:
        _write(report, args.out + ".dir", render_direction(d))
    report.record("generate", True, {"type": args.type, "f_vector": list(T.f_vector)})


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--no-timing", action="store_true", help="omit timing fields")

    parser = argparse.ArgumentParser(prog="foliate", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"foliate {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="validate and test local orientation")
    p.add_argument("tri")
    p.add_argument("dir")
    p.add_argument("--cover", type=int, metavar="N", help="also lift to the N-fold cyclic cover")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("fiber", parents=[common], help="solve for the circle map and extract a fiber")
    p.add_argument("tri")
    p.add_argument("dir")
    p.add_argument("--theta", metavar="P/Q", help="level in (0, 1); default is the widest gap")
    p.add_argument("--out", metavar="PREFIX", help="write PREFIX.wts and PREFIX.nsv")
    p.set_defaults(run=cmd_fiber)

    p = sub.add_parser("germ", parents=[common], help="build path germs and look for oriented loops")
    p.add_argument("tri")
    p.add_argument("dir")
    p.add_argument("--base", type=int, metavar="N", help="base vertex (default: smallest)")
    p.add_argument("--m", type=int, default=3, metavar="N", help="path length and area budget")
    p.add_argument("--out", metavar="PREFIX", help="write the germ to PREFIX.dot")
    p.set_defaults(run=cmd_germ)

    p = sub.add_parser("generate", parents=[common], help="write an example triangulation")
    p.add_argument("--type", required=True, choices=["pentachoron", "product-s2", "product-t2"])
    p.add_argument("--layers", type=int, default=3, metavar="N")
    p.add_argument("--out", required=True, metavar="PREFIX")
    p.set_defaults(run=cmd_generate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report = Report(args.command, timing=not args.no_timing)
    try:
        args.run(args, report)
    except (FoliateError, OSError, ValueError) as exc:
        message = str(exc) or type(exc).__name__
        if args.json:
            print(json.dumps({"tool": "foliate", "version": __version__, "command": args.command,
                              "status": "error", "error": f"{type(exc).__name__}: {message}"},
                             sort_keys=True, indent=2))
        print(f"foliate {args.command}: error: {message}", file=sys.stderr)
        return EXIT_ERROR
    print(report.to_json() if args.json else report.to_text())
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
