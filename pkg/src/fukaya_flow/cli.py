"""Command-line interface.

One process per command; every subcommand is deterministic (identical
argv and files give byte-identical stdout) and file outputs are written
atomically (temp file + rename).  Exit codes: 0 success, 1 verification
failure, 2 input/usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile

from . import flow, fukaya, geometry, homology, links, maslov, morse
from .errors import FukayaFlowError, IOFailure

SCHEMA = "fukaya-flow/1"


def _envelope(data) -> str:
    return json.dumps({"schema": SCHEMA, "data": data}, indent=2,
                      sort_keys=True) + "\n"


def _write_out(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        directory = os.path.dirname(os.path.abspath(path))
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".fukaya-flow-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except OSError:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as exc:
        raise IOFailure("cannot write %s: %s" % (path, exc)) from exc


def _add_link_input(sub: argparse.ArgumentParser) -> None:
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--pd", help="inline PD code")
    group.add_argument("--file", help="path to a file holding a PD code")
    group.add_argument("--fixture", help="name from the fixture catalog")
    sub.add_argument("--framings",
                     help="comma-separated integers, one per component")
    sub.add_argument("--allow-empty", action="store_true",
                     help="accept an empty PD code")
    sub.add_argument("--no-fixtures", action="store_true",
                     help="disable fixture-name resolution")


def _load_framed_link(args) -> links.FramedLink:
    framings = None
    if args.framings:
        framings = tuple(int(x) for x in args.framings.split(","))
    if args.fixture:
        if args.no_fixtures:
            raise FukayaFlowError("--fixture disabled by --no-fixtures")
        return links.fixture(args.fixture, framings)
    if args.file:
        with open(args.file, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = args.pd
    diagram = links.parse_pd(text, allow_empty=args.allow_empty)
    if framings is None:
        framings = tuple(0 for _ in range(diagram.component_count))
    return links.FramedLink(diagram, framings)


def _load_diagram(args) -> links.LinkDiagram:
    if args.fixture:
        if args.no_fixtures:
            raise FukayaFlowError("--fixture disabled by --no-fixtures")
        return links.fixture(args.fixture).diagram
    if args.file:
        with open(args.file, "r", encoding="utf-8") as fh:
            return links.parse_pd(fh.read(), allow_empty=args.allow_empty)
    return links.parse_pd(args.pd, allow_empty=args.allow_empty)


# --------------------------------------------------------------------------
# subcommand handlers
# --------------------------------------------------------------------------

def cmd_parse_link(args) -> int:
    diagram = _load_diagram(args)
    if args.format == "json":
        _write_out(_envelope(diagram.to_json()), args.out)
    else:
        lines = ["crossings: %d" % len(diagram.crossings),
                 "components: %d" % diagram.component_count]
        for comp in diagram.components:
            lines.append("  " + " ".join(str(a) for a in comp))
        _write_out("\n".join(lines) + "\n", args.out)
    return 0


def cmd_linking_matrix(args) -> int:
    fl = _load_framed_link(args)
    matrix = links.linking_matrix(fl)
    if args.format == "json":
        _write_out(_envelope(matrix.to_json()), args.out)
    else:
        text = "\n".join(" ".join(str(v) for v in row)
                         for row in matrix.entries)
        _write_out(text + "\n", args.out)
    return 0


def cmd_complement_homology(args) -> int:
    fl = _load_framed_link(args)
    result = homology.complement_homology(links.linking_matrix(fl))
    if args.format == "json":
        _write_out(_envelope(result.to_json()), args.out)
    else:
        _write_out(" ".join(str(b) for b in result.betti) + "\n", args.out)
    return 0


def _category_command(args, builder) -> int:
    fl = _load_framed_link(args)
    cat = builder(fl)
    if args.format == "dot":
        _write_out(cat.to_dot(), args.out)
    else:
        _write_out(_envelope(cat.to_json()), args.out)
    return 0


def cmd_flow_category(args) -> int:
    return _category_command(args, flow.build_flow_category)


def cmd_fukaya_category(args) -> int:
    return _category_command(args, fukaya.build_fukaya_category)


def cmd_verify_theorem_b(args) -> int:
    fl = _load_framed_link(args)
    report = fukaya.verify_theorem_b(fl)
    _write_out(_envelope(report.to_json()), args.out)
    if not report.isomorphic:
        for line in report.mismatches:
            print(line, file=sys.stderr)
        return 1
    return 0


def cmd_morse_bott(args) -> int:
    if args.mode == "case-I":
        if args.pair == "upper":
            upper, lower, corr = morse.standard_upper_pair()
        else:
            upper, lower, corr = morse.standard_lower_pair()
        complex_ = morse.differential_case_I(upper, lower, corr)
        data = {
            "complex": complex_.to_json(),
            "homology_basis": list(complex_.homology_basis()),
        }
        if args.format == "json":
            _write_out(_envelope(data), args.out)
        else:
            lines = ["d %s = %s" % (g, " + ".join(complex_.boundary(g))
                                    if complex_.boundary(g) else "0")
                     for g in complex_.generators]
            lines.append("homology basis: "
                         + " ".join(complex_.homology_basis()))
            _write_out("\n".join(lines) + "\n", args.out)
        return 0
    # handles
    fl = _load_framed_link(args)
    complex_ = morse.handle_complex_from_link(fl)
    betti = complex_.betti_by_degree()
    if args.format == "json":
        data = {"complex": complex_.to_json(), "betti": list(betti)}
        _write_out(_envelope(data), args.out)
    else:
        _write_out(" ".join(str(b) for b in betti) + "\n", args.out)
    return 0


def cmd_cascade_diagnostics(args) -> int:
    if args.pair == "upper":
        upper, lower, corr = morse.standard_upper_pair()
    else:
        upper, lower, corr = morse.standard_lower_pair()
    data = morse.CascadeData((upper, lower), (corr,))
    configs = morse.cascade_moduli(data, args.source, args.target,
                                   args.cascades)
    if args.format == "json":
        _write_out(_envelope(configs), args.out)
    else:
        if not configs:
            _write_out("no configurations\n", args.out)
        else:
            lines = [json.dumps(c, sort_keys=True) for c in configs]
            _write_out("\n".join(lines) + "\n", args.out)
    return 0


def _parse_breakpoints(text: str):
    data = json.loads(text)
    return tuple((t, a) for t, a in data)


def cmd_maslov(args) -> int:
    convention = args.convention
    if args.loop:
        loop = maslov.LagrangianLineLoop(_parse_breakpoints(args.loop),
                                         convention)
        value = maslov.maslov_of_loop(loop)
    else:
        arcs_data = json.loads(args.arcs)
        arcs = [maslov.LagrangianLineLoop(tuple((t, a) for t, a in arc))
                for arc in arcs_data]
        boundary = maslov.BoundaryData(punctures=len(arcs),
                                       positive_range=args.positive_sigma)
        value = maslov.winding_number(arcs, boundary)
    _write_out("%d\n" % value, args.out)
    return 0


def cmd_glued_index(args) -> int:
    if args.triangle_system:
        n, mu, mu_prime = (int(x) for x in args.triangle_system.split(","))
        index_h, index_v = maslov.solve_triangle_system(n, mu, mu_prime)
        _write_out("index_H %d\nindex_V %d\n" % (index_h, index_v), args.out)
        return 0
    if args.base_dim:
        result = maslov.vanishing_triangle_index(args.base_dim)
        _write_out("n %(n)d\nindex_H %(index_H)d\nindex_V %(index_V)d\n"
                   % result, args.out)
        return 0
    parts_data = json.loads(args.parts)
    gluings_data = json.loads(args.gluings) if args.gluings else []
    parts = [maslov.OperatorPart(p["name"], p["index"],
                                 dict(p.get("punctures", {})))
             for p in parts_data]
    gluings = [tuple(g) for g in gluings_data]
    _write_out("%d\n" % maslov.glued_index(parts, gluings), args.out)
    return 0


def cmd_geometry_check(args) -> int:
    report = geometry.geometry_report(seed=args.seed, samples=args.samples,
                                      grid_thetas=args.grid_n,
                                      lam_max=args.lambda_max)
    ok = all(entry["ok"] for entry in report.values())
    if args.format == "json":
        _write_out(_envelope(report), args.out)
    else:
        lines = ["%s %s error %.3e tolerance %.0e"
                 % ("PASS" if entry["ok"] else "FAIL", name,
                    entry["error"], entry["tolerance"])
                 for name, entry in sorted(report.items())]
        _write_out("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


def cmd_emit_figure(args) -> int:
    curves = geometry.default_figure_curves(loop_points=args.grid_n)
    if args.lambda_max is not None:
        curves["constant_lambda"] = [
            (2.0 * 3.141592653589793 * i / args.grid_n, args.lambda_max)
            for i in range(args.grid_n + 1)]
    if args.format == "svg":
        _write_out(geometry.figure_svg(curves), args.out)
        return 0
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["curve_id", "theta", "lambda", "re", "im"])
    for row in geometry.figure_rows(curves):
        writer.writerow([row[0]] + ["%.12g" % v for v in row[1:]])
    _write_out(buf.getvalue(), args.out)
    return 0


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fukaya-flow",
        description="Flow-category and directed Donaldson-Fukaya "
                    "presentations from framed links, with Morse-Bott, "
                    "Maslov-index, and quadric-geometry checkers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, formats=("text", "json"), link_input=False):
        p = sub.add_parser(name)
        p.set_defaults(handler=handler)
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out", help="output path (default stdout)")
        if link_input:
            _add_link_input(p)
        return p

    add("parse-link", cmd_parse_link, link_input=True)
    add("linking-matrix", cmd_linking_matrix, link_input=True)
    add("complement-homology", cmd_complement_homology, link_input=True)
    add("flow-category", cmd_flow_category, ("json", "dot"),
        link_input=True)
    add("fukaya-category", cmd_fukaya_category, ("json", "dot"),
        link_input=True)
    add("verify-theorem-b", cmd_verify_theorem_b, ("json",),
        link_input=True)

    p = add("morse-bott", cmd_morse_bott, ("text", "json"))
    p.add_argument("mode", choices=("case-I", "handles"))
    p.add_argument("--pair", choices=("upper", "lower"), default="upper")
    _add_link_input_optional(p)

    p = add("cascade-diagnostics", cmd_cascade_diagnostics,
            ("text", "json"))
    p.add_argument("--pair", choices=("upper", "lower"), default="upper")
    p.add_argument("--cascades", type=int, default=1)
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)

    p = add("maslov", cmd_maslov, ("text",))
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--loop", help="JSON [[t, angle], ...] breakpoints")
    group.add_argument("--arcs", help="JSON list of breakpoint lists")
    p.add_argument("--convention", choices=("dx^dy", "dy^dx"),
                   default="dx^dy")
    p.add_argument("--positive-sigma", action="store_true",
                   help="use the (0, pi) puncture convention")

    p = add("glued-index", cmd_glued_index, ("text",))
    p.add_argument("--parts", help="JSON [{name, index, punctures}, ...]")
    p.add_argument("--gluings",
                   help="JSON [[part, puncture, part, puncture], ...]")
    p.add_argument("--triangle-system", help="n,mu,mu'")
    p.add_argument("--base-dim", type=int,
                   help="even base dimension for the vanishing-cycle "
                        "triangle index")

    p = add("geometry-check", cmd_geometry_check, ("text", "json"))
    p.add_argument("--grid-n", type=int, default=48)
    p.add_argument("--lambda-max", type=float, default=2.0)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)

    p = add("emit-figure", cmd_emit_figure, ("csv", "svg"))
    p.add_argument("--grid-n", type=int, default=200)
    p.add_argument("--lambda-max", type=float, default=None)

    return parser


def _add_link_input_optional(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=False)
    group.add_argument("--pd")
    group.add_argument("--file")
    group.add_argument("--fixture")
    p.add_argument("--framings")
    p.add_argument("--allow-empty", action="store_true")
    p.add_argument("--no-fixtures", action="store_true")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "morse-bott" and args.mode == "handles" \
            and not (args.pd or args.file or args.fixture):
        parser.error("morse-bott handles needs --pd, --file, or --fixture")
    try:
        return args.handler(args)
    except FukayaFlowError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
