"""``segre`` command line tool."""

import argparse
import json
import os
import sys
from fractions import Fraction

from .ideal import IdealParseError, parse_ideal
from .oracles import cross_check
from .pipeline import ENGINES, EngineMismatch, compute_segre, decompose

EXIT_OK, EXIT_VERIFY, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _int_list(text):
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}")


def _fraction(text):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _seed():
    raw = os.environ.get("SEGRE_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"SEGRE_SEED must be an integer, got {raw!r}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--ideal", help='generators, e.g. "x1^2*x2, x2^3" or "2 1; 0 3"')
    src.add_argument("--ideal-file", help="file holding the generators")
    common.add_argument("--n", type=int, default=None, help="number of variables (default: inferred)")
    common.add_argument("--engine", choices=ENGINES, default="fan")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--jobs", type=int, default=None, help="worker processes for cell integrals")

    p = argparse.ArgumentParser(prog="segre", description="Segre classes of monomial schemes.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="compute the Segre class")
    c.add_argument("--degrees", type=_int_list, help="X_i = d_i H weights (default all 1)")
    c.add_argument("--ambient-dim", type=int, help="dimension N of P^N (default n)")
    c.add_argument("--truncate", type=int, help="series truncation degree D (default n)")
    c.add_argument("--verify", action="store_true", help="also run the independent checks")
    c.add_argument("--grid-step", type=_fraction, default=Fraction(1, 4))
    c.add_argument("--tol", type=float, default=1e-6)

    sub.add_parser("decompose", parents=[common], help="print the polyhedron and the cells")

    e = sub.add_parser("excess", parents=[common], help="equivalence and excess intersection")
    e.add_argument("--degrees", type=_int_list, required=True, help="degrees of the N hypersurfaces")
    e.add_argument("--var-degrees", type=_int_list, help="X_i = d_i H weights (default all 1)")
    e.add_argument("--ambient-dim", type=int, help="dimension N of P^N (default: number of degrees)")
    e.add_argument("--truncate", type=int)

    v = sub.add_parser("verify", parents=[common], help="run the independent checks")
    v.add_argument("--grid-step", type=_fraction, default=Fraction(1, 4))
    v.add_argument("--tol", type=float, default=1e-6)
    return p


def _load_spec(args):
    if args.ideal is not None:
        text = args.ideal
    else:
        try:
            with open(args.ideal_file) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.ideal_file}: {exc.strerror}")
    try:
        return parse_ideal(text, args.n)
    except IdealParseError as exc:
        raise InputError(str(exc))


def _emit(args, payload, text):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _verify(args, spec):
    return cross_check(spec, seed=_seed(), quad_tol=args.tol, grid_step=args.grid_step)


def cmd_compute(args, spec):
    engine = args.engine
    if args.verify and engine == "fan" and spec.n == 2:
        engine = "both"
    out = compute_segre(spec, engine, max_degree=args.truncate, degrees=args.degrees,
                        ambient_dim=args.ambient_dim, jobs=args.jobs)
    payload, text = out.to_json(), out.format_text()
    status = EXIT_OK
    if args.verify:
        report = _verify(args, spec)
        payload["verification"] = report.to_json()
        text += "\n\n" + report.format_table()
        status = EXIT_OK if report.ok else EXIT_VERIFY
    _emit(args, payload, text)
    return status


def cmd_decompose(args, spec):
    minimal, poly, cells = decompose(spec, args.engine if args.engine != "both" else "fan")
    payload = {
        "ideal": spec.to_text(),
        "n": spec.n,
        "minimal_generators": [list(g) for g in minimal.generators],
        "engine": args.engine,
        "polyhedron": poly.to_json() if poly is not None else None,
        "cells": cells.to_json()["cells"],
        "dropped": cells.dropped,
    }
    lines = [f"ideal: {spec.to_text()}", f"minimal generators: {minimal.to_text()}"]
    if poly is not None:
        lines.append("facets:")
        lines += [f"  {f}" for f in poly.facets]
        lines.append("vertices: " + " ".join(str(v) for v in poly.vertices))
        lines.append("compact faces:")
        for cf in poly.to_json()["compact_faces"]:
            lines.append(f"  dim {cf['dim']}  verts {cf['verts']}  U {cf['U']}")
    lines.append(f"cells ({len(cells.effective())} effective, {len(cells.cells)} total):")
    for cell in cells.cells:
        d = cell.to_json()
        tag = "  degenerate" if d["degenerate"] else ""
        lines.append(f"  simplex {d['simplex']}  rays {d['extensions']}{tag}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_excess(args, spec):
    out = compute_segre(spec, args.engine, max_degree=args.truncate, degrees=args.var_degrees,
                        ambient_dim=args.ambient_dim, excess_degrees=args.degrees, jobs=args.jobs)
    text = out.format_text()
    _emit(args, out.to_json(), text)
    return EXIT_OK


def cmd_verify(args, spec):
    report = _verify(args, spec)
    payload = dict(report.to_json(), ideal=spec.to_text(), seed=_seed())
    _emit(args, payload, report.format_table())
    return EXIT_OK if report.ok else EXIT_VERIFY


COMMANDS = {"compute": cmd_compute, "decompose": cmd_decompose, "excess": cmd_excess, "verify": cmd_verify}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        spec = _load_spec(args)
        return COMMANDS[args.command](args, spec)
    except InputError as exc:
        print(f"segre: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except EngineMismatch as exc:
        print(f"segre: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ValueError as exc:
        print(f"segre: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
