"""Command-line front end.

Exit codes: 0 when every assertion holds, 2 on a mathematical mismatch with
the expected tables, 1 on operational errors (bad input, I/O, failed
certification).
"""

import argparse
import csv
import io
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .antisym import AntisymMatrix, AntisymNet, pfaffian
from .autgroup import (
    expected_aut_dim,
    infinitesimal_aut_dim,
    quasihomogeneity_report,
    random_section,
)
from .core.rational import format_rational
from .grassmann import SectionSpec
from .instances import KINDS, generate
from .io import matrix_to_json, read_json, vector_to_json, write_json
from .nets import apolarity_data, dual_cubic, net_normal_form_g15, veronese_center_map
from .pencils import center_curve, donagi_normal_form, even_pencil_normal_form
from .polar import Conic, Triangle, is_polar_triangle, non_polar_witness

EXIT_OK, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2


class Mismatch(Exception):
    pass


SCAN_SCHEMA = {
    "type": "object",
    "required": ["seed", "samples", "max_N", "entry_bound", "cells", "table", "ok"],
    "properties": {
        "seed": {"type": "integer"},
        "samples": {"type": "integer", "minimum": 1},
        "max_N": {"type": "integer", "minimum": 4, "maximum": 10},
        "entry_bound": {"type": "integer", "minimum": 1},
        "ok": {"type": "boolean"},
        "cells": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["N", "l", "expected", "aut_dims", "ok"],
                "properties": {
                    "N": {"type": "integer"},
                    "l": {"type": "integer"},
                    "expected": {"type": "integer", "minimum": 0},
                    "aut_dims": {"type": "array", "items": {"type": "integer"}},
                    "ok": {"type": "boolean"},
                },
            },
        },
        "table": {"type": "array"},
    },
}


def documented_verdict(N, l):
    """Quasihomogeneity of general sections as stated for the classified cases."""
    if l == 1 or (N, l) in {(4, 2), (5, 2), (6, 2), (4, 3)}:
        return "quasihomogeneous"
    return "not_quasihomogeneous"


def _cell_rng(seed, N, l, k):
    return random.Random(f"{seed}:{N}:{l}:{k}")


def _scan_cell(args):
    seed, N, l, samples, bound = args
    dims = [
        infinitesimal_aut_dim(random_section(N, l, _cell_rng(seed, N, l, k), bound=bound))
        for k in range(samples)
    ]
    expected = expected_aut_dim(N, l)
    return {"N": N, "l": l, "expected": expected, "aut_dims": dims, "ok": all(d == expected for d in dims)}


def _load_section(path):
    return SectionSpec.from_json(read_json(path))


def _emit(obj, args, csv_text=None):
    if args.format == "csv" and csv_text is not None:
        text = csv_text
        if args.output:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return
    text = write_json(obj, args.output)
    if not args.output:
        sys.stdout.write(text)


def _poly_json(p):
    return p.to_json()


def cmd_scan(args):
    cells = [(args.seed, N, l, args.samples, args.entry_bound) for N in range(4, args.max_N + 1) for l in range(1, 2 * N - 4)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_scan_cell, cells))
    else:
        results = [_scan_cell(c) for c in cells]
    table = [
        {"N": N, "l1": expected_aut_dim(N, 1), "l2": expected_aut_dim(N, 2)} for N in range(4, args.max_N + 1)
    ]
    report = {
        "seed": args.seed,
        "samples": args.samples,
        "max_N": args.max_N,
        "entry_bound": args.entry_bound,
        "cells": results,
        "table": table,
        "ok": all(r["ok"] for r in results),
    }
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["N", "l", "expected"] + [f"sample_{k}" for k in range(args.samples)] + ["ok"])
    for r in results:
        writer.writerow([r["N"], r["l"], r["expected"], *r["aut_dims"], int(r["ok"])])
    _emit(report, args, buf.getvalue())
    if not report["ok"]:
        bad = [(r["N"], r["l"]) for r in results if not r["ok"]]
        raise Mismatch(f"aut_dim differs from the table in cells {bad}")


def _section_for(args):
    if args.input:
        return _load_section(args.input)
    return random_section(args.N, args.l, random.Random(args.seed), bound=args.entry_bound)


def cmd_aut_dim(args):
    s = _section_for(args)
    _emit(quasihomogeneity_report(s, seed=args.seed, samples=args.samples).to_json(), args)


def cmd_quasihomog(args):
    s = _section_for(args)
    report = quasihomogeneity_report(s, seed=args.seed, samples=args.samples)
    _emit(report.to_json(), args)
    if report.aut_dim != expected_aut_dim(s.N, s.l):
        raise Mismatch(f"aut_dim {report.aut_dim} ≠ expected {expected_aut_dim(s.N, s.l)}")
    if report.verdict != documented_verdict(s.N, s.l):
        raise Mismatch(f"verdict {report.verdict} ≠ documented {documented_verdict(s.N, s.l)}")


def cmd_normal_form(args):
    s = _load_section(args.input)
    if args.what == "pencil":
        pencil = s.pencil()
        if pencil.size % 2 == 0:
            nf = donagi_normal_form(pencil)
            out = {
                "kind": "odd",
                "lambdas": vector_to_json(nf.lambdas),
                "shift": format_rational(nf.shift),
                "T": matrix_to_json(nf.T),
            }
        else:
            nf = even_pencil_normal_form(pencil)
            out = {"kind": "even", "n": nf.n, "T": matrix_to_json(nf.T)}
    else:
        if s.l != 3:
            raise ValueError("normal-form net needs a section with three matrices")
        nf = net_normal_form_g15(AntisymNet(*s.matrices))
        out = {
            "alpha": format_rational(nf.alpha),
            "beta": format_rational(nf.beta),
            "gamma": format_rational(nf.gamma),
            "delta": format_rational(nf.delta),
            "cubic": _poly_json(dual_cubic(nf.net())),
            "T": matrix_to_json(nf.T),
            "basis_change": matrix_to_json(nf.basis_change),
        }
    _emit(out, args)


def cmd_center_curve(args):
    s = _load_section(args.input)
    _emit({"components": [_poly_json(c) for c in center_curve(s.pencil())]}, args)


def cmd_veronese(args):
    s = _load_section(args.input)
    if s.l != 3:
        raise ValueError("veronese needs a section with three matrices")
    cmap = veronese_center_map(AntisymNet(*s.matrices))
    data = apolarity_data(cmap)
    _emit(
        {
            "quadrics": [_poly_json(c) for c in cmap.components],
            "P_matrix": matrix_to_json(data.P_matrix),
            "C_P_matrix": matrix_to_json(data.C_P_matrix),
        },
        args,
    )


def cmd_polar(args):
    conic = Conic.from_json(read_json(args.conic))
    tri = Triangle.from_json(read_json(args.triangle))
    polar = is_polar_triangle(conic, tri)
    witness = None if polar else non_polar_witness(conic, tri).to_json()
    _emit({"polar_triangle": polar, "witness": witness}, args)


def cmd_generate(args):
    params = [p for p in args.params.split(",") if p.strip()] if args.params else []
    s, truth = generate(args.kind, params, seed=args.seed)
    _emit(s.to_json(), args)
    if args.output:
        write_json(truth, args.output + ".truth.json")


def cmd_pfaffian(args):
    obj = read_json(args.input)
    if "matrices" in obj:
        mats = SectionSpec.from_json(obj).matrices
    else:
        mats = [AntisymMatrix.from_json(obj)]
    _emit({"pfaffians": [format_rational(pfaffian(m)) for m in mats]}, args)


def build_parser():
    parser = argparse.ArgumentParser(prog="grasslines", description="Linear sections of Grassmannians of lines")
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=3)
    common.add_argument("--entry-bound", type=int, default=20)
    common.add_argument("--output")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", parents=[common], help="reproduce the dimension table")
    p.add_argument("--max-N", type=int, default=10)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_scan)

    for name, func in (("aut-dim", cmd_aut_dim), ("quasihomog", cmd_quasihomog)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--N", type=int)
        p.add_argument("--l", type=int)
        p.add_argument("--input")
        p.set_defaults(func=func)

    p = sub.add_parser("normal-form", parents=[common])
    p.add_argument("what", choices=["pencil", "net"])
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_normal_form)

    for name, func in (("center-curve", cmd_center_curve), ("veronese", cmd_veronese), ("pfaffian", cmd_pfaffian)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--input", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("polar", parents=[common])
    p.add_argument("action", choices=["check"])
    p.add_argument("--conic", required=True)
    p.add_argument("--triangle", required=True)
    p.set_defaults(func=cmd_polar)

    p = sub.add_parser("generate", parents=[common])
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--params", default="")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("aut-dim", "quasihomog") and not args.input and (args.N is None or args.l is None):
        parser.error(f"{args.command} needs --N and --l, or --input")
    if args.command == "scan" and args.max_N > 10:
        parser.error("--max-N is limited to 10")
    try:
        args.func(args)
    except Mismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ValueError, OSError, KeyError, TypeError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
