"""spin7cells command line: verify, factorize, census, cat, chart.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
3 the input was rejected (unparseable matrix or not in Spin(7)).
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import cellcomplex, charts, cohomology, groups, verify
from .errors import (BoundaryError, ConfigurationError, DomainError,
                     InconsistencyError, NumericError)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_REJECT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _common(p, seed=True):
    p.add_argument("--format", choices=("text", "data"), default="text",
                   help="text: tab-separated rows; data: JSON")
    p.add_argument("--data-dir", default=None, help="directory overriding the bundled data files")
    if seed:
        p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spin7cells", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=verify.SUITES + ("all",))
    p.add_argument("--tol", type=float, default=verify.DEFAULT_TOL,
                   help="tolerance for identity checks (default %(default)g)")
    p.add_argument("--samples", type=int, default=None, help="override every per-check sample count")
    p.add_argument("--space", default=None, help="restrict space-indexed checks to one space")
    _common(p)

    p = sub.add_parser("factorize", help="locate a Spin(7) matrix in its cell")
    p.add_argument("matrix", help="file with 8 lines of 8 numbers, '-' for stdin")
    p.add_argument("--tol", type=float, default=groups.TOL, help="membership tolerance")
    _common(p)

    p = sub.add_parser("census", help="cells and Poincare polynomial of a space")
    p.add_argument("space")
    _common(p, seed=False)

    p = sub.add_parser("cat", help="cup-length and cone-length bounds for a space")
    p.add_argument("space")
    _common(p, seed=False)

    p = sub.add_parser("chart", help="print phi_k(params) as a matrix file")
    p.add_argument("k", type=int, choices=sorted(charts.DOMAINS))
    p.add_argument("params", type=float, nargs="+")
    return parser


def _emit(obj: dict, text: str, fmt: str):
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n" if fmt == "data" else text)


def cmd_verify(args) -> int:
    if args.samples is not None and args.samples < 1:
        raise DomainError("--samples must be positive")
    if args.space is not None:
        key = args.space.lower().replace("fp", "f'")
        if key not in verify.known_spaces():
            raise DomainError(f"unknown space {args.space!r}; expected one of {sorted(verify.known_spaces())}")
    ctx = verify.Context(seed=args.seed, tol=args.tol, samples=args.samples,
                         space=args.space, data_dir=args.data_dir)
    results = verify.run_suite(args.suite, ctx)
    if not results:
        raise DomainError(f"suite {args.suite!r} has no checks for space {args.space!r}")
    sys.stdout.write(verify.format_report(results, args.format))
    return EXIT_FAIL if any(r.status == "fail" for r in results) else EXIT_OK


def _read_matrix(path: str) -> np.ndarray:
    if path == "-":
        return groups.parse_matrix(sys.stdin.read())
    with open(path) as fh:
        return groups.parse_matrix(fh.read())


def cmd_factorize(args) -> int:
    try:
        g = _read_matrix(args.matrix)
    except (OSError, DomainError) as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECT
    failed = groups.spin7_violations(g, tol=args.tol, rng=args.seed)
    if failed:
        print(f"rejected: not in Spin(7); failed {', '.join(failed)}", file=sys.stderr)
        return EXIT_REJECT
    try:
        f = charts.factorize(g)
    except (BoundaryError, NumericError, InconsistencyError) as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECT
    recon = float(np.max(np.abs(f.matrix() - g)))
    data = {
        "label": str(f.label),
        "word": f.label.word,
        "generators": list(f.label.gens),
        "params": {f"phi{k}": [float(x) for x in v] for k, v in zip(f.label.gens, f.params)},
        "residual": recon,
    }
    lines = [f"label\t{data['label']}", f"word\t{data['word']}"]
    lines += [f"{name}\t" + " ".join(f"{x:.15g}" for x in v) for name, v in data["params"].items()]
    lines.append(f"residual\t{recon:.3e}")
    _emit(data, "\n".join(lines) + "\n", args.format)
    return EXIT_OK


def cmd_census(args) -> int:
    space = args.space.lower()
    cells = cellcomplex.cell_census(space)
    poly = cellcomplex.poincare_polynomial(space)
    data = {
        "space": space,
        "cells": [{"cell": str(c), "dim": d} for c, d in cells],
        "count": len(cells),
        "poincare": poly,
    }
    lines = [f"cell\t{c}\t{d}" for c, d in cells]
    lines += [f"count\t{len(cells)}", f"poincare\t{cellcomplex.format_poly(poly)}"]
    _emit(data, "\n".join(lines) + "\n", args.format)
    return EXIT_OK


def cmd_cat(args) -> int:
    rep = cohomology.ls_category_report(args.space, args.data_dir)
    data = {"space": rep.space, "lower": rep.lower, "upper": rep.upper,
            "verdict": rep.verdict, "longest_product": rep.longest,
            "ring_model": "truncated" if rep.truncated else "full"}
    text = (f"{rep.space}\t({rep.lower}, {rep.upper if rep.upper is not None else '?'}, {rep.verdict})\n"
            f"longest_product\t{rep.longest}\n"
            f"ring_model\t{data['ring_model']}\n")
    _emit(data, text, args.format)
    return EXIT_OK


def cmd_chart(args) -> int:
    sys.stdout.write(groups.format_matrix(charts.char_map(args.k, args.params)))
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "factorize": cmd_factorize, "census": cmd_census,
            "cat": cmd_cat, "chart": cmd_chart}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (DomainError, ConfigurationError) as exc:
        print(f"spin7cells {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
