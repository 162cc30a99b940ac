"""Command-line front end.

    permruns table runs --n 4 --format csv
    permruns verify lemma-difficult --n 8
    permruns verify phi-audit --n 6 --k 3 --restriction V
    permruns draw --perm 243165

Exit codes: 0 pass, 1 a verified statement failed, 2 usage error,
3 an enumeration guard refused the request.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import List, Optional

from . import distributions as dist
from . import verify
from .errors import GuardError
from .paths import LabeledPath, Restriction, perm_to_path, validate, H
from .perms import Permutation

FORMAT_ENV = "PERMRUNS_FORMAT"
FORMATS = ("json", "csv", "text")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _exact(obj):
    """Integers become decimal strings so no consumer rounds them through floats."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _exact(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_exact(v) for v in obj]
    return obj


def _record(command: str, parameters: dict, payload) -> str:
    return json.dumps({"command": command, "parameters": parameters,
                       "payload": _exact(payload)}, indent=2)


# ------------------------------------------------------------------- table

def _build_table(statistic: str, n: int, j: Optional[int], max_n: Optional[int]):
    if statistic == "runs":
        return dist.run_distribution(n, max_n=max_n)
    if statistic == "descents":
        return dist.descent_distribution(n, max_n=max_n)
    if statistic == "half-ascending":
        return dist.half_ascending_descent_distribution(n, max_n=max_n)
    if statistic == "odd-t":
        return dist.odd_t_distribution(n, max_n=max_n)
    if statistic == "t":
        if j is None:
            raise UsageError("table t needs --j")
        return dist.t_distribution(n, j, max_n=max_n)
    raise UsageError(f"unknown statistic {statistic}")


def cmd_table(args) -> int:
    table = _build_table(args.statistic, args.n, args.j, args.max_n)
    rows = sorted(table.counts.items())
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "k", "count"])
        for k, c in rows:
            writer.writerow([table.n, k, c])
        print(buf.getvalue(), end="")
    elif args.format == "json":
        params = {"statistic": args.statistic, "n": args.n}
        if args.j is not None:
            params["j"] = args.j
        payload = {"n": table.n, "statistic": table.statistic.value, "j": table.j,
                   "k_range": list(table.k_range), "total": table.total,
                   "counts": [{"k": k, "count": c} for k, c in rows]}
        print(_record("table", params, payload))
    else:
        label = args.statistic + (f" j={args.j}" if args.j is not None else "")
        print(f"# {label} n={table.n} total={table.total}")
        width = max(len(str(c)) for _, c in rows) if rows else 1
        for k, c in rows:
            print(f"{k:>3}  {c:>{width}}")
    return EXIT_OK


# ------------------------------------------------------------------ verify

def cmd_verify(args) -> int:
    timing = not args.no_timing
    if args.target == "all":
        results = verify.run_all(args.n, max_n=args.max_n, timing=timing)
    elif args.target == "phi-audit":
        results = [verify.check_phi_audit(args.n, args.k, args.restriction,
                                          max_pairs=args.max_pairs, timing=timing)]
    else:
        results = [verify.SUITE[args.target](args.n, max_n=args.max_n)]
    passed = all(r.passed for r in results)
    if args.format == "json":
        params = {"target": args.target, "n": args.n}
        if args.k is not None:
            params["k"] = args.k
        if args.restriction is not None:
            params["restriction"] = args.restriction
        print(_record("verify", params,
                      {"passed": passed, "results": [r.as_dict() for r in results]}))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["check", "n", "passed", "counterexample"])
        for r in results:
            writer.writerow([r.name, r.n, "pass" if r.passed else "fail", r.counterexample or ""])
        print(buf.getvalue(), end="")
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  n={r.n}")
            if r.counterexample:
                print(f"      {r.counterexample}")
    return EXIT_OK if passed else EXIT_FAIL


# -------------------------------------------------------------------- draw

CELL = 5  # columns between lattice points


def render_path(path: LabeledPath) -> str:
    """ASCII picture of the path from (0, 0), labels written on the edges."""
    pts = [(0, 0)]
    for e in path.edges:
        x, y = pts[-1]
        pts.append((x + 1, y) if e.dir == H else (x, y + 1))
    width = max(x for x, _ in pts) * CELL + 4
    height = max(y for _, y in pts) * 2 + 1
    grid = [[" "] * width for _ in range(height)]

    def row(y):
        return height - 1 - 2 * y

    for (x0, y0), e in zip(pts, path.edges):
        if e.dir == H:
            text = f"-{e.label}".ljust(CELL - 1, "-")
            for c, ch in enumerate(text):
                grid[row(y0)][x0 * CELL + 1 + c] = ch
        else:
            r = row(y0) - 1
            grid[r][x0 * CELL] = "|"
            for c, ch in enumerate(str(e.label)):
                grid[r][x0 * CELL + 1 + c] = ch
    for x, y in pts:
        grid[row(y)][x * CELL] = "+"
    return "\n".join("".join(line).rstrip() for line in grid)


def cmd_draw(args) -> int:
    if args.perm is not None:
        perm = Permutation.parse(args.perm)
        path = perm_to_path(perm)
        header = f"{perm} -> {path}"
    else:
        path = LabeledPath.parse(args.path)
        header = str(path)
    violation = validate(path)
    picture = render_path(path)
    if args.format == "json":
        payload = {"edges": path.to_json(), "valid": violation is None,
                   "violation": str(violation) if violation else None, "render": picture}
        print(_record("draw", {"perm": args.perm, "path": args.path}, payload))
    else:
        print(header)
        if violation is not None:
            print(f"# invalid: {violation}")
        print(picture)
    return EXIT_OK


# --------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    default_format = os.environ.get(FORMAT_ENV, "text")
    if default_format not in FORMATS:
        default_format = "text"
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=default_format)
    common.add_argument("--max-n", type=int, default=None,
                        help="lift the exhaustive-enumeration guard")

    parser = argparse.ArgumentParser(prog="permruns", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="print a distribution table")
    p.add_argument("statistic", choices=["runs", "descents", "half-ascending", "t", "odd-t"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, default=None)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("target", choices=list(verify.SUITE) + ["all"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--restriction", choices=[r.value for r in Restriction], default=None)
    p.add_argument("--max-pairs", type=int, default=None)
    p.add_argument("--no-timing", action="store_true", help="omit elapsed times")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("draw", parents=[common], help="draw a labeled lattice path")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--perm")
    src.add_argument("--path")
    p.set_defaults(func=cmd_draw)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardError as exc:
        print(f"permruns: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ValueError as exc:
        print(f"permruns: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
