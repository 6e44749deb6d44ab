"""Command line interface.

Exit codes: 0 on success or a pure/passing result, 1 when a combinatorial
check fails (impure grid, oracle mismatch, failing suite), 2 for usage and
input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import enumeration, suites
from .exceptions import DowncoreError
from .grids import boundary_grid, count_independent_sets_by_size, downcore, is_pure
from .permutations import parse_permutation
from .series import series_solve_F, verify_functional_equation
from .staircase import StaircaseEncoding, decode, encode, staircase_downcore


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _parse_encoding(text: str) -> StaircaseEncoding:
    text = text.strip()
    if text.startswith("{"):
        return StaircaseEncoding.from_json(text)
    rows = [r.split() for r in text.split("/")]
    return StaircaseEncoding.from_rows([[int(c) for c in r] for r in rows if r])


def cmd_encode(args) -> int:
    enc = encode(parse_permutation(args.perm))
    _emit(args, enc.to_json(), enc.render())
    return 0


def cmd_decode(args) -> int:
    try:
        enc = _parse_encoding(args.encoding)
    except (ValueError, KeyError, TypeError) as exc:
        raise DowncoreError(f"cannot read staircase encoding: {exc}") from exc
    perm = decode(enc)
    _emit(args, {"permutation": perm.to_json()}, str(perm))
    return 0


def _edge_json(edges) -> list:
    return [[list(p), list(q)] for p, q in edges]


def cmd_boundary(args) -> int:
    perm = parse_permutation(args.perm)
    grid = boundary_grid(perm)
    g = downcore(grid)
    payload = {**grid.to_json(), "edges": _edge_json(g.edges())}
    text = "\n".join([
        grid.render(),
        f"boxes: {len(grid)}",
        f"downcore edges: {g.edge_count()}",
        *(f"  {p} -- {q}" for p, q in g.edges()),
    ])
    _emit(args, payload, text)
    return 0


def cmd_purity(args) -> int:
    perm = parse_permutation(args.perm)
    grid = boundary_grid(perm)
    g = downcore(grid)
    report = is_pure(g)
    payload = {
        "permutation": perm.to_json(),
        **grid.to_json(),
        "edge_count": g.edge_count(),
        **report.to_json(),
    }
    verdict = "pure" if report.is_pure else "impure"
    text = "\n".join([
        grid.render() or "(empty boundary grid)",
        f"boxes: {len(grid)}  downcore edges: {g.edge_count()}",
        f"{verdict}: maximal independent sets have sizes {report.min_size}..{report.max_size} "
        f"({report.maximal_set_count} sets)",
        f"smallest witness ({report.min_size}):",
        grid.render(report.witness_min),
        f"largest witness ({report.max_size}):",
        grid.render(report.witness_max),
    ])
    _emit(args, payload, text)
    return 0 if report.is_pure else 1


def _oracle_table(which: str, bound: int) -> list[list[int]]:
    if which == "I":
        rows = []
        width = max(0, 2 * bound - 1)
        for n in range(bound + 1):
            g = staircase_downcore(n) if n else None
            counts = count_independent_sets_by_size(g) if g else [1]
            rows.append([counts[k] if k < len(counts) else 0 for k in range(width + 1)])
        return rows
    width = enumeration.max_nonzero_k(bound)
    return [
        [suites.brute_force_J(l).get(k, 0) for k in range(width + 1)]
        for l in range(1, bound + 1)
    ]


def cmd_tables(args) -> int:
    which, bound = args.which, args.bound
    if which == "J" and bound < 1:
        raise DowncoreError("J tables start at l = 1; bound must be positive")
    closed = enumeration.I_table(bound) if which == "I" else enumeration.J_table(bound)
    first = 0 if which == "I" else 1
    label = "n" if which == "I" else "l"
    width = len(closed[0])
    mismatches = []
    oracle = None
    if args.oracle:
        oracle = _oracle_table(which, bound)
        for r, (row, brute) in enumerate(zip(closed, oracle)):
            for k, (a, b) in enumerate(zip(row, brute)):
                if a != b:
                    mismatches.append((r + first, k, a, b))

    if args.format == "json":
        payload = {
            "table": which,
            "index": label,
            "columns": list(range(width)),
            "rows": [[r + first, row] for r, row in enumerate(closed)],
        }
        if oracle is not None:
            payload["oracle"] = [[r + first, row] for r, row in enumerate(oracle)]
            payload["mismatches"] = [list(m) for m in mismatches]
        text = json.dumps(payload, sort_keys=True)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = [f"{label}\\k", *map(str, range(width))]
        if oracle is not None:
            header.append("oracle")
        writer.writerow(header)
        for r, row in enumerate(closed):
            line = [str(r + first), *map(str, row)]
            if oracle is not None:
                bad = [str(m[1]) for m in mismatches if m[0] == r + first]
                line.append("match" if not bad else "mismatch k=" + " ".join(bad))
            writer.writerow(line)
        text = buf.getvalue().rstrip("\n")

    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    for n, k, a, b in mismatches:
        print(f"mismatch at ({n},{k}): closed form {a}, brute force {b}", file=sys.stderr)
    return 1 if mismatches else 0


def cmd_series(args) -> int:
    order = 10 if args.order is None else args.order
    f = series_solve_F(order)
    ok = verify_functional_equation(f)
    payload = {**f.to_json(), "satisfies_equation": ok}
    lines = [f"F(x, y) solved to order {order}; functional equation {'holds' if ok else 'FAILS'}"]
    for n in range(order + 1):
        lines.append(f"x^{n}: " + " ".join(str(f[n, k]) for k in range(order + 1)))
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else 1


def cmd_verify(args) -> int:
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in suites.SUITES:
            print(
                f"unknown suite {name!r}; valid suites: all, " + ", ".join(suites.SUITES),
                file=sys.stderr,
            )
            return 2
    outcomes = [suites.run_suite(n, max_n=args.max_n, order=args.order, seed=args.seed) for n in names]
    if args.json:
        data = [o.to_json() for o in outcomes]
        print(json.dumps(data if len(data) > 1 else data[0], sort_keys=True))
    else:
        for o in outcomes:
            print(o.summary())
            print(f"  wall time: {o.wall_time:.3f}s")
    return 0 if all(o.passed for o in outcomes) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    common.add_argument("--max-n", type=int, default=None, help="size bound for verification suites")
    common.add_argument("--order", type=int, default=None, help="series truncation order")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")

    parser = argparse.ArgumentParser(prog="downcore", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", parents=[common], help="staircase encoding of a permutation")
    p.add_argument("perm")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", parents=[common], help="132-avoider with a given encoding")
    p.add_argument("encoding", help='JSON {"size":..,"rows":..} or rows like "2 0 1 / 1 0 / 1"')
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("boundary", parents=[common], help="boundary grid and downcore edges")
    p.add_argument("perm")
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("purity", parents=[common], help="purity of the boundary grid's downcore")
    p.add_argument("perm")
    p.set_defaults(func=cmd_purity)

    p = sub.add_parser("tables", parents=[common], help="I(n,k) or J(l,k) triangles")
    p.add_argument("which", choices=["I", "J"])
    p.add_argument("bound", type=int)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output", "-o", default=None, help="write to a file instead of stdout")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("series", parents=[common], help="solve the generating-function equation")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", help="suite name or 'all'")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DowncoreError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
