"""Command line interface.

Exit codes: 0 success, 1 a negative mathematical answer (invalid trade,
nonexistent construction), 2 usage or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import defaultdict
from pathlib import Path

from . import construct, fixtures, inclusion, levels, search
from .core import (Trade, TradeError, dumps_trade, load_trade, trade_to_dict,
                   verify, volume)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class _Negative(Exception):
    """A mathematical 'no' that should end the command with exit code 1."""


def _emit_trade(trade: Trade, out: str | None) -> None:
    text = dumps_trade(trade)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> Trade:
    try:
        return load_trade(path)
    except OSError as exc:
        raise TradeError(f"cannot read {path}: {exc.strerror}") from None


def cmd_verify(args) -> int:
    trade = _load(args.path)
    t = trade.t if args.t is None else args.t
    res = verify(trade, t)
    print(json.dumps({"valid": res.valid, "t": t,
                      "volume": len(trade.t1) if not res.size_mismatch else None,
                      "violations": [{"positions": list(v.key.positions),
                                      "values": list(v.key.values),
                                      "delta": v.delta} for v in res.violations],
                      "common_blocks": [list(b) for b in res.common_blocks]}))
    if not res.valid:
        print(res.describe(), file=sys.stderr)
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_build(args) -> int:
    try:
        if args.kind == "critical":
            trade = construct.critical_trade(args.t, args.k, args.i)
        elif args.kind == "cyclic":
            trade = construct.cyclic_one_trade(args.s)
        elif args.kind == "double":
            trade = construct.double(_load(args.input), args.x, args.y)
        else:
            trade = construct.pad_to_k(_load(args.input), args.k, args.fill)
    except construct.ConstructionError as exc:
        raise _Negative(str(exc)) from None
    _emit_trade(trade, args.out)
    print(f"volume {volume(trade)}", file=sys.stderr)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    budget = search.Budget.default()
    if args.budget is not None or args.nodes is not None:
        budget = search.Budget(
            args.nodes if args.nodes is not None else budget.max_nodes,
            args.budget if args.budget is not None else budget.max_seconds)
    report = search.spectrum_report(args.t, args.k, args.smax, budget,
                                    method=args.method, workers=args.workers)
    text = json.dumps(report.to_dict())
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    groups = defaultdict(list)
    for s, v in sorted(report.verdicts.items()):
        groups[v.kind.value].append(s)
    for kind, vols in groups.items():
        print(f"{kind}: {vols}", file=sys.stderr)
    return EXIT_OK


def cmd_levels(args) -> int:
    trade = _load(args.input)
    dec = levels.level_decomposition(trade, args.dir)
    table = [f"direction {dec.direction}: {len(dec)} level(s), total volume {volume(trade)}"]
    table += [f"  symbol {x}: volume {vol}" for x, vol in dec.volumes().items()]
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for x, lv in dec.levels.items():
            (out / f"level_d{dec.direction}_x{x}.json").write_text(dumps_trade(lv))
        print("\n".join(table))
    else:
        print(json.dumps({"direction": dec.direction,
                          "volumes": {str(x): v for x, v in dec.volumes().items()},
                          "levels": {str(x): trade_to_dict(lv)
                                     for x, lv in dec.levels.items()}}))
        print("\n".join(table), file=sys.stderr)
    return EXIT_OK


def cmd_compose(args) -> int:
    a, b = _load(args.a), _load(args.b)
    trade = construct.compose(a, b, "plus" if args.op == "add" else "minus")
    _emit_trade(trade, args.out)
    print(f"volume {volume(trade)}", file=sys.stderr)
    return EXIT_OK


def cmd_matrix(args) -> int:
    m = inclusion.build_inclusion_matrix(args.t, args.v, args.k)
    if args.dense:
        text = "\n".join(" ".join(map(str, row)) for row in m.to_dense()) + "\n"
    else:
        text = inclusion.export_text(m)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(f"{m.n_rows} x {m.n_cols}", file=sys.stderr)
    return EXIT_OK


def cmd_fixtures(args) -> int:
    if args.name is None:
        for name in fixtures.FIXTURES:
            print(f"{name}\tvolume {fixtures.DECLARED_VOLUMES[name]}")
        return EXIT_OK
    try:
        trade = fixtures.get(args.name)
    except KeyError as exc:
        raise TradeError(exc.args[0]) from None
    _emit_trade(trade, args.out)
    return EXIT_OK


def grid_text(trade: Trade) -> str:
    """Row/column grid with "p/q" cells for a 2-(v,3) trade.

    Falls back to the column table (one line per coordinate) when some cell
    holds more than one symbol on a side, or the trade is not t=2, k=3.
    """
    if trade.t == 2 and trade.k == 3:
        p, q = {}, {}
        ok = True
        for side, cells in ((trade.t1, p), (trade.t2, q)):
            for r, c, x in side:
                if (r, c) in cells:
                    ok = False
                cells[r, c] = x
        if ok:
            rows = sorted({r for r, _ in p} | {r for r, _ in q})
            cols = sorted({c for _, c in p} | {c for _, c in q})
            cell = lambda r, c: (f"{p[r, c]}/{q[r, c]}" if (r, c) in p or (r, c) in q
                                 else ".")
            width = max([len(cell(r, c)) for r in rows for c in cols] + [1])
            sep = "+" + "+".join("-" * (width + 2) for _ in cols) + "+"
            lines = [sep]
            for r in rows:
                lines.append("|" + "|".join(f" {cell(r, c):^{width}} " for c in cols) + "|")
                lines.append(sep)
            return "\n".join(lines)
    return column_table(trade)


def column_table(trade: Trade) -> str:
    lines = []
    for name, side in (("T1", trade.t1), ("T2", trade.t2)):
        width = max((len(str(x)) for b in side for x in b), default=1)
        for j in range(trade.k):
            label = name if j == 0 else ""
            lines.append(f"{label:<3}| " + " ".join(f"{b[j]:>{width}}" for b in side))
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"


def cmd_grid(args) -> int:
    print(grid_text(_load(args.input)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="latintrades",
                                     description="t-Latin trades: build, verify, search.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a trade file")
    p.add_argument("path")
    p.add_argument("--t", type=int, help="strength (defaults to the file's t)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("build", help="run a construction")
    bsub = p.add_subparsers(dest="kind", required=True)
    b = bsub.add_parser("critical")
    b.add_argument("--t", type=int, required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--i", type=int, required=True)
    b = bsub.add_parser("cyclic")
    b.add_argument("--s", type=int, required=True)
    b = bsub.add_parser("double")
    b.add_argument("--in", dest="input", required=True)
    b.add_argument("--x", type=int, default=1)
    b.add_argument("--y", type=int, default=2)
    b = bsub.add_parser("pad")
    b.add_argument("--in", dest="input", required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--fill", type=int, default=1)
    for b in bsub.choices.values():
        b.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("spectrum", help="per-volume verdicts for S(t,k)")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--smax", type=int, required=True)
    p.add_argument("--method", choices=("closure", "search", "full"), default="full")
    p.add_argument("--budget", type=float, help="seconds per exhaustive search")
    p.add_argument("--nodes", type=int, help="node cap per exhaustive search")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("levels", help="level decomposition in one direction")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--dir", type=int, required=True)
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_levels)

    p = sub.add_parser("compose", help="sum or difference of two trades")
    p.add_argument("op", choices=("add", "sub"))
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("matrix", help="export the t-inclusion matrix")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--dense", action="store_true")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("fixtures", help="print a published trade")
    p.add_argument("--name")
    p.add_argument("--out")
    p.set_defaults(func=cmd_fixtures)

    p = sub.add_parser("grid", help="pretty-print a 2-(v,3) trade as a grid")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_grid)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Negative as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except TradeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
