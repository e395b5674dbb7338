"""Command-line front end.

Exit codes: 0 success, 1 usage error or unmet row condition, 2 resource
limit or integer overflow, 3 a comparison verdict that disagrees with the
expected strict inequality.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from . import analysis
from .chain import Chain
from .config import budgets
from .errors import ConditionUnmet, GChainError, LimitExceeded, NotAChain, Overflow
from .methods import best_candidate, factor_method, m_ary_method, tree_method
from .optimal import EnumerationTable, bounds, enumerate as enumerate_table, l_g_exact
from .powerprog import compile as compile_program
from .powerprog import evaluate_mod, square_and_multiply

EXIT_OK, EXIT_USAGE, EXIT_LIMIT, EXIT_FINDING = 0, 1, 2, 3
METHODS = ("factor", "mary", "tree", "optimal", "best")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# -- records -------------------------------------------------------------------


def render(record: dict) -> str:
    """One canonical JSON line."""
    return json.dumps(record, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def parse(line: str) -> dict:
    return json.loads(line)


def fmt_ratio(x: float) -> str:
    return f"{x:.6f}"


@dataclass(frozen=True)
class ChainRecord:
    g: int
    d: int
    method: str
    m: int | None
    length: int
    elements: tuple[int, ...]
    steps: tuple[tuple[int, ...], ...]
    lower: int
    upper: int

    @classmethod
    def from_chain(cls, chain: Chain, method: str, m: int | None = None) -> ChainRecord:
        lower, upper = bounds(chain.d, chain.g)
        return cls(chain.g, chain.d, method, m, chain.length, chain.elements, chain.steps, lower, upper)

    def chain(self) -> Chain:
        """Rebuild (and thereby re-validate) the chain."""
        return Chain(self.g, self.elements, self.steps)

    def to_dict(self) -> dict:
        return {
            "type": "chain",
            "g": self.g,
            "d": self.d,
            "method": self.method,
            "m": self.m,
            "length": self.length,
            "elements": list(self.elements),
            "steps": [list(s) for s in self.steps],
            "bounds": {"lower": self.lower, "upper": self.upper},
        }

    @classmethod
    def from_dict(cls, data: dict) -> ChainRecord:
        if data.get("type") != "chain":
            raise ValueError("not a chain record")
        rec = cls(
            data["g"],
            data["d"],
            data["method"],
            data["m"],
            data["length"],
            tuple(data["elements"]),
            tuple(tuple(s) for s in data["steps"]),
            data["bounds"]["lower"],
            data["bounds"]["upper"],
        )
        chain = rec.chain()
        if chain.length != rec.length or chain.d != rec.d:
            raise ValueError("record fields disagree with its chain")
        return rec


def comparison_record(row: analysis.ComparisonRow) -> dict:
    def side(name, chain):
        return {"method": name, "length": chain.length, "elements": list(chain.elements)}

    out = {
        "type": "comparison",
        "row": row.row,
        "condition": row.condition,
        "params": row.params,
        "d": row.d,
        "a": side(row.method_a, row.chain_a),
        "b": side(row.method_b, row.chain_b),
        "verdict": row.verdict,
        "notes": list(row.notes),
    }
    if row.secondary is not None:
        s = row.secondary
        out["secondary"] = {"a": side(s.method_a, s.chain_a), "b": side(s.method_b, s.chain_b), "verdict": s.verdict}
    return out


# -- output --------------------------------------------------------------------


class Output:
    """Collects human lines and structured records for stdout and --out."""

    def __init__(self, as_json: bool, out_path: str | None):
        self.as_json = as_json
        self.out_path = out_path
        self.records: list[dict] = []

    def emit(self, record: dict, human: str) -> None:
        self.records.append(record)
        print(render(record) if self.as_json else human)

    def close(self) -> None:
        if self.out_path:
            with open(self.out_path, "w", encoding="utf-8") as fh:
                for rec in self.records:
                    fh.write(render(rec) + "\n")


# -- commands ------------------------------------------------------------------


def _build_chain(d: int, g: int, method: str, m: int | None) -> tuple[Chain, int | None]:
    if method == "factor":
        return factor_method(d, g), None
    if method == "mary":
        m = g if m is None else m
        return m_ary_method(d, g, m), m
    if method == "tree":
        return tree_method(d, g), None
    if method == "optimal":
        return l_g_exact(d, g).witness, None
    cand = best_candidate(d, g)
    return cand.chain, cand.m


def cmd_chain(args, out: Output) -> int:
    if args.m is not None and args.method != "mary":
        raise UsageError("--m only applies to --method mary")
    chain, m = _build_chain(args.d, args.g, args.method, args.m)
    rec = ChainRecord.from_chain(chain, args.method, m)
    radix = f" m={m}" if m is not None else ""
    human = (
        f"g={rec.g} d={rec.d} method={rec.method}{radix} length={rec.length}\n"
        f"elements: {', '.join(map(str, rec.elements))}\n"
        f"bounds: {rec.lower} ≤ l ≤ {rec.upper}"
    )
    out.emit(rec.to_dict(), human)
    return EXIT_OK


def parse_grid(spec: str) -> list[tuple[int, int, int]]:
    """``default`` or comma-separated ``row:g[:k]`` entries."""
    if spec == "default":
        return list(analysis.DEFAULT_GRID)
    grid = []
    for item in spec.split(","):
        parts = item.strip().split(":")
        if len(parts) not in (2, 3) or not all(p.strip().lstrip("-").isdigit() for p in parts):
            raise UsageError(f"bad grid entry {item!r}; expected row:g[:k]")
        row, g = int(parts[0]), int(parts[1])
        k = int(parts[2]) if len(parts) == 3 else 0
        grid.append((row, g, k))
    return sorted(grid)


def cmd_compare(args, out: Output) -> int:
    if args.all_rows:
        if args.row is not None or args.g is not None:
            raise UsageError("--all-rows takes --grid, not --row/--g")
        grid = parse_grid(args.grid)
    else:
        if args.row is None or args.g is None:
            raise UsageError("compare needs --row and --g, or --all-rows")
        grid = [(args.row, args.g, args.k)]
    status = EXIT_OK
    for row_id, g, k in grid:
        row = analysis.table1_row(row_id, g, k)
        human = f"row {row.row} g={g} k={k} d={row.d}: {row.summary()}"
        for note in row.notes:
            human += f"\n  note: {note}"
        out.emit(comparison_record(row), human)
        if not row.verdict:
            status = EXIT_FINDING
    return status


def _enumeration(args, out: Output) -> EnumerationTable | None:
    try:
        return enumerate_table(args.g, args.max)
    except LimitExceeded as exc:
        table = exc.partial
        print(f"limit reached: {exc}; results below are PARTIAL", file=sys.stderr)
        _emit_table(args, out, table)
        return None


def _emit_table(args, out: Output, table: EnumerationTable) -> None:
    kind = args.what
    partial = table.partial
    tag = " (partial)" if partial else ""
    if kind in ("dg", "cg"):
        values = table.d_g if kind == "dg" else table.c_g
        for r, v in values.items():
            complete = r in table.complete_d
            label = "d" if kind == "dg" else "c"
            note = "" if complete or kind == "cg" else f" (only n <= {table.n_max})"
            rec = {"type": kind, "g": table.g, "r": r, "value": v, "n_max": table.n_max, "complete": complete, "partial": partial}
            out.emit(rec, f"{label}_{table.g}({r}) = {v}{note}{tag}")
    else:
        for n, count in table.nmc.items():
            rec = {"type": "nmc", "g": table.g, "n": n, "l": table.l[n], "value": count, "partial": partial}
            out.emit(rec, f"NMC_{table.g}({n}) = {count} (l = {table.l[n]}){tag}")


def parse_levels(spec: str) -> tuple[int, int]:
    lo, sep, hi = spec.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise UsageError(f"bad level range {spec!r}; expected a..b") from None
    if a < 1 or b < a:
        raise UsageError(f"bad level range {spec!r}; need 1 <= a <= b")
    return a, b


def cmd_stats(args, out: Output) -> int:
    what = args.what
    if what in ("dg", "cg", "nmc"):
        table = _enumeration(args, out)
        if table is None:
            return EXIT_LIMIT
        _emit_table(args, out, table)
        return EXIT_OK
    if what == "sb":
        p = analysis.scholz_brauer_probe(args.g, args.n)
        word = "holds" if p.holds else "exceeds"
        lhs = f"l={p.lhs}" if p.exact else f"l<={p.lhs} (achieved, search over budget)"
        rec = {"type": "probe", "g": p.g, "n": p.n, "d": p.worst_d, "lhs": p.lhs, "exact": p.exact, "rhs": p.rhs, "holds": p.holds}
        out.emit(rec, f"d={p.worst_d}, {lhs}, rhs={p.rhs}, {word}")
        return EXIT_OK
    if what == "bounds":
        lo, hi = bounds(args.d, args.g)
        out.emit({"type": "bounds", "g": args.g, "d": args.d, "lower": lo, "upper": hi}, f"{lo} ≤ l ≤ {hi}")
        return EXIT_OK
    # ratio
    a, b = parse_levels(args.levels)
    scan = analysis.ratio_scan(args.g, a, b, args.samples, args.seed)
    for i, s in enumerate(scan.samples):
        rec = {
            "type": "ratio_sample",
            "g": s.g,
            "index": i,
            "n": s.n,
            "lambda": s.lam,
            "achieved": s.achieved,
            "ratio": fmt_ratio(s.ratio),
            "bound": fmt_ratio(s.bound),
        }
        out.records.append(rec)
        if out.as_json:
            print(render(rec))
    for lv, mean in scan.means().items():
        rec = {"type": "ratio_level", "g": args.g, "lambda": lv, "samples": args.samples, "seed": args.seed, "mean": fmt_ratio(mean)}
        out.emit(rec, f"level {lv}: mean ratio {fmt_ratio(mean)}")
    trend = "non-increasing endpoints" if scan.endpoints_ok() else "mean ratio grew"
    if not out.as_json:
        print(f"trend: {trend}")
    return EXIT_OK


def cmd_powerprog(args, out: Output) -> int:
    chain, m = _build_chain(args.d, args.g, args.method, args.m)
    program = compile_program(chain)
    value = evaluate_mod(program, args.base, args.mod)
    reference = square_and_multiply(args.base, args.d, args.mod)
    rec = {
        "type": "program",
        "g": program.g,
        "d": program.d,
        "method": args.method,
        "m": m,
        "instructions": [[ins.dest, list(ins.operands)] for ins in program.instructions],
        "base": args.base,
        "mod": args.mod,
        "value": value,
        "verified": value == reference,
    }
    if value == reference:
        verdict = f"verified: {args.base}^{args.d} mod {args.mod} = {value}"
    else:
        verdict = f"MISMATCH: program gives {value}, square-and-multiply gives {reference}"
    out.emit(rec, f"{program.listing()}\n{verdict}" if program.instructions else verdict)
    return EXIT_OK if value == reference else EXIT_FINDING


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gchain", description="Generalized addition chains: build, compare, search, compile.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--json", action="store_true", help="print one JSON record per line")
        p.add_argument("--out", metavar="FILE", help="also write the JSON records to FILE")

    p = sub.add_parser("chain", help="build a chain for d")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--m", type=int, help="radix for --method mary (default g)")
    p.add_argument("d", type=int)
    common(p)

    p = sub.add_parser("compare", help="reproduce rows of the method comparison table")
    p.add_argument("--row", type=int)
    p.add_argument("--g", type=int)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--all-rows", action="store_true")
    p.add_argument("--grid", default="default", help="'default' or row:g[:k],... (with --all-rows)")
    common(p)

    p = sub.add_parser("stats", help="enumeration tables, probes, bounds, ratio trend")
    stats = p.add_subparsers(dest="what", required=True, parser_class=_Parser)
    for what, text in (("dg", "d_g(r)"), ("cg", "c_g(r)"), ("nmc", "NMC_g(n)")):
        q = stats.add_parser(what, help=f"{text} for n <= --max")
        q.add_argument("--g", type=int, required=True)
        q.add_argument("--max", type=int, required=True)
        common(q)
    q = stats.add_parser("sb", help="Scholz-Brauer style probe")
    q.add_argument("--g", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    common(q)
    q = stats.add_parser("bounds", help="lower and upper bound on l_g(d)")
    q.add_argument("--g", type=int, required=True)
    q.add_argument("d", type=int)
    common(q)
    q = stats.add_parser("ratio", help="mean best-method length over floor(log_g n) per level")
    q.add_argument("--g", type=int, required=True)
    q.add_argument("--levels", required=True, help="a..b")
    q.add_argument("--samples", type=int, default=50)
    q.add_argument("--seed", type=int, default=0)
    common(q)

    p = sub.add_parser("powerprog", help="compile a chain to a product program and check it")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("d", type=int)
    common(p)
    return parser


COMMANDS = {"chain": cmd_chain, "compare": cmd_compare, "stats": cmd_stats, "powerprog": cmd_powerprog}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    out = Output(args.json, args.out)
    try:
        budgets()  # reject a malformed GCHAIN_BUDGET up front
        code = COMMANDS[args.command](args, out)
    except (LimitExceeded, Overflow) as exc:
        print(f"gchain: limit: {exc}", file=sys.stderr)
        code = EXIT_LIMIT
    except (UsageError, ConditionUnmet, NotAChain, ValueError) as exc:
        print(f"gchain: error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    except GChainError as exc:
        print(f"gchain: error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    out.close()
    return code


if __name__ == "__main__":
    sys.exit(main())
