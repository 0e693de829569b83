"""Command-line front end.

Exit codes: 0 success/found/valid, 1 not found/invalid, 2 unknown, 64 usage
or input error.  Interlace types are bitstrings whose k-th character is the
value at position k (1-based), e.g. ``--e 0101``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import IO, Iterable, Sequence

from .amalgam import make_interlace
from .embedding import Verdict, class_membership, subgraph_embed, weak_embed
from .enumeration import (
    DEFAULT_VERTEX_CAP,
    Catalog,
    Enumeration,
    catalog_stats,
    enumerate_levels,
    read_catalogs,
    write_catalogs,
)
from .forcing import Condition, is_condition, sample_chain
from .interlace import interlace_graph, shift_graph
from .invariants import (
    Graph,
    chromatic_number,
    girth_record,
    invariant_record,
    odd_girth,
    reduct,
)
from .structures import Structure

EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- io helpers -------------------------------------------------------------


def read_structure_file(path: str) -> tuple[dict | None, Structure]:
    """Read a structure record, optionally preceded by a ``{"n", "e"}`` header line."""
    text = Path(path).read_text()
    try:
        records = [json.loads(text)]
    except json.JSONDecodeError:
        records = [json.loads(line) for line in text.splitlines() if line.strip()]
    header = None
    body = None
    for rec in records:
        if "m" in rec:
            body = rec
        else:
            header = rec
    if body is None:
        raise UsageError(f"{path}: no structure record found")
    return header, Structure.from_record(body)


def write_condition(q: Condition, fh: IO[str]) -> None:
    fh.write(json.dumps(q.header()) + "\n")
    fh.write(q.structure.dumps() + "\n")


def load_catalogs(path: str) -> Enumeration:
    with open(path) as fh:
        return read_catalogs(fh)


def select_level(en: Enumeration, level: int | None) -> list[Catalog]:
    if level is None:
        return en.catalogs
    chosen = [c for c in en.catalogs if c.level == level]
    if not chosen:
        raise UsageError(f"catalog has no level {level}")
    return chosen


def emit(records: Iterable[dict], fmt: str, out: IO[str]) -> None:
    records = list(records)
    if fmt == "table":
        if not records:
            return
        keys = list(records[0])
        rows = [[("-" if r.get(k) is None else str(r.get(k))) for k in keys] for r in records]
        widths = [max(len(k), *(len(row[i]) for row in rows)) for i, k in enumerate(keys)]
        out.write("  ".join(k.rjust(w) for k, w in zip(keys, widths)) + "\n")
        for row in rows:
            out.write("  ".join(v.rjust(w) for v, w in zip(row, widths)) + "\n")
    else:
        for r in records:
            out.write(json.dumps(r) + "\n")


def _open_out(path: str | None) -> IO[str]:
    return open(path, "w") if path else sys.stdout


# -- subcommands ------------------------------------------------------------


def cmd_enum(args: argparse.Namespace) -> int:
    e = make_interlace(args.e)
    if e.n != args.n:
        raise UsageError(f"--e {args.e} has arity {e.n}, but --n is {args.n}")
    en = enumerate_levels(args.n, e, args.levels, args.cap)
    if en.truncated is not None:
        print(f"truncated: level {en.truncated} exceeds vertex cap {args.cap}", file=sys.stderr)
    fh = _open_out(args.out)
    try:
        write_catalogs(en.catalogs, fh, en.truncated)
    finally:
        if fh is not sys.stdout:
            fh.close()
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    en = load_catalogs(args.catalog)
    if args.cumulative:
        cats = [c for c in en.catalogs if args.level is None or c.level <= args.level]
        records, running = [], {}
        for c in cats:
            running = _merge_stats(running, catalog_stats(c))
            records.append({"level": f"0..{c.level}", **running})
    else:
        records = [catalog_stats(c) for c in select_level(en, args.level)]
    emit(records, args.format, sys.stdout)
    return EXIT_OK


def _merge_stats(acc: dict, r: dict) -> dict:
    if not acc or acc["count"] == 0:
        return {k: r[k] for k in ("count", "min_V", "max_V", "min_U", "max_U", "min_X", "max_X")}
    if r["count"] == 0:
        return acc
    out = {"count": acc["count"] + r["count"]}
    for k in ("V", "U", "X"):
        out[f"min_{k}"] = min(acc[f"min_{k}"], r[f"min_{k}"])
        out[f"max_{k}"] = max(acc[f"max_{k}"], r[f"max_{k}"])
    return out


def cmd_chi(args: argparse.Namespace) -> int:
    cats = select_level(load_catalogs(args.catalog), args.level)
    emit((invariant_record(c.level, i, H) for c in cats for i, H in enumerate(c.members)), args.format, sys.stdout)
    return EXIT_OK


def cmd_girth(args: argparse.Namespace) -> int:
    cats = select_level(load_catalogs(args.catalog), args.level)
    emit((girth_record(c.level, i, H) for c in cats for i, H in enumerate(c.members)), args.format, sys.stdout)
    return EXIT_OK


def cmd_embed(args: argparse.Namespace) -> int:
    _, A = read_structure_file(args.a)
    _, B = read_structure_file(args.b)
    if args.graph:
        found = subgraph_embed(reduct(A), reduct(B))
        image = None if found is None else [found[v] for v in range(len(found))]
    else:
        if A.n != B.n:
            raise UsageError(f"arity mismatch: {A.n} vs {B.n}")
        f = weak_embed(A, B)
        image = None if f is None else list(f)
    print(json.dumps({"map": image}))
    return EXIT_OK if image is not None else EXIT_NO


def cmd_member(args: argparse.Namespace) -> int:
    _, A = read_structure_file(args.a)
    cats = select_level(load_catalogs(args.catalog), args.level)
    try:
        res = class_membership(A, cats)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    record = {
        "verdict": res.verdict.value,
        "level": res.level,
        "index": res.index,
        "map": None if res.witness is None else list(res.witness),
        "edge": None if res.edge is None else list(res.edge),
        "max_level": res.max_level,
    }
    print(json.dumps(record))
    return {Verdict.YES: EXIT_OK, Verdict.REFUTED: EXIT_NO, Verdict.UNKNOWN: EXIT_UNKNOWN}[res.verdict]


def _graph_output(G: Graph, header: dict, args: argparse.Namespace) -> int:
    if args.format == "dot":
        sys.stdout.write(G.to_dot())
        return EXIT_OK
    record = dict(header)
    record.update(
        vertices=G.order,
        edges=len(G.edges),
        chi=chromatic_number(G),
        odd_girth=odd_girth(G),
    )
    if args.format == "records":
        record["edge_list"] = [list(p) for p in G.edges]
    emit([record], args.format, sys.stdout)
    return EXIT_OK


def cmd_interlace_graph(args: argparse.Namespace) -> int:
    e = make_interlace(args.e)
    if e.n != args.n:
        raise UsageError(f"--e {args.e} has arity {e.n}, but --n is {args.n}")
    G = interlace_graph(args.m, args.n, e)
    return _graph_output(G, {"m": args.m, "n": args.n, "e": args.e}, args)


def cmd_shift_graph(args: argparse.Namespace) -> int:
    return _graph_output(shift_graph(args.m, args.n), {"m": args.m, "n": args.n}, args)


def _read_condition(path: str) -> Condition:
    header, H = read_structure_file(path)
    if header is None or "e" not in header:
        raise UsageError(f"{path}: condition file needs a header line with n and e")
    e = make_interlace(header["e"])
    if header.get("n", H.n) != H.n or e.n != H.n:
        raise UsageError(f"{path}: header (n={header.get('n')}, e={header['e']}) does not match structure arity {H.n}")
    return Condition(H, e)


def cmd_condition_check(args: argparse.Namespace) -> int:
    q = _read_condition(args.q)
    cats = load_catalogs(args.catalog).catalogs
    try:
        res = is_condition(q, cats, args.max_subset)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    verdict = {Verdict.YES: "valid", Verdict.REFUTED: "invalid", Verdict.UNKNOWN: "unknown"}[res.verdict]
    print(json.dumps({
        "verdict": verdict,
        "subset": None if res.subset is None else list(res.subset),
        "max_level": res.max_level,
        "max_subset_size": res.max_subset_size,
        "reason": res.reason,
    }))
    return {Verdict.YES: EXIT_OK, Verdict.REFUTED: EXIT_NO, Verdict.UNKNOWN: EXIT_UNKNOWN}[res.verdict]


def cmd_condition_sample(args: argparse.Namespace) -> int:
    e = make_interlace(args.e)
    if e.n != args.n:
        raise UsageError(f"--e {args.e} has arity {e.n}, but --n is {args.n}")
    cats = load_catalogs(args.catalog).catalogs if args.catalog else None
    res = sample_chain(args.n, e, args.steps, args.seed, cats, max_vertices=args.max_vertices)
    fh = _open_out(args.out)
    try:
        write_condition(res.condition, fh)
    finally:
        if fh is not sys.stdout:
            fh.close()
    print(json.dumps(res.stats), file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK


def cmd_export_dot(args: argparse.Namespace) -> int:
    cats = select_level(load_catalogs(args.catalog), args.level)
    targets = [(c.level, i, H) for c in cats for i, H in enumerate(c.members)]
    if args.index is not None:
        targets = [t for t in targets if t[1] == args.index]
        if not targets:
            raise UsageError(f"no member with index {args.index}")
    if args.out_dir:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for level, i, H in targets:
            (out_dir / f"level{level}_{i}.dot").write_text(reduct(H).to_dot(f"L{level}_{i}"))
    else:
        for level, i, H in targets:
            sys.stdout.write(reduct(H).to_dot(f"L{level}_{i}"))
    return EXIT_OK


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="amalgams", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(sp: argparse.ArgumentParser, choices=("records", "table")) -> None:
        sp.add_argument("--format", choices=choices, default="records")

    sp = sub.add_parser("enum", help="generate catalogs for levels 0..L")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--e", required=True, help="interlace type bitstring, 1-indexed positions")
    sp.add_argument("--levels", type=int, required=True)
    sp.add_argument("--cap", type=int, default=DEFAULT_VERTEX_CAP, help="vertex cap per level")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_enum)

    sp = sub.add_parser("stats", help="per-level catalog summary")
    sp.add_argument("--catalog", required=True)
    sp.add_argument("--level", type=int)
    sp.add_argument("--cumulative", action="store_true", help="aggregate levels 0..L")
    fmt(sp)
    sp.set_defaults(func=cmd_stats)

    for name, func in (("chi", cmd_chi), ("girth", cmd_girth)):
        sp = sub.add_parser(name, help=f"{name} of every member's reduct")
        sp.add_argument("--catalog", required=True)
        sp.add_argument("--level", type=int)
        fmt(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("embed", help="weak embedding of structure A into B")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--graph", action="store_true", help="compare reducts as plain graphs")
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("member", help="bounded class membership of structure A")
    sp.add_argument("--a", required=True)
    sp.add_argument("--catalog", required=True)
    sp.add_argument("--level", type=int)
    sp.set_defaults(func=cmd_member)

    sp = sub.add_parser("interlace-graph")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--e", required=True)
    fmt(sp, ("records", "table", "dot"))
    sp.set_defaults(func=cmd_interlace_graph)

    sp = sub.add_parser("shift-graph")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    fmt(sp, ("records", "table", "dot"))
    sp.set_defaults(func=cmd_shift_graph)

    cond = sub.add_parser("condition", help="forcing conditions")
    csub = cond.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp = csub.add_parser("check")
    sp.add_argument("--q", required=True)
    sp.add_argument("--catalog", required=True)
    sp.add_argument("--max-subset", type=int)
    sp.set_defaults(func=cmd_condition_check)
    sp = csub.add_parser("sample")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--e", required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--catalog")
    sp.add_argument("--max-vertices", type=int, default=48)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_condition_sample)

    sp = sub.add_parser("export-dot", help="DOT files for member reducts")
    sp.add_argument("--catalog", required=True)
    sp.add_argument("--level", type=int)
    sp.add_argument("--index", type=int)
    sp.add_argument("--out-dir")
    sp.set_defaults(func=cmd_export_dot)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    for flag in ("cap", "levels", "steps", "max_vertices", "max_subset", "m", "n"):
        value = getattr(args, flag, None)
        if value is not None and value < (0 if flag in ("levels", "steps", "max_subset") else 1):
            parser.error(f"--{flag.replace('_', '-')} out of range: {value}")
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"amalgams: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
