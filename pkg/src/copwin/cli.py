"""Command-line entry point: ``copwin {solve,enumerate,census,construct,verify,play}``."""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import GENERATOR_VERSION, SOLVER_VERSION
from .canon import canonical_form, is_isomorphic
from .constructions import (
    FAMILIES,
    TaggedGraph,
    add_universal,
    petersen,
    plus_k,
    projective_plane_incidence,
)
from .enumeration import (
    CheckpointMismatch,
    CorpusIntegrityError,
    census_row,
    generate_graphs,
    ingest_corpus,
)
from .graph import Graph, Graph6Error, emit_graph6, parse_graph6
from .report import CensusTable, derive_min_orders, render
from .solver import (
    DisconnectedGraphError,
    NoWinningMove,
    SolverCapError,
    cop_number,
    cops_win,
    play_transcript,
)

EXIT_FAIL = 1
EXIT_PARSE = 3
EXIT_CONTRACT = 4
EXIT_REFUSED = 5
EXIT_INTEGRITY = 6
EXIT_INTERRUPTED = 130

# rough single-core seconds per order for the internal census (generation + solve)
_ESTIMATES = {8: 6, 9: 140, 10: 7500}


class UsageError(ValueError):
    pass


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


# graph arguments -------------------------------------------------------------


def build_named(spec: str) -> Graph:
    """Resolve a construction name (``petersen``, ``cycle:5``, ``pg:2``, ...) or graph6 text."""
    name, _, arg = spec.partition(":")
    try:
        if name == "petersen" and not arg:
            return petersen()
        if name in FAMILIES:
            return FAMILIES[name](int(arg))
        if name == "pg":
            return projective_plane_incidence(int(arg))
        if name == "universal":
            return add_universal(build_named(arg)).graph
        if name == "plus-k":
            parts = arg.split(",")
            if len(parts) not in (3, 4):
                raise UsageError("plus-k takes SEED,ANCHOR,K[,Y]")
            seed, anchor, k = build_named(parts[0]), build_named(parts[1]), int(parts[2])
            y = int(parts[3]) if len(parts) == 4 else 0
            return plus_k(seed, TaggedGraph(anchor, {"y": y}), k).graph
    except ValueError as exc:
        if isinstance(exc, (UsageError, Graph6Error)):
            raise
        raise UsageError(f"invalid construction {spec!r}: {exc}") from exc
    return parse_graph6(spec.encode())


def read_graphs(source: str | None) -> list[Graph]:
    if source is None or source == "-":
        data = sys.stdin.buffer.read()
        lines = [ln for ln in data.splitlines() if ln.strip()]
        if not lines:
            raise Graph6Error("no graph on standard input")
        return [parse_graph6(ln.strip()) for ln in lines]
    if os.path.exists(source):
        with open(source, "rb") as fh:
            return [parse_graph6(ln.strip()) for ln in fh if ln.strip()]
    return [build_named(source)]


# subcommands -----------------------------------------------------------------


def cmd_solve(args) -> int:
    graphs = read_graphs(args.graph)
    for g in graphs:
        prefix = f"{emit_graph6(g).decode()}: " if len(graphs) > 1 else ""
        if args.k is not None:
            res = cops_win(g, args.k)
            verdict = "win" if res.cops_win_overall else "lose"
            print(f"{prefix}{args.k} cop(s) {verdict}")
            k = args.k if res.cops_win_overall else None
        else:
            k = cop_number(g)
            print(f"{prefix}c(G) = {k}")
        if k is not None and (args.capture_time or args.strategy):
            res = cops_win(g, k)
            opening = res.optimal_opening()
            if args.capture_time:
                print(f"{prefix}capture time = {res.capture_time(opening)}")
            if args.strategy:
                sys.stdout.write(play_transcript(g, k, res))
    return 0


def cmd_play(args) -> int:
    (g, *rest) = read_graphs(args.graph)
    if rest:
        raise UsageError("play takes a single graph")
    res = cops_win(g, args.cops)
    if not res.cops_win_overall:
        c = cop_number(g)
        _err(f"{args.cops} cop{'s' if args.cops > 1 else ''} insufficient; c(G)={c}")
        return EXIT_REFUSED
    sys.stdout.write(play_transcript(g, args.cops, res))
    return 0


def cmd_construct(args) -> int:
    g = build_named(args.name)
    sys.stdout.buffer.write(emit_graph6(g) + b"\n")
    return 0


def cmd_enumerate(args) -> int:
    stream = generate_graphs(args.n, connected_only=args.connected, jobs=args.jobs, cache_dir=args.cache)
    out = sys.stdout.buffer
    for g in stream:
        out.write(emit_graph6(g) + b"\n")
    return 0


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def run_census(orders_or_corpora, k_max, jobs, checkpoint_dir, checkpoint_every, quiet=False):
    """Build a table from generated orders (ints) and/or corpus paths (strs)."""
    table = CensusTable(k_max, metadata={"generator": GENERATOR_VERSION, "solver": SOLVER_VERSION})
    ck = Path(checkpoint_dir) if checkpoint_dir else None
    if ck is not None:
        ck.mkdir(parents=True, exist_ok=True)
    progress = None if quiet else _progress
    t0 = time.perf_counter()
    for item in orders_or_corpora:
        if isinstance(item, int):
            stream = generate_graphs(item, jobs=jobs, cache_dir=ck)
            name = f"census-n{item}-k{k_max}.json"
        else:
            stream = ingest_corpus(item)
            digest = hashlib.sha256(str(Path(item).resolve()).encode()).hexdigest()[:12]
            name = f"census-corpus-{digest}-k{k_max}.json"
        row = census_row(stream, k_max, jobs=jobs,
                         checkpoint=None if ck is None else ck / name,
                         checkpoint_every=checkpoint_every, progress=progress)
        table.add(row)
        if progress:
            progress(f"order {row.n}: {row.g_connected} connected graphs classified")
    if progress:
        progress(f"census wall time {time.perf_counter() - t0:.1f}s")
    return table


def _write_outputs(table: CensusTable, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for fmt, ext in (("csv", "csv"), ("json", "json"), ("text", "txt")):
        (out_dir / f"census.{ext}").write_bytes(render(table, fmt))
    wdir = out_dir / "witnesses"
    wdir.mkdir(exist_ok=True)
    for row in table.sorted_rows():
        for k, g6 in sorted(row.witnesses.items()):
            label = f"k{k}" if k <= table.k_max else f"kgt{table.k_max}"
            (wdir / f"n{row.n}-{label}.g6").write_text(g6 + "\n")


def cmd_census(args) -> int:
    if args.corpus:
        items = list(args.corpus)
    else:
        if not 1 <= args.n_max <= 10:
            raise UsageError("--n-max must be in 1..10 (use --corpus for other data)")
        items = list(range(args.n_min, args.n_max + 1))
        est = sum(_ESTIMATES.get(n, 1) for n in items)
        _err(f"estimated single-core time: ~{est}s")
    table = run_census(items, args.k_max, args.jobs, args.checkpoint, args.checkpoint_every)
    if args.out:
        _write_outputs(table, Path(args.out))
    sys.stdout.buffer.write(render(table, args.format))
    if args.format == "text" and not args.corpus and args.n_min == 1:
        sys.stdout.write(derive_min_orders(table).render())
    return 0


def cmd_verify(args) -> int:
    if args.claim == "nine-vertex":
        k_max = 2
        items = list(args.corpus) if args.corpus else list(range(1, args.n_max + 1))
        if not args.corpus and not 1 <= args.n_max <= 9:
            raise UsageError("--n-max must be in 1..9 for the nine-vertex claim")
    else:
        k_max = 3
        items = list(args.corpus) if args.corpus else [10]
    if not args.corpus:
        est = sum(_ESTIMATES.get(n, 1) for n in items if isinstance(n, int))
        _err(f"estimated single-core time: ~{est}s (resumable with --checkpoint)")
    table = run_census(items, k_max, args.jobs, args.checkpoint, args.checkpoint_every)
    rows = table.sorted_rows()
    if any(not r.complete for r in rows):
        _err("census incomplete; no certificate emitted")
        return EXIT_INTERRUPTED
    cert = {
        "claim": args.claim,
        "generator": GENERATOR_VERSION,
        "solver": SOLVER_VERSION,
        "source": [str(i) for i in items],
        "rows": [
            {"n": r.n, "g": r.g, "g_connected": r.g_connected, "f": r.f, "overflow": r.overflow}
            for r in rows
        ],
    }
    if args.claim == "nine-vertex":
        ok = all(r.overflow == 0 and r.n <= 9 for r in rows)
        cert["max_order"] = max(r.n for r in rows)
    else:
        three = [r for r in rows if r.n == 10]
        witness = three[0].witnesses.get(3) if three else None
        ok = bool(three) and three[0].f[2] == 1 and three[0].overflow == 0 and witness is not None \
            and is_isomorphic(parse_graph6(witness), petersen())
        cert["witness"] = witness
        cert["petersen_form"] = canonical_form(petersen()).decode()
    cert["table_sha256"] = hashlib.sha256(render(table, "json")).hexdigest()
    cert["pass"] = ok
    text = json.dumps(cert, indent=2, sort_keys=True) + "\n"
    if args.certificate:
        Path(args.certificate).write_text(text)
    sys.stdout.write(text)
    print(f"{args.claim}: {'PASS' if ok else 'FAIL'}", file=sys.stderr)
    return 0 if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="copwin", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="cop number or k-cop verdict of graph6 input")
    s.add_argument("graph", nargs="?", help="graph6 string, construction name, file, or - for stdin")
    s.add_argument("--k", type=int)
    s.add_argument("--capture-time", action="store_true")
    s.add_argument("--strategy", action="store_true", help="print an optimal-play transcript")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("play", help="optimal-play transcript for k cops")
    s.add_argument("graph", nargs="?")
    s.add_argument("--cops", type=int, required=True)
    s.set_defaults(func=cmd_play)

    s = sub.add_parser("construct", help="emit a named construction as graph6")
    s.add_argument("name", help="petersen | cycle:N | path:N | complete:N | star:N | pg:Q | "
                                "universal:G | plus-k:SEED,ANCHOR,K[,Y]")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("enumerate", help="all non-isomorphic graphs of order N as graph6")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--connected", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--cache", help="directory for generated level files")
    s.set_defaults(func=cmd_enumerate)

    for name, func in (("census", cmd_census), ("verify", cmd_verify)):
        s = sub.add_parser(name)
        if name == "census":
            s.add_argument("--n-max", type=int, default=8)
            s.add_argument("--n-min", type=int, default=1)
            s.add_argument("--k-max", type=int, default=3)
            s.add_argument("--format", choices=["text", "csv", "json"], default="text")
            s.add_argument("--out", help="directory for census.{csv,json,txt} and witness graph6 files")
        else:
            s.add_argument("--claim", choices=["nine-vertex", "petersen-unique"], required=True)
            s.add_argument("--n-max", type=int, default=9)
            s.add_argument("--certificate", help="also write the certificate to this file")
        s.add_argument("--corpus", nargs="+", help="graph6 corpus files instead of generation")
        s.add_argument("--jobs", type=int, default=1)
        s.add_argument("--checkpoint", help="checkpoint directory (resumable runs)")
        s.add_argument("--checkpoint-every", type=int, default=100_000)
        s.set_defaults(func=func)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        _err("--jobs must be positive")
        return EXIT_CONTRACT
    try:
        return args.func(args)
    except Graph6Error as exc:
        _err(f"parse error: {exc}")
        return EXIT_PARSE
    except (CorpusIntegrityError, CheckpointMismatch) as exc:
        _err(f"integrity error: {exc}")
        return EXIT_INTEGRITY
    except (SolverCapError, NoWinningMove) as exc:
        _err(f"refused: {exc}")
        return EXIT_REFUSED
    except (DisconnectedGraphError, UsageError, ValueError) as exc:
        _err(f"error: {exc}")
        return EXIT_CONTRACT
    except KeyboardInterrupt:
        _err("interrupted; rerun with the same --checkpoint to resume")
        return EXIT_INTERRUPTED


if __name__ == "__main__":
    sys.exit(main())
