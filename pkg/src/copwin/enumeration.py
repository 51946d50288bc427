"""Isomorph-free graph streams and the cop-number census over them.

Generation is vertex augmentation with canonical dedup: each order-(n-1)
representative gets a new vertex joined to a subset S, and the canonical
codes of the results are collected in a set.  Only subsets that leave the new
vertex with minimum degree are tried; every graph arises that way from
deleting one of its minimum-degree vertices, so nothing is lost.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import logging
import os
import time
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from multiprocessing import Pool
from pathlib import Path

from . import GENERATOR_VERSION, SOLVER_VERSION
from .canon import canonical_code
from .graph import Graph, Graph6Error, emit_graph6, is_connected, parse_graph6
from .report import CensusRow
from .solver import cops_can_win, copwin_ordering

log = logging.getLogger(__name__)

MAX_GENERATED_ORDER = 10
CHECKPOINT_VERSION = 1


class CorpusIntegrityError(ValueError):
    pass


class CheckpointMismatch(ValueError):
    pass


# generation -----------------------------------------------------------------


def graph_from_code(n: int, code: int) -> Graph:
    """Inverse of the canonical code packing (graph6 bit order, first bit most significant)."""
    rows = [0] * n
    k = n * (n - 1) // 2 - 1
    for j in range(1, n):
        for i in range(j):
            if code >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k -= 1
    return Graph(n, tuple(rows))


def _extensions(parent: Graph) -> set[int]:
    m = parent.n
    deg = parent.degrees()
    mindeg = min(deg) if m else 0
    codes = set()
    for d in range(0, min(mindeg + 1, m) + 1):
        low = 0
        for u in range(m):
            if deg[u] < d:
                low |= 1 << u
        # vertices of degree d-1 must gain the new edge; the rest are free
        free = [u for u in range(m) if not low >> u & 1]
        need = d - low.bit_count()
        if need < 0 or need > len(free):
            continue
        for extra in itertools.combinations(free, need):
            s = low
            for u in extra:
                s |= 1 << u
            rows = [row | ((s >> u & 1) << m) for u, row in enumerate(parent.adj)]
            rows.append(s)
            codes.add(canonical_code(Graph(m + 1, tuple(rows))))
    return codes


def _extend_chunk(args: tuple[int, list[int]]) -> set[int]:
    m, codes = args
    out: set[int] = set()
    for code in codes:
        out |= _extensions(graph_from_code(m, code))
    return out


def _level_path(cache_dir: Path, n: int) -> Path:
    return cache_dir / f"graphs-n{n}.g6"


def _load_level(path: Path, n: int) -> list[int] | None:
    if not path.exists():
        return None
    codes = []
    with open(path, "rb") as fh:
        for line in fh:
            g = parse_graph6(line)
            if g.n != n:
                return None
            codes.append(_code_of_canonical(g))
    return codes


def _code_of_canonical(g: Graph) -> int:
    code = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            code = (code << 1) | (row >> i & 1)
    return code


def _save_level(path: Path, n: int, codes: list[int]) -> None:
    tmp = path.with_suffix(".tmp")
    with open(tmp, "wb") as fh:
        for code in codes:
            fh.write(emit_graph6(graph_from_code(n, code)) + b"\n")
    os.replace(tmp, path)


def generate_codes(
    n: int,
    jobs: int = 1,
    cache_dir: str | os.PathLike | None = None,
    progress: Callable[[str], None] | None = None,
) -> list[int]:
    """Sorted canonical codes of all graphs of order ``n``."""
    if not 1 <= n <= MAX_GENERATED_ORDER:
        raise ValueError(
            f"internal generator supports orders 1..{MAX_GENERATED_ORDER}; "
            "use a graph6 corpus (ingest_corpus) for other orders"
        )
    cache = Path(cache_dir) if cache_dir is not None else None
    if cache is not None:
        cache.mkdir(parents=True, exist_ok=True)
    level = [0]  # K_1
    start = 1
    if cache is not None:
        for m in range(n, 0, -1):
            loaded = _load_level(_level_path(cache, m), m)
            if loaded is not None:
                level, start = loaded, m
                break
    for m in range(start + 1, n + 1):
        t0 = time.perf_counter()
        parents = level
        chunk = max(1, len(parents) // (jobs * 8) if jobs > 1 else len(parents))
        tasks = [(m - 1, parents[i:i + chunk]) for i in range(0, len(parents), chunk)]
        found: set[int] = set()
        if jobs > 1:
            with Pool(jobs) as pool:
                for part in pool.imap(_extend_chunk, tasks):
                    found |= part
        else:
            for task in tasks:
                found |= _extend_chunk(task)
        level = sorted(found)
        if cache is not None:
            _save_level(_level_path(cache, m), m, level)
        if progress:
            progress(f"generated order {m}: {len(level)} graphs in {time.perf_counter() - t0:.1f}s")
    return level


@dataclass
class GraphStream:
    """Isomorph-free stream of graphs of one order, restartable at a cursor.

    The cursor counts graphs yielded after the connectivity filter.
    """

    kind: str
    order: int | None = None
    path: str | None = None
    connected_only: bool = False
    jobs: int = 1
    cache_dir: str | None = None
    _codes: list[int] | None = field(default=None, repr=False)
    _digest: str | None = field(default=None, repr=False)

    def identity(self) -> dict:
        ident = {"kind": self.kind, "connected_only": self.connected_only}
        if self.kind == "generated":
            ident.update(order=self.order, generator=GENERATOR_VERSION)
        else:
            ident.update(path=str(self.path), sha256=self._digest, order=self.order)
        return ident

    def _raw(self, start: int = 0) -> Iterator[Graph]:
        if self.kind == "generated":
            if self._codes is None:
                self._codes = generate_codes(self.order, self.jobs, self.cache_dir)
            for code in itertools.islice(self._codes, start, None):
                yield graph_from_code(self.order, code)
        else:
            with open(self.path, "rb") as fh:
                lines = (line for line in fh if line.strip())
                for line in itertools.islice(lines, start, None):
                    yield parse_graph6(line)

    def iter_from(self, cursor: int = 0) -> Iterator[Graph]:
        if not self.connected_only:
            return self._raw(cursor)
        it = (g for g in self._raw() if is_connected(g))
        return itertools.islice(it, cursor, None)

    def __iter__(self) -> Iterator[Graph]:
        return self.iter_from(0)


def generate_graphs(n: int, connected_only: bool = False, jobs: int = 1, cache_dir=None) -> GraphStream:
    if not 1 <= n <= MAX_GENERATED_ORDER:
        raise ValueError(
            f"internal generator supports orders 1..{MAX_GENERATED_ORDER}; "
            "use a graph6 corpus (ingest_corpus) for other orders"
        )
    return GraphStream("generated", order=n, connected_only=connected_only, jobs=jobs,
                       cache_dir=None if cache_dir is None else str(cache_dir))


def ingest_corpus(path: str | os.PathLike, connected_only: bool = False) -> GraphStream:
    """Open a graph6 corpus after checking it: parseable, one order, no isomorphic repeats."""
    digest = hashlib.sha256()
    seen: dict[int, int] = {}
    order = None
    with open(path, "rb") as fh:
        for lineno, line in enumerate(fh, 1):
            digest.update(line)
            if not line.strip():
                continue
            try:
                g = parse_graph6(line)
            except Graph6Error as exc:
                raise Graph6Error(f"{path}:{lineno}: {exc}") from exc
            if order is None:
                order = g.n
            elif g.n != order:
                raise CorpusIntegrityError(
                    f"{path}:{lineno}: order {g.n} differs from order {order} of earlier lines"
                )
            code = canonical_code(g)
            if code in seen:
                raise CorpusIntegrityError(
                    f"{path}: lines {seen[code]} and {lineno} are isomorphic graphs"
                )
            seen[code] = lineno
    return GraphStream("corpus", order=order, path=str(path), connected_only=connected_only,
                       _digest=digest.hexdigest())


# census ---------------------------------------------------------------------


def capped_cop_number(g: Graph, k_max: int) -> int:
    """Cop number of a connected graph, or ``k_max + 1`` meaning "more than k_max"."""
    if copwin_ordering(g) is not None:
        return 1
    for k in range(2, k_max + 1):
        if k >= g.n or cops_can_win(g, k):
            return k
    return k_max + 1


def _classify_batch(args: tuple[list[bytes], int]) -> tuple[int, int, list[int], dict[int, bytes]]:
    lines, k_max = args
    total = connected = 0
    counts = [0] * (k_max + 1)
    witnesses: dict[int, bytes] = {}
    for line in lines:
        g = parse_graph6(line)
        total += 1
        if not is_connected(g):
            continue
        connected += 1
        c = capped_cop_number(g, k_max)
        counts[c - 1] += 1
        witnesses.setdefault(c, line)
    return total, connected, counts, witnesses


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()


def _write_checkpoint(path: Path, state: dict) -> None:
    body = dict(state)
    body["hash"] = _digest(state)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(body, sort_keys=True, indent=1))
    os.replace(tmp, path)


def _read_checkpoint(path: Path) -> dict | None:
    if not path.exists():
        return None
    body = json.loads(path.read_text())
    stored = body.pop("hash", None)
    if stored != _digest(body):
        raise CheckpointMismatch(f"{path}: checkpoint content hash does not match")
    if body.get("version") != CHECKPOINT_VERSION:
        raise CheckpointMismatch(f"{path}: unsupported checkpoint version {body.get('version')}")
    return body


def census_row(
    stream: GraphStream,
    k_max: int,
    jobs: int = 1,
    checkpoint: str | os.PathLike | None = None,
    checkpoint_every: int = 100_000,
    batch_size: int = 2_000,
    limit: int | None = None,
    progress: Callable[[str], None] | None = None,
) -> CensusRow:
    """Classify every graph of ``stream`` by cop number (capped at ``k_max``).

    With ``checkpoint`` set, progress is saved every ``checkpoint_every``
    graphs and a later call resumes from it.  ``limit`` stops after that many
    graphs in this call and returns an incomplete row.
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    if stream.connected_only:
        raise ValueError("census needs the unfiltered stream to count all graphs")
    ident = {"source": stream.identity(), "k_max": k_max, "solver": SOLVER_VERSION}
    ckpt = Path(checkpoint) if checkpoint is not None else None
    cursor = total = connected = 0
    counts = [0] * (k_max + 1)
    witnesses: dict[int, bytes] = {}
    if ckpt is not None:
        saved = _read_checkpoint(ckpt)
        if saved is not None:
            if saved["identity"] != ident:
                raise CheckpointMismatch(f"{ckpt}: checkpoint belongs to a different run")
            cursor, total, connected = saved["cursor"], saved["g"], saved["g_connected"]
            counts = saved["counts"]
            witnesses = {int(k): v.encode() for k, v in saved["witnesses"].items()}
            if saved["done"]:
                return _row(stream.order, total, connected, counts, witnesses, True)
    every = max(batch_size, checkpoint_every // batch_size * batch_size)

    def save(done: bool) -> None:
        if ckpt is None:
            return
        _write_checkpoint(ckpt, {
            "version": CHECKPOINT_VERSION,
            "identity": ident,
            "cursor": cursor,
            "g": total,
            "g_connected": connected,
            "counts": counts,
            "witnesses": {str(k): v.decode() for k, v in sorted(witnesses.items())},
            "done": done,
        })

    def batches() -> Iterator[list[bytes]]:
        it = stream.iter_from(cursor)
        budget = limit
        while True:
            size = batch_size if budget is None else min(batch_size, budget)
            if size <= 0:
                return
            batch = [emit_graph6(g) for g in itertools.islice(it, size)]
            if not batch:
                return
            if budget is not None:
                budget -= len(batch)
            yield batch

    pool = Pool(jobs) if jobs > 1 else None
    t0 = time.perf_counter()
    since_save = 0
    try:
        tasks = ((b, k_max) for b in batches())
        results = pool.imap(_classify_batch, tasks) if pool else map(_classify_batch, tasks)
        for b_total, b_conn, b_counts, b_wit in results:
            cursor += b_total
            total += b_total
            connected += b_conn
            counts = [a + b for a, b in zip(counts, b_counts)]
            for k, line in b_wit.items():
                witnesses.setdefault(k, line)
            since_save += b_total
            if since_save >= every:
                save(False)
                since_save = 0
                if progress:
                    progress(f"order {stream.order}: {cursor} graphs, {time.perf_counter() - t0:.0f}s")
    finally:
        if pool is not None:
            pool.terminate()
    done = limit is None or _exhausted(stream, cursor)
    save(done)
    return _row(stream.order, total, connected, counts, witnesses, done)


def _exhausted(stream: GraphStream, cursor: int) -> bool:
    return next(stream.iter_from(cursor), None) is None


def _row(n, total, connected, counts, witnesses, complete) -> CensusRow:
    k_max = len(counts) - 1
    return CensusRow(
        n=n,
        g=total,
        g_connected=connected,
        f=list(counts[:k_max]),
        overflow=counts[k_max],
        complete=complete,
        witnesses={k: w.decode() for k, w in sorted(witnesses.items())},
    )
