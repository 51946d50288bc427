"""Small immutable graphs with bitset adjacency, plus the graph6 codec.

Vertices are ``0..n-1`` and a vertex set is a plain ``int`` bitmask (bit ``v``
set means ``v`` is in the set).  Graphs are simple: the "pass" move of the
game is a rule of play and is never stored as a loop.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

MAX_ORDER = 62

VertexSet = int


class Graph6Error(ValueError):
    """Raised for malformed graph6 input."""


class Graph6HeaderError(Graph6Error):
    pass


class Graph6LengthError(Graph6Error):
    pass


class Graph6CharacterError(Graph6Error):
    pass


def bits(s: VertexSet) -> Iterator[int]:
    """Yield the members of a bitmask vertex set in increasing order."""
    while s:
        low = s & -s
        yield low.bit_length() - 1
        s ^= low


def vset(vertices: Iterable[int]) -> VertexSet:
    s = 0
    for v in vertices:
        s |= 1 << v
    return s


@dataclass(frozen=True, slots=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_ORDER:
            raise ValueError(f"graph order must be in 1..{MAX_ORDER}, got {self.n}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"row {v} names a vertex >= n")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric edge {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def vertices(self) -> VertexSet:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in bits(self.adj[v] & ((1 << v) - 1))]

    def size(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def max_degree(self) -> int:
        return max(self.degrees())

    def min_degree(self) -> int:
        return min(self.degrees())

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def relabel(self, perm: list[int] | tuple[int, ...]) -> Graph:
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        rows = [0] * self.n
        for v, row in enumerate(self.adj):
            new = 0
            for u in bits(row):
                new |= 1 << perm[u]
            rows[perm[v]] = new
        return Graph(self.n, tuple(rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, g6={emit_graph6(self).decode()!r})"


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for graph of order {g.n}")


def _check_set(g: Graph, s: VertexSet) -> None:
    if s < 0 or s >> g.n:
        raise ValueError(f"vertex set {s:#x} not contained in 0..{g.n - 1}")


def neighborhood(g: Graph, v: int) -> VertexSet:
    _check_vertex(g, v)
    return g.adj[v]


def closed_neighborhood(g: Graph, v: int) -> VertexSet:
    _check_vertex(g, v)
    return g.adj[v] | (1 << v)


def set_closed_neighborhood(g: Graph, s: VertexSet) -> VertexSet:
    _check_set(g, s)
    out = s
    for v in bits(s):
        out |= g.adj[v]
    return out


def set_neighborhood(g: Graph, s: VertexSet) -> VertexSet:
    """Open neighbourhood of a set: vertices outside ``s`` adjacent to it."""
    return set_closed_neighborhood(g, s) & ~s


def is_dominated(g: Graph, v: int, w: int) -> bool:
    _check_vertex(g, v)
    _check_vertex(g, w)
    if v == w:
        raise ValueError("a vertex is not compared with itself for domination")
    nv = g.adj[v] | (1 << v)
    return nv & ~(g.adj[w] | (1 << w)) == 0


def component_of(g: Graph, v: int, within: VertexSet | None = None) -> VertexSet:
    """Vertices reachable from ``v`` using only vertices of ``within``."""
    allowed = g.vertices if within is None else within
    if not allowed >> v & 1:
        return 0
    seen = frontier = 1 << v
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= g.adj[u]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def components(g: Graph, within: VertexSet | None = None) -> list[VertexSet]:
    rest = g.vertices if within is None else within
    out = []
    while rest:
        v = (rest & -rest).bit_length() - 1
        comp = component_of(g, v, rest)
        out.append(comp)
        rest &= ~comp
    return out


def is_connected(g: Graph) -> bool:
    return component_of(g, 0) == g.vertices


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, or ``None`` for a forest.

    BFS from every vertex; a non-tree edge between depths d and d or d+1
    closes a cycle of length 2d+1 or 2d+2 through the root.
    """
    best = None
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = [root]
        for u in queue:
            du = dist[u]
            if best is not None and 2 * du + 1 >= best:
                break
            for w in bits(g.adj[u]):
                if w not in dist:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    length = du + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


def induced_subgraph(g: Graph, s: VertexSet) -> tuple[Graph, list[int]]:
    """Return ``G[s]`` and the list mapping new vertex index -> original vertex."""
    _check_set(g, s)
    if s == 0:
        raise ValueError("induced subgraph of the empty set")
    labels = list(bits(s))
    index = {v: i for i, v in enumerate(labels)}
    rows = []
    for v in labels:
        rows.append(vset(index[u] for u in bits(g.adj[v] & s)))
    return Graph(len(labels), tuple(rows)), labels


def delete_vertex(g: Graph, v: int) -> Graph:
    return induced_subgraph(g, g.vertices & ~(1 << v))[0]


def complement(g: Graph) -> Graph:
    full = g.vertices
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


# graph6 ---------------------------------------------------------------------


def emit_graph6(g: Graph) -> bytes:
    out = bytearray([g.n + 63])
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def parse_graph6(text: bytes | str) -> Graph:
    if isinstance(text, str):
        text = text.encode("ascii")
    if text.endswith(b"\n"):
        text = text[:-1]
    if text.startswith(b">>graph6<<"):
        text = text[10:]
    if not text:
        raise Graph6HeaderError("empty graph6 string")
    head = text[0]
    if head == 126:
        raise Graph6HeaderError("multi-byte order header (n > 62) is not supported")
    n = head - 63
    if not 1 <= n <= MAX_ORDER:
        raise Graph6HeaderError(f"order byte {head!r} gives n={n}, outside 1..{MAX_ORDER}")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = text[1:]
    if len(body) != nbytes:
        raise Graph6LengthError(f"expected {nbytes} data bytes for n={n}, got {len(body)}")
    for c in body:
        if not 63 <= c <= 126:
            raise Graph6CharacterError(f"byte {c!r} outside the graph6 range 63..126")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    pad = nbytes * 6 - nbits
    if pad and (body[-1] - 63) & ((1 << pad) - 1):
        raise Graph6CharacterError("nonzero padding bits")
    return Graph(n, tuple(rows))


def read_graph6_file(path) -> Iterator[tuple[int, Graph]]:
    """Yield ``(line_number, graph)`` for each non-blank line of a graph6 file."""
    with open(path, "rb") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip(b"\r\n")
            if not line:
                continue
            try:
                yield lineno, parse_graph6(line)
            except Graph6Error as exc:
                raise Graph6Error(f"{path}:{lineno}: {exc}") from exc
