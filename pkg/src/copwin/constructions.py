"""Named graphs and the join/bridge constructions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .graph import MAX_ORDER, Graph, is_connected


@dataclass(frozen=True)
class TaggedGraph:
    """A graph with named distinguished vertices, e.g. ``x`` (universal) and ``y`` (anchor)."""

    graph: Graph
    tags: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name, v in self.tags.items():
            if not 0 <= v < self.graph.n:
                raise ValueError(f"tag {name!r} names vertex {v} outside 0..{self.graph.n - 1}")


def petersen() -> Graph:
    """Kneser graph K(5,2): 2-subsets of {0..4}, adjacent when disjoint."""
    pairs = list(itertools.combinations(range(5), 2))
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(pairs)), 2)
        if not set(pairs[i]) & set(pairs[j])
    ]
    return Graph.from_edges(10, edges)


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("a path needs at least 1 vertex")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("a complete graph needs at least 1 vertex")
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def star(n: int) -> Graph:
    """K_{1,n-1} on ``n`` vertices, centre 0."""
    if n < 1:
        raise ValueError("a star needs at least 1 vertex")
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


FAMILIES = {"cycle": cycle, "path": path, "complete": complete, "star": star}


def standard_family(name: str, n: int) -> Graph:
    try:
        build = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    return build(n)


def add_universal(g: Graph) -> TaggedGraph:
    if g.n + 1 > MAX_ORDER:
        raise ValueError(f"adding a vertex would exceed order {MAX_ORDER}")
    x = g.n
    rows = [row | (1 << x) for row in g.adj]
    rows.append((1 << x) - 1)
    return TaggedGraph(Graph(g.n + 1, tuple(rows)), {"x": x})


def plus_k(g: Graph, h: TaggedGraph, k: int, check: bool = False) -> TaggedGraph:
    """Universal vertex ``x`` on ``g``, joined by the bridge ``x y`` to a copy of ``h``.

    ``h`` must carry a ``y`` tag and is meant to be ``k``-cop-win; pass
    ``check=True`` to have the solver confirm it.  The order condition under
    which distinct seeds give distinct results for counting purposes is left
    to the caller.
    """
    if "y" not in h.tags:
        raise ValueError("anchor graph needs a 'y' tag")
    hg = h.graph
    if not is_connected(hg):
        raise ValueError("anchor graph must be connected")
    total = g.n + 1 + hg.n
    if total > MAX_ORDER:
        raise ValueError(f"result would have order {total} > {MAX_ORDER}")
    if check:
        from .solver import cop_number

        c = cop_number(hg)
        if c != k:
            raise ValueError(f"anchor graph has cop number {c}, not {k}")
    base = add_universal(g)
    x = base.tags["x"]
    off = g.n + 1
    rows = list(base.graph.adj) + [row << off for row in hg.adj]
    y = off + h.tags["y"]
    rows[x] |= 1 << y
    rows[y] |= 1 << x
    tags = {"x": x, "y": y}
    tags.update({f"h.{name}": off + v for name, v in h.tags.items() if name != "y"})
    return TaggedGraph(Graph(total, tuple(rows)), tags)


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % d for d in range(2, int(q**0.5) + 1))


def _projective_points(q: int) -> list[tuple[int, int, int]]:
    # normalised: first nonzero coordinate is 1
    pts = []
    for v in itertools.product(range(q), repeat=3):
        nz = [c for c in v if c]
        if nz and nz[0] == 1:
            pts.append(v)
    return pts


def projective_plane_incidence(q: int) -> Graph:
    """Point-line incidence graph of PG(2, q) for prime ``q``: points first, then lines."""
    if not _is_prime(q):
        raise ValueError(f"q={q} is not prime (prime powers are not supported)")
    size = q * q + q + 1
    if 2 * size > MAX_ORDER:
        raise ValueError(f"PG(2,{q}) incidence graph has order {2 * size} > {MAX_ORDER}")
    pts = _projective_points(q)
    lines = pts  # lines are the dual points
    edges = []
    for i, p in enumerate(pts):
        for j, ln in enumerate(lines):
            if (p[0] * ln[0] + p[1] * ln[1] + p[2] * ln[2]) % q == 0:
                edges.append((i, size + j))
    return Graph.from_edges(2 * size, edges)
