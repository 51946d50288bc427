"""Canonical labelling by partition refinement and individualisation.

The search tree is the usual one: refine to an equitable ordered partition,
individualise each vertex of the first non-singleton cell, recurse.  Every
leaf is a relabelling; the least leaf code wins.  Branches that differ by a
transposition of twin vertices (``N(u) - w == N(w) - u``) are skipped, since
that transposition is an automorphism fixing everything individualised so far.
"""

from __future__ import annotations

from .graph import Graph, emit_graph6

CanonicalForm = bytes


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        out = []
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            split: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                a = adj[v]
                key = tuple([(a & m).bit_count() for m in masks])
                split.setdefault(key, []).append(v)
            if len(split) == 1:
                out.append(c)
            else:
                for key in sorted(split):
                    out.append(split[key])
        if len(out) == len(cells):
            return out
        cells = out


def _leaf_code(adj: tuple[int, ...], order: list[int]) -> int:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    code = 0
    for j in range(1, len(order)):
        a = adj[order[j]]
        row = 0
        for i in range(j):
            if a >> order[i] & 1:
                row |= 1 << (j - 1 - i)
        code = (code << j) | row
    return code


def canonical_labeling(g: Graph) -> tuple[int, list[int]]:
    """Return ``(code, order)`` where ``order[i]`` is the vertex placed at position i.

    ``code`` packs the upper triangle of the relabelled adjacency matrix in
    graph6 bit order, so for fixed ``n`` the least code is the
    lexicographically least graph6 string among the explored leaves.
    """
    adj = g.adj
    best_code = -1
    best_order: list[int] = []
    stack = [_refine(adj, [list(range(g.n))])]
    while stack:
        cells = stack.pop()
        target = -1
        for idx, c in enumerate(cells):
            if len(c) > 1:
                target = idx
                break
        if target < 0:
            order = [c[0] for c in cells]
            code = _leaf_code(adj, order)
            if best_code < 0 or code < best_code:
                best_code, best_order = code, order
            continue
        cell = cells[target]
        explored: list[int] = []
        children = []
        for v in sorted(cell):
            twin = False
            for u in explored:
                if (adj[u] ^ adj[v]) & ~((1 << u) | (1 << v)) == 0:
                    twin = True
                    break
            if twin:
                continue
            explored.append(v)
            rest = [u for u in cell if u != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            children.append(_refine(adj, child))
        # lowest vertex explored first
        stack.extend(reversed(children))
    return best_code, best_order


def canonical_code(g: Graph) -> int:
    return canonical_labeling(g)[0]


def canonical_graph(g: Graph) -> Graph:
    _, order = canonical_labeling(g)
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return g.relabel(perm)


def canonical_form(g: Graph) -> CanonicalForm:
    """Order byte plus packed upper triangle of the canonical relabelling (graph6)."""
    return emit_graph6(canonical_graph(g))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.size() != h.size() or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_code(g) == canonical_code(h)
