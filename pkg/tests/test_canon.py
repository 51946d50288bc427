import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from copwin.canon import canonical_form, canonical_graph, is_isomorphic
from copwin.constructions import complete, cycle, path, petersen, plus_k, TaggedGraph
from copwin.enumeration import generate_graphs
from copwin.graph import Graph, parse_graph6, read_graph6_file

from .test_graph import graphs, to_nx


def shuffled(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabel(perm)


def kneser_5_2_other_labels() -> Graph:
    # Kneser(5,2) built with pairs listed in reverse order
    pairs = list(itertools.combinations(range(5), 2))[::-1]
    return Graph.from_edges(10, [
        (i, j) for i, j in itertools.combinations(range(10), 2) if not set(pairs[i]) & set(pairs[j])
    ])


def test_petersen_relabelings_agree():
    rng = random.Random(7)
    pete = petersen()
    forms = {canonical_form(shuffled(pete, rng)) for _ in range(20)}
    assert forms == {canonical_form(pete)}
    assert is_isomorphic(pete, kneser_5_2_other_labels())
    assert is_isomorphic(pete, parse_graph6(nx.to_graph6_bytes(nx.petersen_graph(), header=False)))


def test_distinct_examples():
    assert canonical_form(cycle(4)) != canonical_form(path(4))
    c6 = cycle(6)
    triangles = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    assert not is_isomorphic(c6, triangles)


def _all_labeled(n):
    pairs = [(i, j) for j in range(n) for i in range(j)]
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for k, p in enumerate(pairs) if mask >> k & 1])


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)])
def test_labeled_graphs_collapse_to_g(n, expected):
    assert len({canonical_form(g) for g in _all_labeled(n)}) == expected


def test_atlas_classes_match_generation(data_dir):
    # atlas files come from networkx, independent of our generator
    for n in range(1, 8):
        atlas = {canonical_form(g) for _, g in read_graph6_file(data_dir / f"atlas-n{n}.g6")}
        generated = {canonical_form(g) for g in generate_graphs(n)}
        assert atlas == generated, n


def test_permutation_invariance_small_orders():
    rng = random.Random(11)
    for n in range(1, 8):
        for g in generate_graphs(n):
            form = canonical_form(g)
            for _ in range(100 if n <= 5 else 3):
                assert canonical_form(shuffled(g, rng)) == form


@given(graphs(max_n=10), st.randoms(use_true_random=False))
@settings(max_examples=300, deadline=None)
def test_canonical_form_properties(g, rng):
    h = shuffled(g, rng)
    assert canonical_form(h) == canonical_form(g)
    assert canonical_form(canonical_graph(g)) == canonical_form(g)
    assert canonical_form(g)[0] == g.n + 63


@given(graphs(max_n=8), graphs(max_n=8))
@settings(max_examples=300, deadline=None)
def test_isomorphism_agrees_with_vf2(g, h):
    assert is_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))


@given(st.lists(graphs(max_n=5), min_size=3, max_size=3))
@settings(max_examples=200, deadline=None)
def test_equivalence_relation(gs):
    a, b, c = gs
    assert is_isomorphic(a, a)
    assert is_isomorphic(a, b) == is_isomorphic(b, a)
    if is_isomorphic(a, b) and is_isomorphic(b, c):
        assert is_isomorphic(a, c)


def test_symmetric_graphs_are_fast():
    # twin pruning keeps these from exploring n! leaves
    for g in (complete(10), Graph(10, (0,) * 10),
              Graph.from_edges(10, [(2 * i, 2 * i + 1) for i in range(5)])):
        assert canonical_form(g) == canonical_form(g.relabel(list(range(9, -1, -1))))


def test_plus_k_seeds_distinct():
    h = TaggedGraph(petersen(), {"y": 0})
    seeds = list(generate_graphs(4))
    a, b = seeds[0], seeds[1]
    assert not is_isomorphic(plus_k(a, h, 3).graph, plus_k(b, h, 3).graph)
