import itertools
import random

import pytest

from copwin.constructions import add_universal, complete, cycle, path, petersen, projective_plane_incidence, star
from copwin.graph import Graph, bits, closed_neighborhood, induced_subgraph, is_connected, is_dominated, vset
from copwin.solver import (
    DisconnectedGraphError,
    GameState,
    NoWinningMove,
    SolverCapError,
    Turn,
    cop_moves,
    cop_number,
    cops_can_win,
    cops_win,
    copwin_ordering,
    endgame_cop_win_low_degree,
    endgame_cop_win_small_safe,
    is_copwin_dismantlable,
    is_trapped,
    optimal_move,
    play,
    play_transcript,
    safe_neighborhood,
    successors,
)

from .conftest import two_edges
from .oracle import INF, naive_solve


def adj_lists(g):
    return [list(bits(row)) for row in g.adj]


def random_connected(rng, n, p):
    while True:
        g = Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])
        if is_connected(g):
            return g


def test_cops_win_examples(c4, pete):
    assert not cops_win(c4, 1).cops_win_overall
    assert cops_win(c4, 2).cops_win_overall
    assert cops_win(path(1), 1).cops_win_overall
    assert not cops_win(pete, 2).cops_win_overall
    assert cops_win(pete, 3).cops_win_overall


def test_cops_win_contract_errors(c4):
    with pytest.raises(DisconnectedGraphError):
        cops_win(two_edges(), 1)
    with pytest.raises(ValueError):
        cops_win(c4, 0)
    with pytest.raises(ValueError):
        cops_win(c4, 5)
    with pytest.raises(SolverCapError):
        cops_win(complete(6), 5)
    with pytest.raises(SolverCapError):
        cops_win(path(31), 2)


def test_cop_number_examples(pete):
    assert cop_number(path(7)) == 1
    assert cop_number(pete) == 3
    assert cop_number(projective_plane_incidence(2)) == 3
    with pytest.raises(DisconnectedGraphError):
        cop_number(two_edges())


@pytest.mark.parametrize("n", range(4, 13))
def test_cycles_and_paths(n):
    assert cop_number(cycle(n)) == 2
    assert cop_number(path(n)) == 1


def test_dismantlable_examples(c4):
    order = is_copwin_dismantlable(path(4))
    assert order is not None and sorted(order) == [0, 1, 2, 3]
    assert is_copwin_dismantlable(c4) is None
    for g in (c4, cycle(7), petersen()):
        wheel = add_universal(g).graph
        assert copwin_ordering(wheel) is not None
        assert cops_win(wheel, 1).cops_win_overall


@pytest.mark.parametrize("seed", range(40))
def test_tables_match_naive_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    g = random_connected(rng, n, 0.45)
    for k in (1, 2):
        res = cops_win(g, k)
        cop, rob, overall = naive_solve(n, adj_lists(g), k)
        assert res.cops_win_overall == overall
        for (c, r), t in cop.items():
            assert res.capture_time(GameState(c, r, Turn.COPS)) == (None if t == INF else t)
            tr = rob[c, r]
            assert res.capture_time(GameState(c, r, Turn.ROBBER)) == (None if tr == INF else tr)


def test_table_invariants(pete):
    rng = random.Random(3)
    graphs = [cycle(5), pete, random_connected(rng, 7, 0.4), random_connected(rng, 8, 0.3)]
    for g in graphs:
        for k in (1, 2, 3):
            res = cops_win(g, k)
            for c in itertools.combinations_with_replacement(range(g.n), k):
                for r in range(g.n):
                    s = GameState(c, r, Turn.COPS)
                    t = res.capture_time(s)
                    assert (t == 0) == (r in c)
                    if t and t > 0:
                        nxt = [res.capture_time(x) for x in successors(g, s)]
                        assert min(x for x in nxt if x is not None) == t - 1
                    sr = GameState(c, r, Turn.ROBBER)
                    if res.win(sr) and r not in c:
                        assert all(res.win(x) for x in successors(g, sr))
            placements = itertools.combinations_with_replacement(range(g.n), k)
            expected = any(all(res.win(GameState(c, r)) for r in range(g.n)) for c in placements)
            assert res.cops_win_overall == expected


def test_safe_neighborhood_examples(pete):
    c5 = cycle(5)
    assert safe_neighborhood(c5, (0,), 2) == vset([2, 3])
    assert safe_neighborhood(complete(2), (0,), 1) == 0
    u = 0
    far = next(v for v in range(10) if not closed_neighborhood(pete, u) >> v & 1)
    s = safe_neighborhood(pete, (u,), far)
    sub, _ = induced_subgraph(pete, s)
    assert sub.n == 6 and set(sub.degrees()) == {2}
    assert safe_neighborhood(c5, (0,), 0) == 0


def test_trapped_examples():
    assert is_trapped(complete(2), (0,), 1)
    assert not is_trapped(cycle(5), (0,), 2)
    assert is_trapped(star(4), (0,), 2)
    with pytest.raises(ValueError):
        is_trapped(cycle(5), (0,), 0)


def test_trapped_iff_empty_safe_neighborhood(connected_by_order):
    checked = 0
    for n in range(1, 7):
        for g in connected_by_order[n]:
            for k in (1, 2, 3):
                for c in itertools.combinations_with_replacement(range(n), k):
                    for r in range(n):
                        if r in c:
                            continue
                        assert is_trapped(g, c, r) == (safe_neighborhood(g, c, r) == 0)
                        checked += 1
    assert checked > 10_000


def test_endgame_examples():
    # robber at the far end of a long path; both cops at the other end
    g = path(8)
    assert endgame_cop_win_low_degree(g, (0, 0), 7, 2)
    assert not endgame_cop_win_small_safe(g, (0, 0), 7, 2)
    # S(R) of size two with two boundary vertices
    g = path(4)
    assert safe_neighborhood(g, (0, 0), 3) == vset([2, 3])
    assert endgame_cop_win_small_safe(g, (0, 0), 3, 2)
    # one cop: no claim
    assert not endgame_cop_win_small_safe(g, (0,), 3, 1)
    # S(R) with two degree-3 vertices: two triangles sharing an edge hanging off a path
    g = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (2, 4), (3, 4), (3, 5), (4, 5), (5, 6)])
    s = safe_neighborhood(g, (0, 0), 4)
    assert sum(1 for v in bits(s) if g.degree(v) == 3) >= 2
    assert not endgame_cop_win_low_degree(g, (0, 0), 4, 2)
    # five-vertex safe region
    assert not endgame_cop_win_small_safe(path(9), (0, 0), 6, 2)


def test_endgame_predicates_are_sound(connected_by_order):
    fired = [0, 0]
    for n in range(1, 8):
        for g in connected_by_order[n]:
            if n < 2:
                continue
            res = cops_win(g, 2)
            for c in itertools.combinations_with_replacement(range(n), 2):
                for r in range(n):
                    state = GameState(c, r)
                    for i, pred in enumerate((endgame_cop_win_small_safe, endgame_cop_win_low_degree)):
                        if pred(g, c, r, 2):
                            fired[i] += 1
                            assert res.win(state), (pred.__name__, g, c, r)
    assert min(fired) > 1000


def test_monotone_in_k(connected_by_order):
    for n in range(1, 7):
        for g in connected_by_order[n]:
            wins = [cops_can_win(g, k) for k in range(1, min(n, 4) + 1)]
            assert wins == sorted(wins)


def test_dismantlable_iff_one_cop_wins(connected_by_order):
    for n in range(1, 7):
        for g in connected_by_order[n]:
            assert (copwin_ordering(g) is not None) == cops_can_win(g, 1)


def test_optimal_move_examples(p3, c4):
    res = cops_win(p3, 1)
    s = GameState((1,), 0)
    assert res.capture_time(s) == 1
    assert optimal_move(p3, res, s) == GameState((0,), 0, Turn.ROBBER)
    lost = cops_win(c4, 1)
    assert not lost.cops_win_overall
    for c in range(4):
        opposite = (c + 2) % 4
        with pytest.raises(NoWinningMove):
            optimal_move(c4, lost, GameState((c,), opposite))
    with pytest.raises(ValueError):
        optimal_move(p3, res, GameState((0,), 0))


def test_robber_escapes_on_losing_states(c4):
    lost = cops_win(c4, 1)
    s = GameState((0,), 1, Turn.ROBBER)
    nxt = optimal_move(c4, lost, s)
    assert not lost.win(nxt)


def test_capture_time_decreases_along_play(pete):
    for g, k in [(cycle(4), 2), (pete, 3), (cycle(9), 2), (path(6), 1)]:
        res = cops_win(g, k)
        states = play(g, k, res)
        times = [res.capture_time(s) for s in states]
        cop_times = [t for s, t in zip(states, times) if s.turn is Turn.COPS or s.captured]
        assert states[-1].captured
        opening = res.opening_value(states[0].cops)
        assert times[0] == opening
        for a, b in zip(states, states[1:]):
            if a.turn is Turn.COPS:
                assert res.capture_time(b) == res.capture_time(a) - 1
        assert cop_times[-1] == 0


def test_transcripts():
    t = play_transcript(path(2), 1)
    assert t.splitlines()[0].startswith("cops place on")
    assert t.splitlines()[-1] == "captured on 1 after 1 cop move(s)"
    c4 = cycle(4)
    res = cops_win(c4, 2)
    best = min(res.opening_value(c) for c in itertools.combinations_with_replacement(range(4), 2)
               if res.opening_value(c) is not None)
    t = play_transcript(c4, 2, res)
    moves = int(t.splitlines()[-1].split("after ")[1].split()[0])
    assert moves == best <= 3
    assert play_transcript(c4, 2) == t  # deterministic
    t = play_transcript(petersen(), 3)
    assert "captured on" in t
    with pytest.raises(NoWinningMove):
        play_transcript(c4, 1)


def test_cop_moves_are_multisets(c4):
    moves = cop_moves(c4, (0, 0))
    assert (0, 0) in moves and (1, 3) in moves and (0, 1) in moves
    assert all(list(m) == sorted(m) for m in moves)
    assert len(moves) == len(set(moves)) == 6


def test_retract_invariance_random():
    rng = random.Random(2024)
    tried = 0
    while tried < 1000:
        n = rng.randint(3, 9)
        g = random_connected(rng, n, rng.uniform(0.25, 0.7))
        pair = next(((v, w) for v in range(n) for w in range(n)
                     if v != w and is_dominated(g, v, w)), None)
        if pair is None:
            continue
        v, _ = pair
        h, _ = induced_subgraph(g, g.vertices & ~(1 << v))
        assert cop_number(g) == cop_number(h)
        tried += 1
