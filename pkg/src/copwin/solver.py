"""Exact Cops and Robbers solver by retrograde analysis.

The state table is a dense array indexed ``[c_1, ..., c_k, r]``.  Cop axes are
kept as ordered tuples so that a joint cop move factors into one closed
neighbourhood product per axis: "some cop move reaches a robber-turn win" is
``k`` successive boolean products with the closed adjacency matrix.  The table
is symmetric in the cop axes; callers address it with sorted multisets.

Layer ``t`` of the fixpoint is exactly the set of cop-turn states with
capture time ``t``, so capture times come out of the same pass.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, bits, is_connected, set_closed_neighborhood, component_of, vset

MAX_COPS = 4
MAX_SOLVER_ORDER = 30


class DisconnectedGraphError(ValueError):
    pass


class SolverCapError(ValueError):
    pass


class NoWinningMove(Exception):
    """A cop move was requested from a cop-turn state the cops cannot win."""


class Turn(enum.Enum):
    COPS = "cops"
    ROBBER = "robber"


@dataclass(frozen=True)
class GameState:
    cops: tuple[int, ...]
    robber: int
    turn: Turn = Turn.COPS

    def __post_init__(self) -> None:
        object.__setattr__(self, "cops", tuple(sorted(self.cops)))

    @property
    def captured(self) -> bool:
        return self.robber in self.cops

    def sort_key(self) -> tuple:
        return (self.cops, self.robber, self.turn is Turn.ROBBER)

    def __str__(self) -> str:
        cops = ",".join(map(str, self.cops))
        if self.turn is Turn.COPS:
            return f"[_{cops}_ | {self.robber}]"
        return f"[{cops} | _{self.robber}_]"


def _closed_adjacency(g: Graph) -> np.ndarray:
    m = np.eye(g.n, dtype=np.float32)
    for v, row in enumerate(g.adj):
        for u in bits(row):
            m[v, u] = 1.0
    return m


def _capture_mask(n: int, k: int) -> np.ndarray:
    ar = np.arange(n)
    rshape = (1,) * k + (n,)
    cap = np.zeros((n,) * (k + 1), dtype=bool)
    for i in range(k):
        shape = [1] * (k + 1)
        shape[i] = n
        cap |= ar.reshape(shape) == ar.reshape(rshape)
    return cap


def _check_request(g: Graph, k: int) -> None:
    if not is_connected(g):
        raise DisconnectedGraphError("the game is played on connected graphs only")
    if not 1 <= k <= g.n:
        raise ValueError(f"cop count must be in 1..{g.n}, got {k}")
    if k > MAX_COPS or g.n > MAX_SOLVER_ORDER:
        raise SolverCapError(
            f"solver refuses k={k}, n={g.n} (caps: k <= {MAX_COPS}, n <= {MAX_SOLVER_ORDER})"
        )


def _retrograde(g: Graph, k: int, early_exit: bool):
    """Run the layered fixpoint. Returns (cop_time, robber_time, overall)."""
    n = g.n
    m = _closed_adjacency(g)
    closed_deg = m.sum(axis=0) - 0.5
    cap = _capture_mask(n, k)
    win = cap.copy()
    track = not early_exit
    if track:
        cop_time = np.where(cap, 0, -1).astype(np.int16)
        rob_time = np.full(cap.shape, -1, dtype=np.int16)
    t = 0
    while True:
        # robber-turn states the cops win within t more cop moves
        rt = cap | ((win.astype(np.float32) @ m) > closed_deg)
        if track:
            rob_time[rt & (rob_time < 0)] = t
        reach = rt
        for axis in range(k):
            prod = np.tensordot(m, reach.astype(np.float32), axes=([1], [axis]))
            reach = np.moveaxis(prod, 0, axis) > 0.5
        fresh = reach & ~win
        if not fresh.any():
            break
        t += 1
        win |= fresh
        if track:
            cop_time[fresh] = t
        elif win.all(axis=-1).any():
            return None, None, True
    overall = bool(win.all(axis=-1).any())
    if track:
        return cop_time, rob_time, overall
    return None, None, overall


def cops_can_win(g: Graph, k: int) -> bool:
    """Decide whether ``k`` cops win on ``g`` without keeping capture times."""
    _check_request(g, k)
    return _retrograde(g, k, early_exit=True)[2]


@dataclass(frozen=True)
class SolveResult:
    graph: Graph
    k: int
    cop_time: np.ndarray = field(repr=False)
    robber_time: np.ndarray = field(repr=False)
    cops_win_overall: bool

    def _table(self, state: GameState) -> np.ndarray:
        if len(state.cops) != self.k:
            raise ValueError(f"state has {len(state.cops)} cops, table is for {self.k}")
        for v in (*state.cops, state.robber):
            if not 0 <= v < self.graph.n:
                raise ValueError(f"vertex {v} out of range")
        return self.cop_time if state.turn is Turn.COPS else self.robber_time

    def capture_time(self, state: GameState) -> int | None:
        """Cop moves left under optimal play, or ``None`` if the robber escapes forever."""
        t = int(self._table(state)[state.cops + (state.robber,)])
        return None if t < 0 else t

    def win(self, state: GameState) -> bool:
        return self.capture_time(state) is not None

    def opening_value(self, cops: tuple[int, ...]) -> int | None:
        """Worst-case capture time over robber placements against ``cops``."""
        times = self.cop_time[tuple(sorted(cops))]
        return None if (times < 0).any() else int(times.max())

    def optimal_opening(self) -> GameState:
        """Cop placement minimising the worst case, then the robber's best reply."""
        if not self.cops_win_overall:
            raise NoWinningMove(f"{self.k} cop(s) cannot win on this graph")
        best = None
        for cops in itertools.combinations_with_replacement(range(self.graph.n), self.k):
            value = self.opening_value(cops)
            if value is not None and (best is None or value < best[0]):
                best = (value, cops)
        _, cops = best
        times = self.cop_time[cops]
        robber = int(np.argmax(times))  # argmax returns the lowest index on ties
        return GameState(cops, robber, Turn.COPS)


def cops_win(g: Graph, k: int) -> SolveResult:
    _check_request(g, k)
    cop_time, rob_time, overall = _retrograde(g, k, early_exit=False)
    return SolveResult(g, k, cop_time, rob_time, overall)


def copwin_ordering(g: Graph) -> list[int] | None:
    """Greedy dismantling: delete the least dominated vertex until one is left.

    Returns every vertex in deletion order (the survivor last), or ``None``
    when some nontrivial graph without dominated vertices is reached.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("dismantlability is checked on connected graphs")
    alive = g.vertices
    closed = [row | (1 << v) for v, row in enumerate(g.adj)]
    order = []
    while alive & (alive - 1):
        for v in bits(alive):
            nv = closed[v] & alive
            found = False
            for w in bits(nv & ~(1 << v)):
                if nv & ~closed[w] == 0:
                    found = True
                    break
            if found:
                order.append(v)
                alive &= ~(1 << v)
                break
        else:
            return None
    order.append(alive.bit_length() - 1)
    return order


is_copwin_dismantlable = copwin_ordering


def cop_number(g: Graph) -> int:
    if not is_connected(g):
        raise DisconnectedGraphError("cop number is defined for connected graphs")
    if copwin_ordering(g) is not None:
        return 1
    k = 2
    while True:
        if k >= g.n or cops_can_win(g, k):
            return k
        k += 1


def _check_state(g: Graph, cops, robber: int) -> None:
    for v in (*cops, robber):
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for order {g.n}")


def safe_neighborhood(g: Graph, cops, robber: int) -> int:
    """The robber's safe region ``S(R)`` as a vertex bitmask.

    Off ``N[C]`` it is the component of ``G - N[C]`` holding the robber.  On
    ``N(C)`` it is the union of the components of ``G - N[C]`` the robber can
    step into, which is empty exactly when the robber is trapped.
    """
    _check_state(g, cops, robber)
    c = vset(cops)
    if c >> robber & 1:
        return 0
    guarded = set_closed_neighborhood(g, c)
    free = g.vertices & ~guarded
    if free >> robber & 1:
        return component_of(g, robber, free)
    out = 0
    for u in bits(g.adj[robber] & free):
        if not out >> u & 1:
            out |= component_of(g, u, free)
    return out


def is_trapped(g: Graph, cops, robber: int) -> bool:
    _check_state(g, cops, robber)
    c = vset(cops)
    if c >> robber & 1:
        raise ValueError("robber already captured")
    guarded = set_closed_neighborhood(g, c)
    return bool(guarded >> robber & 1) and g.adj[robber] & ~guarded == 0


def _open_nbhd(g: Graph, s: int) -> int:
    return set_closed_neighborhood(g, s) & ~s


def endgame_cop_win_small_safe(g: Graph, cops, robber: int, k: int | None = None) -> bool:
    """Sufficient cop-win test: at least two cops, ``|S| <= 2`` and ``|N(S)| <= 2k - 1``."""
    k = len(cops) if k is None else k
    if k < 2:
        return False
    s = safe_neighborhood(g, cops, robber)
    return s.bit_count() <= 2 and _open_nbhd(g, s).bit_count() <= 2 * k - 1


def endgame_cop_win_low_degree(g: Graph, cops, robber: int, k: int | None = None) -> bool:
    """Sufficient cop-win test: at least two cops, ``S`` has max degree 3 and one degree-3 vertex at most."""
    k = len(cops) if k is None else k
    if k < 2:
        return False
    degs = [g.degree(v) for v in bits(safe_neighborhood(g, cops, robber))]
    return all(d <= 3 for d in degs) and degs.count(3) <= 1


def cop_moves(g: Graph, cops: tuple[int, ...]) -> list[tuple[int, ...]]:
    choices = [list(bits(g.adj[c] | (1 << c))) for c in cops]
    return sorted({tuple(sorted(p)) for p in itertools.product(*choices)})


def successors(g: Graph, state: GameState) -> list[GameState]:
    if state.captured:
        return []
    if state.turn is Turn.COPS:
        return [GameState(c, state.robber, Turn.ROBBER) for c in cop_moves(g, state.cops)]
    return [GameState(state.cops, r, Turn.COPS) for r in bits(g.adj[state.robber] | (1 << state.robber))]


def optimal_move(g: Graph, solve: SolveResult, state: GameState) -> GameState:
    if state.captured:
        raise ValueError("the game is over: the robber is captured")
    nxt = sorted(successors(g, state), key=GameState.sort_key)
    times = [solve.capture_time(s) for s in nxt]
    if state.turn is Turn.COPS:
        options = [(t, i) for i, t in enumerate(times) if t is not None]
        if not options:
            raise NoWinningMove(f"no winning cop move from {state}")
        return nxt[min(options)[1]]
    if solve.win(state):
        best = max(times)
        return nxt[times.index(best)]
    for s, t in zip(nxt, times):
        if t is None:
            return s
    raise AssertionError("robber-winning state without an escaping move")


def play(g: Graph, k: int, solve: SolveResult | None = None) -> list[GameState]:
    """Optimal-vs-optimal play from the optimal opening, ending at capture."""
    solve = cops_win(g, k) if solve is None else solve
    state = solve.optimal_opening()
    states = [state]
    while not state.captured:
        state = optimal_move(g, solve, state)
        states.append(state)
    return states


def play_transcript(g: Graph, k: int, solve: SolveResult | None = None) -> str:
    solve = cops_win(g, k) if solve is None else solve
    if not solve.cops_win_overall:
        raise NoWinningMove(f"{k} cop(s) cannot win on this graph")
    states = play(g, k, solve)
    first = states[0]
    lines = [
        f"cops place on {', '.join(map(str, first.cops))}; robber places on {first.robber}",
    ]
    cop_moves_made = 0
    rnd = []
    for prev, cur in zip(states, states[1:]):
        if prev.turn is Turn.COPS:
            cop_moves_made += 1
            rnd = [str(prev), str(cur)]
            if cur.captured:
                lines.append(f"round {cop_moves_made}: " + " -> ".join(rnd))
        else:
            rnd.append(str(cur))
            lines.append(f"round {cop_moves_made}: " + " -> ".join(rnd))
    last = states[-1]
    lines.append(f"captured on {last.robber} after {cop_moves_made} cop move(s)")
    return "\n".join(lines) + "\n"
