"""The Lister/Painter token game: exhaustive solving, pruning and strategies.

Each vertex starts with ``f(v)`` tokens.  Every round Lister marks a nonempty
set ``M`` of uncoloured vertices, each losing a token, and Painter colours an
independent ``I`` inside ``M``.  Lister wins once an uncoloured vertex has no
tokens left at the end of a round; Painter wins once everything is coloured.

The solver works on a *core* graph plus an optional pool of interchangeable
independent vertices joined to the whole core (the ``K̄_m`` side of a join).
States are stored canonically: vertices are grouped into twin classes (equal
open or equal closed neighbourhoods) and only the sorted token multiset of
the live members of each class is kept.  Before a state is looked up, every
vertex holding more tokens than it has live neighbours is dropped; such a
vertex never affects the outcome.
"""

from __future__ import annotations

import math
import os
import sys
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Iterable, Sequence

from .graphcore import SimpleGraph, build_graph, join_instance, sort_tokens
from .pathcount import branch, psi, x_of_f

__all__ = [
    "CapExceeded",
    "IllegalMove",
    "PaintingSolver",
    "GameState",
    "is_paintable",
    "m_p",
    "prune",
    "lemma3_conditions",
    "painter_join_strategy",
    "run_game",
    "SolverStrategy",
    "optimal_strategy_from_solver",
    "painter_survives_all_listers",
    "lister_beats_all_painters",
    "max_vertices",
]

DEFAULT_MAX_VERTICES = 16

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class CapExceeded(RuntimeError):
    """The instance is larger than the exhaustive solver is allowed to handle."""


class IllegalMove(ValueError):
    def __init__(self, side: str, message: str):
        super().__init__(f"illegal {side} move: {message}")
        self.side = side


def max_vertices() -> int:
    return int(os.environ.get("DYCKPAINT_MAX_VERTICES", DEFAULT_MAX_VERTICES))


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def twin_classes(adj: Sequence[int], vertices: Sequence[int]) -> list[list[int]]:
    """Partition ``vertices`` into classes of false twins or true twins."""
    groups: dict[tuple, list[int]] = {}
    for v in vertices:
        groups.setdefault(("open", adj[v]), []).append(v)
    classes = []
    singles = []
    for members in groups.values():
        (classes if len(members) > 1 else singles).append(members)
    closed: dict[int, list[int]] = {}
    for (v,) in singles:
        closed.setdefault(adj[v] | (1 << v), []).append(v)
    classes.extend(closed.values())
    classes.sort(key=lambda c: c[0])
    return classes


class PaintingSolver:
    """Memoised game solver for ``core ⊕ K̄_free`` and all its subgames.

    ``free`` is the capacity of the independent pool; a join with any
    ``m <= free`` pool vertices is a state of this solver, so one memo table
    serves a whole scan over ``m``.
    """

    def __init__(self, core: SimpleGraph, free: int = 0):
        n = core.n_vertices
        self.core = core
        self.n_core = n
        self.free = free
        total = n + free
        core_mask = (1 << n) - 1
        pool_mask = ((1 << total) - 1) ^ core_mask
        adj = core.adjacency() + [core_mask] * free
        for v in range(n):
            adj[v] |= pool_mask
        self.adj = adj
        self.classes = twin_classes(core.adjacency(), range(n))
        if free:
            self.classes.append(list(range(n, total)))
        self.memo: dict[tuple, bool] = {}
        self.stats = {"states": 0, "memo_hits": 0}
        self._mis_cache: dict[int, list[int]] = {}
        self._moves_cache: dict[tuple, list[int]] = {}

    # -- canonical states ----------------------------------------------------

    def settle(self, alive: int, tokens: Sequence[int]) -> tuple | None:
        """Canonical key of a position, or ``None`` if Lister has already won."""
        for v in _bits(alive):
            if tokens[v] <= 0:
                return None
        adj = self.adj
        changed = True
        while changed:
            changed = False
            for v in _bits(alive):
                if tokens[v] > _popcount(adj[v] & alive):
                    alive &= ~(1 << v)
                    changed = True
        return tuple(
            tuple(sorted(tokens[v] for v in cls if alive >> v & 1)) for cls in self.classes
        )

    def decode(self, key: tuple) -> tuple[int, list[int]]:
        tokens = [0] * (self.n_core + self.free)
        alive = 0
        for cls, toks in zip(self.classes, key):
            for v, t in zip(cls, toks):
                alive |= 1 << v
                tokens[v] = t
        return alive, tokens

    # -- move generation -----------------------------------------------------

    def lister_moves(self, key: tuple) -> list[int]:
        """One representative Lister move per symmetry class, largest first."""
        cached = self._moves_cache.get(key)
        if cached is not None:
            return cached
        runs: list[list[int]] = []
        for cls, toks in zip(self.classes, key):
            start = 0
            for k in range(1, len(toks) + 1):
                if k == len(toks) or toks[k] != toks[start]:
                    runs.append(cls[start:k])
                    start = k
        moves = []
        for counts in product(*(range(len(r) + 1) for r in runs)):
            mask = 0
            for run, c in zip(runs, counts):
                for v in run[:c]:
                    mask |= 1 << v
            if mask:
                moves.append(mask)
        moves.sort(key=lambda m: (-_popcount(m), list(_bits(m))))
        self._moves_cache[key] = moves
        return moves

    def maximal_independent_sets(self, within: int) -> list[int]:
        cached = self._mis_cache.get(within)
        if cached is not None:
            return cached
        adj = self.adj
        out: list[int] = []

        def non_nbrs(v: int) -> int:
            return within & ~adj[v] & ~(1 << v)

        def expand(r: int, p: int, x: int) -> None:
            if not p and not x:
                out.append(r)
                return
            pivot = max(_bits(p | x), key=lambda u: _popcount(p & non_nbrs(u)))
            for v in _bits(p & ~non_nbrs(pivot)):
                nv = non_nbrs(v)
                expand(r | (1 << v), p & nv, x & nv)
                p &= ~(1 << v)
                x |= 1 << v

        if within:
            expand(0, within, 0)
        out.sort(key=lambda m: (-_popcount(m), list(_bits(m))))
        self._mis_cache[within] = out
        return out

    def painter_replies(self, alive: int, tokens: Sequence[int], marked: int) -> Iterable[tuple[int, tuple | None]]:
        """Yield ``(I, next_key)`` for each maximal useful Painter reply.

        Marked vertices that would hit zero tokens must be coloured, so only
        maximal independent sets containing them are tried.
        """
        after = list(tokens)
        forced = 0
        for v in _bits(marked):
            after[v] -= 1
            if after[v] <= 0:
                forced |= 1 << v
        adj = self.adj
        for v in _bits(forced):
            if adj[v] & forced:
                return
        blocked = forced
        for v in _bits(forced):
            blocked |= adj[v]
        rest = marked & ~blocked
        extensions = self.maximal_independent_sets(rest) if rest else [0]
        for ext in extensions:
            chosen = forced | ext
            yield chosen, self.settle(alive & ~chosen, after)

    # -- solving -------------------------------------------------------------

    def wins_key(self, key: tuple) -> bool:
        """True iff Painter wins from the canonical position ``key``."""
        memo = self.memo
        hit = memo.get(key)
        if hit is not None:
            self.stats["memo_hits"] += 1
            return hit
        self.stats["states"] += 1
        alive, tokens = self.decode(key)
        result = True
        if alive:
            for marked in self.lister_moves(key):
                if not any(
                    nxt is not None and self.wins_key(nxt)
                    for _, nxt in self.painter_replies(alive, tokens, marked)
                ):
                    result = False
                    break
        memo[key] = result
        return result

    def painter_wins(self, alive: int, tokens: Sequence[int]) -> bool:
        key = self.settle(alive, tokens)
        return key is not None and self.wins_key(key)

    def join_position(self, f: Sequence[int], m: int) -> tuple[int, list[int]]:
        """Start of the game on ``core ⊕ K̄_m`` where pool vertices hold ``|V(core)|`` tokens."""
        if m > self.free:
            raise CapExceeded(f"join size {m} exceeds solver pool {self.free}")
        n = self.n_core
        alive = (1 << (n + m)) - 1
        tokens = list(f) + [n] * self.free
        return alive, tokens

    def m_p(self, f: Sequence[int]) -> int:
        """Smallest ``m`` with ``core ⊕ K̄_m`` not ``f^(m)``-paintable."""
        bound = math.prod(f)
        for m in range(bound + 1):
            if m > self.free:
                raise CapExceeded(
                    f"m_p search reached m={m} with {self.n_core}+{m} vertices "
                    f"(limit {self.n_core + self.free})"
                )
            if not self.painter_wins(*self.join_position(f, m)):
                return m
        raise RuntimeError(f"join stayed paintable up to the product bound {bound} for f={tuple(f)}")


# -- module-level operations --------------------------------------------------


def _check_size(g: SimpleGraph, f: Sequence[int], limit: int | None) -> int:
    limit = max_vertices() if limit is None else limit
    if len(f) != g.n_vertices:
        raise ValueError(f"token map has {len(f)} entries for {g.n_vertices} vertices")
    if g.n_vertices > limit:
        raise CapExceeded(f"{g.n_vertices} vertices exceed the solver cap {limit}")
    return limit


def is_paintable(g: SimpleGraph, f: Sequence[int], *, limit: int | None = None) -> bool:
    _check_size(g, f, limit)
    solver = PaintingSolver(g)
    return solver.painter_wins((1 << g.n_vertices) - 1, list(f))


def m_p(g: SimpleGraph, f: Sequence[int], *, limit: int | None = None) -> int:
    """Least ``m`` such that ``g ⊕ K̄_m`` is not ``f^(m)``-paintable.

    The scan runs ``m = 0, 1, ...`` up to ``prod(f)``; the joined graph may
    have at most ``limit`` vertices (default :func:`max_vertices`).
    """
    limit = _check_size(g, f, limit)
    if any(v <= 0 for v in f):
        return 0
    pool = min(limit - g.n_vertices, math.prod(f))
    return PaintingSolver(g, pool).m_p(f)


def prune_mask(adj: Sequence[int], alive: int, tokens: Sequence[int]) -> int:
    changed = True
    while changed:
        changed = False
        for v in _bits(alive):
            if tokens[v] > _popcount(adj[v] & alive):
                alive &= ~(1 << v)
                changed = True
    return alive


def prune(g: SimpleGraph, f: Sequence[int]) -> tuple[SimpleGraph, tuple[int, ...]]:
    """Delete vertices holding more tokens than neighbours until none remain."""
    if len(f) != g.n_vertices:
        raise ValueError(f"token map has {len(f)} entries for {g.n_vertices} vertices")
    alive = prune_mask(g.adjacency(), (1 << g.n_vertices) - 1, f)
    keep = list(_bits(alive))
    return g.induced(keep), tuple(f[v] for v in keep)


def lemma3_conditions(g: SimpleGraph, f: Sequence[int], m: int, *, limit: int | None = None) -> tuple[bool, bool]:
    """Evaluate the two threshold conditions on ``(g, f, m)``.

    Condition (1): some nonempty ``U`` has, for all ``v in U``,
    ``m - m_p(g, f-δ_U) >= m_p(g-v, f-δ_U)``, and no independent ``I ⊆ U``
    with ``|I| >= 2`` leaves ``g - I`` paintable.
    Condition (2): every nonempty ``U`` has a ``v`` with
    ``m - m_p(g, f-δ_U) <= m_p(g-v, f-δ_U)`` or such a paintable ``g - I``.
    """
    limit = _check_size(g, f, limit)
    n = g.n_vertices
    if not is_paintable(g, f, limit=limit):
        raise ValueError("lemma3_conditions needs a paintable (g, f)")
    solvers: dict[frozenset, PaintingSolver] = {}

    def mp_without(removed: frozenset, tokens: Sequence[int]) -> int:
        keep = [v for v in range(n) if v not in removed]
        sub = [tokens[v] for v in keep]
        if any(t <= 0 for t in sub):
            return 0
        solver = solvers.get(removed)
        if solver is None:
            h = g.induced(keep)
            solver = solvers[removed] = PaintingSolver(h, limit - h.n_vertices)
        return solver.m_p(sub)

    def paintable_without(removed: frozenset, tokens: Sequence[int]) -> bool:
        keep = [v for v in range(n) if v not in removed]
        return is_paintable(g.induced(keep), [tokens[v] for v in keep], limit=limit)

    cond1 = False
    cond2 = True
    for size in range(1, n + 1):
        for u in combinations(range(n), size):
            fu = [t - (v in u) for v, t in enumerate(f)]
            base = mp_without(frozenset(), fu)
            per_vertex = [mp_without(frozenset([v]), fu) for v in u]
            escape = any(
                paintable_without(frozenset(i), fu)
                for k in range(2, len(u) + 1)
                for i in combinations(u, k)
                if g.is_independent(i)
            )
            if not escape and all(m - base >= pv for pv in per_vertex):
                cond1 = True
            if not escape and not any(m - base <= pv for pv in per_vertex):
                cond2 = False
    return cond1, cond2


# -- concrete play --------------------------------------------------------------


@dataclass(frozen=True)
class GameState:
    graph: SimpleGraph
    tokens: tuple[int, ...]
    uncoloured: frozenset[int]

    @classmethod
    def start(cls, graph: SimpleGraph, tokens: Sequence[int]) -> "GameState":
        if len(tokens) != graph.n_vertices:
            raise ValueError("one token count per vertex required")
        return cls(graph, tuple(tokens), frozenset(range(graph.n_vertices)))

    def lister_won(self) -> bool:
        return any(self.tokens[v] <= 0 for v in self.uncoloured)

    def painter_won(self) -> bool:
        return not self.uncoloured

    def after(self, marked: Iterable[int], coloured: Iterable[int]) -> "GameState":
        marked = frozenset(marked)
        coloured = frozenset(coloured)
        left = self.uncoloured - coloured
        tokens = tuple(
            (t - (v in marked)) if v in left else 0 for v, t in enumerate(self.tokens)
        )
        return GameState(self.graph, tokens, left)

    def alive_mask(self) -> int:
        return sum(1 << v for v in self.uncoloured)


ListerStrategy = Callable[[GameState], Iterable[int]]
PainterStrategy = Callable[[GameState, frozenset], Iterable[int]]


def _check_lister(state: GameState, marked: frozenset) -> None:
    if not marked:
        raise IllegalMove("Lister", "must mark at least one vertex")
    if not marked <= state.uncoloured:
        raise IllegalMove("Lister", f"marked {sorted(marked - state.uncoloured)} are not uncoloured")


def _check_painter(state: GameState, marked: frozenset, coloured: frozenset) -> None:
    if not coloured <= marked:
        raise IllegalMove("Painter", f"coloured {sorted(coloured - marked)} were not marked")
    if not state.graph.is_independent(coloured):
        raise IllegalMove("Painter", f"{sorted(coloured)} is not independent")


def run_game(
    graph: SimpleGraph,
    tokens: Sequence[int],
    lister: ListerStrategy,
    painter: PainterStrategy,
    max_rounds: int | None = None,
) -> tuple[str, list[dict]]:
    """Referee one game; returns ``("lister"|"painter", transcript)``."""
    state = GameState.start(graph, tokens)
    if max_rounds is None:
        max_rounds = 10 * max(1, sum(tokens))
    transcript: list[dict] = []
    if state.lister_won():
        return "lister", transcript
    for _ in range(max_rounds):
        if state.painter_won():
            return "painter", transcript
        marked = frozenset(lister(state))
        _check_lister(state, marked)
        coloured = frozenset(painter(state, marked))
        _check_painter(state, marked, coloured)
        transcript.append({"marked": sorted(marked), "colored": sorted(coloured)})
        state = state.after(marked, coloured)
        if state.lister_won():
            return "lister", transcript
    if state.painter_won():
        return "painter", transcript
    raise RuntimeError(f"no winner after {max_rounds} rounds")


def _subsets_desc(vertices: Sequence[int]) -> Iterable[frozenset]:
    vs = sorted(vertices)
    for k in range(len(vs), 0, -1):
        for c in combinations(vs, k):
            yield frozenset(c)


def _independent_subsets(graph: SimpleGraph, marked: Iterable[int]) -> list[frozenset]:
    vs = sorted(marked)
    out = []
    for k in range(len(vs), -1, -1):
        for c in combinations(vs, k):
            if graph.is_independent(c):
                out.append(frozenset(c))
    return out


@dataclass
class SolverStrategy:
    """Moves read off the solver's memo: winning moves where they exist."""

    graph: SimpleGraph
    solver: PaintingSolver = field(repr=False)

    def value(self, state: GameState) -> bool:
        """True iff Painter wins from ``state`` (Lister to move)."""
        if state.lister_won():
            return False
        return self.solver.painter_wins(state.alive_mask(), list(state.tokens))

    def _reply_values(self, state: GameState, marked: frozenset) -> list[tuple[frozenset, bool]]:
        mis = self.solver.maximal_independent_sets(sum(1 << v for v in marked))
        out = []
        for mask in mis:
            coloured = frozenset(_bits(mask))
            out.append((coloured, self.value(state.after(marked, coloured))))
        return out

    def lister(self, state: GameState) -> frozenset:
        first = None
        for marked in _subsets_desc(state.uncoloured):
            if first is None:
                first = marked
            if not any(v for _, v in self._reply_values(state, marked)):
                return marked
        return first

    def painter(self, state: GameState, marked: frozenset) -> frozenset:
        replies = self._reply_values(state, frozenset(marked))
        for coloured, v in replies:
            if v:
                return coloured
        return replies[0][0] if replies else frozenset()


def optimal_strategy_from_solver(graph: SimpleGraph, tokens: Sequence[int], *, limit: int | None = None) -> SolverStrategy:
    _check_size(graph, tokens, limit)
    return SolverStrategy(graph, PaintingSolver(graph))


def painter_join_strategy(n: int, f: Sequence[int], m: int) -> PainterStrategy:
    """Painter's branch strategy on ``K_n ⊕ K̄_m`` (clique vertices ``0..n-1``).

    Pool vertices holding more tokens than there are uncoloured clique
    vertices are ignored until marked alone.  Otherwise, with ``i`` the first
    marked clique vertex in (tokens, label) order and ``m'`` the number of
    marked live pool vertices, Painter colours ``v_i`` when
    ``m' < psi(x↑i)`` and the marked pool vertices otherwise.
    """
    f = tuple(f)
    if len(f) != n:
        raise ValueError(f"need {n} token values, got {len(f)}")
    total = psi(x_of_f(sort_tokens(f)[0]))
    if m >= total:
        raise ValueError(f"strategy needs m < psi(x(f)) = {total}, got m={m}")

    def respond(state: GameState, marked: frozenset) -> frozenset:
        pool_marked = frozenset(v for v in marked if v >= n)
        clique = sorted((v for v in state.uncoloured if v < n), key=lambda v: (state.tokens[v], v))
        if not any(v in marked for v in clique):
            return pool_marked
        k = len(clique)
        i = next(pos for pos, v in enumerate(clique, start=1) if v in marked)
        x = x_of_f([state.tokens[v] for v in clique])
        live_marked = sum(1 for v in pool_marked if state.tokens[v] <= k)
        _, up = branch(x, i)
        if live_marked < psi(up):
            return frozenset([clique[i - 1]])
        return pool_marked

    return respond


def painter_survives_all_listers(graph: SimpleGraph, tokens: Sequence[int], painter: PainterStrategy) -> bool:
    """Play ``painter`` against every possible Lister; True iff it never loses."""
    memo: dict[tuple, bool] = {}

    def ok(state: GameState) -> bool:
        if state.painter_won():
            return True
        key = (state.uncoloured, state.tokens)
        if key in memo:
            return memo[key]
        result = True
        for marked in _subsets_desc(state.uncoloured):
            coloured = frozenset(painter(state, marked))
            _check_painter(state, marked, coloured)
            nxt = state.after(marked, coloured)
            if nxt.lister_won() or not ok(nxt):
                result = False
                break
        memo[key] = result
        return result

    start = GameState.start(graph, tokens)
    return not start.lister_won() and ok(start)


def lister_beats_all_painters(graph: SimpleGraph, tokens: Sequence[int], lister: ListerStrategy) -> bool:
    """Play ``lister`` against every Painter reply (any independent subset); True iff it always wins."""
    memo: dict[tuple, bool] = {}

    def ok(state: GameState) -> bool:
        if state.lister_won():
            return True
        if state.painter_won():
            return False
        key = (state.uncoloured, state.tokens)
        if key in memo:
            return memo[key]
        marked = frozenset(lister(state))
        _check_lister(state, marked)
        result = all(ok(state.after(marked, i)) for i in _independent_subsets(state.graph, marked))
        memo[key] = result
        return result

    return ok(GameState.start(graph, tokens))


def clique_join(f: Sequence[int], m: int) -> tuple[SimpleGraph, tuple[int, ...]]:
    """``K_n ⊕ K̄_m`` with ``f^(m)``; clique vertices first."""
    return join_instance(build_graph("complete", len(f)), f, m)
