"""List colouring: colourability, colour-set families and tiny-scale ``m_c``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, product
from typing import Iterable, Iterator, Sequence

from .graphcore import SimpleGraph, build_graph, join_instance
from .pathcount import encode_path, enumerate_paths, psi, x_of_f

__all__ = [
    "ListAssignment",
    "INF",
    "format_kappa",
    "is_colorable",
    "colorings",
    "phi_kappa",
    "is_m_extendable",
    "is_m_extendable_bruteforce",
    "canonical_assignments",
    "m_c_small",
    "lemma2_assignment",
    "EnumerationCapExceeded",
]

INF = math.inf
COLORING_CAP = 10**6
MC_MAX_VERTICES = 3
MC_MAX_TOKENS = 9


class EnumerationCapExceeded(RuntimeError):
    pass


def format_kappa(k) -> str:
    return "inf" if k == INF else str(int(k))


@dataclass(frozen=True)
class ListAssignment:
    lists: tuple[frozenset, ...]

    def __init__(self, lists: Iterable[Iterable[int]]):
        object.__setattr__(self, "lists", tuple(frozenset(l) for l in lists))

    def __len__(self) -> int:
        return len(self.lists)

    def __getitem__(self, v: int) -> frozenset:
        return self.lists[v]

    def colours(self) -> frozenset:
        return frozenset().union(*self.lists) if self.lists else frozenset()

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(l) for l in self.lists)

    def relabel(self, sigma: dict) -> "ListAssignment":
        return ListAssignment({sigma[c] for c in l} for l in self.lists)

    def to_json(self) -> dict:
        return {"lists": [sorted(l) for l in self.lists]}

    @classmethod
    def from_json(cls, d: dict) -> "ListAssignment":
        return cls(d["lists"])


def _check(g: SimpleGraph, lists: ListAssignment) -> None:
    if len(lists) != g.n_vertices:
        raise ValueError(f"{len(lists)} lists for {g.n_vertices} vertices")


def is_colorable(g: SimpleGraph, lists: ListAssignment) -> bool:
    """Backtracking with forward checking.

    The next vertex is the uncoloured one with the least slack: remaining
    colours minus uncoloured neighbours, then fewest remaining colours, then
    lowest index.
    """
    _check(g, lists)
    n = g.n_vertices
    nbrs = [[] for _ in range(n)]
    for u, v in g.edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    domains = [set(l) for l in lists.lists]
    if any(not d for d in domains):
        return False
    uncoloured = set(range(n))
    open_deg = [len(nb) for nb in nbrs]

    def pick() -> int:
        return min(uncoloured, key=lambda v: (len(domains[v]) - open_deg[v], len(domains[v]), v))

    def search() -> bool:
        if not uncoloured:
            return True
        v = pick()
        uncoloured.discard(v)
        for w in nbrs[v]:
            open_deg[w] -= 1
        for c in sorted(domains[v]):
            touched = [w for w in nbrs[v] if w in uncoloured and c in domains[w]]
            for w in touched:
                domains[w].discard(c)
            if all(domains[w] for w in touched) and search():
                return True
            for w in touched:
                domains[w].add(c)
        for w in nbrs[v]:
            open_deg[w] += 1
        uncoloured.add(v)
        return False

    return search()


def colorings(g: SimpleGraph, lists: ListAssignment, cap: int = COLORING_CAP) -> Iterator[tuple[int, ...]]:
    """All proper L-colourings, vertex by vertex in index order, colours ascending."""
    _check(g, lists)
    space = math.prod(len(l) for l in lists.lists)
    if space > cap:
        raise EnumerationCapExceeded(f"colouring space {space} exceeds cap {cap}")
    n = g.n_vertices
    earlier = [[u for u in range(v) if g.has_edge(u, v)] for v in range(n)]
    choice = [0] * n

    def rec(v: int) -> Iterator[tuple[int, ...]]:
        if v == n:
            yield tuple(choice)
            return
        for c in sorted(lists[v]):
            if all(choice[u] != c for u in earlier[v]):
                choice[v] = c
                yield from rec(v + 1)

    yield from rec(0)


def phi_kappa(g: SimpleGraph, lists: ListAssignment) -> tuple[frozenset, float | int]:
    """Colour sets used by L-colourings, and their count or ``INF``.

    ``kappa`` is ``INF`` when some colouring reuses a colour, ``0`` when there
    is no colouring, and the number of distinct colour sets otherwise.
    """
    sets = set()
    repeated = False
    for phi in colorings(g, lists):
        used = frozenset(phi)
        repeated |= len(used) < g.n_vertices
        sets.add(used)
    kappa = INF if repeated else len(sets)
    return frozenset(sets), kappa


def is_m_extendable(g: SimpleGraph, lists: ListAssignment, m: int) -> bool:
    return m < phi_kappa(g, lists)[1]


def _extension_lists(universe: Sequence[int], size: int, fresh_start: int) -> list[frozenset]:
    """Lists of ``size`` colours from ``universe`` plus fresh colours.

    Fresh colours are interchangeable, so a list with ``k`` of them always
    uses the first ``k``.
    """
    out = []
    for k in range(0, size + 1):
        fresh = frozenset(range(fresh_start, fresh_start + k))
        for base in combinations(universe, size - k):
            out.append(frozenset(base) | fresh)
    return out


def is_m_extendable_bruteforce(g: SimpleGraph, lists: ListAssignment, m: int) -> bool:
    """Check every extension of ``lists`` to ``g ⊕ K̄_m`` for colourability."""
    _check(g, lists)
    n = g.n_vertices
    universe = sorted(lists.colours())
    fresh_start = (max(universe) + 1) if universe else 0
    candidates = _extension_lists(universe, n, fresh_start)
    joined, _ = join_instance(g, [1] * n, m)
    for extra in combinations_with_replacement(candidates, m):
        if not is_colorable(joined, ListAssignment(list(lists.lists) + list(extra))):
            return False
    return True


# -- m_c at tiny scale ----------------------------------------------------------


def canonical_assignments(f: Sequence[int]) -> Iterator[ListAssignment]:
    """Every f-list assignment up to renaming colours, each exactly once.

    An assignment up to renaming is the multiset of colour *profiles* (the set
    of vertices whose list holds the colour), so we choose how many colours
    carry each nonempty profile subject to ``sum over profiles containing v == f(v)``.
    """
    n = len(f)
    profiles = [mask for mask in range(1, 1 << n)]
    profiles.sort(key=lambda m: (-bin(m).count("1"), m))

    def rec(idx: int, need: list[int], chosen: list[tuple[int, int]]) -> Iterator[list[tuple[int, int]]]:
        if all(r == 0 for r in need):
            yield list(chosen)
            return
        if idx == len(profiles):
            return
        mask = profiles[idx]
        members = [v for v in range(n) if mask >> v & 1]
        top = min(need[v] for v in members)
        for count in range(top, -1, -1):
            for v in members:
                need[v] -= count
            if count:
                chosen.append((mask, count))
            yield from rec(idx + 1, need, chosen)
            if count:
                chosen.pop()
            for v in members:
                need[v] += count

    for choice in rec(0, list(f), []):
        lists: list[set] = [set() for _ in range(n)]
        colour = 0
        for mask, count in choice:
            for _ in range(count):
                for v in range(n):
                    if mask >> v & 1:
                        lists[v].add(colour)
                colour += 1
        yield ListAssignment(lists)


def m_c_small(g: SimpleGraph, f: Sequence[int]) -> int | float:
    """``min kappa(g, L)`` over all f-list assignments ``L``."""
    if len(f) != g.n_vertices:
        raise ValueError(f"token map has {len(f)} entries for {g.n_vertices} vertices")
    if g.n_vertices > MC_MAX_VERTICES or sum(f) > MC_MAX_TOKENS:
        raise EnumerationCapExceeded(
            f"m_c_small needs |V| <= {MC_MAX_VERTICES} and sum(f) <= {MC_MAX_TOKENS}; "
            f"got |V|={g.n_vertices}, sum(f)={sum(f)}"
        )
    best: int | float = INF
    for lists in canonical_assignments(f):
        best = min(best, phi_kappa(g, lists)[1])
        if best == 0:
            break
    return best


def lemma2_assignment(f: Sequence[int]) -> tuple[SimpleGraph, tuple[int, ...], ListAssignment]:
    """The blocking list assignment on ``K_n ⊕ K̄_psi``.

    Clique vertex ``v_i`` gets ``{1..f_i}``; the pool vertices get the
    up-step position sets of the distinct dominated paths of ``x(f)``.
    """
    f = tuple(int(v) for v in f)
    x = x_of_f(f)
    paths = enumerate_paths(x)
    m = len(paths)
    g, tokens = join_instance(build_graph("complete", len(f)), f, m)
    lists = [set(range(1, fi + 1)) for fi in f]
    lists += [set(encode_path(p, x)) for p in paths]
    return g, tokens, ListAssignment(lists)
