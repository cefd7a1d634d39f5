"""Small labelled graphs, token maps, joins and disjoint unions."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "SimpleGraph",
    "TokenMap",
    "build_graph",
    "join",
    "disjoint_union",
    "join_instance",
    "union_instance",
    "sort_tokens",
    "Instance",
    "load_instance",
]


@dataclass(frozen=True)
class SimpleGraph:
    n_vertices: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, n_vertices: int, edges: Iterable[Sequence[int]] = ()):
        if n_vertices < 0:
            raise ValueError("vertex count must be nonnegative")
        norm = set()
        for e in edges:
            if len(e) != 2:
                raise ValueError(f"edge must have two endpoints: {e!r}")
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise ValueError(f"edge {(u, v)} outside vertex range 0..{n_vertices - 1}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "n_vertices", n_vertices)
        object.__setattr__(self, "edges", frozenset(norm))

    def __len__(self) -> int:
        return self.n_vertices

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[int]:
        """Neighbourhoods as bitmasks."""
        adj = [0] * self.n_vertices
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> list[int]:
        return [bin(a).count("1") for a in self.adjacency()]

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return not any(self.has_edge(u, v) for u, v in combinations(vs, 2))

    def induced(self, keep: Sequence[int]) -> "SimpleGraph":
        """Subgraph on ``keep``, relabelled 0..k-1 in the given order."""
        index = {v: i for i, v in enumerate(keep)}
        return SimpleGraph(
            len(keep),
            [(index[u], index[v]) for u, v in self.edges if u in index and v in index],
        )

    def remove(self, vertices: Iterable[int]) -> "SimpleGraph":
        gone = set(vertices)
        return self.induced([v for v in range(self.n_vertices) if v not in gone])

    def to_json(self) -> dict:
        return {"kind": "explicit", "n": self.n_vertices, "edges": sorted(map(list, self.edges))}


TokenMap = tuple  # positive ints, one per vertex


def _check_tokens(f: Sequence[int], positive: bool = True) -> tuple[int, ...]:
    f = tuple(int(v) for v in f)
    if positive and any(v < 1 for v in f):
        raise ValueError(f"token values must be positive, got {f}")
    return f


def sort_tokens(f: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Sort a token map ascending; also return ``perm`` with ``sorted[k] == f[perm[k]]``."""
    perm = tuple(sorted(range(len(f)), key=lambda i: (f[i], i)))
    return tuple(f[i] for i in perm), perm


def build_graph(kind: str, n: int, edges: Iterable[Sequence[int]] | None = None) -> SimpleGraph:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if kind == "complete":
        return SimpleGraph(n, combinations(range(n), 2))
    if kind == "edgeless":
        return SimpleGraph(n)
    if kind == "path":
        return SimpleGraph(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "explicit":
        return SimpleGraph(n, edges or ())
    raise ValueError(f"unknown graph kind {kind!r}")


def join(g: SimpleGraph, h: SimpleGraph) -> SimpleGraph:
    """Vertices of ``h`` follow those of ``g``; every g-h pair becomes an edge."""
    off = g.n_vertices
    edges = list(g.edges)
    edges += [(u + off, v + off) for u, v in h.edges]
    edges += [(u, off + v) for u in range(off) for v in range(h.n_vertices)]
    return SimpleGraph(off + h.n_vertices, edges)


def disjoint_union(*graphs: SimpleGraph) -> SimpleGraph:
    edges = []
    off = 0
    for g in graphs:
        edges += [(u + off, v + off) for u, v in g.edges]
        off += g.n_vertices
    return SimpleGraph(off, edges)


def join_instance(g: SimpleGraph, f: Sequence[int], m: int) -> tuple[SimpleGraph, tuple[int, ...]]:
    """``G`` joined with ``m`` independent vertices, each given ``|V(G)|`` tokens."""
    f = _check_tokens(f, positive=False)
    if len(f) != g.n_vertices:
        raise ValueError(f"token map has {len(f)} entries for {g.n_vertices} vertices")
    if m < 0:
        raise ValueError("m must be nonnegative")
    return join(g, build_graph("edgeless", m)), f + (g.n_vertices,) * m


def union_instance(parts: Sequence[tuple[SimpleGraph, Sequence[int]]]) -> tuple[SimpleGraph, tuple[int, ...]]:
    if not parts:
        raise ValueError("need at least one part")
    for g, f in parts:
        if len(f) != g.n_vertices:
            raise ValueError(f"token map has {len(f)} entries for {g.n_vertices} vertices")
    g = disjoint_union(*(g for g, _ in parts))
    f = tuple(int(v) for _, fs in parts for v in fs)
    return g, f


@dataclass(frozen=True)
class Instance:
    """A JSON instance: base graph, its token map and the join size ``m``."""

    graph: SimpleGraph
    f: tuple[int, ...]
    m: int = 0

    def __post_init__(self):
        if len(self.f) != self.graph.n_vertices:
            raise ValueError(f"token map has {len(self.f)} entries for {self.graph.n_vertices} vertices")
        _check_tokens(self.f)
        if self.m < 0:
            raise ValueError("m must be nonnegative")

    @classmethod
    def from_dict(cls, d: dict) -> "Instance":
        try:
            gd = d["graph"]
            g = build_graph(gd["kind"], int(gd["n"]), gd.get("edges"))
            return cls(g, tuple(int(v) for v in d["f"]), int(d.get("m", 0)))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed instance: {exc}") from None

    def to_dict(self) -> dict:
        return {"graph": self.graph.to_json(), "f": list(self.f), "m": self.m}

    def joined(self) -> tuple[SimpleGraph, tuple[int, ...]]:
        return join_instance(self.graph, self.f, self.m)


def load_instance(path: str) -> Instance:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: invalid JSON ({exc})") from None
    return Instance.from_dict(data)
