"""Bound vectors, dominated lattice paths and three ways of counting them.

A vector ``x = (x_1, ..., x_n)`` bounds the horizontal coordinate of a
monotone lattice path at every height below the top: a vertex ``(i, j)`` with
``j < n`` must satisfy ``i <= x_{j+1}``.  The paths of interest start at the
origin and end at ``(x_n, n)``; ``psi(x)`` is their number.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

__all__ = [
    "XVector",
    "LatticePath",
    "PathCapExceeded",
    "x_of_f",
    "reduce",
    "branch",
    "psi",
    "psi_matrix",
    "encodes_dominated",
    "dp_grid",
    "binom_plus",
    "bareiss_det",
    "enumerate_paths",
    "encode_path",
    "decode_path",
    "catalan",
    "METHODS",
]

METHODS = ("dp", "rec", "det", "auto")
DEFAULT_PATH_CAP = 10**6


class PathCapExceeded(RuntimeError):
    """Raised when a path enumeration would exceed the configured cap."""


def _path_cap() -> int:
    return int(os.environ.get("DYCKPAINT_PATH_CAP", DEFAULT_PATH_CAP))


@dataclass(frozen=True)
class XVector:
    entries: tuple[int, ...]

    def __init__(self, entries: Iterable[int] = ()):
        object.__setattr__(self, "entries", tuple(int(e) for e in entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __le__(self, other: "XVector") -> bool:
        """Entrywise comparison; only defined for equal lengths."""
        if len(self) != len(other):
            raise ValueError("entrywise comparison needs equal lengths")
        return all(a <= b for a, b in zip(self, other))

    def __str__(self) -> str:
        return ",".join(map(str, self.entries))

    @classmethod
    def parse(cls, text: str) -> "XVector":
        text = text.strip().strip("()[]")
        if not text:
            return cls(())
        try:
            return cls(int(t) for t in text.split(","))
        except ValueError:
            raise ValueError(f"malformed integer vector: {text!r}") from None

    def is_reduced(self) -> bool:
        return all(a <= b for a, b in zip(self.entries, self.entries[1:]))

    def reduce(self) -> "XVector":
        return reduce(self)

    def to_json(self) -> list[int]:
        return list(self.entries)


def _as_xvector(x) -> XVector:
    return x if isinstance(x, XVector) else XVector(x)


@dataclass(frozen=True)
class LatticePath:
    """A monotone path from the origin written over ``R`` (x+1) and ``U`` (y+1)."""

    steps: str

    def __post_init__(self):
        if set(self.steps) - {"R", "U"}:
            raise ValueError(f"path steps must be over {{R, U}}: {self.steps!r}")

    def __str__(self) -> str:
        return self.steps

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def end(self) -> tuple[int, int]:
        return self.steps.count("R"), self.steps.count("U")

    def vertices(self) -> list[tuple[int, int]]:
        a = b = 0
        out = [(0, 0)]
        for s in self.steps:
            if s == "R":
                a += 1
            else:
                b += 1
            out.append((a, b))
        return out

    def dominated_by(self, x) -> bool:
        x = _as_xvector(x)
        n = len(x)
        if n == 0:
            return self.steps == ""
        if self.end != (x[-1], n):
            return False
        return all(i <= x[j] for i, j in self.vertices() if j < n)

    def encode(self) -> frozenset[int]:
        return frozenset(k for k, s in enumerate(self.steps, start=1) if s == "U")


def x_of_f(f: Sequence[int]) -> XVector:
    """``x_i = f_i - i`` for a weakly increasing token sequence."""
    f = [int(v) for v in f]
    if any(a > b for a, b in zip(f, f[1:])):
        raise ValueError(f"token values must be weakly increasing, got {f}")
    return XVector(v - i for i, v in enumerate(f, start=1))


def reduce(x) -> XVector:
    """The largest weakly increasing vector that is entrywise <= x."""
    x = _as_xvector(x)
    out = list(x.entries)
    for i in range(len(out) - 2, -1, -1):
        out[i] = min(out[i], out[i + 1])
    return XVector(out)


def branch(x, i: int) -> tuple[XVector, XVector]:
    """Return ``(x->i, x^i)``: entries i..n decremented, and entry i deleted (1-based)."""
    x = _as_xvector(x)
    if not 1 <= i <= len(x):
        raise IndexError(f"branch index {i} outside 1..{len(x)}")
    e = x.entries
    right = e[: i - 1] + tuple(v - 1 for v in e[i - 1 :])
    up = e[: i - 1] + e[i:]
    return XVector(right), XVector(up)


def binom_plus(y: int, z: int) -> int:
    if z < 0 or y < z:
        return 0
    return math.comb(y, z)


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("catalan index must be nonnegative")
    return math.comb(2 * n, n) // (n + 1)


# -- dynamic programming ------------------------------------------------------


def dp_grid(x) -> list[list[int]]:
    """Counts of dominated paths ending at each reachable lattice point.

    ``grid[b][a]`` is the number of paths from the origin to ``(a, b)`` that
    respect the bound of every row they pass through.  Row ``b < n`` spans
    ``0..x_{b+1}``; the top row spans ``0..x_n``.  Rows with a negative bound
    are empty.
    """
    x = _as_xvector(x)
    n = len(x)
    grid: list[list[int]] = []
    for b in range(n + 1):
        width = x[b] if b < n else (x[-1] if n else 0)
        row = [0] * (width + 1) if width >= 0 else []
        below = grid[b - 1] if b else None
        for a in range(len(row)):
            if a == 0 and b == 0:
                row[a] = 1
                continue
            left = row[a - 1] if a else 0
            down = below[a] if below is not None and a < len(below) else 0
            row[a] = left + down
        grid.append(row)
    return grid


def _psi_dp(x: XVector) -> int:
    n = len(x)
    if n == 0:
        return 1
    top = dp_grid(x)[n]
    return top[x[-1]] if x[-1] >= 0 and top else 0


# -- branch recursion ---------------------------------------------------------


@lru_cache(maxsize=None)
def _psi_rec_reduced(e: tuple[int, ...]) -> int:
    # e is reduced and nonnegative
    while e and e[0] == 0:
        # first step is forced upward
        e = e[1:]
    if not e:
        return 1
    right = tuple(v - 1 for v in e)
    return _psi_rec_reduced(right) + _psi_rec_reduced(e[1:])


def _psi_rec(x: XVector) -> int:
    r = reduce(x).entries
    if r and r[0] < 0:
        return 0
    return _psi_rec_reduced(r)


# -- determinant --------------------------------------------------------------


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def psi_matrix(x) -> list[list[int]]:
    """The binomial matrix ``a_ij = binom_plus(x_i + 1, j - i + 1)`` of a reduced vector."""
    e = _as_xvector(x).entries
    n = len(e)
    return [[binom_plus(e[i] + 1, j - i + 1) for j in range(n)] for i in range(n)]


def _psi_det(x: XVector) -> int:
    r = reduce(x)
    if len(r) and r[0] < 0:
        return 0
    return bareiss_det(psi_matrix(r))


def psi(x, method: str = "auto") -> int:
    """Number of x-dominated lattice paths from the origin to ``(x_n, n)``."""
    x = _as_xvector(x)
    if method in ("dp", "auto"):
        return _psi_dp(x)
    if method == "rec":
        return _psi_rec(x)
    if method == "det":
        return _psi_det(x)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


# -- enumeration and encoding -------------------------------------------------


def enumerate_paths(x, cap: int | None = None) -> list[LatticePath]:
    """All x-dominated paths in lexicographic step order, with ``U`` before ``R``."""
    x = _as_xvector(x)
    cap = _path_cap() if cap is None else cap
    count = psi(x, "dp")
    if count > cap:
        raise PathCapExceeded(f"{count} paths exceed enumeration cap {cap}")
    n = len(x)
    if n == 0:
        return [LatticePath("")]
    if count == 0:
        return []
    target = x[-1]
    out: list[LatticePath] = []
    steps: list[str] = []

    def walk(a: int, b: int) -> None:
        if b == n:
            if a == target:
                out.append(LatticePath("".join(steps)))
            elif a < target:
                steps.append("R")
                walk(a + 1, b)
                steps.pop()
            return
        if b + 1 == n or a <= x[b + 1]:
            steps.append("U")
            walk(a, b + 1)
            steps.pop()
        if a + 1 <= x[b]:
            steps.append("R")
            walk(a + 1, b)
            steps.pop()

    if x[0] >= 0:
        walk(0, 0)
    return out


def encodes_dominated(s: Iterable[int], x) -> bool:
    """Membership test for P(x) read off the up-step positions alone.

    With 1-based positions ``i_0 < ... < i_{n-1}`` of the up-steps, ``i_j - 1 - j``
    right-steps precede the (j+1)-th up-step, so the path is dominated iff
    ``i_j <= x_{j+1} + j + 1`` for every j and the total length is ``x_n + n``.
    The total length is not recoverable from ``s``; callers supply it by
    comparing against the path itself.
    """
    x = _as_xvector(x)
    pos = sorted(s)
    if len(pos) != len(x):
        return False
    return all(p <= x[j] + j + 1 for j, p in enumerate(pos))


def encode_path(p: LatticePath, x=None) -> frozenset[int]:
    """Up-step positions of ``p``; optionally cross-check against ``x``."""
    s = p.encode()
    if x is not None:
        x = _as_xvector(x)
        length_ok = len(p) == (x[-1] + len(x) if len(x) else 0)
        if (encodes_dominated(s, x) and length_ok) != p.dominated_by(x):
            raise AssertionError(f"encoding characterization disagrees for {p} and {x}")
    return s


def decode_path(s: Iterable[int], total: int) -> LatticePath:
    up = set(s)
    if up and (min(up) < 1 or max(up) > total):
        raise ValueError(f"positions {sorted(up)} outside 1..{total}")
    return LatticePath("".join("U" if k in up else "R" for k in range(1, total + 1)))
