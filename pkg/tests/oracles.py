"""Brute-force reference implementations used only by the tests.

None of these share code paths with the package beyond the graph type.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb


def brute_paths(x):
    """All R/U words with the right endpoint that respect every row bound."""
    x = tuple(x)
    n = len(x)
    if n == 0:
        return [""]
    if x[-1] < 0:
        return []
    length = x[-1] + n
    out = []
    for ups in combinations(range(length), n):
        word = ["R"] * length
        for k in ups:
            word[k] = "U"
        a = b = 0
        ok = a <= x[0]
        for s in word:
            if s == "R":
                a += 1
            else:
                b += 1
            if b < n and a > x[b]:
                ok = False
                break
        if ok:
            out.append("".join(word))
    return out


def cofactor_det(m):
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    return sum(
        (-1) ** j * m[0][j] * cofactor_det([row[:j] + row[j + 1 :] for row in m[1:]])
        for j in range(n)
        if m[0][j]
    )


def catalan_closed_form(n):
    return Fraction(1, n + 1) * comb(2 * n, n)


def brute_dyck_count(n):
    """Words with n U and n R never having more R than U in any prefix."""
    count = 0
    for ups in combinations(range(2 * n), n):
        s = set(ups)
        h = 0
        for k in range(2 * n):
            h += 1 if k in s else -1
            if h < 0:
                break
        else:
            count += 1
    return count


def naive_paintable(graph, tokens):
    """Straight recursion over every marked set and every independent reply."""
    n = graph.n_vertices
    edges = graph.edges

    def independent(vs):
        return not any((min(u, v), max(u, v)) in edges for u, v in combinations(vs, 2))

    @lru_cache(maxsize=None)
    def wins(alive, toks):
        if not alive:
            return True
        if any(toks[v] <= 0 for v in alive):
            return False
        for k in range(1, len(alive) + 1):
            for marked in combinations(alive, k):
                after = list(toks)
                for v in marked:
                    after[v] -= 1
                replies = (
                    i
                    for r in range(len(marked), -1, -1)
                    for i in combinations(marked, r)
                    if independent(i)
                )
                if not any(
                    wins(tuple(v for v in alive if v not in i), tuple(after))
                    for i in replies
                ):
                    return False
        return True

    return wins(tuple(range(n)), tuple(tokens))


def naive_choosable(graph, f):
    """Every f-list assignment over ``sum(f)`` colours admits a proper colouring.

    The first vertex's list is fixed to ``{0..f0-1}``, which loses nothing
    because colour names are arbitrary.
    """
    n = graph.n_vertices
    if n == 0:
        return True
    universe = range(sum(f))
    choices = [list(combinations(universe, k)) for k in f]
    choices[0] = [tuple(range(f[0]))]
    adj = [[u for u in range(n) if graph.has_edge(u, v)] for v in range(n)]

    def colourable(lists):
        col = [None] * n

        def go(v):
            if v == n:
                return True
            for c in lists[v]:
                if all(col[u] != c for u in adj[v] if u < v):
                    col[v] = c
                    if go(v + 1):
                        return True
            col[v] = None
            return False

        return go(0)

    return all(colourable(lists) for lists in product(*choices))


def x_of(f):
    return tuple(v - i for i, v in enumerate(f, start=1))
