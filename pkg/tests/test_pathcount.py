from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from dyckpaint.pathcount import (
    LatticePath,
    PathCapExceeded,
    XVector,
    bareiss_det,
    binom_plus,
    branch,
    catalan,
    decode_path,
    dp_grid,
    encode_path,
    encodes_dominated,
    enumerate_paths,
    psi,
    psi_matrix,
    reduce,
    x_of_f,
)

from oracles import brute_dyck_count, brute_paths, catalan_closed_form, cofactor_det

METHODS = ("dp", "rec", "det")

vectors = st.lists(st.integers(-1, 10), min_size=0, max_size=8)
small_vectors = st.lists(st.integers(0, 5), min_size=1, max_size=5)
reduced_vectors = st.lists(st.integers(0, 6), min_size=1, max_size=6).map(sorted)


# -- x(f), reduce, branch ---------------------------------------------------


def test_x_of_f_examples():
    assert x_of_f((3, 6, 6, 9)) == XVector((2, 4, 3, 5))
    assert x_of_f((1, 2, 3, 4)) == XVector((0, 0, 0, 0))
    assert x_of_f((2,)) == XVector((1,))


def test_x_of_f_rejects_unsorted():
    with pytest.raises(ValueError):
        x_of_f((3, 1))


def test_reduce_examples():
    assert reduce((5, 10, 7, 13, 12, 16, 21, 18, 24)) == XVector((5, 7, 7, 12, 12, 16, 18, 18, 24))
    assert reduce((2, 4, 3, 5)) == XVector((2, 3, 3, 5))
    assert reduce((0, 1, 2)) == XVector((0, 1, 2))
    assert reduce(()) == XVector(())


@given(vectors)
def test_reduce_is_maximal_reduced_minorant(x):
    r = reduce(x)
    assert r.is_reduced()
    assert r <= XVector(x)
    assert reduce(r) == r
    # bumping any entry breaks either domination or monotonicity
    for i in range(len(x)):
        bumped = list(r)
        bumped[i] += 1
        b = XVector(bumped)
        assert not (b <= XVector(x) and b.is_reduced())


def test_branch_examples():
    right, up = branch((2, 3, 3, 5), 1)
    assert right == XVector((1, 2, 2, 4))
    assert up == XVector((3, 3, 5))
    right, up = branch((0, 1, 2), 3)
    assert right == XVector((0, 1, 1))
    assert up == XVector((0, 1))


def test_branch_index_out_of_range():
    with pytest.raises(IndexError):
        branch((1, 2), 0)
    with pytest.raises(IndexError):
        branch((1, 2), 3)


def test_xvector_comparison_needs_equal_length():
    with pytest.raises(ValueError):
        XVector((1, 2)) <= XVector((1,))


def test_xvector_parse_and_json():
    x = XVector.parse("2,-1,3")
    assert list(x) == [2, -1, 3]
    assert x.to_json() == [2, -1, 3]
    assert XVector.parse("") == XVector(())
    with pytest.raises(ValueError):
        XVector.parse("1,a")


# -- psi ---------------------------------------------------------------------


@pytest.mark.parametrize("method", METHODS)
def test_psi_examples(method):
    assert psi((2, 3, 3, 5), method) == 72
    assert psi((0, 1, 2, 3), method) == 14
    assert psi((), method) == 1
    assert psi((-1,), method) == 0
    assert psi((0, 1), method) == 2
    assert psi((2, 4, 3, 5), method) == 72


def test_psi_rejects_unknown_method():
    with pytest.raises(ValueError):
        psi((1,), "magic")


def test_dp_grid_interior_values():
    grid = dp_grid((2, 3, 3, 5))
    assert grid[3][3] == 19
    assert grid[4][4] == 53
    assert grid[4][5] == 72


def test_psi_matrix_example():
    assert psi_matrix((2, 3, 3, 5)) == [[3, 3, 1, 0], [1, 4, 6, 4], [0, 1, 4, 6], [0, 0, 1, 6]]


@given(vectors)
def test_methods_agree(x):
    values = {psi(x, m) for m in METHODS}
    assert len(values) == 1


@given(small_vectors)
def test_psi_counts_brute_force_paths(x):
    assert psi(x) == len(brute_paths(x))


@given(small_vectors)
def test_enumerate_paths_matches_brute_force(x):
    got = [str(p) for p in enumerate_paths(x)]
    assert sorted(got) == sorted(brute_paths(x))
    assert len(set(got)) == len(got)
    assert all(LatticePath(s).dominated_by(x) for s in got)


@given(vectors)
def test_reduction_preserves_psi(x):
    assert psi(x) == psi(reduce(x))


@given(reduced_vectors, st.data())
def test_branch_identity(x, data):
    i = data.draw(st.integers(1, len(x)))
    right, up = branch(x, i)
    if x[i - 1] >= 1:
        assert psi(x) == psi(right) + psi(up)


@given(vectors, st.data())
def test_psi_monotone(x, data):
    if not x:
        return
    i = data.draw(st.integers(0, len(x) - 1))
    y = list(x)
    y[i] += 1
    assert psi(y) >= psi(x)


@pytest.mark.parametrize("n", range(15))
def test_catalan_staircase(n):
    assert psi(tuple(range(n))) == catalan_closed_form(n) == catalan(n)


@pytest.mark.parametrize("n", range(9))
def test_catalan_matches_dyck_count(n):
    assert catalan(n) == brute_dyck_count(n)


def test_binom_plus():
    assert binom_plus(5, 2) == 10
    assert binom_plus(3, 0) == 1
    assert binom_plus(3, -1) == 0
    assert binom_plus(-1, 0) == 0
    assert binom_plus(2, 3) == 0


# -- determinants ------------------------------------------------------------


square = st.integers(0, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n)
)


@given(square)
def test_bareiss_matches_cofactor(m):
    assert bareiss_det(m) == cofactor_det(m)


@settings(max_examples=40)
@given(st.integers(5, 7).flatmap(
    lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n), min_size=n, max_size=n)
))
def test_bareiss_matches_sympy(m):
    assert bareiss_det(m) == sympy.Matrix(m).det()


def test_bareiss_pivoting():
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[0, 0], [1, 1]]) == 0
    assert bareiss_det([]) == 1


# -- paths and encodings -----------------------------------------------------


def test_enumerate_paths_order():
    assert [str(p) for p in enumerate_paths((0, 1))] == ["UUR", "URU"]
    assert [str(p) for p in enumerate_paths((-1,))] == []
    assert [str(p) for p in enumerate_paths(())] == [""]


def test_enumerate_paths_cap():
    with pytest.raises(PathCapExceeded):
        enumerate_paths((2, 3, 3, 5), cap=10)
    assert len(enumerate_paths((2, 3, 3, 5), cap=72)) == 72


def test_encode_examples():
    assert encode_path(LatticePath("UUR")) == frozenset({1, 2})
    assert encode_path(LatticePath("URU")) == frozenset({1, 3})
    assert encode_path(LatticePath("RRUU")) == frozenset({3, 4})


def test_lattice_path_geometry():
    p = LatticePath("RUR")
    assert p.end == (2, 1)
    assert p.vertices() == [(0, 0), (1, 0), (1, 1), (2, 1)]
    with pytest.raises(ValueError):
        LatticePath("RXU")


@given(small_vectors)
def test_encoding_characterises_domination(x):
    x = tuple(x)
    n = len(x)
    if x[-1] < 0:
        return
    total = x[-1] + n
    dominated = {frozenset(encode_path(p)) for p in enumerate_paths(x)}
    for s in map(frozenset, combinations(range(1, total + 1), n)):
        assert encodes_dominated(s, x) == (s in dominated)


@given(small_vectors)
def test_encode_decode_round_trip(x):
    total = (x[-1] + len(x)) if x[-1] >= 0 else 0
    for p in enumerate_paths(x):
        s = encode_path(p, x)
        assert decode_path(s, total) == p
