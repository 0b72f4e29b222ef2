from itertools import combinations

import pytest
from conftest import make_arrangement, random_arrangement

from branchwidth.arrangement import Arrangement, cut_dim, preprocess
from branchwidth.exceptions import IndexOutOfRange, InputFormatError, NotRREF, RejectedAboveK
from branchwidth.field import GF2
from branchwidth.linalg import Mat, Subspace, subspace_intersect
from branchwidth.oracle import brute_branchwidth


def test_from_matrix_row_reduces_and_cuts_parts():
    a = make_arrangement([[1, 1, 0], [1, 0, 1], [0, 1, 1]], [2, 1])
    assert a.r == 2
    assert a.parts == ((0, 1), (2,))
    assert a.part_sizes == (2, 1)
    assert a.pivots == (0, 1)


def test_from_matrix_rejects_bad_part_sizes():
    with pytest.raises(InputFormatError):
        make_arrangement([[1, 0, 1]], [1, 1])


def test_constructor_requires_rref():
    with pytest.raises(NotRREF):
        Arrangement(Mat([[1, 1], [0, 1]], GF2), ((0,), (1,)), (0, 1))


def test_part_lookups(three_lines):
    assert three_lines.n == 3
    assert three_lines.part_dim(2) == 1
    assert three_lines.span([0, 1]) == Subspace.full(2, GF2)
    assert three_lines.columns([2, 0]) == (0, 2)
    with pytest.raises(IndexOutOfRange):
        three_lines.columns([3])


def test_sub_arrangement_reduces_the_chosen_parts(three_lines):
    sub = three_lines.sub_arrangement([2, 0])
    assert sub.n == 2
    assert sub.r == 2
    assert sub.part_dim(0) == 1
    with pytest.raises(IndexOutOfRange):
        three_lines.sub_arrangement([0, 5])


def test_preprocess_rejects_a_part_meeting_the_rest_too_much(three_lines):
    with pytest.raises(RejectedAboveK) as info:
        preprocess(three_lines.mat, three_lines.part_sizes, 0)
    assert info.value.index == 0
    assert info.value.reason == "part-dimension"


def test_preprocess_strips_parts_that_meet_nothing():
    mat = Mat([[1, 1, 0], [0, 0, 1]], GF2)
    pre = preprocess(mat, [1, 1, 1], 1)
    assert pre.kept == (0, 1)
    assert pre.zero_parts == (2,)
    assert pre.n_input == 3
    assert pre.arrangement.n == 2
    assert pre.arrangement.r == 1


def test_preprocess_of_independent_lines_keeps_nothing(independent_lines):
    pre = preprocess(independent_lines.mat, independent_lines.part_sizes, 0)
    assert pre.kept == ()
    assert pre.zero_parts == (0, 1, 2, 3)
    assert pre.arrangement.n == 0


def test_preprocess_keeps_cut_dimensions(k4_graphic):
    pre = preprocess(k4_graphic.mat, k4_graphic.part_sizes, 3)
    a = pre.arrangement
    assert pre.kept == tuple(range(6))
    for subset in ([0], [0, 1], [0, 5], [1, 2, 3]):
        rest = [i for i in range(6) if i not in subset]
        before = k4_graphic.span(subset).dim + k4_graphic.span(rest).dim - k4_graphic.r
        after = a.span(subset).dim + a.span(rest).dim - a.r
        assert before == after


@pytest.mark.parametrize("seed", range(8))
def test_cut_dim_matches_subspace_intersection(seed):
    a = random_arrangement(seed, p=3)
    for subset in ([0], [0, 2], [1, 3, 4]):
        rest = [i for i in range(a.n) if i not in subset]
        expected = subspace_intersect(a.span(subset), a.span(rest))
        dim, basis = cut_dim(a, subset)
        assert dim == expected.dim
        assert Subspace.span(basis, a.spec, a.r) == expected


def _subsets(n: int):
    return [frozenset(c) for size in range(n + 1) for c in combinations(range(n), size)]


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("seed", range(4))
def test_cut_dim_is_symmetric_and_submodular(p, seed):
    a = random_arrangement(seed, p=p, r=4, n=4, max_dim=2)
    everything = frozenset(range(a.n))
    f = {s: cut_dim(a, s)[0] for s in _subsets(a.n)}
    for x in f:
        assert f[x] == f[everything - x]
        for y in f:
            assert f[x] + f[y] >= f[x | y] + f[x & y]


@pytest.mark.parametrize("seed", range(8))
def test_preprocess_bounds(seed):
    a = random_arrangement(seed, p=2, r=6, n=5, max_dim=3)
    for k in range(1, 4):
        try:
            pre = preprocess(a.mat, a.part_sizes, k)
        except RejectedAboveK:
            continue
        b = pre.arrangement
        assert b.r <= b.m <= k * a.n
        for j, i in enumerate(pre.kept):
            assert b.part_sizes[j] <= min(a.part_sizes[i], k)


@pytest.mark.slow
@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("seed", range(5))
def test_preprocess_keeps_the_decision(p, seed):
    a = random_arrangement(seed, p=p, r=4, n=6, max_dim=2)
    bw, _ = brute_branchwidth(a)
    for k in range(4):
        try:
            pre = preprocess(a.mat, a.part_sizes, k)
        except RejectedAboveK:
            assert bw > k
            continue
        reduced = brute_branchwidth(pre.arrangement)[0] if pre.arrangement.n else 0
        assert (reduced <= k) == (bw <= k)
