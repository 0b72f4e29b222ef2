import pytest

from branchwidth.bdtree.tree import DecTree, width
from branchwidth.exceptions import EmptySubset, TooLarge
from branchwidth.oracle import TreeIterator, brute_branchwidth, brute_fullset


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 1), (3, 1), (4, 3), (5, 15), (8, 10395)])
def test_tree_count(n, expected):
    assert len(TreeIterator(n)) == expected


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_iteration_matches_the_count(n):
    trees = list(TreeIterator(n))
    assert len(trees) == len(TreeIterator(n))
    assert len({tuple(t.edges) for t in trees}) == len(trees)
    for t in trees:
        t.check()
        assert t.parts == frozenset(range(n))


def test_no_trees_without_parts():
    with pytest.raises(EmptySubset):
        TreeIterator(0)


@pytest.mark.parametrize("fixture, expected", [("three_lines", 1), ("u24", 2), ("k4_graphic", 2), ("independent_lines", 0)])
def test_brute_branchwidth(request, fixture, expected):
    a = request.getfixturevalue(fixture)
    bw, t = brute_branchwidth(a)
    assert bw == expected
    assert width(t, a)[0] == expected


def test_brute_branchwidth_cap(k4_graphic):
    with pytest.raises(TooLarge):
        brute_branchwidth(k4_graphic, max_parts=5)


def test_brute_fullset_is_empty_below_the_width(three_lines):
    base = DecTree.from_postorder("1 2 * 3 *")
    assert brute_fullset(three_lines, base, base.root, 0) == set()
    assert brute_fullset(three_lines, base, base.root, 1)


def test_brute_fullset_cap(u24):
    base = DecTree.from_postorder("1 2 * 3 * 4 *")
    with pytest.raises(TooLarge):
        brute_fullset(u24, base, base.root, 2, max_parts=3)
