import numpy as np
import pytest
from conftest import make_arrangement, random_arrangement

from branchwidth.bdtree.namus import canonical_namu
from branchwidth.bdtree.tree import DecTree
from branchwidth.exceptions import AmbientMismatch, NotSubspace, NotTrimOf, ResourceExceeded
from branchwidth.linalg import Subspace, subspace_intersect
from branchwidth.namu import (
    BNamu,
    compactify,
    compactify_with_paths,
    compress_step,
    coordinatize,
    enumerate_sums,
    find_compressions,
    is_tle,
    is_typical,
    ksafe_extension_check,
    project,
    sum_size,
    tle,
    transform,
    trim,
    truncate,
    typical,
    typical_sequences,
)
from branchwidth.oracle import TreeIterator


def full_namu(t: DecTree, a) -> BNamu:
    return canonical_namu(t, a, Subspace.full(a.r, a.spec))


def star() -> DecTree:
    return next(iter(TreeIterator(3)))


# typical sequences ------------------------------------------------------------


@pytest.mark.parametrize(
    "seq, expected",
    [
        ((1, 2, 5, 3, 4, 2, 4, 4), (1, 5, 2, 4)),
        ((3, 3, 3), (3,)),
        ((1, 2, 3, 4), (1, 4)),
        ((2, 0, 2), (2, 0, 2)),
        ((), ()),
    ],
)
def test_typical(seq, expected):
    assert typical(seq) == expected


def test_typical_is_idempotent():
    s = typical((0, 3, 1, 2, 1, 3, 0, 2))
    assert is_typical(s)
    assert typical(s) == s


@pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
def test_typical_sequence_bounds(k):
    sequences = list(typical_sequences(k))
    assert len(sequences) == len(set(sequences))
    assert len(sequences) <= (8 / 3) * 4 ** k
    assert all(len(s) <= 2 * k + 1 for s in sequences)
    assert all(is_typical(s) for s in sequences)


def test_typical_sequences_over_one_bit():
    assert set(typical_sequences(1)) == {(0,), (1,), (0, 1), (1, 0), (0, 1, 0), (1, 0, 1)}


# comparison -------------------------------------------------------------------


def test_domination_is_reflexive(u24):
    for t in list(TreeIterator(4)):
        g = full_namu(t, u24)
        assert tle(g, g) is not None


def test_larger_lambda_dominates(three_lines):
    g = full_namu(star(), three_lines)
    u, v = g.edges[0]
    bigger = BNamu.build(g.adjacency, g.alpha, {**g.lam, (u, v): g.lam[(u, v)] + 1}, g.universe, g.ambient)
    assert is_tle(g, bigger)
    assert not is_tle(bigger, g)


def test_subdivision_does_not_change_the_order(three_lines):
    g = full_namu(star(), three_lines)
    longer, _ = g.subdivide(*g.edges[0])
    assert is_tle(g, longer)
    assert is_tle(longer, g)


def test_different_universes_are_incomparable(three_lines, gf2):
    g = full_namu(star(), three_lines)
    single = BNamu.single_node(Subspace.zero(2, gf2), g.ambient)
    assert tle(g, single) is None
    assert tle(single, g) is None


def test_comparison_needs_the_same_ambient(gf2):
    a = BNamu.single_node(Subspace.zero(2, gf2), Subspace.full(2, gf2))
    b = BNamu.single_node(Subspace.zero(3, gf2), Subspace.full(3, gf2))
    with pytest.raises(AmbientMismatch):
        tle(a, b)


# trimming and compactification -------------------------------------------------


def test_compactify_removes_subdivisions(three_lines):
    g = full_namu(star(), three_lines)
    longer, w = g.subdivide(*g.edges[0])
    longer, _ = longer.subdivide(w, longer.neighbors(w)[0])
    assert compactify(longer) == compactify(g)


def test_compress_steps_shrink_a_subdivided_namu(three_lines):
    g = full_namu(star(), three_lines)
    longer, _ = g.subdivide(*g.edges[0])
    options = find_compressions(longer)
    assert options
    for path in options:
        assert compress_step(longer, path).size < longer.size


@pytest.mark.parametrize("order", [[0], [1], [1, 0], [2, 1, 0]])
def test_compression_order_does_not_matter(three_lines, order):
    g = full_namu(star(), three_lines)
    longer, w = g.subdivide(*g.edges[0])
    longer, _ = longer.subdivide(w, longer.neighbors(w)[0])
    compact, paths = compactify_with_paths(trim(longer), order)
    assert compact == compactify(g)
    assert all(paths[(u, v)][0] == u and paths[(u, v)][-1] == v for u, v in paths)


def test_compactify_is_idempotent(u24):
    for t in list(TreeIterator(4)):
        g = compactify(full_namu(t, u24))
        assert compactify(g) == g


def test_trim_collapses_degenerate_namus(three_lines):
    # inside span{e1} both ends of the e1 leaf edge see the same space
    g = canonical_namu(star(), three_lines, Subspace.coordinate(2, [0], three_lines.spec))
    assert trim(g).is_single()
    assert trim(g).universe == g.universe


def test_trim_leaves_a_trimmed_namu_alone(three_lines):
    g = full_namu(star(), three_lines)
    assert trim(g).same_as(g)


def test_ksafe_check_needs_the_trim(three_lines, gf2):
    g = full_namu(star(), three_lines)
    wrong = BNamu.single_node(Subspace.zero(2, gf2), g.ambient)
    with pytest.raises(NotTrimOf):
        ksafe_extension_check(g, wrong, 1)
    assert ksafe_extension_check(g, trim(g), 2) is True


def test_dump_lists_every_edge(three_lines):
    g = full_namu(star(), three_lines)
    assert len(g.dump().splitlines()) == 1 + len(g.edges)


# coordinate changes -------------------------------------------------------------


def test_project_onto_the_ambient_space_changes_nothing(u24):
    g = full_namu(next(iter(TreeIterator(4))), u24)
    assert project(g, g.ambient) == g


def test_identity_coordinates_change_nothing(u24):
    g = full_namu(next(iter(TreeIterator(4))), u24)
    eye = np.eye(2, dtype=np.int64)
    assert coordinatize(g, eye) == g
    assert transform(g, eye, g.ambient) == g
    assert truncate(g, 2) == g


def test_coordinatize_needs_the_basis_span(three_lines):
    g = full_namu(star(), three_lines)
    with pytest.raises(NotSubspace):
        coordinatize(g, np.array([[1], [0]]))


def test_truncate_drops_trailing_coordinates(three_lines):
    g = full_namu(star(), three_lines)
    cut = truncate(g, 1)
    assert cut.ambient.dim == 1
    assert cut.universe.ambient_dim == 1
    assert cut.lam == g.lam


# sums ---------------------------------------------------------------------------


@pytest.mark.parametrize("n1, n2, expected", [(1, 1, 2), (1, 2, 4), (2, 1, 4), (2, 2, 6), (4, 3, 9)])
def test_sum_size(n1, n2, expected):
    assert sum_size(n1, n2) == expected


def test_sum_of_two_points_is_an_edge(three_lines):
    full = Subspace.full(2, three_lines.spec)
    a = BNamu.single_node(three_lines.subspace(0), full)
    b = BNamu.single_node(three_lines.subspace(1), full)
    sums = enumerate_sums(a, b)
    assert len(sums) == 1
    g, _ = sums[0]
    assert g.size == 2
    assert g.width == 0
    assert g.universe == full
    assert g == full_namu(DecTree.pair(0, 1), three_lines)


@pytest.mark.parametrize(
    "rows, p",
    [
        ([[1, 0, 1], [0, 1, 1]], 2),
        ([[1, 0, 1], [0, 1, 2]], 3),
        ([[1, 0, 0], [0, 1, 0]], 2),
    ],
)
def test_sums_contain_the_canonical_namu_of_the_joined_tree(rows, p):
    a = make_arrangement(rows, [1, 1, 1], p=p)
    full = Subspace.full(a.r, a.spec)
    left = full_namu(DecTree.pair(0, 1), a)
    right = BNamu.single_node(a.subspace(2), full)
    sums = enumerate_sums(left, right)
    assert all(g.size == sum_size(2, 1) for g, _ in sums)
    assert full_namu(star(), a) in {g for g, _ in sums}
    for g, model in sums:
        assert model.violations(left.adjacency, right.adjacency) == []


def test_sums_respect_the_cap(u24):
    g = full_namu(next(iter(TreeIterator(4))), u24)
    with pytest.raises(ResourceExceeded) as info:
        enumerate_sums(g, g, cap=1)
    assert info.value.cap == 1


def test_sums_need_the_same_ambient(gf2):
    a = BNamu.single_node(Subspace.zero(2, gf2), Subspace.full(2, gf2))
    b = BNamu.single_node(Subspace.zero(1, gf2), Subspace.full(1, gf2))
    with pytest.raises(AmbientMismatch):
        enumerate_sums(a, b)


@pytest.mark.parametrize("k, safe", [(0, False), (1, True), (2, True)])
def test_ksafe_boundary_facing_the_trim(three_lines, k, safe):
    # inside span{e1} the e1 leaf edge is degenerate; the other leaf edges cost 1 from the center, 2 from the leaf
    g = canonical_namu(star(), three_lines, Subspace.coordinate(2, [0], three_lines.spec))
    assert trim(g).is_single()
    assert ksafe_extension_check(g, trim(g), k) is safe


# namu laws ----------------------------------------------------------------------

NAMU_SEEDS = 34


def random_namus(seed: int):
    """Canonical namus of every tree on 5 random lines in GF(2)^3, inside a random B"""
    a = random_arrangement(seed, p=2, r=3, n=5, max_dim=1)
    rng = np.random.default_rng(1000 + seed)
    b = Subspace.span(rng.integers(0, 2, size=(3, int(rng.integers(1, 4)))), a.spec, 3)
    smaller = subspace_intersect(b, Subspace.span(rng.integers(0, 2, size=(3, 2)), a.spec, 3))
    return [canonical_namu(t, a, b) for t in TreeIterator(a.n)], smaller


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(NAMU_SEEDS))
def test_single_namu_laws(seed):
    namus, smaller = random_namus(seed)
    for g in namus:
        compact, trimmed = compactify(g), trim(g)
        assert compactify(compact) == compact
        assert project(g, smaller).width == g.width
        assert trimmed.width <= g.width
        assert is_tle(compact, trimmed)
        assert is_tle(trimmed, compact)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(NAMU_SEEDS))
def test_order_laws(seed):
    namus, smaller = random_namus(seed)
    below = [[is_tle(a, b) for b in namus] for a in namus]
    for i, a in enumerate(namus):
        for j, b in enumerate(namus):
            if not below[i][j]:
                continue
            assert is_tle(trim(a), trim(b))
            assert is_tle(project(a, smaller), project(b, smaller))
            for k in range(4):
                if ksafe_extension_check(b, trim(b), k):
                    assert ksafe_extension_check(a, trim(a), k)
            for h in range(len(namus)):
                if below[j][h]:
                    assert below[i][h]


def _bumped(g: BNamu) -> BNamu:
    u, v = g.edges[0]
    return BNamu.build(g.adjacency, g.alpha, {**g.lam, (u, v): g.lam[(u, v)] + 1}, g.universe, g.ambient)


@pytest.mark.parametrize(
    "rows, p",
    [
        ([[1, 0, 1, 0], [0, 1, 1, 1]], 2),
        ([[1, 0, 1, 1], [0, 1, 1, 2]], 3),
        ([[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]], 2),
    ],
)
def test_sum_laws(rows, p):
    a = make_arrangement(rows, [1, 1, 1, 1], p=p)
    full = Subspace.full(a.r, a.spec)
    firsts = [full_namu(DecTree.pair(0, 1), a)]
    seconds = [BNamu.single_node(a.subspace(2), full), full_namu(DecTree.pair(2, 3), a)]
    for g1 in firsts:
        for g2 in seconds:
            pairs = [(g1, g2), (_bumped(g1), g2)]
            if not g2.is_single():
                pairs.append((g1, _bumped(g2)))
            smaller_sums = [s for s, _ in enumerate_sums(g1, g2)]
            for h1, h2 in pairs:
                for s, _ in enumerate_sums(h1, h2):
                    assert s.size == sum_size(h1.size, h2.size)
                    assert max(h1.width, h2.width) <= s.width
                    assert any(is_tle(small, s) for small in smaller_sums)
