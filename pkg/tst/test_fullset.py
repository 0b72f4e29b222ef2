import numpy as np
import pytest
from conftest import random_arrangement

from branchwidth.bdtree.namus import canonical_namu
from branchwidth.bdtree.tree import DecTree, width
from branchwidth.exceptions import AboveK, EvidenceCorrupt, LabelMismatch, RejectedAboveK
from branchwidth.fullset import (
    CompositionTree,
    Stage,
    antichain,
    backtrack_decomposition,
    compress_step,
    decompose,
    iterative_compression,
    minimum_width,
    run_fullset_dp,
)
from branchwidth.fullset.evidence import Entry, LeafEvidence
from branchwidth.linalg import Mat, Subspace, rank_mod
from branchwidth.namu import BNamu, is_tle
from branchwidth.oracle import TreeIterator, brute_branchwidth, brute_fullset
from branchwidth.transcript import transcript_of
from scripts.benchmark_compression import PARTS, banded_lines

SWEEP_SEEDS = 6
ORACLE_SEEDS = 50


def caterpillar(n: int) -> DecTree:
    return DecTree.from_postorder(" ".join(["1"] + [f"{i} *" for i in range(2, n + 1)]))


def full_run(a, k, base=None, **kwargs):
    base = base if base is not None else caterpillar(a.n)
    return run_fullset_dp(a, k, base, transcript_of(base, a, a.r), **kwargs)


# composition trees ------------------------------------------------------------


def test_composition_tree_shape():
    base = caterpillar(4)
    comp = CompositionTree(base)
    assert len(comp) == 4 + 4 * 3
    assert comp.root == (Stage.COMPARE, base.root)
    position = {key: i for i, key in enumerate(comp.order)}
    for key in comp.order:
        assert all(position[c] < position[key] for c in comp[key].children)


def test_composition_tree_of_one_part():
    comp = CompositionTree(DecTree.single(0))
    assert len(comp) == 1
    assert comp.root == (Stage.LEAF, 0)


def test_join_stage_reads_both_children():
    base = caterpillar(3)
    comp = CompositionTree(base)
    join = comp[(Stage.JOIN, base.root)]
    assert len(join.children) == 2
    assert (Stage.LEAF, base.children(base.root)[1]) in join.children


# antichains -------------------------------------------------------------------


def _entry(g: BNamu) -> Entry:
    return Entry(g, LeafEvidence(0))


def test_antichain_keeps_the_smaller_namu(three_lines):
    g = next(iter(_star_namus(three_lines)))
    u, v = g.edges[0]
    bigger = BNamu.build(g.adjacency, g.alpha, {**g.lam, (u, v): g.lam[(u, v)] + 1}, g.universe, g.ambient)
    for order in ([g, bigger], [bigger, g]):
        kept = antichain([_entry(x) for x in order])
        assert [e.namu for e in kept] == [g]


def test_antichain_drops_duplicates(three_lines):
    g = next(iter(_star_namus(three_lines)))
    assert len(antichain([_entry(g), _entry(g)])) == 1


def _star_namus(a):
    for t in TreeIterator(3):
        yield canonical_namu(t, a, Subspace.full(a.r, a.spec))


# the full-set program -----------------------------------------------------------


@pytest.mark.parametrize("k, decided", [(0, False), (1, True)])
def test_full_sets_of_three_lines(three_lines, k, decided):
    assert full_run(three_lines, k).decided is decided


@pytest.mark.parametrize("k, decided", [(1, False), (2, True)])
def test_full_sets_of_four_generic_lines(u24, k, decided):
    assert full_run(u24, k).decided is decided


def test_leaf_tables_hold_the_whole_boundary(u24):
    base = caterpillar(4)
    tr = transcript_of(base, u24, u24.r)
    table = run_fullset_dp(u24, 2, base, tr)
    for v in base.nodes:
        if base.children(v):
            continue
        (entry,) = table[(Stage.LEAF, v)]
        assert entry.evidence.part == base.leaf_map[v]
        assert entry.namu.is_single()
        assert entry.namu.universe == Subspace.full(tr.dim(v), u24.spec)


def test_leaf_tables_match_the_oracle(u24):
    base = caterpillar(4)
    tr = transcript_of(base, u24, u24.r)
    table = run_fullset_dp(u24, 2, base, tr)
    for v in base.nodes:
        if base.children(v):
            continue
        expected = brute_fullset(u24, base, v, 2, basis=tr.boundary[v])
        assert {e.namu for e in table[(Stage.LEAF, v)]} == expected


def test_full_sets_need_every_part(three_lines):
    with pytest.raises(LabelMismatch):
        run_fullset_dp(three_lines, 1, DecTree.from_postorder("1 2 *"), None)


def test_decision_only_keeps_just_the_root(three_lines):
    table = full_run(three_lines, 1, decision_only=True)
    assert table.decided
    assert set(table.tables) == {table.tree.root}


def test_trace_records_every_stage(three_lines):
    table = full_run(three_lines, 1, trace=True)
    assert len(table.trace) == len(table.tree)
    assert {r.stage for r in table.trace} == {s.value for s in Stage}


def test_empty_table_stops_the_run(three_lines):
    table = full_run(three_lines, 0)
    assert table.trace[-1].size == 0
    assert len(table.trace) < len(table.tree)


# backtracking -------------------------------------------------------------------


@pytest.mark.parametrize("k", [1, 2])
def test_backtracked_decomposition_has_width_k(three_lines, k):
    table = full_run(three_lines, k)
    t = backtrack_decomposition(table)
    assert t.parts == frozenset(range(3))
    assert width(t, three_lines)[0] <= k


def test_backtrack_from_every_root_namu(u24):
    table = full_run(u24, 2)
    for entry in table.root_entries:
        t = backtrack_decomposition(table, root_choice=entry.namu)
        assert width(t, u24)[0] <= 2


def test_backtrack_needs_a_decided_table(u24):
    with pytest.raises(EvidenceCorrupt):
        backtrack_decomposition(full_run(u24, 1))


# iterative compression ----------------------------------------------------------


def test_compress_step_keeps_a_base_that_is_already_good(three_lines):
    base = caterpillar(3)
    assert compress_step(three_lines, 1, base).edges == base.rooted().edges


def test_iterative_compression_needs_parts(three_lines):
    with pytest.raises(RejectedAboveK):
        iterative_compression(three_lines.sub_arrangement([]), 1)


def test_iterative_compression_reports_the_failing_prefix(u24):
    with pytest.raises(AboveK) as info:
        iterative_compression(u24, 1)
    assert info.value.k == 1
    assert info.value.step == 4


def test_decompose_attaches_zero_parts(independent_lines):
    t = decompose(independent_lines.mat, independent_lines.part_sizes, 0)
    assert t.parts == frozenset(range(4))
    assert width(t, independent_lines)[0] == 0


def test_decompose_single_part(gf2):
    t = decompose(Mat([[1]], gf2), [1], 0)
    assert t.postorder_string() == "1"


@pytest.mark.parametrize("fixture, expected", [("three_lines", 1), ("u24", 2), ("k4_graphic", 2)])
def test_minimum_width(request, fixture, expected):
    a = request.getfixturevalue(fixture)
    k, t = minimum_width(a.mat, a.part_sizes)
    assert k == expected
    assert width(t, a)[0] == expected


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(SWEEP_SEEDS))
def test_decompose_agrees_with_the_oracle(seed):
    a = random_arrangement(seed, p=2, r=3, n=5, max_dim=1)
    bw, _ = brute_branchwidth(a)
    t = decompose(a.mat, a.part_sizes, bw)
    assert width(t, a)[0] <= bw
    if bw:
        with pytest.raises((AboveK, RejectedAboveK)):
            decompose(a.mat, a.part_sizes, bw - 1)


def test_tables_reach_the_root(three_lines):
    table = full_run(three_lines, 1)
    root = table.tree.root[1]
    for stage in (Stage.JOIN, Stage.SHRINK, Stage.TRIM, Stage.COMPARE):
        assert table[(stage, root)]
    (entry,) = table.root_entries
    assert entry.namu.universe.ambient_dim == 0


def _covered(namus, by):
    return all(any(is_tle(b, g) for b in by) for g in namus)


@pytest.mark.slow
@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("seed", range(ORACLE_SEEDS))
def test_compare_tables_match_the_oracle(seed, k):
    a = random_arrangement(seed, p=2, r=3, n=5, max_dim=1)
    base = caterpillar(a.n).rooted()
    tr = transcript_of(base, a, a.r)
    table = run_fullset_dp(a, k, base, tr)
    for v in base.nodes:
        key = (Stage.COMPARE, v) if base.children(v) else (Stage.LEAF, v)
        if key not in table.tables:
            continue
        stored = {e.namu for e in table[key]}
        expected = brute_fullset(a, base, v, k, basis=tr.boundary[v])
        assert bool(stored) == bool(expected)
        assert _covered(expected, stored)
        assert _covered(stored, expected)


@pytest.mark.parametrize("seed", range(5))
def test_benchmark_instance_has_width_two(seed):
    data = banded_lines(np.random.default_rng(seed))
    assert data.shape[1] == PARTS
    # columns ordered by their first nonzero row split into sides sharing at most two coordinates
    first = [int(np.flatnonzero(col)[0]) if col.any() else 0 for col in data.T]
    order = sorted(range(PARTS), key=lambda j: first[j])
    total = rank_mod(data, 2)
    for i in range(1, PARTS):
        left, right = data[:, order[:i]], data[:, order[i:]]
        assert rank_mod(left, 2) + rank_mod(right, 2) - total <= 2
