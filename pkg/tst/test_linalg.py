import numpy as np
import pytest

from branchwidth.exceptions import AmbientMismatch, ShapeMismatch
from branchwidth.field import GF2, FieldSpec
from branchwidth.linalg import (
    Mat,
    Subspace,
    apply_transition,
    dim_intersect,
    nullspace_mod,
    rank_mod,
    rref,
    solve_mod,
    subspace_contains,
    subspace_intersect,
    subspace_sum,
    sum_all,
)
from branchwidth.linalg.gf2 import gf2_is_in_rowspan, gf2_rank, pack_rows, unpack_rows
from branchwidth.linalg.matrix import rref_dense


def test_rref_drops_dependent_rows_over_gf3(gf3):
    r, pivots = rref(Mat.from_rows([[1, 2, 0], [2, 1, 0]], gf3))
    assert r.tolist() == [[1, 2, 0]]
    assert pivots == (0,)


def test_rref_of_zero_matrix_is_empty(gf3):
    r, pivots = rref(Mat.zeros(2, 3, gf3))
    assert r.shape == (0, 3)
    assert pivots == ()


@pytest.mark.parametrize("seed", range(5))
def test_bitset_rref_matches_dense_rref(seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 2, size=(5, 7))
    fast, fast_pivots = rref(Mat(a, GF2))
    dense, dense_pivots = rref_dense(a, 2)
    assert fast.tolist() == dense.tolist()
    assert list(fast_pivots) == dense_pivots


def test_pack_and_unpack_rows():
    a = np.array([[1, 0, 1], [0, 1, 1]])
    assert pack_rows(a) == [0b101, 0b110]
    assert unpack_rows(pack_rows(a), 3).tolist() == a.tolist()
    assert gf2_rank(pack_rows(a), 3) == 2
    assert gf2_is_in_rowspan(0b011, pack_rows(a), 3)
    assert not gf2_is_in_rowspan(0b001, pack_rows(a), 3)


def test_solve_returns_a_solution(gf3):
    a = np.array([[1, 1], [0, 2]])
    b = np.array([[2], [1]])
    x = solve_mod(a, b, 3)
    assert ((a @ x - b) % 3 == 0).all()


def test_solve_reports_inconsistency():
    a = np.array([[1, 0], [1, 0]])
    b = np.array([[1], [0]])
    assert solve_mod(a, b, 2) is None


def test_solve_checks_shapes():
    with pytest.raises(ShapeMismatch):
        solve_mod(np.eye(2, dtype=int), np.zeros((3, 1), dtype=int), 5)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_nullspace_is_annihilated_and_has_full_dimension(p):
    rng = np.random.default_rng(p)
    a = rng.integers(0, p, size=(3, 6))
    kernel = nullspace_mod(a, p)
    assert kernel.shape == (6, 6 - rank_mod(a, p))
    assert not ((a @ kernel) % p).any()


def test_mat_rejects_non_matrices(gf2):
    with pytest.raises(ShapeMismatch):
        Mat([1, 0, 1], gf2)


def test_mat_reduces_entries(gf3):
    assert Mat([[4, -1]], gf3).tolist() == [[1, 2]]


def test_apply_transition_checks_shapes(gf2):
    with pytest.raises(ShapeMismatch):
        apply_transition(Mat.identity(2, gf2), Mat.identity(3, gf2))


def test_span_is_canonical(gf3):
    first = Subspace.span(np.array([[1, 1], [0, 1], [2, 0]]), gf3)
    second = Subspace.span(np.array([[2, 2], [0, 1], [1, 2]]), gf3)
    assert first == second
    assert hash(first) == hash(second)
    assert first.dim == 2


def test_coordinate_and_full(gf2):
    assert Subspace.coordinate(3, [0, 2], gf2).dim == 2
    assert Subspace.full(3, gf2).dim == 3
    assert Subspace.zero(3, gf2).is_zero()


@pytest.mark.parametrize("seed", range(6))
def test_intersection_dimension_identity(seed):
    rng = np.random.default_rng(seed)
    spec = FieldSpec(3)
    a = Subspace.span(rng.integers(0, 3, size=(5, 3)), spec)
    b = Subspace.span(rng.integers(0, 3, size=(5, 2)), spec)
    meet = subspace_intersect(a, b)
    assert meet.dim == dim_intersect(a, b)
    assert subspace_sum(a, b).dim == a.dim + b.dim - meet.dim
    assert subspace_contains(a, meet)
    assert subspace_contains(b, meet)


def test_operations_need_the_same_ambient_space(gf2):
    with pytest.raises(AmbientMismatch):
        subspace_sum(Subspace.full(2, gf2), Subspace.full(3, gf2))
    with pytest.raises(AmbientMismatch):
        subspace_contains(Subspace.full(2, gf2), Subspace.full(2, FieldSpec(3)))


def test_sum_all(gf2):
    lines = [Subspace.coordinate(3, [i], gf2) for i in range(3)]
    assert sum_all(lines, 3, gf2) == Subspace.full(3, gf2)
    assert sum_all([], 3, gf2).is_zero()


def test_contains_vector(gf3):
    s = Subspace.span(np.array([[1], [2], [0]]), gf3)
    assert s.contains_vector(np.array([2, 1, 0]))
    assert not s.contains_vector(np.array([1, 1, 0]))
    assert s.contains_vector(np.zeros(3, dtype=int))


def test_truncate_keeps_the_part_inside_the_first_coordinates(gf2):
    s = Subspace.span(np.array([[1, 0], [0, 1], [0, 1]]), gf2)
    t = s.truncate(2)
    assert t.ambient_dim == 2
    assert t == Subspace.coordinate(2, [0], gf2)


def test_image_under_projection(gf2):
    s = Subspace.full(3, gf2)
    projection = np.array([[1, 0, 0], [0, 1, 0]])
    assert s.image(projection) == Subspace.full(2, gf2)
    with pytest.raises(ShapeMismatch):
        s.image(np.eye(2, dtype=int))


def test_subspaces_of_the_zero_space(gf2):
    zero, full = Subspace.zero(0, gf2), Subspace.full(0, gf2)
    assert zero == full
    assert zero.dim == 0
    assert zero.basis.shape == (0, 0)
    assert subspace_sum(zero, full) == zero
    assert Subspace.span(np.zeros((0, 2), dtype=int), gf2) == zero


def test_truncate_to_no_coordinates(gf2):
    s = Subspace.full(3, gf2)
    assert s.truncate(0) == Subspace.zero(0, gf2)
    assert Subspace.zero(2, gf2).truncate(0).ambient_dim == 0


def _random_subspace(rng, spec, r):
    return Subspace.span(rng.integers(0, spec.p, size=(r, int(rng.integers(0, r + 1)))), spec, r)


@pytest.mark.slow
@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("seed", range(10))
def test_modular_dimension_law(p, seed):
    rng = np.random.default_rng(seed)
    spec = FieldSpec(p)
    for _ in range(50):
        x1, x2, y1, y2 = (_random_subspace(rng, spec, 4) for _ in range(4))
        lhs = dim_intersect(subspace_sum(x1, x2), subspace_sum(y1, y2))
        rhs = (
            dim_intersect(x1, y1)
            + dim_intersect(x2, y2)
            - dim_intersect(x1, x2)
            - dim_intersect(y1, y2)
            + dim_intersect(subspace_sum(x1, y1), subspace_sum(x2, y2))
        )
        assert lhs == rhs


def _inside(rng, spec, coords, r):
    """Random subspace of span{e_i : i in coords}"""
    vectors = np.zeros((r, int(rng.integers(0, len(coords) + 1))), dtype=np.int64)
    vectors[coords, :] = rng.integers(0, spec.p, size=(len(coords), vectors.shape[1]))
    return Subspace.span(vectors, spec, r)


@pytest.mark.slow
@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("seed", range(10))
def test_boundary_parts_add_up_when_the_sides_meet_only_in_the_boundary(p, seed):
    rng = np.random.default_rng(seed)
    spec = FieldSpec(p)
    b = Subspace.coordinate(6, [0, 1], spec)
    for _ in range(50):
        v1 = _inside(rng, spec, [0, 1, 2, 3], 6)
        v2 = _inside(rng, spec, [0, 1, 4, 5], 6)
        assert subspace_intersect(subspace_sum(v1, b), subspace_sum(v2, b)) == b
        x = subspace_intersect(v1, _random_subspace(rng, spec, 6))
        y = subspace_intersect(v2, _random_subspace(rng, spec, 6))
        assert subspace_sum(subspace_intersect(x, b), subspace_intersect(y, b)) == subspace_intersect(
            subspace_sum(x, y), b
        )


def test_subspaces_of_gf2_cubed_are_equal_iff_they_hold_the_same_vectors(gf2):
    vectors = [np.array([(i >> j) & 1 for j in range(3)]) for i in range(8)]
    spans = []
    for mask in range(1 << 7):
        chosen = [vectors[i + 1] for i in range(7) if mask >> i & 1]
        s = Subspace.span(np.array(chosen, dtype=int).T.reshape(3, -1), gf2, 3)
        spans.append((s, frozenset(i for i, v in enumerate(vectors) if s.contains_vector(v))))
    assert len({s for s, _ in spans}) == 16
    for s, held in spans:
        for other, other_held in spans:
            assert (s == other) == (held == other_held)
