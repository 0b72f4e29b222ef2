# src/branchwidth/arrangement.py
"""Subspace arrangements given as a matrix in RREF plus an ordered partition
of its columns, and the row/column reductions run before solving."""
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Sequence, Tuple

import numpy as np

from branchwidth.exceptions import IndexOutOfRange, InputFormatError, NotRREF, RejectedAboveK
from branchwidth.field import FieldSpec
from branchwidth.linalg import Mat, Subspace, column_basis_mod, rref, subspace_intersect

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Arrangement:
    """V_1..V_n as column spaces of consecutive column blocks of ``mat``"""
    mat: Mat
    parts: Tuple[Tuple[int, ...], ...]
    pivots: Tuple[int, ...]
    _spans: Dict[FrozenSet[int], Subspace] = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if len(self.pivots) != self.mat.rows:
            raise NotRREF(f"{len(self.pivots)} pivots for {self.mat.rows} rows")
        if self.mat.rows and not np.array_equal(
            self.mat.data[:, list(self.pivots)], np.eye(self.mat.rows, dtype=np.int64)
        ):
            raise NotRREF("pivot columns do not form an identity block")

    @classmethod
    def from_matrix(cls, mat: Mat, part_sizes: Sequence[int]) -> "Arrangement":
        """Row-reduce ``mat`` and cut its columns into consecutive parts"""
        if sum(part_sizes) != mat.cols or any(s < 0 for s in part_sizes):
            raise InputFormatError(f"part sizes {list(part_sizes)} do not partition {mat.cols} columns")
        reduced, pivots = rref(mat)
        parts = []
        start = 0
        for size in part_sizes:
            parts.append(tuple(range(start, start + size)))
            start += size
        return cls(reduced, tuple(parts), pivots)

    @property
    def spec(self) -> FieldSpec:
        return self.mat.spec

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def r(self) -> int:
        return self.mat.rows

    @property
    def m(self) -> int:
        return self.mat.cols

    @property
    def part_sizes(self) -> Tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    @property
    def pivot_set(self) -> FrozenSet[int]:
        return frozenset(self.pivots)

    def columns(self, indices: Iterable[int]) -> Tuple[int, ...]:
        """Column indices E_X of a set of parts"""
        cols = []
        for i in sorted(set(indices)):
            if not 0 <= i < self.n:
                raise IndexOutOfRange(f"part {i} not in 0..{self.n - 1}")
            cols.extend(self.parts[i])
        return tuple(cols)

    def span(self, indices: Iterable[int]) -> Subspace:
        key = frozenset(indices)
        cached = self._spans.get(key)
        if cached is None:
            cols = self.columns(key)
            cached = Subspace.span(self.mat.data[:, list(cols)], self.spec, self.r)
            self._spans[key] = cached
        return cached

    def subspace(self, i: int) -> Subspace:
        return self.span((i,))

    def part_dim(self, i: int) -> int:
        return self.subspace(i).dim

    def sub_arrangement(self, indices: Sequence[int]) -> "Arrangement":
        """The arrangement of the chosen parts, in the given order, re-row-reduced"""
        cols = []
        sizes = []
        for i in indices:
            if not 0 <= i < self.n:
                raise IndexOutOfRange(f"part {i} not in 0..{self.n - 1}")
            cols.extend(self.parts[i])
            sizes.append(len(self.parts[i]))
        return Arrangement.from_matrix(self.mat.select(cols=cols), sizes)


@dataclass(frozen=True)
class PreprocessResult:
    """Reduced arrangement plus the bookkeeping to map back to input parts"""
    arrangement: Arrangement
    kept: Tuple[int, ...]
    zero_parts: Tuple[int, ...]
    n_input: int


def preprocess(mat: Mat, part_sizes: Sequence[int], k: int) -> PreprocessResult:
    """Row reduction, column reduction, row reduction, then strip zero parts.

    Each V_i is replaced by V_i ∩ Σ_{j≠i} V_j, which leaves every cut
    intersection unchanged; ``RejectedAboveK`` is raised as soon as one of
    these has dimension above k.
    """
    reduced = Arrangement.from_matrix(mat, part_sizes)
    spec = reduced.spec
    everything = range(reduced.n)

    blocks = []
    sizes = []
    for i in everything:
        rest = reduced.span(j for j in everything if j != i)
        meet = subspace_intersect(reduced.subspace(i), rest)
        if meet.dim > k:
            logger.info(f"Part {i + 1} meets the rest in dimension {meet.dim} > {k}")
            raise RejectedAboveK(i, "part-dimension")
        blocks.append(meet.basis)
        sizes.append(meet.dim)

    stacked = np.concatenate(blocks, axis=1) if blocks else np.zeros((reduced.r, 0), dtype=np.int64)
    again = Arrangement.from_matrix(Mat(stacked, spec), sizes)
    kept = tuple(i for i, s in enumerate(sizes) if s > 0)
    zero_parts = tuple(i for i, s in enumerate(sizes) if s == 0)
    stripped = again.sub_arrangement(kept)

    logger.info(
        f"Preprocessed {reduced.n} parts: r={mat.rows}->{stripped.r}, m={mat.cols}->{stripped.m}, "
        f"{len(zero_parts)} zero-dimensional parts stripped"
    )
    return PreprocessResult(stripped, kept, zero_parts, reduced.n)


def cut_dim(a: Arrangement, subset: Iterable[int]) -> Tuple[int, Mat]:
    """dim(⟨V_X⟩ ∩ ⟨V_Y⟩) from ranks of two off-diagonal blocks, with a basis.

    Rows of ``a.mat`` are indexed by the pivot columns. The basis lifts a
    column basis of each block (pivot rows on one side, non-pivot columns on
    the other) back into full coordinates.
    """
    subset = frozenset(subset)
    X = set(a.columns(subset))
    Y = set(range(a.m)) - X
    p = a.spec.p
    row_of = {c: i for i, c in enumerate(a.pivots)}
    rows_x = [row_of[c] for c in a.pivots if c in X]
    rows_y = [row_of[c] for c in a.pivots if c in Y]
    free_x = [c for c in sorted(X) if c not in row_of]
    free_y = [c for c in sorted(Y) if c not in row_of]

    data = a.mat.data
    P = [free_x[j] for j in column_basis_mod(data[np.ix_(rows_y, free_x)], p)] if rows_y and free_x else []
    Q = [free_y[j] for j in column_basis_mod(data[np.ix_(rows_x, free_y)], p)] if rows_x and free_y else []

    basis = np.zeros((a.r, len(P) + len(Q)), dtype=np.int64)
    for j, c in enumerate(P):
        basis[rows_y, j] = data[rows_y, c]
    for j, c in enumerate(Q):
        basis[rows_x, len(P) + j] = data[rows_x, c]
    return len(P) + len(Q), Mat(basis, a.spec)
