# src/branchwidth/linalg/subspace.py
"""Subspaces of F^r in canonical form.

A subspace is stored as the RREF of the matrix whose rows are its basis
vectors (equivalently, the column-reduced echelon form of the basis matrix),
so two subspaces are equal iff their stored rows are equal.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Tuple, Union

import numpy as np

from branchwidth.exceptions import AmbientMismatch, ShapeMismatch
from branchwidth.field import FieldSpec
from branchwidth.linalg.matrix import Mat, matmul_mod, mod_p, nullspace_mod, rank_mod, rref_mod


class Subspace:
    """A subspace of F^r, hashable and canonically represented"""

    __slots__ = ("spec", "ambient_dim", "_rows", "_key", "_hash")

    def __init__(self, rows: np.ndarray, spec: FieldSpec, ambient_dim: int):
        # rows must already be a zero-row-free RREF
        if ambient_dim == 0:
            rows = np.zeros((0, 0), dtype=np.int64)
        else:
            rows = np.asarray(rows, dtype=np.int64).reshape(-1, ambient_dim)
        rows.setflags(write=False)
        self.spec = spec
        self.ambient_dim = ambient_dim
        self._rows = rows
        self._key = (ambient_dim, rows.shape[0], rows.tobytes())
        self._hash = hash((spec.p, self._key))

    @classmethod
    def span(cls, vectors: Union[np.ndarray, Mat], spec: FieldSpec, ambient_dim: int | None = None) -> "Subspace":
        """Span of the columns of ``vectors``"""
        data = vectors.data if isinstance(vectors, Mat) else np.asarray(vectors, dtype=np.int64)
        if data.ndim == 1:
            data = data.reshape(-1, 1)
        if ambient_dim is None:
            ambient_dim = data.shape[0]
        elif data.shape[0] != ambient_dim:
            raise ShapeMismatch(f"vectors have length {data.shape[0]}, ambient dimension is {ambient_dim}")
        if data.shape[1] == 0 or ambient_dim == 0:
            return cls.zero(ambient_dim, spec)
        rows, _ = rref_mod(data.T, spec.p)
        return cls(rows, spec, ambient_dim)

    @classmethod
    def zero(cls, ambient_dim: int, spec: FieldSpec) -> "Subspace":
        return cls(np.zeros((0, ambient_dim), dtype=np.int64), spec, ambient_dim)

    @classmethod
    def full(cls, ambient_dim: int, spec: FieldSpec) -> "Subspace":
        return cls(np.eye(ambient_dim, dtype=np.int64), spec, ambient_dim)

    @classmethod
    def coordinate(cls, ambient_dim: int, indices: Iterable[int], spec: FieldSpec) -> "Subspace":
        """span{e_i : i in indices}"""
        idx = sorted(set(indices))
        rows = np.zeros((len(idx), ambient_dim), dtype=np.int64)
        rows[np.arange(len(idx)), idx] = 1
        return cls(rows, spec, ambient_dim)

    @property
    def dim(self) -> int:
        return self._rows.shape[0]

    @property
    def rows(self) -> np.ndarray:
        return self._rows

    @property
    def basis(self) -> np.ndarray:
        """Basis vectors as columns (ambient_dim x dim)"""
        return self._rows.T

    @property
    def key(self) -> Tuple[int, int, bytes]:
        return self._key

    def is_zero(self) -> bool:
        return self.dim == 0

    def contains_vector(self, v: np.ndarray) -> bool:
        v = mod_p(np.asarray(v, dtype=np.int64).reshape(1, -1), self.spec.p)
        if not v.any():
            return True
        return rank_mod(np.concatenate([self._rows, v], axis=0), self.spec.p) == self.dim

    def image(self, matrix: np.ndarray) -> "Subspace":
        """Image under the linear map x -> matrix @ x"""
        matrix = np.asarray(matrix, dtype=np.int64)
        if matrix.shape[1] != self.ambient_dim:
            raise ShapeMismatch(f"map has {matrix.shape[1]} columns, ambient dimension is {self.ambient_dim}")
        return Subspace.span(matmul_mod(matrix, self.basis, self.spec.p), self.spec, matrix.shape[0])

    def truncate(self, d: int) -> "Subspace":
        """Intersect with span(e_1..e_d) and keep the first d coordinates"""
        inside = subspace_intersect(self, Subspace.coordinate(self.ambient_dim, range(d), self.spec))
        return Subspace.span(inside.basis[:d, :], self.spec, d)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.spec == other.spec and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, rows={self._rows.tolist()})"


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim or a.spec != b.spec:
        raise AmbientMismatch(
            f"ambient spaces differ: {a.spec}^{a.ambient_dim} vs {b.spec}^{b.ambient_dim}"
        )


def subspace_contains(outer: Subspace, inner: Subspace) -> bool:
    """True iff inner is a subspace of outer"""
    _check_ambient(outer, inner)
    return _contains(outer, inner)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return _sum(a, b)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """a ∩ b from the null space of [A  -B]"""
    _check_ambient(a, b)
    return _intersect(a, b)


def dim_intersect(a: Subspace, b: Subspace) -> int:
    _check_ambient(a, b)
    return a.dim + b.dim - _sum(a, b).dim


def sum_all(spaces: Iterable[Subspace], ambient_dim: int, spec: FieldSpec) -> Subspace:
    total = Subspace.zero(ambient_dim, spec)
    for space in spaces:
        total = subspace_sum(total, space)
    return total


@lru_cache(maxsize=200_000)
def _contains(outer: Subspace, inner: Subspace) -> bool:
    if inner.dim == 0:
        return True
    if inner.dim > outer.dim:
        return False
    return _sum(outer, inner).dim == outer.dim


@lru_cache(maxsize=200_000)
def _sum(a: Subspace, b: Subspace) -> Subspace:
    if b.dim == 0:
        return a
    if a.dim == 0:
        return b
    rows, _ = rref_mod(np.concatenate([a.rows, b.rows], axis=0), a.spec.p)
    return Subspace(rows, a.spec, a.ambient_dim)


@lru_cache(maxsize=200_000)
def _intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim, a.spec)
    p = a.spec.p
    A, B = a.basis, b.basis
    kernel = nullspace_mod(np.concatenate([A, mod_p(-B, p)], axis=1), p)
    if kernel.shape[1] == 0:
        return Subspace.zero(a.ambient_dim, a.spec)
    return Subspace.span(matmul_mod(A, kernel[: a.dim, :], p), a.spec, a.ambient_dim)
