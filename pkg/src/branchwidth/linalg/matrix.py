# src/branchwidth/linalg/matrix.py
"""Dense exact matrices over GF(p).

The ``*_mod`` helpers work on raw ``np.int64`` arrays and a modulus; ``Mat``
wraps an array together with its ``FieldSpec``. Over GF(2) row reduction goes
through the bitset routines in ``branchwidth.linalg.gf2``.
"""
from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from branchwidth.exceptions import ShapeMismatch
from branchwidth.field import FieldSpec, elem_inverse
from branchwidth.linalg.gf2 import gf2_rref, pack_rows, unpack_rows


def mod_p(a: np.ndarray, p: int) -> np.ndarray:
    return np.asarray(a % p, dtype=np.int64)


def inv_mod_scalar(a: int | np.integer, p: int) -> int:
    return elem_inverse(int(a), FieldSpec(p))


def rref_dense(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """RREF over GF(p) with zero rows removed. Returns (R, pivot_cols)."""
    A = mod_p(np.array(a, dtype=np.int64, copy=True), p)
    m, n = A.shape
    pivots: List[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * inv_mod_scalar(A[r, c], p)) % p
        factors = A[:, c].copy()
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            A[hit] = (A[hit] - np.outer(factors[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rref_mod(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """RREF over GF(p); dispatches to the bitset path when p == 2."""
    a = np.asarray(a, dtype=np.int64)
    if p == 2 and a.ndim == 2:
        rows, pivots = gf2_rref(pack_rows(a), a.shape[1])
        return unpack_rows(rows, a.shape[1]), pivots
    return rref_dense(a, p)


def rank_mod(a: np.ndarray, p: int) -> int:
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return 0
    return len(rref_mod(a, p)[1])


def column_basis_mod(a: np.ndarray, p: int) -> List[int]:
    """Greedy (leftmost) column basis: the pivot columns of the RREF."""
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return []
    return rref_mod(a, p)[1]


def row_basis_mod(a: np.ndarray, p: int) -> List[int]:
    """Greedy (topmost) row basis."""
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return []
    return rref_mod(a.T, p)[1]


def nullspace_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Right nullspace basis of A over GF(p); columns form a basis."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[1]
    R, pivots = rref_mod(a, p) if a.shape[0] else (np.zeros((0, n), dtype=np.int64), [])
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    if not free:
        return basis
    basis[free, np.arange(len(free))] = 1
    if pivots:
        basis[pivots, :] = (-R[:, free]) % p
    return basis


def solve_mod(a: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """Solve A X = B over GF(p); one solution with free variables 0, or None."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    n = a.shape[1]
    if a.shape[0] != b.shape[0]:
        raise ShapeMismatch(f"cannot solve {a.shape} X = {b.shape}")
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    if a.shape[0] == 0:
        return x
    R, pivots = rref_mod(np.concatenate([a, b], axis=1), p)
    if any(c >= n for c in pivots):
        return None
    for idx, c in enumerate(pivots):
        x[c] = R[idx, n:]
    return x


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    return mod_p(A @ B, p)


class Mat:
    """Read-only dense matrix over GF(p)"""

    __slots__ = ("data", "spec")

    def __init__(self, data, spec: FieldSpec):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim != 2:
            raise ShapeMismatch(f"expected a 2-d matrix, got shape {arr.shape}")
        arr = mod_p(arr, spec.p)
        arr.setflags(write=False)
        self.data = arr
        self.spec = spec

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], spec: FieldSpec, cols: Optional[int] = None) -> "Mat":
        if len(rows) == 0:
            return cls.zeros(0, cols or 0, spec)
        return cls([list(r) for r in rows], spec)

    @classmethod
    def zeros(cls, rows: int, cols: int, spec: FieldSpec) -> "Mat":
        return cls(np.zeros((rows, cols), dtype=np.int64), spec)

    @classmethod
    def identity(cls, n: int, spec: FieldSpec) -> "Mat":
        return cls(np.eye(n, dtype=np.int64), spec)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape

    @property
    def T(self) -> "Mat":
        return Mat(self.data.T, self.spec)

    def select(self, rows: Optional[Iterable[int]] = None, cols: Optional[Iterable[int]] = None) -> "Mat":
        data = self.data
        if rows is not None:
            data = data[list(rows), :]
        if cols is not None:
            data = data[:, list(cols)]
        return Mat(data, self.spec)

    def hstack(self, other: "Mat") -> "Mat":
        if self.rows != other.rows:
            raise ShapeMismatch(f"row counts differ: {self.rows} vs {other.rows}")
        return Mat(np.concatenate([self.data, other.data], axis=1), self.spec)

    def rank(self) -> int:
        return rank_mod(self.data, self.spec.p)

    def column_basis(self) -> List[int]:
        return column_basis_mod(self.data, self.spec.p)

    def row_basis(self) -> List[int]:
        return row_basis_mod(self.data, self.spec.p)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return Mat(matmul_mod(self.data, other.data, self.spec.p), self.spec)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.spec == other.spec and self.shape == other.shape and np.array_equal(self.data, other.data)

    def __hash__(self) -> int:
        return hash((self.spec.p, self.shape, self.data.tobytes()))

    def tolist(self) -> List[List[int]]:
        return self.data.tolist()

    def __repr__(self) -> str:
        return f"Mat({self.tolist()}, {self.spec})"


def rref(m: Mat) -> Tuple[Mat, Tuple[int, ...]]:
    """Reduced row echelon form with zero rows removed, plus the pivot columns"""
    if m.rows == 0:
        return Mat.zeros(0, m.cols, m.spec), ()
    R, pivots = rref_mod(m.data, m.spec.p)
    if R.shape[0] == 0:
        return Mat.zeros(0, m.cols, m.spec), ()
    return Mat(R, m.spec), tuple(pivots)


def apply_transition(t: Mat, coords: Mat) -> Mat:
    """Re-express coordinate columns in the parent basis"""
    if t.cols != coords.rows:
        raise ShapeMismatch(f"transition has {t.cols} columns, coordinates have {coords.rows} rows")
    return t @ coords
