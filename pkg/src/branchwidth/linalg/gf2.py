# src/branchwidth/linalg/gf2.py
"""GF(2) elimination on int bitsets (bit j of a row is column j)."""

from __future__ import annotations

from typing import List, Tuple

import numpy as np


def pack_rows(a: np.ndarray) -> List[int]:
    """Pack a 0/1 matrix into one int per row."""
    rows = []
    for row in np.asarray(a, dtype=np.int64) & 1:
        value = 0
        for j in np.flatnonzero(row):
            value |= 1 << int(j)
        rows.append(value)
    return rows


def unpack_rows(rows: List[int], n_cols: int) -> np.ndarray:
    out = np.zeros((len(rows), n_cols), dtype=np.int64)
    for i, value in enumerate(rows):
        j = 0
        while value:
            if value & 1:
                out[i, j] = 1
            value >>= 1
            j += 1
    return out


def gf2_rref(rows: List[int], n_cols: int) -> Tuple[List[int], List[int]]:
    """Reduced row echelon form over GF(2); zero rows are dropped."""
    work = rows[:]
    pivots: List[int] = []
    row_idx = 0
    for col in range(n_cols):
        if row_idx == len(work):
            break
        pivot = None
        for r in range(row_idx, len(work)):
            if (work[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        for r in range(len(work)):
            if r != row_idx and ((work[r] >> col) & 1):
                work[r] ^= work[row_idx]
        pivots.append(col)
        row_idx += 1
    return work[:row_idx], pivots


def gf2_rank(rows: List[int], n_cols: int) -> int:
    """Compute rank over GF(2) via Gaussian elimination."""
    return len(gf2_rref(rows, n_cols)[1])


def gf2_is_in_rowspan(vec: int, rows: List[int], n_cols: int) -> bool:
    """Check whether vec is in the rowspan of rows over GF(2)."""
    reduced, pivots = gf2_rref(rows, n_cols)
    for row, col in zip(reduced, pivots):
        if (vec >> col) & 1:
            vec ^= row
    return vec == 0


__all__ = ["pack_rows", "unpack_rows", "gf2_rref", "gf2_rank", "gf2_is_in_rowspan"]
