# src/branchwidth/transcript.py
"""Boundary bases and transcripts of rooted branch-decompositions.

Rows of the arrangement matrix are indexed by its pivot columns. The
boundary space of a node is spanned by two pieces: a column basis of the
block (pivot rows outside the node, non-pivot columns inside it), and a
column basis of the block (pivot rows inside the node, non-pivot columns
outside it), each lifted back into full coordinates. The column basis of the
first block and a row basis of the second are passed up the tree, so an
internal node only looks at the at most 2k columns and rows its children kept.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from branchwidth.arrangement import Arrangement
from branchwidth.bdtree.tree import DecTree, check_labels
from branchwidth.exceptions import ExtensionFailure, LabelMismatch, WidthExceeded
from branchwidth.linalg import column_basis_mod, rank_mod, row_basis_mod, solve_mod

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NodeBases:
    """Algorithm state at one node: P_v, R_v, Q_v and the boundary basis"""
    p_cols: Tuple[int, ...]
    r_rows: Tuple[int, ...]
    q_cols: Tuple[int, ...]
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


@dataclass(frozen=True)
class Transcript:
    """Ordered bases B_v ⊆ B_v' per node and transition matrices into the parent.

    ``transition[v]`` satisfies ``extended[parent] @ transition[v] == boundary[v]``
    (mod p); the root has the empty 0 x 0 transition.
    """
    tree: DecTree
    p: int
    boundary: Dict[int, np.ndarray]
    extended: Dict[int, np.ndarray]
    transition: Dict[int, np.ndarray]

    @property
    def order(self) -> int:
        return max((b.shape[1] for b in self.extended.values()), default=0)

    def dim(self, v: int) -> int:
        return self.boundary[v].shape[1]

    def ext_dim(self, v: int) -> int:
        return self.extended[v].shape[1]


def _pick_columns(data: np.ndarray, rows: Sequence[int], cols: Sequence[int], p: int) -> Tuple[int, ...]:
    if not rows or not cols:
        return ()
    return tuple(cols[j] for j in column_basis_mod(data[np.ix_(list(rows), list(cols))], p))


def _pick_rows(data: np.ndarray, rows: Sequence[int], cols: Sequence[int], p: int) -> Tuple[int, ...]:
    if not rows or not cols:
        return ()
    return tuple(rows[i] for i in row_basis_mod(data[np.ix_(list(rows), list(cols))], p))


def _union(groups: Iterable[Tuple[int, ...]]) -> List[int]:
    return sorted(set().union(*groups))


def boundary_bases(t: DecTree, a: Arrangement, k: int) -> Dict[int, NodeBases]:
    """Boundary basis of every node, bottom-up; WidthExceeded once |P_v| + |R_v| > k"""
    check_labels(t, a)
    if t.parts != frozenset(range(a.n)):
        raise LabelMismatch(f"decomposition covers {len(t.parts)} of {a.n} parts")
    p = a.spec.p
    data = a.mat.data
    # row index of each pivot column; rows are referred to by their row index below
    row_of = {c: i for i, c in enumerate(a.pivots)}
    free = [c for c in range(a.m) if c not in row_of]

    out: Dict[int, NodeBases] = {}
    for v in t.postorder():
        ev = set(a.columns(t.descendants_parts(v)))
        rows_out = [row_of[c] for c in a.pivots if c not in ev]
        rows_in = [row_of[c] for c in a.pivots if c in ev]
        free_out = [c for c in free if c not in ev]

        kids = t.children(v)
        if kids:
            cand_cols = _union(out[w].p_cols for w in kids)
            cand_rows = _union(out[w].r_rows for w in kids)
        else:
            cand_cols = [c for c in sorted(ev) if c not in row_of]
            cand_rows = rows_in

        p_cols = _pick_columns(data, rows_out, cand_cols, p)
        r_rows = _pick_rows(data, cand_rows, free_out, p)
        if len(p_cols) + len(r_rows) > k:
            logger.debug(f"Node {v}: boundary dimension {len(p_cols) + len(r_rows)} over cap {k}")
            raise WidthExceeded(v, len(p_cols) + len(r_rows), k)
        q_cols = _pick_columns(data, r_rows, free_out, p)

        basis = np.zeros((a.r, len(p_cols) + len(q_cols)), dtype=np.int64)
        for j, c in enumerate(p_cols):
            basis[rows_out, j] = data[rows_out, c]
        for j, c in enumerate(q_cols):
            basis[rows_in, len(p_cols) + j] = data[rows_in, c]
        basis.setflags(write=False)
        out[v] = NodeBases(p_cols, r_rows, q_cols, basis)
    return out


def build_transcript(t: DecTree, a: Arrangement, bases: Dict[int, NodeBases]) -> Transcript:
    """Extend each B_v to a basis B_v' of B_w1 + B_w2 and solve for the transition matrices"""
    p = a.spec.p
    boundary = {v: nb.basis for v, nb in bases.items()}
    extended: Dict[int, np.ndarray] = {}
    transition: Dict[int, np.ndarray] = {}

    for v in t.postorder():
        own = boundary[v]
        kids = t.children(v)
        if not kids:
            extended[v] = own
            continue
        below = np.concatenate([boundary[w] for w in kids], axis=1)
        stacked = np.concatenate([own, below], axis=1)
        if rank_mod(stacked, p) != rank_mod(below, p) or rank_mod(own, p) != own.shape[1]:
            raise ExtensionFailure(f"boundary basis of node {v} is not inside its children's boundaries")
        # leftmost column basis keeps all of B_v first
        picked = column_basis_mod(stacked, p) if stacked.shape[1] else []
        ext = stacked[:, picked] if picked else np.zeros((a.r, 0), dtype=np.int64)
        ext.setflags(write=False)
        extended[v] = ext
        for w in kids:
            solved = solve_mod(ext, boundary[w], p)
            if solved is None:
                raise ExtensionFailure(f"boundary basis of node {w} is not expressible at its parent {v}")
            solved.setflags(write=False)
            transition[w] = solved
    transition[t.root] = np.zeros((0, boundary[t.root].shape[1]), dtype=np.int64)

    tr = Transcript(t, p, boundary, extended, transition)
    logger.debug(f"Transcript of {len(t.nodes)} nodes has order {tr.order}")
    return tr


def transcript_of(t: DecTree, a: Arrangement, k: int) -> Transcript:
    return build_transcript(t, a, boundary_bases(t, a, k))
