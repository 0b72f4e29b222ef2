# src/branchwidth/apps/reductions.py
"""Matroids, rank-width, hypergraph branch-width and carving-width as
branch-width of subspace arrangements over GF(2) (or the matrix's field)."""
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import networkx as nx
import numpy as np

from branchwidth.apps.graphs import Hypergraph, adjacency_gf2, edge_list
from branchwidth.arrangement import Arrangement
from branchwidth.bdtree.tree import DecTree
from branchwidth.exceptions import RejectedAboveK
from branchwidth.field import GF2
from branchwidth.linalg import Mat

logger = logging.getLogger(__name__)


def _arrangement(blocks: List[np.ndarray], rows: int) -> Arrangement:
    data = np.concatenate(blocks, axis=1) if blocks else np.zeros((rows, 0), dtype=np.int64)
    return Arrangement.from_matrix(Mat(data, GF2), [b.shape[1] for b in blocks])


def matroid_arrangement(mat: Mat) -> Arrangement:
    """One line per column of the representation"""
    return Arrangement.from_matrix(mat, [1] * mat.cols)


def graphic_arrangement(g: nx.Graph) -> Arrangement:
    """Cycle matroid of g: one incidence vector over GF(2) per edge"""
    n = g.number_of_nodes()
    blocks = []
    for u, v in edge_list(g):
        col = np.zeros((n, 1), dtype=np.int64)
        col[[u, v], 0] = 1
        blocks.append(col)
    return _arrangement(blocks, n)


def rankwidth_arrangement(g: nx.Graph) -> Arrangement:
    """V_i = span{column i of the adjacency matrix, e_i}; widths are twice the cut-rank"""
    n = g.number_of_nodes()
    adj = adjacency_gf2(g) if n else np.zeros((0, 0), dtype=np.int64)
    blocks = []
    for i in range(n):
        unit = np.zeros(n, dtype=np.int64)
        unit[i] = 1
        blocks.append(np.stack([adj[:, i], unit], axis=1))
    return _arrangement(blocks, n)


def carving_arrangement(g: nx.Graph, k: int) -> Arrangement:
    """V_i = span of the unit vectors of the edges at vertex i"""
    for v in range(g.number_of_nodes()):
        if g.degree(v) > k:
            logger.info(f"Vertex {v + 1} has degree {g.degree(v)} > {k}")
            raise RejectedAboveK(v, "degree")
    edges = edge_list(g)
    m = len(edges)
    blocks = []
    for v in range(g.number_of_nodes()):
        incident = [j for j, e in enumerate(edges) if v in e]
        block = np.zeros((m, len(incident)), dtype=np.int64)
        for col, j in enumerate(incident):
            block[j, col] = 1
        blocks.append(block)
    return _arrangement(blocks, m)


@dataclass(frozen=True)
class HypergraphReduction:
    """The arrangement of the deduplicated hypergraph.

    ``kept`` lists the input edge of every part; ``copies`` sends every
    dropped parallel edge to the kept edge with the same vertex set.
    """
    arrangement: Arrangement
    kept: Tuple[int, ...]
    copies: Dict[int, int]


def hypergraph_arrangement(h: Hypergraph, k: int) -> HypergraphReduction:
    """Drop parallel copies, check density, then V_i = span{e_j : v_j in E_i and in another edge}"""
    first: Dict[frozenset, int] = {}
    copies: Dict[int, int] = {}
    kept: List[int] = []
    for i in range(h.m):
        s = h.vertex_set(i)
        if s in first:
            if len(s) > k:
                logger.info(f"Edges {first[s] + 1} and {i + 1} are parallel with {len(s)} > {k} vertices")
                raise RejectedAboveK(i, "parallel")
            copies[i] = first[s]
            continue
        first[s] = i
        kept.append(i)

    if len(kept) > 2 ** (2 * k) * h.n:
        logger.info(f"{len(kept)} edges on {h.n} vertices is above 2^(2k)n for k={k}")
        raise RejectedAboveK(None, "density")

    sets = [h.vertex_set(i) for i in kept]
    blocks = []
    for idx, s in enumerate(sets):
        shared = sorted(v for v in s if any(v in t for j, t in enumerate(sets) if j != idx))
        if len(shared) > k:
            raise RejectedAboveK(kept[idx], "part-dimension")
        block = np.zeros((h.n, len(shared)), dtype=np.int64)
        for col, v in enumerate(shared):
            block[v, col] = 1
        blocks.append(block)
    logger.info(f"Hypergraph with {h.m} edges reduced to {len(kept)} parts ({len(copies)} parallel copies)")
    return HypergraphReduction(_arrangement(blocks, h.n), tuple(kept), copies)


def reinsert_parallel(t: DecTree, reduction: HypergraphReduction) -> DecTree:
    """Decomposition over the input edges: each dropped copy hangs next to its kept twin.

    ``t`` is over the parts of ``reduction.arrangement``.
    """
    tree = t.unrooted().relabel_parts({i: e for i, e in enumerate(reduction.kept)})
    for copy, twin in sorted(reduction.copies.items()):
        if not tree.edges:
            tree = DecTree.pair(twin, copy)
            continue
        leaf = tree.leaf_of_part(twin)
        tree = tree.attach_leaf(leaf, tree.neighbors(leaf)[0], copy)
    return tree.normalized().rooted()


def rank_decomposition_width(arrangement_width: int) -> int:
    return arrangement_width // 2
