# src/branchwidth/namu/compare.py
"""The domination order on B-namus.

``tle(a, b)`` decides whether a and b have subdivisions with the same tree,
the same alpha and the same U, and with a's lambda at most b's on every edge.
Subdividing copies an edge's alpha pair onto both halves, so only the nodes
of degree other than 2 have to correspond; the chains between them are
aligned by a monotone walk through the grid of (edge of a, edge of b) pairs.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from branchwidth.exceptions import AmbientMismatch
from branchwidth.namu.core import BNamu

Chain = Tuple[int, ...]
Cell = Tuple[int, int]


@dataclass(frozen=True)
class Alignment:
    """Certificate for a tle b: matched branch nodes and the chain walks"""
    nodes: Tuple[Tuple[int, int], ...]
    walks: Dict[Tuple[Chain, Chain], Tuple[Cell, ...]] = field(default_factory=dict)


def _branch_nodes(g: BNamu) -> List[int]:
    return [v for v in g.nodes if g.degree(v) != 2]


def _chain(g: BNamu, start: int, first: int) -> Chain:
    nodes = [start, first]
    while g.degree(nodes[-1]) == 2:
        nodes.append(next(w for w in g.neighbors(nodes[-1]) if w != nodes[-2]))
    return tuple(nodes)


def _walk(a: BNamu, c1: Chain, b: BNamu, c2: Chain) -> Optional[Tuple[Cell, ...]]:
    """Monotone path of compatible cells from the first to the last edge pair"""
    p, q = len(c1) - 1, len(c2) - 1

    def ok(i: int, j: int) -> bool:
        u1, v1 = c1[i], c1[i + 1]
        u2, v2 = c2[j], c2[j + 1]
        return (
            a.alpha[(u1, v1)] == b.alpha[(u2, v2)]
            and a.alpha[(v1, u1)] == b.alpha[(v2, u2)]
            and a.lam_of(u1, v1) <= b.lam_of(u2, v2)
        )

    if not ok(0, 0):
        return None
    came: Dict[Cell, Optional[Cell]] = {(0, 0): None}
    frontier = [(0, 0)]
    while frontier:
        nxt = []
        for i, j in frontier:
            for di, dj in ((1, 1), (1, 0), (0, 1)):
                cell = (i + di, j + dj)
                if cell[0] < p and cell[1] < q and cell not in came and ok(*cell):
                    came[cell] = (i, j)
                    nxt.append(cell)
        frontier = nxt
    goal = (p - 1, q - 1)
    if goal not in came:
        return None
    walk = [goal]
    while came[walk[-1]] is not None:
        walk.append(came[walk[-1]])
    return tuple(reversed(walk))


def tle(a: BNamu, b: BNamu) -> Optional[Alignment]:
    """An alignment certificate when a is dominated by b, else None"""
    if a.ambient != b.ambient:
        raise AmbientMismatch("compared namus live over different ambient spaces")
    if a.universe != b.universe:
        return None
    if a.is_single() or b.is_single():
        if a.is_single() and b.is_single():
            return Alignment(((a.nodes[0], b.nodes[0]),))
        return None
    if len(_branch_nodes(a)) != len(_branch_nodes(b)):
        return None

    @lru_cache(maxsize=None)
    def match(c1: Chain, c2: Chain):
        walk = _walk(a, c1, b, c2)
        if walk is None:
            return None
        end1, end2 = c1[-1], c2[-1]
        if a.degree(end1) != b.degree(end2):
            return None
        pairs = [(end1, end2)]
        walks = {(c1, c2): walk}
        if a.degree(end1) == 1:
            return pairs, walks
        x1, y1 = [w for w in a.neighbors(end1) if w != c1[-2]]
        x2, y2 = [w for w in b.neighbors(end2) if w != c2[-2]]
        for s, t in (((x1, x2), (y1, y2)), ((x1, y2), (y1, x2))):
            left = match(_chain(a, end1, s[0]), _chain(b, end2, s[1]))
            if left is None:
                continue
            right = match(_chain(a, end1, t[0]), _chain(b, end2, t[1]))
            if right is None:
                continue
            return pairs + left[0] + right[0], {**walks, **left[1], **right[1]}
        return None

    root1 = a.leaves()[0]
    for root2 in b.leaves():
        found = match(_chain(a, root1, a.neighbors(root1)[0]), _chain(b, root2, b.neighbors(root2)[0]))
        if found is not None:
            return Alignment(tuple([(root1, root2)] + found[0]), found[1])
    return None


def is_tle(a: BNamu, b: BNamu) -> bool:
    return tle(a, b) is not None
