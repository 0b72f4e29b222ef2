# src/branchwidth/oracle.py
"""Exhaustive ground truth for small arrangements.

Nothing here touches the full-set program: widths come straight from the
cut dimensions of every decomposition and full sets from the predicates
of bdtree.
"""
import logging
from typing import Iterator, Optional, Set, Tuple

import numpy as np

from branchwidth.arrangement import Arrangement
from branchwidth.bdtree.predicates import decomposition_predicates, reduced_namu
from branchwidth.bdtree.tree import DecTree, width
from branchwidth.config import settings
from branchwidth.exceptions import EmptySubset, TooLarge
from branchwidth.namu import BNamu, compactify, coordinatize

logger = logging.getLogger(__name__)


class TreeIterator:
    """Every unrooted decomposition tree with leaves 0..n-1, by leaf insertion"""

    def __init__(self, n: int):
        if n < 1:
            raise EmptySubset("no parts to enumerate trees over")
        self.n = n

    def __iter__(self) -> Iterator[DecTree]:
        if self.n == 1:
            yield DecTree.single(0)
            return
        if self.n == 2:
            yield DecTree.pair(0, 1)
            return
        star = DecTree.from_edges([(0, 3), (1, 3), (2, 3)], {0: 0, 1: 1, 2: 2})
        yield from self._grow(star, 3)

    def _grow(self, t: DecTree, part: int) -> Iterator[DecTree]:
        if part == self.n:
            yield t
            return
        for u, v in t.edges:
            yield from self._grow(t.attach_leaf(u, v, part), part + 1)

    def __len__(self) -> int:
        # (2n - 5)!!
        total = 1
        for i in range(3, 2 * self.n - 4, 2):
            total *= i
        return total


def brute_branchwidth(a: Arrangement, max_parts: Optional[int] = None) -> Tuple[int, DecTree]:
    """Minimum width over all decompositions, with the first tree attaining it"""
    cap = max_parts if max_parts is not None else settings.oracle.max_parts
    if a.n > cap:
        raise TooLarge(f"{a.n} parts is above the oracle cap of {cap}")
    best: Optional[Tuple[int, DecTree]] = None
    seen = 0
    for t in TreeIterator(a.n):
        seen += 1
        w, _ = width(t, a)
        if best is None or w < best[0]:
            best = (w, t)
            if w == 0:
                break
    logger.debug(f"Examined {seen} trees over {a.n} parts, best width {best[0]}")
    return best


def brute_fullset(
    a: Arrangement,
    base: DecTree,
    x: int,
    k: int,
    basis: Optional[np.ndarray] = None,
    max_parts: Optional[int] = None,
) -> Set[BNamu]:
    """Compactified reduced namus of the good width-k decompositions of V_x.

    A decomposition is good when it is totally pure and k-safe with respect
    to x. ``basis`` re-expresses the namus in the coordinates of a boundary
    basis of x, the way the full-set tables store them.
    """
    cap = max_parts if max_parts is not None else settings.oracle.fullset_max_parts
    parts = sorted(base.descendants_parts(x))
    if len(parts) > cap:
        raise TooLarge(f"{len(parts)} parts below base node {x} is above the cap of {cap}")
    relabel = dict(enumerate(parts))
    out: Set[BNamu] = set()
    for shape in TreeIterator(len(parts)):
        t = shape.relabel_parts(relabel)
        if width(t, a)[0] > k:
            continue
        report = decomposition_predicates(t, a, base, x, k)
        if not (report.totally_pure and report.k_safe):
            continue
        g = compactify(reduced_namu(t, a, base, x, k))
        out.add(coordinatize(g, basis) if basis is not None else g)
    logger.debug(f"Base node {x}: {len(out)} distinct compact namus over {len(parts)} parts")
    return out
