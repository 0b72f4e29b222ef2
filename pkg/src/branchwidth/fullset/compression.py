# src/branchwidth/fullset/compression.py
"""Iterative compression: grow a width-k decomposition one part at a time.

Adding part i to a width-k decomposition of the first i-1 parts gives one
of width at most 2k; that decomposition is the base of a full-set run which
either finds width k for the first i parts or proves there is none.
"""
import logging
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, TypeVar

from branchwidth.arrangement import Arrangement, preprocess
from branchwidth.bdtree.tree import DecTree, width
from branchwidth.exceptions import AboveK, RejectedAboveK, WidthExceeded
from branchwidth.fullset.backtrack import backtrack_decomposition
from branchwidth.fullset.dp import run_fullset_dp
from branchwidth.linalg import Mat
from branchwidth.schemas import TraceRecord
from branchwidth.transcript import boundary_bases, build_transcript

logger = logging.getLogger(__name__)

T = TypeVar("T")


def _extend(t: DecTree, part: int) -> DecTree:
    u, v = t.edges[0]
    return t.attach_leaf(u, v, part)


def compress_step(
    a: Arrangement,
    k: int,
    base: DecTree,
    cap: Optional[int] = None,
    trace: Optional[bool] = None,
    records: Optional[List[TraceRecord]] = None,
) -> DecTree:
    """Width-k decomposition of ``a`` from a base decomposition of width at most 2k.

    A base already of width k is returned as is; ``AboveK`` when the full-set
    run finds nothing.
    """
    base = base.rooted()
    try:
        boundary_bases(base, a, k)
        logger.debug(f"Base of {a.n} parts already has width <= {k}")
        return base
    except WidthExceeded as exc:
        logger.debug(f"Base of {a.n} parts: {exc}")
    tr = build_transcript(base, a, boundary_bases(base, a, 2 * k))
    table = run_fullset_dp(a, k, base, tr, cap=cap, trace=trace)
    if records is not None:
        records.extend(table.trace)
    if not table.decided:
        raise AboveK(k, step=a.n)
    return backtrack_decomposition(table)


def iterative_compression(
    a: Arrangement,
    k: int,
    cap: Optional[int] = None,
    trace: Optional[bool] = None,
    records: Optional[List[TraceRecord]] = None,
) -> DecTree:
    """Rooted decomposition of ``a`` of width at most k, or ``AboveK`` naming the failing prefix"""
    if a.n == 0:
        raise RejectedAboveK(None, "no-parts")
    if a.n == 1:
        return DecTree.single(0)
    t = DecTree.pair(0, 1)
    if width(t, a.sub_arrangement(range(2)))[0] > k:
        raise AboveK(k, step=2)
    for i in range(3, a.n + 1):
        sub = a.sub_arrangement(range(i))
        t = compress_step(sub, k, _extend(t.unrooted(), i - 1), cap=cap, trace=trace, records=records).unrooted()
        logger.info(f"Parts 1..{i} of {a.n} have width <= {k}")
    return t.rooted()


def _attach_parts(t: Optional[DecTree], parts: Iterable[int]) -> Optional[DecTree]:
    for part in parts:
        if t is None:
            t = DecTree.single(part)
        elif not t.edges:
            t = DecTree.pair(t.leaf_map[t.nodes[0]], part)
        else:
            t = _extend(t.unrooted(), part)
    return t


def decompose(
    mat: Mat,
    part_sizes: Sequence[int],
    k: int,
    cap: Optional[int] = None,
    trace: Optional[bool] = None,
    records: Optional[List[TraceRecord]] = None,
) -> DecTree:
    """Rooted decomposition of width at most k over the input parts.

    Raises ``RejectedAboveK`` when preprocessing already proves width > k and
    ``AboveK`` when the full-set runs do.
    """
    pre = preprocess(mat, part_sizes, k)
    t: Optional[DecTree] = None
    if pre.arrangement.n:
        t = iterative_compression(pre.arrangement, k, cap=cap, trace=trace, records=records)
        t = t.relabel_parts({i: part for i, part in enumerate(pre.kept)})
    t = _attach_parts(t, pre.zero_parts)
    if t is None:
        raise RejectedAboveK(None, "no-parts")
    return t.normalized().rooted()


def smallest_k(attempt: Callable[[int], T], limit: int) -> Tuple[int, T]:
    """First k in 0..limit at which ``attempt`` does not raise AboveK or RejectedAboveK"""
    for k in range(limit + 1):
        try:
            return k, attempt(k)
        except (AboveK, RejectedAboveK) as exc:
            logger.info(f"k={k}: {exc}")
    raise AboveK(limit)


def minimum_width(
    mat: Mat, part_sizes: Sequence[int], cap: Optional[int] = None, max_k: Optional[int] = None
) -> Tuple[int, DecTree]:
    """Smallest k with a width-k decomposition, found by trying k = 0, 1, ..."""
    limit = mat.rows if max_k is None else max_k
    return smallest_k(lambda k: decompose(mat, part_sizes, k, cap=cap), limit)
