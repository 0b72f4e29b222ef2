# src/branchwidth/bdtree/transforms.py
"""Forking and splitting: rebuild one region of a decomposition so that the
parts of V_x and the rest hang off separate subtrees. Neither increases width.
"""
import logging
from itertools import count
from typing import Dict, FrozenSet, Iterable, Iterator, Optional, Set, Tuple

from branchwidth.arrangement import Arrangement
from branchwidth.bdtree.predicates import DecompositionView
from branchwidth.bdtree.tree import DecTree, smoothed
from branchwidth.exceptions import PreconditionViolated

logger = logging.getLogger(__name__)


def _view(t: DecTree, a: Arrangement, x_parts: FrozenSet[int], base: Optional[DecTree], x: Optional[int]) -> DecompositionView:
    """The view from base node x, or from a caterpillar base with V_x = ``x_parts``"""
    if not x_parts:
        raise PreconditionViolated("V_x is empty")
    if base is None or x is None:
        base, x = _flat_base(a, x_parts)
    elif base.descendants_parts(x) != x_parts:
        raise PreconditionViolated(f"base node {x} does not sit above exactly the given parts")
    return DecompositionView(t, a, base, x)


def _flat_base(a: Arrangement, x_parts: FrozenSet[int]) -> Tuple[DecTree, int]:
    """Rooted caterpillar whose node ``x_node`` has exactly ``x_parts`` below it"""
    inside = sorted(x_parts)
    outside = sorted(set(range(a.n)) - x_parts)
    adjacency: Dict[int, Set[int]] = {}
    leaf_map: Dict[int, int] = {}

    def chain(parts) -> int:
        top = None
        for p in parts:
            leaf = len(adjacency)
            adjacency[leaf] = set()
            leaf_map[leaf] = p
            if top is None:
                top = leaf
                continue
            join = len(adjacency)
            adjacency[join] = {top, leaf}
            adjacency[top].add(join)
            adjacency[leaf].add(join)
            top = join
        return top

    x_node = chain(inside)
    rest = chain(outside)
    if rest is None:
        root = x_node
    else:
        root = len(adjacency)
        adjacency[root] = {x_node, rest}
        adjacency[x_node].add(root)
        adjacency[rest].add(root)
    return DecTree(adjacency, leaf_map, root=root), x_node


def _rooted_minimal(t: DecTree, top: int, avoid: int, leaves: Set[int]) -> Tuple[Dict[int, Set[int]], int]:
    """Minimal subtree of the top-side component spanning ``leaves``, smoothed, with its root"""
    parent = {top: None}
    order = [top]
    for v in order:
        for w in t.neighbors(v):
            if w != avoid and w not in parent:
                parent[w] = v
                order.append(w)
    keep: Set[int] = set()
    for leaf in leaves:
        v = leaf
        while v is not None and v not in keep:
            keep.add(v)
            v = parent[v]
    root = top
    while root not in leaves:
        down = [w for w in t.neighbors(root) if w != parent[root] and w in keep]
        if len(down) != 1:
            break
        keep.discard(root)
        root = down[0]
    adjacency = {v: {w for w in t.neighbors(v) if w in keep} for v in keep}
    return smoothed(adjacency, keep={root}), root


def _graft(
    adjacency: Dict[int, Set[int]], piece: Dict[int, Set[int]], root: int, anchor: int, leaves: Set[int], ids: Iterator[int]
) -> None:
    """Copy ``piece`` into ``adjacency`` with fresh internal ids and join its root to ``anchor``"""
    fresh = {}
    for v in piece:
        if v in leaves:
            fresh[v] = v
        else:
            fresh[v] = next(ids)
    for v, ns in piece.items():
        adjacency.setdefault(fresh[v], set()).update(fresh[w] for w in ns)
    adjacency[fresh[root]].add(anchor)
    adjacency[anchor].add(fresh[root])


def _region_pieces(t: DecTree, top: int, avoid: int, x_parts: FrozenSet[int]):
    region = t.side_nodes(avoid, top)
    leaves = [v for v in region if v in t.leaf_map]
    inside = {v for v in leaves if t.leaf_map[v] in x_parts}
    outside = {v for v in leaves if t.leaf_map[v] not in x_parts}
    return region, inside, outside


def fork(
    t: DecTree, a: Arrangement, v: int, x_parts: Iterable[int], base: Optional[DecTree] = None, x: Optional[int] = None
) -> DecTree:
    """Fork at v by V_x: needs an improper x-blocking path through v"""
    x_parts = frozenset(x_parts)
    view = _view(t, a, x_parts, base, x)
    paths = [p for p in view.blocking_paths if p[1] == v and view.improper_blocking(p)]
    if t.degree(v) != 3 or not paths:
        raise PreconditionViolated(f"node {v} is not the center of an improper blocking path")
    v1, _, v2 = paths[0]
    if view.lam_x(v, v1) < view.lam_x(v, v2):
        v1, v2 = v2, v1
    v3 = next(w for w in t.neighbors(v) if w not in (v1, v2))

    region, inside, outside = _region_pieces(t, v3, v, x_parts)
    x_piece, x_root = _rooted_minimal(t, v3, v, inside)
    rest_piece, rest_root = _rooted_minimal(t, v3, v, outside)

    adjacency = {w: set(ns) - region for w, ns in t.adjacency.items() if w not in region}
    v_prime = max(t.adjacency) + 1
    adjacency[v].discard(v2)
    adjacency[v2].discard(v)
    adjacency[v_prime] = {v, v2}
    adjacency[v].add(v_prime)
    adjacency[v2].add(v_prime)
    ids = count(v_prime + 1)
    _graft(adjacency, x_piece, x_root, v, inside, ids)
    _graft(adjacency, rest_piece, rest_root, v_prime, outside, ids)
    logger.debug(f"Forked at {v} ({v1}-{v}-{v2}), regrafted {len(inside)}+{len(outside)} leaves")
    return DecTree(adjacency, t.leaf_map, t.root if t.root not in region else None)


def split(
    t: DecTree,
    a: Arrangement,
    edge: Tuple[int, int],
    x_parts: Iterable[int],
    base: Optional[DecTree] = None,
    x: Optional[int] = None,
) -> DecTree:
    """Split at uv by V_x: uv must improperly guard v or be improper degenerate, with (u, v) mixed"""
    x_parts = frozenset(x_parts)
    u, v = edge
    view = _view(t, a, x_parts, base, x)
    improper_degenerate = view.x_degenerate and any(
        set(e) == {u, v} for e in view.improper_degenerate_edges
    )
    if not (view.improper_guard(u, v) or improper_degenerate) or not view.mixed(u, v):
        raise PreconditionViolated(f"edge {u}-{v} does not admit a split")

    region, inside, outside = _region_pieces(t, v, u, x_parts)
    x_piece, x_root = _rooted_minimal(t, v, u, inside)
    rest_piece, rest_root = _rooted_minimal(t, v, u, outside)

    gone = region - {v}
    adjacency = {w: set(ns) - gone for w, ns in t.adjacency.items() if w not in gone}
    ids = count(max(t.adjacency) + 1)
    _graft(adjacency, x_piece, x_root, v, inside, ids)
    _graft(adjacency, rest_piece, rest_root, v, outside, ids)
    logger.debug(f"Split at {u}-{v}, regrafted {len(inside)}+{len(outside)} leaves")
    return DecTree(adjacency, t.leaf_map, t.root if t.root not in gone else None)
