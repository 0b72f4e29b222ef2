# src/branchwidth/namu/trim.py
"""Trimming, compressing and compactification of B-namus."""
import logging
from typing import Dict, List, Optional, Set, Tuple

from branchwidth.bdtree.tree import edge_key
from branchwidth.linalg import subspace_contains
from branchwidth.namu.core import BNamu

logger = logging.getLogger(__name__)

Path = Tuple[int, ...]


def is_degenerate(g: BNamu, u: int, v: int) -> bool:
    return g.alpha[(u, v)] == g.alpha[(v, u)]


def degenerate_edges(g: BNamu) -> List[Tuple[int, int]]:
    return [(u, v) for u, v in g.edges if is_degenerate(g, u, v)]


def guards(g: BNamu, u: int, v: int) -> bool:
    """True iff edge uv guards its end v"""
    inner, outer = g.alpha[(v, u)], g.alpha[(u, v)]
    return inner != outer and subspace_contains(outer, inner)


def is_guarding(g: BNamu, u: int, v: int) -> bool:
    return guards(g, u, v) or guards(g, v, u)


def guarding_edges(g: BNamu) -> List[Tuple[int, int]]:
    """Directed pairs (u, v) such that uv guards v"""
    found = []
    for u, v in g.edges:
        if guards(g, u, v):
            found.append((u, v))
        if guards(g, v, u):
            found.append((v, u))
    return found


def blocking_paths(g: BNamu) -> List[Tuple[int, int, int]]:
    """Paths xyz (x < z) with mirrored alpha pairs on two plain edges"""
    found = []
    for y in g.nodes:
        ns = g.neighbors(y)
        for i, x in enumerate(ns):
            for z in ns[i + 1:]:
                if (
                    g.alpha[(x, y)] == g.alpha[(y, z)]
                    and g.alpha[(z, y)] == g.alpha[(y, x)]
                    and not _plain_edge_fails(g, x, y)
                    and not _plain_edge_fails(g, y, z)
                ):
                    found.append((x, y, z))
    return found


def _plain_edge_fails(g: BNamu, u: int, v: int) -> bool:
    return is_degenerate(g, u, v) or is_guarding(g, u, v)


def blocked_nodes(g: BNamu) -> Set[int]:
    blocked: Set[int] = set()
    for u, v in guarding_edges(g):
        blocked |= g.component(v, avoid=u) - {v}
    for x, y, z in blocking_paths(g):
        for w in g.neighbors(y):
            if w not in (x, z):
                blocked |= g.component(w, avoid=y)
    return blocked


def trim(g: BNamu) -> BNamu:
    if degenerate_edges(g):
        return BNamu.single_node(g.universe, g.ambient, node=min(g.nodes))
    blocked = blocked_nodes(g)
    if not blocked:
        return g
    return g.restricted(v for v in g.nodes if v not in blocked)


# compressing -----------------------------------------------------------------


def _chain_continues(g: BNamu, prev: int, mid: int, nxt: int) -> bool:
    return g.alpha[(prev, mid)] == g.alpha[(mid, nxt)] and g.alpha[(mid, prev)] == g.alpha[(nxt, mid)]


def find_compressions(g: BNamu) -> List[Path]:
    """Every path along which one compressing step applies"""
    found: List[Path] = []
    for v1 in g.nodes:
        if g.degree(v1) != 2:
            continue
        v0, v2 = g.neighbors(v1)
        if _chain_continues(g, v0, v1, v2) and g.lam_of(v0, v1) == g.lam_of(v1, v2):
            found.append((v0, v1, v2))
    for v0 in g.nodes:
        for v1 in g.neighbors(v0):
            path = [v0, v1]
            while g.degree(path[-1]) == 2:
                nxt = next(w for w in g.neighbors(path[-1]) if w != path[-2])
                if nxt in path or not _chain_continues(g, path[-2], path[-1], nxt):
                    break
                path.append(nxt)
                if len(path) >= 4 and _lam_sandwiched(g, path):
                    found.append(tuple(path))
    return found


def _lam_sandwiched(g: BNamu, path: List[int]) -> bool:
    lams = [g.lam_of(a, b) for a, b in zip(path, path[1:])]
    return all(lams[0] <= x <= lams[-1] for x in lams[1:-1])


def compress_step(g: BNamu, path: Path) -> BNamu:
    """Apply one compressing step; returns the namu with the contracted edges gone"""
    return _compress(g, path)[0]


def _compress(g: BNamu, path: Path) -> Tuple[BNamu, int, int]:
    """Contract, returning (namu, kept node, far end)"""
    if len(path) == 3:
        keep, drop, far = path
        removed = [drop]
        src = drop
    else:
        keep, far = path[1], path[-1]
        removed = list(path[2:-1])
        src = path[-2]
    adjacency = {v: set(ns) for v, ns in g.adjacency.items() if v not in removed}
    alpha = {inc: s for inc, s in g.alpha.items() if inc[0] not in removed and inc[1] not in removed}
    lam = {e: x for e, x in g.lam.items() if e[0] not in removed and e[1] not in removed}
    adjacency[keep].discard(path[1] if len(path) == 3 else path[2])
    adjacency[far].discard(src)
    adjacency[keep].add(far)
    adjacency[far].add(keep)
    alpha[(keep, far)] = g.alpha[(src, far)]
    alpha[(far, keep)] = g.alpha[(far, src)]
    lam[edge_key(keep, far)] = g.lam_of(src, far)
    return BNamu.build(adjacency, alpha, lam, g.universe, g.ambient), keep, far


def compactify(g: BNamu) -> BNamu:
    return compactify_with_paths(trim(g))[0]


def compactify_with_paths(t: BNamu, order: Optional[List[int]] = None) -> Tuple[BNamu, Dict[Tuple[int, int], Path]]:
    """Compress ``t`` to a fixed point, tracking each new edge as a path of ``t``.

    The returned map sends every directed edge (u, v) of the result to the
    node sequence u..v it replaces in ``t``. ``order`` optionally picks which
    of the available compressions is applied at each step (by index, taken
    modulo the number available) and only exists for order-independence checks.
    """
    paths: Dict[Tuple[int, int], Path] = {}
    for u, v in t.edges:
        paths[(u, v)] = (u, v)
        paths[(v, u)] = (v, u)
    current = t
    step = 0
    while True:
        options = find_compressions(current)
        if not options:
            break
        choice = options[order[step % len(order)] % len(options)] if order else options[0]
        step += 1
        nodes = list(choice) if len(choice) == 3 else list(choice[1:])
        joined: Tuple[int, ...] = (nodes[0],)
        for a, b in zip(nodes, nodes[1:]):
            joined = joined + paths[(a, b)][1:]
        for a, b in zip(nodes, nodes[1:]):
            paths.pop((a, b))
            paths.pop((b, a))
        current, keep, far = _compress(current, choice)
        paths[(keep, far)] = joined
        paths[(far, keep)] = tuple(reversed(joined))
    if step:
        logger.debug(f"Compressed {t.size} nodes to {current.size} in {step} steps")
    return current, paths
