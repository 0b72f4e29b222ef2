# src/branchwidth/namu/safety.py
"""k-safe extensions of a namu's trim.

The trim embeds into the namu as itself (kept node ids), or, when the trim
is a single node, at a subdividing node of a degenerate edge. Every edge the
trim does not cover must then satisfy
``lambda(e) + dim U - dim alpha(v, e) <= k`` at the end v facing the trim.
"""
from typing import Optional, Tuple

from branchwidth.exceptions import NotTrimOf
from branchwidth.namu.core import BNamu
from branchwidth.namu.trim import degenerate_edges, trim


def _slack(g: BNamu, v: int, w: int, k: int) -> int:
    """k minus the safety cost of edge vw seen from v"""
    return k - (g.lam_of(v, w) + g.universe.dim - g.alpha[(v, w)].dim)


def _kept_side_safe(g: BNamu, kept: set, k: int) -> bool:
    for u, v in g.edges:
        if u in kept and v in kept:
            continue
        near = u if g.component(u, avoid=v) & kept else v
        far = v if near == u else u
        if _slack(g, near, far, k) < 0:
            return False
    return True


def safe_anchor(g: BNamu, k: int) -> Optional[Tuple[int, int]]:
    """First degenerate edge where the single-node trim can sit safely"""
    for u, v in degenerate_edges(g):
        if _slack(g, u, v, k) < 0:
            continue
        if _kept_side_safe(g, {u, v}, k):
            return u, v
    return None


def ksafe_extension_check(g: BNamu, base: BNamu, k: int) -> bool:
    t = trim(g)
    if base != t:
        raise NotTrimOf(f"{base!r} is not the trim of {g!r}")
    if degenerate_edges(g):
        return safe_anchor(g, k) is not None
    return _kept_side_safe(g, set(t.nodes), k)
