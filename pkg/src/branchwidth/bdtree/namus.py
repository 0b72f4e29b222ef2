# src/branchwidth/bdtree/namus.py
"""Canonical B-namus of branch-decompositions."""
from branchwidth.arrangement import Arrangement
from branchwidth.bdtree.tree import DecTree, edge_key
from branchwidth.exceptions import AmbientMismatch
from branchwidth.linalg import Subspace, dim_intersect, subspace_intersect
from branchwidth.namu.core import BNamu


def canonical_namu(t: DecTree, a: Arrangement, b: Subspace) -> BNamu:
    """alpha(v, vw) = B ∩ span of the parts on v's side; lambda(vw) = dim of the cut"""
    if b.ambient_dim != a.r or b.spec != a.spec:
        raise AmbientMismatch(f"B lives in {b.spec}^{b.ambient_dim}, arrangement in {a.spec}^{a.r}")
    alpha = {}
    lam = {}
    for u, v in t.edges:
        side_u = a.span(t.side_parts(v, u))
        side_v = a.span(t.side_parts(u, v))
        alpha[(u, v)] = subspace_intersect(b, side_u)
        alpha[(v, u)] = subspace_intersect(b, side_v)
        lam[edge_key(u, v)] = dim_intersect(side_u, side_v)
    universe = subspace_intersect(b, a.span(t.parts))
    return BNamu.build(t.adjacency, alpha, lam, universe, b)
