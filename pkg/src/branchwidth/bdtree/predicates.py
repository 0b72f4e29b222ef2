# src/branchwidth/bdtree/predicates.py
"""Purity and protection predicates of a decomposition relative to a base node.

Everything is evaluated directly from the definitions on a decomposition t
of a set V_0 of parts, a rooted base decomposition of the whole arrangement
and one of its nodes x. These predicates are not on the solver's hot path;
they back the reduced namus used by the brute-force full sets and the
property tests of the solver.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from branchwidth.arrangement import Arrangement
from branchwidth.bdtree.namus import canonical_namu
from branchwidth.bdtree.tree import DecTree
from branchwidth.exceptions import ScopeMismatch
from branchwidth.linalg import Subspace, dim_intersect, subspace_contains, subspace_intersect
from branchwidth.namu.core import BNamu

logger = logging.getLogger(__name__)

Directed = Tuple[int, int]


def boundary_space(a: Arrangement, base: DecTree, x: int) -> Subspace:
    """B_x = span(V_x) ∩ span(V - V_x)"""
    inside = base.descendants_parts(x)
    outside = frozenset(range(a.n)) - inside
    return subspace_intersect(a.span(inside), a.span(outside))


def below(base: DecTree, x: int) -> List[int]:
    """Base nodes y < x"""
    out = []
    stack = list(base.children(x))
    while stack:
        y = stack.pop()
        out.append(y)
        stack.extend(base.children(y))
    return sorted(out)


@dataclass(frozen=True)
class PredicateReport:
    x: int
    degenerate_edges: Tuple[Directed, ...]
    guarding: Tuple[Directed, ...]
    improper_guarding: Tuple[Directed, ...]
    blocking_paths: Tuple[Tuple[int, int, int], ...]
    improper_blocking_paths: Tuple[Tuple[int, int, int], ...]
    blocked_nodes: FrozenSet[int]
    x_degenerate: bool
    improper_degenerate_edges: Tuple[Directed, ...]
    x_disjoint: bool
    x_pure: bool
    totally_pure: bool
    protected: Tuple[Directed, ...]
    k_safe: Optional[bool] = None


class DecompositionView:
    """A decomposition t of V_0 seen from base node x"""

    def __init__(self, t: DecTree, a: Arrangement, base: DecTree, x: int):
        self.t = t
        self.a = a
        self.base = base
        self.x = x
        self.v0 = t.parts
        self.vx = base.descendants_parts(x)
        if not self.vx <= self.v0:
            raise ScopeMismatch(
                f"parts {sorted(p + 1 for p in self.vx - self.v0)} of base node {x} are not in the decomposition"
            )
        self.bx = boundary_space(a, base, x)
        self._degenerate_cache: Dict[int, bool] = {}

    def at(self, y: int) -> "DecompositionView":
        return DecompositionView(self.t, self.a, self.base, y)

    # sides ------------------------------------------------------------------

    def lx(self, u: int, v: int) -> FrozenSet[int]:
        """V_x parts on v's side of uv"""
        return self.t.side_parts(u, v) & self.vx

    def side_space(self, u: int, v: int) -> Subspace:
        return subspace_intersect(self.a.span(self.lx(u, v)), self.bx)

    def lam_x(self, u: int, v: int) -> int:
        return dim_intersect(self.a.span(self.lx(u, v)), self.a.span(self.lx(v, u)))

    def mixed(self, u: int, v: int) -> bool:
        side = self.t.side_parts(u, v)
        return bool(side & self.vx) and bool(side - self.vx)

    def cuts(self, u: int, v: int, parts: FrozenSet[int]) -> bool:
        return bool(self.t.side_parts(u, v) & parts) and bool(self.t.side_parts(v, u) & parts)

    def _others(self, v: int, *skip: int) -> Tuple[int, ...]:
        return tuple(w for w in self.t.neighbors(v) if w not in skip)

    # edges ------------------------------------------------------------------

    def is_degenerate_edge(self, u: int, v: int) -> bool:
        return self.side_space(u, v) == self.side_space(v, u)

    def guards(self, u: int, v: int) -> bool:
        """uv x-guards its end v"""
        inner, outer = self.side_space(u, v), self.side_space(v, u)
        return inner != outer and subspace_contains(outer, inner)

    def is_guarding(self, u: int, v: int) -> bool:
        return self.guards(u, v) or self.guards(v, u)

    def _splits_x_twice(self, u: int, v: int) -> bool:
        others = self._others(v, u)
        return len(others) == 2 and all(self.lx(v, w) for w in others)

    def improper_guard(self, u: int, v: int) -> bool:
        return self.guards(u, v) and self._splits_x_twice(u, v) and self.mixed(u, v)

    @cached_property
    def guarding(self) -> List[Directed]:
        out = []
        for u, v in self.t.edges:
            for p, q in ((u, v), (v, u)):
                if self.guards(p, q):
                    out.append((p, q))
        return out

    @cached_property
    def blocking_paths(self) -> List[Tuple[int, int, int]]:
        out = []
        for v in self.t.nodes:
            ns = self.t.neighbors(v)
            for i, u in enumerate(ns):
                for w in ns[i + 1:]:
                    if (
                        self.side_space(u, v) == self.side_space(v, w)
                        and self.side_space(w, v) == self.side_space(v, u)
                        and not self.is_degenerate_edge(u, v)
                        and not self.is_degenerate_edge(v, w)
                        and not self.is_guarding(u, v)
                        and not self.is_guarding(v, w)
                    ):
                        out.append((u, v, w))
        return out

    def improper_blocking(self, path: Tuple[int, int, int]) -> bool:
        u, v, w = path
        for s in self._others(v, u, w):
            if self.mixed(v, s) and self.lx(v, u) and self.lx(v, w) and self.lx(v, s):
                return True
        return False

    @cached_property
    def blocked_nodes(self) -> Set[int]:
        blocked: Set[int] = set()
        for u, v in self.guarding:
            if self._splits_x_twice(u, v):
                blocked |= set(self.t.side_nodes(u, v)) - {v}
        for u, v, w in self.blocking_paths:
            for s in self._others(v, u, w):
                blocked |= set(self.t.side_nodes(v, s))
        return blocked

    def edge_blocked(self, u: int, v: int) -> bool:
        return u in self.blocked_nodes or v in self.blocked_nodes

    # decomposition-level ----------------------------------------------------

    def degenerate_at(self, y: int) -> bool:
        """(T, L) is y-degenerate (recursive over the base nodes below y)"""
        if y not in self._degenerate_cache:
            self._degenerate_cache[y] = bool(self.at(y)._improper_degenerate(self))
        return self._degenerate_cache[y]

    def _improper_degenerate(self, root_view: "DecompositionView") -> List[Directed]:
        lower = [z for z in below(self.base, self.x) if root_view.degenerate_at(z)]
        out = []
        for u, v in self.t.edges:
            if not self.cuts(u, v, self.vx) or not self.is_degenerate_edge(u, v):
                continue
            if any(self.cuts(u, v, self.base.descendants_parts(z)) for z in lower):
                continue
            out.append((u, v))
        return out

    @cached_property
    def improper_degenerate_edges(self) -> List[Directed]:
        return self._improper_degenerate(self)

    @property
    def x_degenerate(self) -> bool:
        return self.degenerate_at(self.x)

    def x_disjoint(self) -> bool:
        if self.v0 == self.vx:
            return True
        ends = {w for e in self.improper_degenerate_edges for w in e}
        for u, v in self.t.edges:
            for p, q in ((u, v), (v, u)):
                if self.t.side_parts(p, q) == self.vx and q in ends:
                    return True
        return False

    def x_pure(self) -> bool:
        if self.x_degenerate:
            return self.x_disjoint()
        return not any(self.improper_guard(u, v) for u, v in self.guarding) and not any(
            self.improper_blocking(p) for p in self.blocking_paths
        )

    def totally_pure(self) -> bool:
        for y in self.base.nodes:
            if self.base.descendants_parts(y) <= self.v0 and not self.at(y).x_pure():
                return False
        return True

    def protected(self, u: int, v: int) -> bool:
        if self.edge_blocked(u, v) and self.guards(u, v):
            return True
        for z in [self.x] + below(self.base, self.x):
            vz = self.base.descendants_parts(z)
            if self.cuts(u, v, vz) and self.degenerate_at(z) and self.t.side_parts(u, v) <= vz:
                return True
        return False

    @cached_property
    def protected_pairs(self) -> List[Directed]:
        return [(p, q) for u, v in self.t.edges for p, q in ((u, v), (v, u)) if self.protected(p, q)]

    def _cost(self, u: int, v: int) -> int:
        """Safety cost of uv seen from u"""
        far = self.a.span(self.t.side_parts(u, v))
        near = self.a.span(self.t.side_parts(v, u))
        return dim_intersect(far, near) + self.bx.dim - dim_intersect(self.bx, near)

    def _outward_safe(self, kept: Set[int], k: int) -> bool:
        """Every protected pair pointing away from kept costs at most k"""
        for u, v in self.protected_pairs:
            if v in kept or not self.t.side_nodes(v, u) & kept:
                continue
            if self._cost(u, v) > k:
                return False
        return True

    def safe_anchor(self, k: int) -> Optional[Directed]:
        """First improper degenerate edge the single-node namu can sit on"""
        for u, v in self.improper_degenerate_edges:
            if self._cost(u, v) <= k and self._outward_safe({u, v}, k):
                return u, v
        return None

    def kept_nodes(self) -> Set[int]:
        drop = {v for _, v in self.protected_pairs}
        return {v for v in self.t.nodes if v not in drop}

    def k_safe(self, k: int) -> bool:
        if self.x_degenerate:
            return self.safe_anchor(k) is not None
        return self._outward_safe(self.kept_nodes(), k)


def decomposition_predicates(
    t: DecTree, a: Arrangement, base: DecTree, x: int, k: Optional[int] = None
) -> PredicateReport:
    view = DecompositionView(t, a, base, x)
    report = PredicateReport(
        x=x,
        degenerate_edges=tuple((u, v) for u, v in t.edges if view.is_degenerate_edge(u, v)),
        guarding=tuple(view.guarding),
        improper_guarding=tuple((u, v) for u, v in view.guarding if view.improper_guard(u, v)),
        blocking_paths=tuple(view.blocking_paths),
        improper_blocking_paths=tuple(p for p in view.blocking_paths if view.improper_blocking(p)),
        blocked_nodes=frozenset(view.blocked_nodes),
        x_degenerate=view.x_degenerate,
        improper_degenerate_edges=tuple(view.improper_degenerate_edges) if view.x_degenerate else (),
        x_disjoint=view.x_disjoint(),
        x_pure=view.x_pure(),
        totally_pure=view.totally_pure(),
        protected=tuple(view.protected_pairs),
        k_safe=view.k_safe(k) if k is not None else None,
    )
    logger.debug(f"Predicates at base node {x}: {report}")
    return report


def reduced_namu(t: DecTree, a: Arrangement, base: DecTree, x: int, k: Optional[int] = None) -> BNamu:
    """Canonical B_x-namu of t restricted to the unprotected part of the tree.

    A degenerate t collapses to one node at the end of an improper degenerate
    edge, the first k-safe one when k is given.
    """
    view = DecompositionView(t, a, base, x)
    full = canonical_namu(t, a, view.bx)
    if view.x_degenerate:
        edge = view.safe_anchor(k) if k is not None else None
        anchor = (edge or view.improper_degenerate_edges[0])[0]
        return full.restricted([anchor])
    return full.restricted(view.kept_nodes())
