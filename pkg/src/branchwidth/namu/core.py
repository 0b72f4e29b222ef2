# src/branchwidth/namu/core.py
"""B-namus: subcubic trees decorated with subspaces on incidences.

``alpha[(v, w)]`` is the subspace at the incidence of node v with edge vw,
``lam[edge_key(v, w)]`` the integer on edge vw. The two special incidences
are the sentinels ``STAR`` (whose subspace is the universe U) and ``ZERO``.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Mapping, Optional, Set, Tuple, Union

import numpy as np

from branchwidth.bdtree.tree import Edge, edge_key
from branchwidth.exceptions import AmbientMismatch, NotSubspace
from branchwidth.linalg import Subspace, dim_intersect, solve_mod, subspace_contains, subspace_intersect

STAR = "*"
ZERO = "0"

Incidence = Union[Tuple[int, int], str]


@dataclass(frozen=True, eq=False)
class BNamu:
    """(T, alpha, lambda, U) over the ambient space B"""
    adjacency: Mapping[int, Tuple[int, ...]]
    alpha: Mapping[Tuple[int, int], Subspace]
    lam: Mapping[Edge, int]
    universe: Subspace
    ambient: Subspace

    @classmethod
    def build(
        cls,
        adjacency: Mapping[int, Iterable[int]],
        alpha: Mapping[Tuple[int, int], Subspace],
        lam: Mapping[Tuple[int, int], int],
        universe: Subspace,
        ambient: Subspace,
    ) -> "BNamu":
        return cls(
            {v: tuple(sorted(ns)) for v, ns in adjacency.items()},
            dict(alpha),
            {edge_key(*e): x for e, x in lam.items()},
            universe,
            ambient,
        )

    @classmethod
    def single_node(cls, universe: Subspace, ambient: Subspace, node: int = 0) -> "BNamu":
        return cls({node: ()}, {}, {}, universe, ambient)

    # structure --------------------------------------------------------------

    @property
    def nodes(self) -> Tuple[int, ...]:
        return tuple(sorted(self.adjacency))

    @property
    def edges(self) -> List[Edge]:
        return sorted(self.lam)

    @property
    def size(self) -> int:
        return len(self.adjacency)

    def is_single(self) -> bool:
        return len(self.adjacency) == 1

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def leaves(self) -> List[int]:
        return [v for v in self.nodes if self.degree(v) <= 1]

    def a(self, incidence: Incidence) -> Subspace:
        """alpha at an incidence or at one of the sentinels"""
        if incidence == STAR:
            return self.universe
        if incidence == ZERO:
            return Subspace.zero(self.universe.ambient_dim, self.universe.spec)
        return self.alpha[incidence]

    def lam_of(self, u: int, v: int) -> int:
        return self.lam[edge_key(u, v)]

    @property
    def width(self) -> int:
        return max(self.lam.values(), default=0)

    def component(self, start: int, avoid: Optional[int]) -> Set[int]:
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in self.adjacency[v]:
                if w != avoid and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def diameter(self) -> int:
        if self.is_single():
            return 0
        far = self._farthest(self.nodes[0])[0]
        return self._farthest(far)[1]

    def _farthest(self, start: int) -> Tuple[int, int]:
        dist = {start: 0}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in self.adjacency[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    stack.append(w)
        node = max(dist, key=lambda x: (dist[x], -x))
        return node, dist[node]

    # validity ---------------------------------------------------------------

    def violations(self) -> List[str]:
        """Names of the namu conditions this quadruple breaks"""
        problems = []
        if any(len(ns) > 3 for ns in self.adjacency.values()):
            problems.append("degree")
        for (v, w), space in self.alpha.items():
            if not subspace_contains(self.universe, space):
                problems.append(f"alpha({v},{w}) outside U")
            for x in self.adjacency[w]:
                if x != v and not subspace_contains(self.alpha[(w, x)], space):
                    problems.append(f"alpha({v},{w}) not inside alpha({w},{x})")
        for (u, v), x in self.lam.items():
            if x < dim_intersect(self.alpha[(u, v)], self.alpha[(v, u)]):
                problems.append(f"lambda({u},{v}) below the two-sided intersection")
        if not subspace_contains(self.ambient, self.universe):
            problems.append("U outside B")
        return problems

    # canonical form ---------------------------------------------------------

    @cached_property
    def key(self) -> tuple:
        """Isomorphism-invariant decorated-tree key"""
        return (self.universe.key, self.ambient.key, _tree_key(self))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BNamu):
            return NotImplemented
        return self.universe.spec == other.universe.spec and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def same_as(self, other: "BNamu") -> bool:
        """Equality on the nose: identical ids, decorations and universe"""
        return (
            dict(self.adjacency) == dict(other.adjacency)
            and dict(self.alpha) == dict(other.alpha)
            and dict(self.lam) == dict(other.lam)
            and self.universe == other.universe
        )

    # derived namus ----------------------------------------------------------

    def renumbered(self) -> "BNamu":
        """Node ids 0..n-1 in breadth-first order from the smallest node"""
        order = {self.nodes[0]: 0}
        queue = [self.nodes[0]]
        while queue:
            v = queue.pop(0)
            for w in self.adjacency[v]:
                if w not in order:
                    order[w] = len(order)
                    queue.append(w)
        return BNamu.build(
            {order[v]: [order[w] for w in ns] for v, ns in self.adjacency.items()},
            {(order[v], order[w]): s for (v, w), s in self.alpha.items()},
            {(order[u], order[v]): x for (u, v), x in self.lam.items()},
            self.universe,
            self.ambient,
        )

    def subdivide(self, u: int, v: int) -> Tuple["BNamu", int]:
        """Insert a node on uv; the new incidences copy the end they face"""
        w = max(self.adjacency) + 1
        adjacency = {x: set(ns) for x, ns in self.adjacency.items()}
        adjacency[u].discard(v)
        adjacency[v].discard(u)
        adjacency[u].add(w)
        adjacency[v].add(w)
        adjacency[w] = {u, v}
        alpha = dict(self.alpha)
        at_u, at_v = alpha.pop((u, v)), alpha.pop((v, u))
        alpha[(u, w)] = at_u
        alpha[(w, u)] = at_v
        alpha[(w, v)] = at_u
        alpha[(v, w)] = at_v
        lam = dict(self.lam)
        x = lam.pop(edge_key(u, v))
        lam[edge_key(u, w)] = x
        lam[edge_key(w, v)] = x
        return BNamu.build(adjacency, alpha, lam, self.universe, self.ambient), w

    def restricted(self, keep: Iterable[int]) -> "BNamu":
        """Sub-namu on a connected node set, decorations unchanged"""
        keep = set(keep)
        return BNamu.build(
            {v: [w for w in ns if w in keep] for v, ns in self.adjacency.items() if v in keep},
            {(v, w): s for (v, w), s in self.alpha.items() if v in keep and w in keep},
            {e: x for e, x in self.lam.items() if e[0] in keep and e[1] in keep},
            self.universe,
            self.ambient,
        )

    def dump(self) -> str:
        """Debug text: one line per edge with both incidences and lambda"""
        lines = [f"U={self.universe.rows.tolist()} B=dim {self.ambient.dim}"]
        if self.is_single():
            lines.append(f"node {self.nodes[0]}")
        for u, v in self.edges:
            lines.append(
                f"{u} -- {v}  a({u})={self.alpha[(u, v)].rows.tolist()} "
                f"a({v})={self.alpha[(v, u)].rows.tolist()} lambda={self.lam[(u, v)]}"
            )
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"BNamu(nodes={self.size}, width={self.width}, dimU={self.universe.dim})"


def _tree_key(g: BNamu):
    """AHU encoding from the center, edges carrying (alpha pair, lambda)"""
    centers = _centers(g)

    def encode(child: int, parent: int):
        below = sorted(encode(w, child) for w in g.adjacency[child] if w != parent)
        return (g.alpha[(parent, child)].key, g.alpha[(child, parent)].key, g.lam_of(parent, child), tuple(below))

    if len(centers) == 1:
        c = centers[0]
        return ("node", tuple(sorted(encode(w, c) for w in g.adjacency[c])))
    c1, c2 = centers
    halves = sorted([encode(c1, c2), encode(c2, c1)])
    return ("edge", tuple(halves))


def _centers(g: BNamu) -> List[int]:
    degree = {v: len(ns) for v, ns in g.adjacency.items()}
    remaining = set(degree)
    layer = [v for v, d in degree.items() if d <= 1]
    while len(remaining) > 2:
        nxt = []
        for v in layer:
            remaining.discard(v)
            for w in g.adjacency[v]:
                if w in remaining:
                    degree[w] -= 1
                    if degree[w] == 1:
                        nxt.append(w)
        layer = nxt
    return sorted(remaining)


def _check_same_field(a: Subspace, b: Subspace) -> None:
    if a.spec != b.spec or a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch(f"{a.spec}^{a.ambient_dim} vs {b.spec}^{b.ambient_dim}")


def project(g: BNamu, b2: Subspace) -> BNamu:
    """Intersect every alpha and U with b2; tree and lambda unchanged"""
    _check_same_field(g.ambient, b2)
    if not subspace_contains(g.ambient, b2):
        raise NotSubspace("projection target is not inside the namu's ambient space")
    return BNamu(
        g.adjacency,
        {inc: subspace_intersect(s, b2) for inc, s in g.alpha.items()},
        g.lam,
        subspace_intersect(g.universe, b2),
        b2,
    )


def transform(g: BNamu, matrix: np.ndarray, ambient: Subspace) -> BNamu:
    """Apply a linear map to every subspace (coordinate change into a bigger basis)"""
    return BNamu(
        g.adjacency,
        {inc: s.image(matrix) for inc, s in g.alpha.items()},
        g.lam,
        g.universe.image(matrix),
        ambient,
    )


def truncate(g: BNamu, d: int) -> BNamu:
    """Project onto the first d coordinates and drop the rest"""
    full = Subspace.full(d, g.universe.spec)
    return BNamu(
        g.adjacency,
        {inc: s.truncate(d) for inc, s in g.alpha.items()},
        g.lam,
        g.universe.truncate(d),
        full,
    )


def coordinatize(g: BNamu, basis: np.ndarray) -> BNamu:
    """Re-express a namu living inside span(basis) in coordinates of ``basis``"""
    spec = g.universe.spec
    d = basis.shape[1]

    def coords(s: Subspace) -> Subspace:
        if s.dim == 0:
            return Subspace.zero(d, spec)
        x = solve_mod(basis, s.basis, spec.p)
        if x is None:
            raise NotSubspace("namu subspace is not inside the coordinate basis span")
        return Subspace.span(x, spec, d)

    return BNamu(
        g.adjacency,
        {inc: coords(s) for inc, s in g.alpha.items()},
        g.lam,
        coords(g.universe),
        Subspace.full(d, spec),
    )
