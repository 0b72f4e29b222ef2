# src/branchwidth/namu/models.py
"""Embeddings of subdivided pattern trees into a host tree.

A ``TreeModel`` records, for every directed host edge (h, h2), the pattern
incidence it is sent to: a directed pattern edge (a, b) when the edge lies on
the path subdividing ab (with h on a's side), otherwise ``STAR`` or ``ZERO``
depending on whether the pattern's image lies on h's side.
"""
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from branchwidth.bdtree.tree import Edge, edge_key
from branchwidth.namu.core import STAR, ZERO, Incidence

Adjacency = Mapping[int, Tuple[int, ...]]


@dataclass(frozen=True)
class TreeModel:
    branch: Mapping[int, int]
    incidence: Mapping[Tuple[int, int], Incidence]

    def edge_of(self, h: int, h2: int) -> Optional[Edge]:
        """Pattern edge the host edge subdivides, or None"""
        inc = self.incidence[(h, h2)]
        if isinstance(inc, str):
            return None
        return edge_key(*inc)

    def covers(self, h: int, h2: int) -> bool:
        return not isinstance(self.incidence[(h, h2)], str)

    def branch_of(self, h: int) -> Optional[int]:
        for v, w in self.branch.items():
            if w == h:
                return v
        return None


@dataclass(frozen=True)
class PairModel:
    host: Adjacency
    first: TreeModel
    second: TreeModel

    def models(self) -> Tuple[TreeModel, TreeModel]:
        return self.first, self.second

    def violations(self, t1: Adjacency, t2: Adjacency) -> List[str]:
        """Broken conditions of a pair model, empty when valid"""
        problems = []
        for i, (model, pattern) in enumerate(((self.first, t1), (self.second, t2)), start=1):
            problems.extend(f"model {i}: {p}" for p in _model_violations(self.host, model, pattern))
            for h, ns in self.host.items():
                inside = [w for w in ns if model.covers(h, w)]
                outside = [w for w in ns if not model.covers(h, w)]
                if inside and outside and model.branch_of(h) is not None:
                    problems.append(f"model {i}: node {h} leaves the model at a branch node")
        host_leaves = {h for h, ns in self.host.items() if len(ns) <= 1}
        images = [self.first.branch[v] for v, ns in t1.items() if len(ns) <= 1]
        images += [self.second.branch[v] for v, ns in t2.items() if len(ns) <= 1]
        if len(images) != len(set(images)) or set(images) != host_leaves:
            problems.append("host leaves are not the disjoint union of pattern leaves")
        for h, ns in self.host.items():
            if len(ns) <= 2:
                hits = (self.first.branch_of(h) is not None) + (self.second.branch_of(h) is not None)
                if hits != 1:
                    problems.append(f"node {h} of degree {len(ns)} is a branch node of {hits} models")
        return problems


def _model_violations(host: Adjacency, model: TreeModel, pattern: Adjacency) -> List[str]:
    problems = []
    if set(model.branch) != set(pattern):
        return ["branch map does not cover the pattern"]
    for a, ns in pattern.items():
        for b in ns:
            path = host_path(host, model.branch[a], model.branch[b])
            for h, h2 in zip(path, path[1:]):
                if model.incidence.get((h, h2)) != (a, b):
                    problems.append(f"host edge {h}-{h2} is not labelled ({a}, {b})")
            for h in path[1:-1]:
                if model.branch_of(h) is not None:
                    problems.append(f"path of ({a}, {b}) runs through branch node {h}")
    return problems


def host_path(host: Adjacency, a: int, b: int) -> List[int]:
    parent: Dict[int, Optional[int]] = {a: None}
    stack = [a]
    while stack:
        v = stack.pop()
        for w in host[v]:
            if w not in parent:
                parent[w] = v
                stack.append(w)
    path = [b]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return list(reversed(path))


def model_incidences(
    host: Adjacency,
    labels: Mapping[Tuple[int, int], Tuple[int, int]],
    branch: Mapping[int, int],
) -> Dict[Tuple[int, int], Incidence]:
    """Complete the incidence map: labelled host edges keep their pattern
    incidence, the rest point at STAR on the side holding the model"""
    present = set(branch.values())
    for h, h2 in labels:
        present.update((h, h2))
    incidence: Dict[Tuple[int, int], Incidence] = {}
    for h, ns in host.items():
        for h2 in ns:
            if (h, h2) in labels:
                incidence[(h, h2)] = labels[(h, h2)]
                continue
            side = _side(host, h, h2)
            incidence[(h, h2)] = STAR if side & present else ZERO
    return incidence


def _side(host: Adjacency, h: int, h2: int) -> set:
    seen = {h}
    stack = [h]
    while stack:
        v = stack.pop()
        for w in host[v]:
            if w not in seen and not (v == h and w == h2):
                seen.add(w)
                stack.append(w)
    return seen

