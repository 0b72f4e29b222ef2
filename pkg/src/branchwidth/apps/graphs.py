# src/branchwidth/apps/graphs.py
"""Graph and hypergraph inputs of the reductions.

Graphs are ``networkx.Graph`` objects on vertices 0..n-1; hypergraphs are
validated pydantic models with 0-based vertex tuples.
"""
from typing import FrozenSet, Iterable, List, Sequence, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel, Field, model_validator

from branchwidth.exceptions import InputFormatError
from branchwidth.field import GF2
from branchwidth.linalg import rank_mod


def graph_from_edges(n: int, edges: Iterable[Tuple[int, int]]) -> nx.Graph:
    """Simple undirected graph on 0..n-1; self-loops and out-of-range ends are rejected"""
    g = nx.Graph()
    g.add_nodes_from(range(n))
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InputFormatError(f"edge {u + 1}-{v + 1} leaves the vertex range 1..{n}")
        if u == v:
            raise InputFormatError(f"self-loop at vertex {u + 1}")
        g.add_edge(u, v)
    return g


def edge_list(g: nx.Graph) -> List[Tuple[int, int]]:
    """Edges as sorted pairs in a fixed order"""
    return sorted(tuple(sorted(e)) for e in g.edges())


def adjacency_gf2(g: nx.Graph) -> np.ndarray:
    n = g.number_of_nodes()
    return nx.to_numpy_array(g, nodelist=range(n), dtype=np.int64) % 2


def cut_rank(g: nx.Graph, subset: Iterable[int]) -> int:
    """rank over GF(2) of the adjacency block between ``subset`` and the rest"""
    inside = sorted(set(subset))
    outside = [v for v in range(g.number_of_nodes()) if v not in set(inside)]
    if not inside or not outside:
        return 0
    return rank_mod(adjacency_gf2(g)[np.ix_(inside, outside)], GF2.p)


def carving_cut(g: nx.Graph, subset: Iterable[int]) -> int:
    """Number of edges with exactly one end in ``subset``"""
    inside = set(subset)
    return sum(1 for u, v in g.edges() if (u in inside) != (v in inside))


class Hypergraph(BaseModel):
    """Hypergraph on vertices 0..n-1, edges in input order"""
    n: int = Field(..., ge=0)
    edges: List[Tuple[int, ...]]

    @model_validator(mode="after")
    def check_edges(self):
        for i, e in enumerate(self.edges):
            if not e:
                raise ValueError(f"edge {i + 1} is empty")
            if any(not 0 <= v < self.n for v in e):
                raise ValueError(f"edge {i + 1} leaves the vertex range 1..{self.n}")
        return self

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertex_set(self, i: int) -> FrozenSet[int]:
        return frozenset(self.edges[i])

    def boundary(self, subset: Sequence[int]) -> int:
        """Vertices meeting an edge of ``subset`` and an edge outside it"""
        inside = set(subset)
        near = set().union(*(self.vertex_set(i) for i in inside)) if inside else set()
        far = set().union(*(self.vertex_set(i) for i in range(self.m) if i not in inside))
        return len(near & far)
