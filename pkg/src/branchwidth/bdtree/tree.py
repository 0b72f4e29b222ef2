# src/branchwidth/bdtree/tree.py
"""Branch-decomposition trees.

A ``DecTree`` is a subcubic tree on integer node ids whose leaves carry part
indices (0-based) of an arrangement. A rooted tree has a designated root of
degree 0 or 2; every other internal node has degree 3.
"""
import logging
import re
from collections import deque
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Set, Tuple

from branchwidth.arrangement import Arrangement
from branchwidth.exceptions import EmptySubset, InputFormatError, LabelMismatch, ScopeMismatch, Unrooted

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class DecTree:
    """Subcubic tree with labelled leaves and an optional root"""

    def __init__(self, adjacency: Mapping[int, Iterable[int]], leaf_map: Mapping[int, int], root: Optional[int] = None):
        self._adj: Dict[int, Tuple[int, ...]] = {v: tuple(sorted(ns)) for v, ns in adjacency.items()}
        self.leaf_map: Dict[int, int] = dict(leaf_map)
        self.root = root
        self._sides: Dict[Edge, FrozenSet[int]] = {}
        self._parents: Optional[Dict[int, Optional[int]]] = None

    # construction -----------------------------------------------------------

    @classmethod
    def from_edges(cls, edges: Iterable[Edge], leaf_map: Mapping[int, int], root: Optional[int] = None) -> "DecTree":
        adjacency: Dict[int, Set[int]] = {v: set() for v in leaf_map}
        for u, v in edges:
            adjacency.setdefault(u, set()).add(v)
            adjacency.setdefault(v, set()).add(u)
        if root is not None:
            adjacency.setdefault(root, set())
        tree = cls(adjacency, leaf_map, root)
        tree.check()
        return tree

    @classmethod
    def single(cls, part: int) -> "DecTree":
        return cls({0: ()}, {0: part}, root=0)

    @classmethod
    def pair(cls, a: int, b: int) -> "DecTree":
        return cls({0: (1,), 1: (0,)}, {0: a, 1: b})

    @classmethod
    def from_postorder(cls, text: str) -> "DecTree":
        """Parse ``1 2 3 * *`` (1-based part numbers, ``*`` joins the last two)"""
        tokens = [t for t in re.split(r"[\s,]+", text.strip()) if t]
        if not tokens:
            raise InputFormatError("empty postorder string")
        adjacency: Dict[int, List[int]] = {}
        leaf_map: Dict[int, int] = {}
        stack: List[int] = []
        for token in tokens:
            node = len(adjacency)
            if token == "*":
                if len(stack) < 2:
                    raise InputFormatError(f"'*' with fewer than two subtrees in {text!r}")
                right = stack.pop()
                left = stack.pop()
                adjacency[node] = [left, right]
                adjacency[left].append(node)
                adjacency[right].append(node)
            else:
                try:
                    part = int(token) - 1
                except ValueError:
                    raise InputFormatError(f"bad postorder token {token!r}")
                if part < 0:
                    raise InputFormatError(f"part numbers start at 1, got {token}")
                adjacency[node] = []
                leaf_map[node] = part
            stack.append(node)
        if len(stack) != 1:
            raise InputFormatError(f"postorder string leaves {len(stack)} subtrees")
        tree = cls(adjacency, leaf_map, root=stack[0])
        tree.check()
        return tree

    @classmethod
    def from_edges_text(cls, text: str) -> "DecTree":
        """Parse ``u v`` edge lines and ``leaf u i`` lines (all 1-based)"""
        edges: List[Edge] = []
        leaf_map: Dict[int, int] = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            fields = line.split()
            if not fields or fields[0].startswith("#"):
                continue
            try:
                if fields[0] == "leaf" and len(fields) == 3:
                    leaf_map[int(fields[1]) - 1] = int(fields[2]) - 1
                elif len(fields) == 2:
                    edges.append((int(fields[0]) - 1, int(fields[1]) - 1))
                else:
                    raise InputFormatError(f"unexpected line {line!r}", lineno)
            except ValueError:
                raise InputFormatError(f"non-integer field in {line!r}", lineno)
        return cls.from_edges(edges, leaf_map)

    def check(self) -> None:
        """Validate shape and labels; raises ``LabelMismatch``"""
        n_edges = sum(len(ns) for ns in self._adj.values()) // 2
        if self._adj and n_edges != len(self._adj) - 1:
            raise LabelMismatch(f"not a tree: {len(self._adj)} nodes, {n_edges} edges")
        if self._adj and len(self.component(next(iter(self._adj)), None)) != len(self._adj):
            raise LabelMismatch("tree is disconnected")
        for v, ns in self._adj.items():
            if len(ns) > 3:
                raise LabelMismatch(f"node {v} has degree {len(ns)}")
        for v in self._adj:
            if len(self._adj[v]) <= 1 and v not in self.leaf_map:
                raise LabelMismatch(f"leaf {v} has no part")
        for v in self.leaf_map:
            if v not in self._adj or len(self._adj[v]) > 1:
                raise LabelMismatch(f"labelled node {v} is not a leaf")
        if len(set(self.leaf_map.values())) != len(self.leaf_map):
            raise LabelMismatch("two leaves carry the same part")

    # structure --------------------------------------------------------------

    @property
    def nodes(self) -> Tuple[int, ...]:
        return tuple(sorted(self._adj))

    @property
    def edges(self) -> List[Edge]:
        return sorted({edge_key(u, v) for u, ns in self._adj.items() for v in ns})

    @property
    def parts(self) -> FrozenSet[int]:
        return frozenset(self.leaf_map.values())

    @property
    def adjacency(self) -> Dict[int, Tuple[int, ...]]:
        return self._adj

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def next_id(self) -> int:
        return max(self._adj) + 1 if self._adj else 0

    def component(self, start: int, avoid: Optional[int]) -> FrozenSet[int]:
        """Nodes reachable from ``start`` without stepping onto ``avoid``"""
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in self._adj[v]:
                if w != avoid and w not in seen:
                    seen.add(w)
                    queue.append(w)
        return frozenset(seen)

    def side_nodes(self, u: int, v: int) -> FrozenSet[int]:
        """Nodes of the component of T - uv containing v"""
        key = (u, v)
        if key not in self._sides:
            self._sides[key] = self.component(v, u)
        return self._sides[key]

    def side_parts(self, u: int, v: int) -> FrozenSet[int]:
        return frozenset(self.leaf_map[w] for w in self.side_nodes(u, v) if w in self.leaf_map)

    def path(self, a: int, b: int) -> List[int]:
        """Node sequence of the unique a-b path"""
        prev: Dict[int, Optional[int]] = {a: None}
        queue = deque([a])
        while queue:
            v = queue.popleft()
            if v == b:
                break
            for w in self._adj[v]:
                if w not in prev:
                    prev[w] = v
                    queue.append(w)
        out = [b]
        while prev[out[-1]] is not None:
            out.append(prev[out[-1]])
        return out[::-1]

    def leaf_of_part(self, part: int) -> int:
        for v, p in self.leaf_map.items():
            if p == part:
                return v
        raise LabelMismatch(f"part {part} is not a leaf label")

    # rooting ----------------------------------------------------------------

    def _require_root(self) -> int:
        if self.root is None:
            raise Unrooted("operation needs a rooted decomposition")
        return self.root

    def parent_map(self) -> Dict[int, Optional[int]]:
        if self._parents is None:
            root = self._require_root()
            parents: Dict[int, Optional[int]] = {root: None}
            queue = deque([root])
            while queue:
                v = queue.popleft()
                for w in self._adj[v]:
                    if w not in parents:
                        parents[w] = v
                        queue.append(w)
            self._parents = parents
        return self._parents

    def parent(self, v: int) -> Optional[int]:
        return self.parent_map()[v]

    def children(self, v: int) -> Tuple[int, ...]:
        up = self.parent_map()[v]
        return tuple(w for w in self._adj[v] if w != up)

    def postorder(self) -> List[int]:
        root = self._require_root()
        out: List[int] = []
        stack = [(root, False)]
        while stack:
            v, expanded = stack.pop()
            if expanded:
                out.append(v)
                continue
            stack.append((v, True))
            for w in reversed(self.children(v)):
                stack.append((w, False))
        return out

    def descendants_parts(self, v: int) -> FrozenSet[int]:
        """Parts below v in the rooted tree"""
        up = self.parent(v)
        if up is None:
            return self.parts
        return self.side_parts(up, v)

    def rooted_at_edge(self, u: int, v: int) -> "DecTree":
        tree, w = self.subdivide(u, v)
        return DecTree(tree._adj, tree.leaf_map, root=w)

    def rooted(self) -> "DecTree":
        """Root by subdividing the lexicographically first edge"""
        if self.root is not None:
            return self
        if not self.edges:
            return DecTree(self._adj, self.leaf_map, root=self.nodes[0])
        return self.rooted_at_edge(*self.edges[0])

    def unrooted(self) -> "DecTree":
        """Smooth a degree-2 root"""
        if self.root is None:
            return self
        if self.degree(self.root) != 2:
            return DecTree(self._adj, self.leaf_map)
        a, b = self._adj[self.root]
        adjacency = {v: set(ns) for v, ns in self._adj.items() if v != self.root}
        adjacency[a].discard(self.root)
        adjacency[b].discard(self.root)
        adjacency[a].add(b)
        adjacency[b].add(a)
        return DecTree(adjacency, self.leaf_map)

    # editing ----------------------------------------------------------------

    def subdivide(self, u: int, v: int) -> Tuple["DecTree", int]:
        if v not in self._adj.get(u, ()):
            raise LabelMismatch(f"{u}-{v} is not an edge")
        w = self.next_id()
        adjacency = {x: set(ns) for x, ns in self._adj.items()}
        adjacency[u].discard(v)
        adjacency[v].discard(u)
        adjacency[u].add(w)
        adjacency[v].add(w)
        adjacency[w] = {u, v}
        return DecTree(adjacency, self.leaf_map, self.root), w

    def attach_leaf(self, u: int, v: int, part: int) -> "DecTree":
        """Subdivide uv and hang a new leaf labelled ``part`` from the new node"""
        tree, w = self.subdivide(u, v)
        z = w + 1
        adjacency = {x: set(ns) for x, ns in tree._adj.items()}
        adjacency[w].add(z)
        adjacency[z] = {w}
        leaf_map = dict(tree.leaf_map)
        leaf_map[z] = part
        return DecTree(adjacency, leaf_map, self.root)

    def relabel_parts(self, mapping: Mapping[int, int]) -> "DecTree":
        return DecTree(self._adj, {v: mapping[p] for v, p in self.leaf_map.items()}, self.root)

    def normalized(self) -> "DecTree":
        """Renumber nodes 0.. in breadth-first order from the root (or the smallest node)"""
        if not self._adj:
            return self
        start = self.root if self.root is not None else self.nodes[0]
        order: Dict[int, int] = {start: 0}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in self._adj[v]:
                if w not in order:
                    order[w] = len(order)
                    queue.append(w)
        adjacency = {order[v]: [order[w] for w in ns] for v, ns in self._adj.items()}
        leaf_map = {order[v]: p for v, p in self.leaf_map.items()}
        return DecTree(adjacency, leaf_map, order[self.root] if self.root is not None else None)

    # output -----------------------------------------------------------------

    def postorder_string(self) -> str:
        self._require_root()
        return " ".join(
            str(self.leaf_map[v] + 1) if v in self.leaf_map and not self.children(v) else "*"
            for v in self.postorder()
        )

    def edges_text(self) -> str:
        lines = [f"{u + 1} {v + 1}" for u, v in self.edges]
        lines += [f"leaf {v + 1} {p + 1}" for v, p in sorted(self.leaf_map.items())]
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"DecTree(edges={self.edges}, leaves={self.leaf_map}, root={self.root})"


def smoothed(adjacency: Mapping[int, Iterable[int]], keep: Iterable[int] = ()) -> Dict[int, Set[int]]:
    """Suppress degree-2 nodes not in ``keep``"""
    adj = {v: set(ns) for v, ns in adjacency.items()}
    keep = set(keep)
    for v in sorted(adj):
        if v in keep or len(adj[v]) != 2:
            continue
        a, b = adj.pop(v)
        adj[a].discard(v)
        adj[b].discard(v)
        adj[a].add(b)
        adj[b].add(a)
    return adj


def check_labels(t: DecTree, a: Arrangement) -> None:
    for v, part in t.leaf_map.items():
        if not 0 <= part < a.n:
            raise LabelMismatch(f"leaf {v} carries part {part + 1}, arrangement has {a.n} parts")
    if len(set(t.leaf_map.values())) != len(t.leaf_map):
        raise LabelMismatch("two leaves carry the same part")


def width(t: DecTree, a: Arrangement) -> Tuple[int, Dict[Edge, int]]:
    """Maximum and per-edge widths of t over the parts it covers"""
    check_labels(t, a)
    covered = t.parts
    total = a.span(covered)
    per_edge: Dict[Edge, int] = {}
    for u, v in t.edges:
        side = t.side_parts(u, v)
        one = a.span(side)
        other = a.span(covered - side)
        per_edge[(u, v)] = one.dim + other.dim - total.dim
    return max(per_edge.values(), default=0), per_edge


def induced(t: DecTree, subset: Iterable[int]) -> Tuple[DecTree, Dict[int, int]]:
    """Restriction to the leaves of ``subset``: minimal subtree, degree-2 nodes smoothed.

    Node ids are kept, so the injection into t is the identity on the result.
    """
    subset = frozenset(subset)
    if not subset:
        raise EmptySubset("cannot restrict a decomposition to no parts")
    if not subset <= t.parts:
        raise ScopeMismatch(f"parts {sorted(p + 1 for p in subset - t.parts)} are not in the decomposition")
    leaves = [v for v, p in t.leaf_map.items() if p in subset]
    if len(leaves) == 1:
        v = leaves[0]
        return DecTree({v: ()}, {v: t.leaf_map[v]}, root=v), {v: v}

    # prune leaves outside the subset until only wanted leaves remain
    adj = {v: set(ns) for v, ns in t.adjacency.items()}
    wanted = set(leaves)
    stack = [v for v in adj if len(adj[v]) <= 1 and v not in wanted]
    while stack:
        v = stack.pop()
        if v not in adj or v in wanted:
            continue
        for w in adj.pop(v):
            adj[w].discard(v)
            if len(adj[w]) <= 1 and w not in wanted:
                stack.append(w)
    adj = smoothed(adj)
    tree = DecTree(adj, {v: t.leaf_map[v] for v in leaves})
    return tree, {v: v for v in adj}

