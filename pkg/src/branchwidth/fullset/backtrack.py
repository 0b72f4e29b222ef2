# src/branchwidth/fullset/backtrack.py
"""Replay stored evidence into a branch-decomposition of width at most k.

Each stage namu Γ is paired with a ``Layout``: the parts that the namu's
tree T(Γ) has absorbed, as pendant subtrees hung off its nodes and off its
edges. Items on an edge are listed from the first end outward. Realizing
the root layout over T(Γ_root) gives the decomposition.
"""
import logging
from dataclasses import dataclass, field
from itertools import count
from typing import Dict, List, Optional, Sequence, Tuple, Union

from branchwidth.bdtree.tree import DecTree, smoothed, width
from branchwidth.exceptions import EvidenceCorrupt
from branchwidth.fullset.composition import StageKey
from branchwidth.fullset.dp import FullSetTable
from branchwidth.fullset.evidence import (
    CompareEvidence,
    Entry,
    JoinEvidence,
    LeafEvidence,
    ShrinkEvidence,
    TrimEvidence,
)
from branchwidth.namu import BNamu, PairModel
from branchwidth.namu.models import host_path

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Leaf:
    part: int


@dataclass(frozen=True)
class Join:
    left: "Pendant"
    right: "Pendant"


Pendant = Union[Leaf, Join]


def fold(items: Sequence[Pendant]) -> Optional[Pendant]:
    """Caterpillar of ``items``, the first one nearest the attachment point"""
    if not items:
        return None
    out = items[-1]
    for p in reversed(items[:-1]):
        out = Join(p, out)
    return out


def pendant_parts(p: Pendant) -> List[int]:
    out = []
    stack = [p]
    while stack:
        q = stack.pop()
        if isinstance(q, Leaf):
            out.append(q.part)
        else:
            stack.extend((q.right, q.left))
    return out


@dataclass
class Layout:
    node_items: Dict[int, List[Pendant]] = field(default_factory=dict)
    inc_items: Dict[Tuple[int, int], List[Pendant]] = field(default_factory=dict)

    def node(self, v: int) -> List[Pendant]:
        return self.node_items.get(v, [])

    def inc(self, v: int, w: int) -> List[Pendant]:
        return self.inc_items.get((v, w), [])

    def parts(self) -> List[int]:
        out = []
        for items in list(self.node_items.values()) + list(self.inc_items.values()):
            for p in items:
                out.extend(pendant_parts(p))
        return out


# stage rules -----------------------------------------------------------------


def _join_layout(model: PairModel, first: Layout, second: Layout) -> Layout:
    out = Layout()
    for tm, lay in ((model.first, first), (model.second, second)):
        for v, items in lay.node_items.items():
            out.node_items.setdefault(tm.branch[v], []).extend(items)
        for (v, w), items in lay.inc_items.items():
            if not items:
                continue
            h = tm.branch[v]
            path = host_path(model.host, h, tm.branch[w])
            out.inc_items.setdefault((h, path[1]), []).extend(items)
    return out


def _subtree(g: BNamu, lay: Layout, v: int, w: int) -> Optional[Pendant]:
    """Everything on w's side of vw, folded from the v end"""
    items = list(lay.inc(v, w)) + list(reversed(lay.inc(w, v)))
    for x in g.neighbors(w):
        if x != v:
            p = _subtree(g, lay, w, x)
            if p is not None:
                items.append(p)
    items.extend(lay.node(w))
    return fold(items)


def _middle(g: BNamu, lay: Layout, u: int, v: int) -> Optional[Pendant]:
    """v's half of edge uv seen from its midpoint"""
    items = list(reversed(lay.inc(v, u)))
    for x in g.neighbors(v):
        if x != u:
            p = _subtree(g, lay, v, x)
            if p is not None:
                items.append(p)
    items.extend(lay.node(v))
    return fold(items)


def _trim_layout(g: BNamu, lay: Layout, kept: BNamu, anchor: Optional[Tuple[int, int]]) -> Layout:
    if anchor is not None:
        u, v = anchor
        items = [p for p in (_middle(g, lay, v, u), _middle(g, lay, u, v)) if p is not None]
        return Layout({kept.nodes[0]: items}, {})
    keep = set(kept.nodes)
    out = Layout()
    for v in kept.nodes:
        items = list(lay.node(v))
        for w in g.neighbors(v):
            if w not in keep:
                p = _subtree(g, lay, v, w)
                if p is not None:
                    items.append(p)
        if items:
            out.node_items[v] = items
    out.inc_items = {(v, w): list(items) for (v, w), items in lay.inc_items.items() if v in keep and w in keep}
    return out


def _compare_layout(tau: BNamu, lay: Layout, paths: Dict[Tuple[int, int], Tuple[int, ...]]) -> Layout:
    out = Layout({v: list(lay.node(v)) for v in tau.nodes if lay.node(v)}, {})
    for (a, b), path in paths.items():
        if a > b:
            continue
        seq: List[Pendant] = []
        for i in range(1, len(path)):
            prev, cur = path[i - 1], path[i]
            seq.extend(lay.inc(prev, cur))
            seq.extend(reversed(lay.inc(cur, prev)))
            if i < len(path) - 1:
                seq.extend(lay.node(cur))
        if seq:
            out.inc_items[(a, b)] = seq
    return out


# replay ----------------------------------------------------------------------


def _choices(table: FullSetTable, root_index: int) -> Dict[StageKey, int]:
    """The entry index used at every stage by the chain below the chosen root"""
    chosen = {table.tree.root: root_index}
    for key in reversed(table.tree.order):
        if key not in chosen:
            continue
        node = table.tree[key]
        ev = table[key][chosen[key]].evidence
        if isinstance(ev, JoinEvidence):
            chosen[node.children[0]] = ev.left
            chosen[node.children[1]] = ev.right
        elif isinstance(ev, (ShrinkEvidence, TrimEvidence, CompareEvidence)):
            chosen[node.children[0]] = ev.source
    return chosen


def _layout(table: FullSetTable, key: StageKey, entry: Entry, below: List[Tuple[Entry, Layout]]) -> Layout:
    ev = entry.evidence
    if isinstance(ev, LeafEvidence):
        return Layout({entry.namu.nodes[0]: [Leaf(ev.part)]}, {})
    if isinstance(ev, JoinEvidence):
        return _join_layout(ev.model, below[0][1], below[1][1])
    if isinstance(ev, ShrinkEvidence):
        return below[0][1]
    if isinstance(ev, TrimEvidence):
        return _trim_layout(below[0][0].namu, below[0][1], entry.namu, ev.anchor)
    if isinstance(ev, CompareEvidence):
        return _compare_layout(entry.namu, below[0][1], ev.paths)
    raise EvidenceCorrupt(f"unknown evidence {ev!r} at {key}")


def _realize(g: BNamu, lay: Layout) -> DecTree:
    adjacency: Dict[int, set] = {v: set(ns) for v, ns in g.adjacency.items()}
    leaf_map: Dict[int, int] = {}
    ids = count(max(g.nodes) + 1)

    def link(u: int, v: int) -> None:
        adjacency.setdefault(u, set()).add(v)
        adjacency.setdefault(v, set()).add(u)

    def attach(p: Pendant, anchor: int) -> None:
        node = next(ids)
        link(anchor, node)
        if isinstance(p, Leaf):
            leaf_map[node] = p.part
            return
        attach(p.left, node)
        attach(p.right, node)

    for u, v in g.edges:
        seq = list(lay.inc(u, v)) + list(reversed(lay.inc(v, u)))
        if not seq:
            continue
        adjacency[u].discard(v)
        adjacency[v].discard(u)
        prev = u
        for p in seq:
            mid = next(ids)
            link(prev, mid)
            attach(p, mid)
            prev = mid
        link(prev, v)

    for v in g.nodes:
        items = lay.node(v)
        room = 3 - len(adjacency[v])
        if items and room <= 0:
            raise EvidenceCorrupt(f"node {v} of degree 3 carries pendant subtrees")
        if len(items) > room:
            items = items[: room - 1] + [fold(items[room - 1:])]
        for p in items:
            attach(p, v)

    # drop unlabelled leaves, then smooth
    stack = [v for v, ns in adjacency.items() if len(ns) <= 1 and v not in leaf_map]
    while stack:
        v = stack.pop()
        if v not in adjacency or v in leaf_map or len(adjacency[v]) > 1:
            continue
        for w in adjacency.pop(v):
            adjacency[w].discard(v)
            if len(adjacency[w]) <= 1 and w not in leaf_map:
                stack.append(w)
    if not adjacency:
        raise EvidenceCorrupt("replay produced no parts")
    return DecTree(smoothed(adjacency), leaf_map)


def backtrack_decomposition(table: FullSetTable, root_choice: Optional[BNamu] = None) -> DecTree:
    """Rooted decomposition of the table's arrangement of width at most k"""
    if not table.decided:
        raise EvidenceCorrupt("no root namu to backtrack from")
    root_index = 0
    if root_choice is not None:
        matches = [i for i, e in enumerate(table.root_entries) if e.namu == root_choice]
        if not matches:
            raise EvidenceCorrupt(f"{root_choice!r} is not in the root table")
        root_index = matches[0]

    chosen = _choices(table, root_index)
    done: Dict[StageKey, Tuple[Entry, Layout]] = {}
    for key in table.tree.order:
        if key not in chosen:
            continue
        try:
            entry = table[key][chosen[key]]
        except (KeyError, IndexError):
            raise EvidenceCorrupt(f"evidence points at a missing entry of {key}")
        below = [done[c] for c in table.tree[key].children]
        done[key] = (entry, _layout(table, key, entry, below))

    entry, lay = done[table.tree.root]
    tree = _realize(entry.namu, lay)

    a = table.arrangement
    if tree.parts != frozenset(range(a.n)) or len(tree.leaf_map) != a.n:
        raise EvidenceCorrupt(f"replay covers parts {sorted(tree.parts)} of {a.n}")
    tree.check()
    w, _ = width(tree, a)
    if w > table.k:
        raise EvidenceCorrupt(f"replayed decomposition has width {w} > {table.k}")
    logger.debug(f"Backtracked a width-{w} decomposition of {a.n} parts")
    return tree.normalized().rooted()
