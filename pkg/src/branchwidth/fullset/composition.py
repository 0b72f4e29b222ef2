# src/branchwidth/fullset/composition.py
"""Composition trees: the rooted base decomposition with every internal node
split into its join, shrink, trim and compare stages."""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple

from branchwidth.bdtree.tree import DecTree


class Stage(str, Enum):
    LEAF = "leaf"
    JOIN = "join"
    SHRINK = "shrink"
    TRIM = "trim"
    COMPARE = "compare"


StageKey = Tuple[Stage, int]


@dataclass(frozen=True)
class CompositionNode:
    stage: Stage
    base: int
    children: Tuple[StageKey, ...]

    @property
    def key(self) -> StageKey:
        return (self.stage, self.base)


class CompositionTree:
    """Stage nodes keyed by (stage, base node), listed children-first"""

    def __init__(self, base: DecTree):
        self.base = base
        self.nodes: Dict[StageKey, CompositionNode] = {}
        self.order: List[StageKey] = []
        for v in base.postorder():
            kids = base.children(v)
            if not kids:
                self._add(CompositionNode(Stage.LEAF, v, ()))
                continue
            self._add(CompositionNode(Stage.JOIN, v, tuple(self.top(w) for w in kids)))
            self._add(CompositionNode(Stage.SHRINK, v, ((Stage.JOIN, v),)))
            self._add(CompositionNode(Stage.TRIM, v, ((Stage.SHRINK, v),)))
            self._add(CompositionNode(Stage.COMPARE, v, ((Stage.TRIM, v),)))

    def _add(self, node: CompositionNode) -> None:
        self.nodes[node.key] = node
        self.order.append(node.key)

    def top(self, v: int) -> StageKey:
        """The stage holding the full set of base node v"""
        return (Stage.LEAF, v) if not self.base.children(v) else (Stage.COMPARE, v)

    @property
    def root(self) -> StageKey:
        return self.top(self.base.root)

    def __getitem__(self, key: StageKey) -> CompositionNode:
        return self.nodes[key]

    def __len__(self) -> int:
        return len(self.nodes)
