# src/branchwidth/fullset/dp.py
"""Bottom-up full-set dynamic program over a composition tree.

Every table holds compact B_x-namus of width at most k, each with the
evidence that produced it. Compare tables keep only minimal namus under
`is_tle`: a namu above one already stored is dropped.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from branchwidth.arrangement import Arrangement
from branchwidth.bdtree.tree import DecTree
from branchwidth.config import settings
from branchwidth.exceptions import LabelMismatch, ResourceExceeded
from branchwidth.fullset.composition import CompositionTree, Stage, StageKey
from branchwidth.fullset.evidence import (
    CompareEvidence,
    Entry,
    JoinEvidence,
    LeafEvidence,
    ShrinkEvidence,
    TrimEvidence,
)
from branchwidth.linalg import Subspace
from branchwidth.namu import (
    BNamu,
    compactify_with_paths,
    enumerate_sums,
    is_tle,
    ksafe_extension_check,
    safe_anchor,
    transform,
    trim,
    truncate,
)
from branchwidth.namu.trim import degenerate_edges
from branchwidth.schemas import TraceRecord
from branchwidth.transcript import Transcript

logger = logging.getLogger(__name__)


@dataclass
class FullSetTable:
    """All stage tables of one run; ``decided`` means branch-width at most k"""
    tree: CompositionTree
    arrangement: Arrangement
    k: int
    tables: Dict[StageKey, List[Entry]] = field(default_factory=dict)
    trace: List[TraceRecord] = field(default_factory=list)

    def __getitem__(self, key: StageKey) -> List[Entry]:
        return self.tables[key]

    @property
    def root_entries(self) -> List[Entry]:
        return self.tables.get(self.tree.root, [])

    @property
    def decided(self) -> bool:
        return bool(self.root_entries)


def _dedupe(entries: List[Entry]) -> List[Entry]:
    seen = set()
    out = []
    for e in entries:
        key = e.namu.key
        if key in seen:
            continue
        seen.add(key)
        out.append(e)
    return out


def antichain(entries: List[Entry]) -> List[Entry]:
    """Minimal entries under `is_tle`; the first of two equivalent namus is kept"""
    kept: List[Entry] = []
    for cand in _dedupe(entries):
        if any(is_tle(e.namu, cand.namu) for e in kept):
            continue
        kept = [e for e in kept if not is_tle(cand.namu, e.namu)]
        kept.append(cand)
    return kept


class _Run:
    def __init__(self, a: Arrangement, k: int, base: DecTree, tr: Transcript, cap: int):
        self.a = a
        self.k = k
        self.base = base
        self.tr = tr
        self.cap = cap

    def leaf(self, v: int) -> List[Entry]:
        space = Subspace.full(self.tr.dim(v), self.a.spec)
        return [Entry(BNamu.single_node(space, space), LeafEvidence(self.base.leaf_map[v]))]

    def join(self, v: int, below: List[List[Entry]], kids) -> List[Entry]:
        ambient = Subspace.full(self.tr.ext_dim(v), self.a.spec)
        lifted = [
            [transform(e.namu, self.tr.transition[w], ambient) for e in table] for w, table in zip(kids, below)
        ]
        out: List[Entry] = []
        for i, g1 in enumerate(lifted[0]):
            for j, g2 in enumerate(lifted[1]):
                try:
                    sums = enumerate_sums(g1, g2, self.cap)
                except ResourceExceeded as exc:
                    raise ResourceExceeded(exc.cap, f"join of base node {v}") from exc
                out.extend(Entry(g, JoinEvidence(i, j, model)) for g, model in sums if g.width <= self.k)
        return _dedupe(out)

    def shrink(self, v: int, source: List[Entry]) -> List[Entry]:
        d = self.tr.dim(v)
        return _dedupe([Entry(truncate(e.namu, d), ShrinkEvidence(i)) for i, e in enumerate(source)])

    def trim(self, source: List[Entry]) -> List[Entry]:
        out = []
        for i, e in enumerate(source):
            g = e.namu
            t = trim(g)
            if not ksafe_extension_check(g, t, self.k):
                continue
            anchor = None
            edges = degenerate_edges(g)
            if edges:
                anchor = safe_anchor(g, self.k) or edges[0]
            out.append(Entry(t, TrimEvidence(i, anchor)))
        return _dedupe(out)

    def compare(self, v: int, source: List[Entry]) -> List[Entry]:
        out = []
        bound = (2 * self.tr.dim(v) + 1) * (2 * self.k + 1)
        for i, e in enumerate(source):
            tau, paths = compactify_with_paths(e.namu)
            if tau.diameter() > bound:
                logger.warning(f"Base node {v}: compact namu of diameter {tau.diameter()} exceeds {bound}")
            out.append(Entry(tau, CompareEvidence(i, paths)))
        return antichain(out)


def run_fullset_dp(
    a: Arrangement,
    k: int,
    base: DecTree,
    tr: Transcript,
    cap: Optional[int] = None,
    trace: Optional[bool] = None,
    decision_only: bool = False,
) -> FullSetTable:
    """Full sets of every composition node of ``base``, children first.

    ``tr`` must be a transcript of ``base`` over ``a``. With ``decision_only``
    tables are dropped once their parent is built, so only the root survives
    and the result cannot be backtracked.
    """
    if base.root is None:
        base = base.rooted()
    if base.parts != frozenset(range(a.n)):
        raise LabelMismatch(f"base decomposition covers {len(base.parts)} of {a.n} parts")
    cap = cap if cap is not None else settings.solver.namu_cap
    trace = trace if trace is not None else settings.solver.trace

    comp = CompositionTree(base)
    run = _Run(a, k, base, tr, cap)
    table = FullSetTable(comp, a, k)

    for key in comp.order:
        node = comp[key]
        v = node.base
        below = [table.tables[c] for c in node.children]
        if node.stage == Stage.LEAF:
            entries = run.leaf(v)
        elif node.stage == Stage.JOIN:
            entries = run.join(v, below, [c[1] for c in node.children])
        elif node.stage == Stage.SHRINK:
            entries = run.shrink(v, below[0])
        elif node.stage == Stage.TRIM:
            entries = run.trim(below[0])
        else:
            entries = run.compare(v, below[0])
        table.tables[key] = entries
        if decision_only:
            for c in node.children:
                table.tables.pop(c, None)

        record = TraceRecord(
            node=v,
            stage=node.stage.value,
            size=len(entries),
            max_nodes=max((e.namu.size for e in entries), default=0),
        )
        table.trace.append(record)
        if trace:
            logger.info(record.line())
        if len(entries) > settings.solver.table_warning:
            logger.warning(f"Table at base node {v} ({node.stage.value}) holds {len(entries)} namus")
        if not entries:
            logger.debug(f"Empty {node.stage.value} table at base node {v}")
            break

    logger.info(f"Full-set run over {a.n} parts at k={k}: {'width <= k' if table.decided else 'width > k'}")
    return table
