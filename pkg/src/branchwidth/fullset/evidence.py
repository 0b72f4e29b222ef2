# src/branchwidth/fullset/evidence.py
"""Why a namu is in a table: one record per stored namu, pointing into the
tables of the stage below it."""
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

from branchwidth.namu.core import BNamu
from branchwidth.namu.models import PairModel


@dataclass(frozen=True)
class LeafEvidence:
    part: int


@dataclass(frozen=True)
class JoinEvidence:
    """Index into each child table and the pair model of the sum"""
    left: int
    right: int
    model: PairModel


@dataclass(frozen=True)
class ShrinkEvidence:
    source: int


@dataclass(frozen=True)
class TrimEvidence:
    """``anchor`` is the degenerate edge the single-node trim sits on, if any"""
    source: int
    anchor: Optional[Tuple[int, int]] = None


@dataclass(frozen=True)
class CompareEvidence:
    """Each directed edge of the compact namu as the path of the trim it replaces"""
    source: int
    paths: Dict[Tuple[int, int], Tuple[int, ...]]


Evidence = Union[LeafEvidence, JoinEvidence, ShrinkEvidence, TrimEvidence, CompareEvidence]


@dataclass(frozen=True)
class Entry:
    namu: BNamu
    evidence: Evidence
