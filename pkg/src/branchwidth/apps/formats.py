# src/branchwidth/apps/formats.py
"""Text input files and rendered output.

    arrangement p r m n     graph n m       hypergraph n m
    <r rows of m entries>   <m lines u v>   <m lines s v1 .. vs>
    <n part sizes>

Vertices are numbered from 1 in files and from 0 in memory.
"""
import logging
from pathlib import Path
from typing import List, Optional, Tuple, Union

import networkx as nx
from pydantic import BaseModel, Field, ValidationError, model_validator

from branchwidth.apps.graphs import Hypergraph, graph_from_edges
from branchwidth.bdtree.tree import DecTree
from branchwidth.exceptions import InputFormatError
from branchwidth.field import FieldSpec
from branchwidth.linalg import Mat
from branchwidth.schemas import DecompositionResult, OutputFormat

logger = logging.getLogger(__name__)


class ArrangementFile(BaseModel):
    """Parsed ``arrangement`` file"""
    p: int = Field(..., ge=2)
    r: int = Field(..., ge=0)
    m: int = Field(..., ge=0)
    n: int = Field(..., ge=0)
    rows: List[List[int]]
    part_sizes: List[int]

    @model_validator(mode="after")
    def check_shape(self):
        if len(self.rows) != self.r:
            raise ValueError(f"expected {self.r} matrix rows, got {len(self.rows)}")
        for i, row in enumerate(self.rows):
            if len(row) != self.m:
                raise ValueError(f"matrix row {i + 1} has {len(row)} entries, expected {self.m}")
        if len(self.part_sizes) != self.n:
            raise ValueError(f"expected {self.n} part sizes, got {len(self.part_sizes)}")
        if any(s < 0 for s in self.part_sizes) or sum(self.part_sizes) != self.m:
            raise ValueError(f"part sizes {self.part_sizes} do not add up to {self.m}")
        return self

    def matrix(self) -> Mat:
        spec = FieldSpec(self.p)
        return Mat.from_rows(self.rows, spec, cols=self.m)


Parsed = Union[ArrangementFile, nx.Graph, Hypergraph]


def _lines(text: str) -> List[Tuple[int, List[str]]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        fields = line.split("#", 1)[0].split()
        if fields:
            out.append((lineno, fields))
    return out


def _ints(fields: List[str], lineno: int) -> List[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise InputFormatError(f"non-integer field in {' '.join(fields)!r}", lineno)


def _header(lines, kind: str, count: int) -> List[int]:
    lineno, fields = lines[0]
    if len(fields) != count + 1:
        raise InputFormatError(f"'{kind}' header takes {count} numbers", lineno)
    return _ints(fields[1:], lineno)


def parse_arrangement(text: str) -> ArrangementFile:
    lines = _lines(text)
    p, r, m, n = _header(lines, "arrangement", 4)
    body = lines[1:]
    if len(body) != r + 1:
        raise InputFormatError(f"expected {r} matrix rows and one line of part sizes, got {len(body)} lines")
    rows = [_ints(fields, lineno) for lineno, fields in body[:r]]
    sizes = _ints(body[r][1], body[r][0])
    try:
        return ArrangementFile(p=p, r=r, m=m, n=n, rows=rows, part_sizes=sizes)
    except ValidationError as exc:
        raise InputFormatError(str(exc.errors()[0]["msg"]))


def parse_graph(text: str) -> nx.Graph:
    lines = _lines(text)
    n, m = _header(lines, "graph", 2)
    body = lines[1:]
    if len(body) != m:
        raise InputFormatError(f"expected {m} edge lines, got {len(body)}")
    edges = []
    for lineno, fields in body:
        ends = _ints(fields, lineno)
        if len(ends) != 2:
            raise InputFormatError("edge lines hold two vertices", lineno)
        edges.append((ends[0] - 1, ends[1] - 1))
    return graph_from_edges(n, edges)


def parse_hypergraph(text: str) -> Hypergraph:
    lines = _lines(text)
    n, m = _header(lines, "hypergraph", 2)
    body = lines[1:]
    if len(body) != m:
        raise InputFormatError(f"expected {m} edge lines, got {len(body)}")
    edges = []
    for lineno, fields in body:
        values = _ints(fields, lineno)
        if not values or values[0] != len(values) - 1:
            raise InputFormatError("edge line must start with its vertex count", lineno)
        edges.append(tuple(v - 1 for v in values[1:]))
    try:
        return Hypergraph(n=n, edges=edges)
    except ValidationError as exc:
        raise InputFormatError(str(exc.errors()[0]["msg"]))


_PARSERS = {
    "arrangement": parse_arrangement,
    "graph": parse_graph,
    "hypergraph": parse_hypergraph,
}


def parse_input(text: str, expect: Optional[str] = None) -> Parsed:
    """Dispatch on the header keyword; ``expect`` pins the kind"""
    lines = _lines(text)
    if not lines:
        raise InputFormatError("empty input")
    kind = lines[0][1][0]
    if kind not in _PARSERS:
        raise InputFormatError(f"unknown header {kind!r}", lines[0][0])
    if expect is not None and kind != expect:
        raise InputFormatError(f"expected a '{expect}' file, got '{kind}'", lines[0][0])
    return _PARSERS[kind](text)


def read_input(path: Union[str, Path], expect: Optional[str] = None) -> Parsed:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}")
    logger.debug(f"Read {len(text)} bytes from {path}")
    return parse_input(text, expect)


def result_for(tree: DecTree, width: int, k: Optional[int] = None, **extra) -> DecompositionResult:
    rooted = tree.normalized().rooted()
    return DecompositionResult(
        outcome="found",
        k=k,
        width=width,
        postorder=rooted.postorder_string(),
        edges=[[u + 1, v + 1] for u, v in rooted.edges],
        leaves={v + 1: p + 1 for v, p in sorted(rooted.leaf_map.items())},
        **extra,
    )


def render(result: DecompositionResult, fmt: Union[OutputFormat, str]) -> str:
    """Text of a result in the requested format"""
    fmt = OutputFormat(fmt)
    if fmt == OutputFormat.JSON:
        return result.model_dump_json(indent=2)
    if result.postorder is None:
        return result.message or ""
    if fmt == OutputFormat.POSTORDER:
        return result.postorder
    lines = [f"{u} {v}" for u, v in result.edges]
    lines += [f"leaf {v} {p}" for v, p in result.leaves.items()]
    return "\n".join(lines)
