# src/branchwidth/cli.py
"""``branchwidth`` command line.

Exit codes: 0 decomposition found, 10 width proven above k, 11 rejected by
a frontend guard, 12 namu cap exceeded, 2 input error.
"""
import logging
import sys
from functools import wraps
from pathlib import Path
from typing import Callable, List, Optional, Tuple

import click
import networkx as nx

from branchwidth.apps.formats import ArrangementFile, read_input, render, result_for
from branchwidth.apps.graphs import Hypergraph, carving_cut, cut_rank
from branchwidth.apps.reductions import (
    carving_arrangement,
    graphic_arrangement,
    hypergraph_arrangement,
    matroid_arrangement,
    rank_decomposition_width,
    rankwidth_arrangement,
    reinsert_parallel,
)
from branchwidth.arrangement import Arrangement
from branchwidth.bdtree.tree import DecTree, width
from branchwidth.config import settings
from branchwidth.exceptions import (
    AboveK,
    BranchWidthError,
    InputFormatError,
    LabelMismatch,
    NotPrime,
    RejectedAboveK,
    ResourceExceeded,
    TooLarge,
)
from branchwidth.fullset import decompose, smallest_k
from branchwidth.oracle import brute_branchwidth
from branchwidth.schemas import EXIT_CODES, DecompositionResult, Outcome, OutputFormat, TraceRecord

logger = logging.getLogger(__name__)

# solve(k) -> (decomposition over the input items, width in the problem's units)
Solver = Callable[[int], Tuple[DecTree, int]]


def _emit(result: DecompositionResult, fmt: str, output: Optional[str]) -> None:
    text = render(result, fmt)
    if output:
        Path(output).write_text(text + "\n")
    else:
        click.echo(text)


def _tree_width(t: DecTree, cut: Callable[[frozenset], int]) -> int:
    return max((cut(t.side_parts(u, v)) for u, v in t.edges), default=0)


def _arrangement_solver(
    a: Arrangement, cap: Optional[int], records: List[TraceRecord], to_width: Callable[[int], int] = int
) -> Solver:
    def solve(k: int) -> Tuple[DecTree, int]:
        t = decompose(a.mat, a.part_sizes, k, cap=cap, records=records)
        return t, to_width(width(t, a)[0])

    return solve


def _run(solve: Solver, k: Optional[int], limit: int) -> Tuple[DecTree, int, int]:
    """Solve at k, or at the smallest workable k when k is None"""
    if k is not None:
        t, w = solve(k)
        return t, w, k
    used, (t, w) = smallest_k(solve, limit)
    return t, w, used


def _finish(solve: Solver, k: Optional[int], limit: int, fmt: str, output: Optional[str], records) -> None:
    try:
        t, w, used = _run(solve, k, limit)
        result = result_for(t, w, k=used, trace=list(records))
    except AboveK as exc:
        result = DecompositionResult(outcome=Outcome.ABOVE_K, k=k, message=str(exc), trace=list(records))
    except RejectedAboveK as exc:
        result = DecompositionResult(outcome=Outcome.REJECTED, k=k, message=str(exc))
    except ResourceExceeded as exc:
        result = DecompositionResult(outcome=Outcome.RESOURCE, k=k, message=str(exc), trace=list(records))
    result.exit_code = EXIT_CODES[result.outcome]
    _emit(result, fmt, output)
    sys.exit(result.exit_code)


def solver_options(func):
    """Options shared by every subcommand"""

    @click.option("--k", "k", type=click.IntRange(min=0), default=None, help="Width parameter; smallest workable when omitted")
    @click.option("--input", "input_path", type=click.Path(dir_okay=False), required=True, help="Input file")
    @click.option("--output", "output", type=click.Path(dir_okay=False), default=None, help="Write the result here")
    @click.option(
        "--format", "fmt", type=click.Choice([f.value for f in OutputFormat]), default=OutputFormat.POSTORDER.value
    )
    @click.option("--trace", is_flag=True, default=False, help="Log one line per full-set table")
    @click.option("--cap", type=click.IntRange(min=1), default=None, help="Namu node cap")
    @wraps(func)
    def wrapper(*args, trace: bool, cap: Optional[int], **kwargs):
        configured = settings.solver.trace
        settings.solver.trace = configured or trace
        try:
            return func(*args, cap=cap, **kwargs)
        except (InputFormatError, NotPrime, LabelMismatch) as exc:
            click.echo(f"Input error: {exc}", err=True)
            sys.exit(EXIT_CODES[Outcome.INPUT_ERROR.value])
        finally:
            settings.solver.trace = configured

    return wrapper


@click.group()
@click.option("--log-level", default=None, help="Overrides the configured logging level")
def cli(log_level: Optional[str]):
    """Branch-width of subspace arrangements and the problems that reduce to it"""
    logging.basicConfig(level=(log_level or settings.logging.level).upper(), format=settings.logging.format)


@cli.command()
@solver_options
def arrangement(k, input_path, output, fmt, cap):
    """Branch-width of the arrangement in an ``arrangement`` file"""
    parsed = read_input(input_path, expect="arrangement")
    a = Arrangement.from_matrix(parsed.matrix(), parsed.part_sizes)
    records: List[TraceRecord] = []
    _finish(_arrangement_solver(a, cap, records), k, a.r, fmt, output, records)


@cli.command()
@solver_options
def matroid(k, input_path, output, fmt, cap):
    """Matroid branch-width of a represented matroid or of a graph's cycle matroid"""
    parsed = read_input(input_path)
    if isinstance(parsed, ArrangementFile):
        a = matroid_arrangement(parsed.matrix())
    elif isinstance(parsed, nx.Graph):
        a = graphic_arrangement(parsed)
    else:
        raise InputFormatError("matroid input is an arrangement or a graph file")
    records: List[TraceRecord] = []
    _finish(_arrangement_solver(a, cap, records), k, a.r, fmt, output, records)


@cli.command()
@solver_options
def rankwidth(k, input_path, output, fmt, cap):
    """Rank-width of a graph (rank-decomposition over its vertices)"""
    g = read_input(input_path, expect="graph")
    a = rankwidth_arrangement(g)
    records: List[TraceRecord] = []
    solve = _arrangement_solver(a, cap, records, to_width=rank_decomposition_width)
    _finish(lambda trial: solve(2 * trial), k, g.number_of_nodes(), fmt, output, records)


@cli.command()
@solver_options
def carving(k, input_path, output, fmt, cap):
    """Carving-width of a graph"""
    g = read_input(input_path, expect="graph")
    records: List[TraceRecord] = []

    def solve(trial: int) -> Tuple[DecTree, int]:
        a = carving_arrangement(g, trial)
        t = decompose(a.mat, a.part_sizes, trial, cap=cap, records=records)
        return t, _tree_width(t, lambda side: carving_cut(g, side))

    _finish(solve, k, g.number_of_edges(), fmt, output, records)


@cli.command()
@solver_options
def hyperbw(k, input_path, output, fmt, cap):
    """Branch-width of a hypergraph (decomposition over its edges)"""
    h = read_input(input_path, expect="hypergraph")
    records: List[TraceRecord] = []

    def solve(trial: int) -> Tuple[DecTree, int]:
        reduction = hypergraph_arrangement(h, trial)
        a = reduction.arrangement
        t = reinsert_parallel(decompose(a.mat, a.part_sizes, trial, cap=cap, records=records), reduction)
        return t, _tree_width(t, h.boundary)

    _finish(solve, k, h.n, fmt, output, records)


def _instance(parsed, problem: str) -> Tuple[int, Callable[[frozenset], int]]:
    """Item count and cut function of the chosen problem on a parsed input"""
    if problem == "hyperbw":
        if not isinstance(parsed, Hypergraph):
            raise InputFormatError("hyperbw needs a hypergraph file")
        return parsed.m, parsed.boundary
    if isinstance(parsed, nx.Graph):
        if problem == "rankwidth":
            return parsed.number_of_nodes(), lambda side: cut_rank(parsed, side)
        if problem == "carving":
            return parsed.number_of_nodes(), lambda side: carving_cut(parsed, side)
        a = graphic_arrangement(parsed)
    elif isinstance(parsed, ArrangementFile):
        a = matroid_arrangement(parsed.matrix()) if problem == "matroid" else Arrangement.from_matrix(
            parsed.matrix(), parsed.part_sizes
        )
    else:
        raise InputFormatError(f"{problem} does not take a hypergraph file")
    everything = frozenset(range(a.n))
    return a.n, lambda side: a.span(side).dim + a.span(everything - side).dim - a.span(everything).dim


@cli.command()
@click.option("--k", "k", type=click.IntRange(min=0), default=None)
@click.option("--input", "input_path", type=click.Path(dir_okay=False), required=True)
@click.option("--tree", "tree_path", type=click.Path(dir_okay=False), required=True, help="Postorder or edges text")
@click.option(
    "--problem",
    type=click.Choice(["arrangement", "matroid", "rankwidth", "carving", "hyperbw"]),
    default="arrangement",
)
@click.option("--output", "output", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice([f.value for f in OutputFormat]), default=OutputFormat.POSTORDER.value)
def verify(k, input_path, tree_path, problem, output, fmt):
    """Recompute the width of a given decomposition"""
    try:
        parsed = read_input(input_path)
        n, cut = _instance(parsed, problem)
        text = Path(tree_path).read_text()
        t = DecTree.from_postorder(text) if "*" in text or "\n" not in text.strip() else DecTree.from_edges_text(text)
        if t.parts != frozenset(range(n)):
            raise LabelMismatch(f"decomposition covers {len(t.parts)} of {n} items")
    except (BranchWidthError, OSError) as exc:
        click.echo(f"Input error: {exc}", err=True)
        sys.exit(EXIT_CODES[Outcome.INPUT_ERROR.value])
    w = _tree_width(t, cut)
    if k is not None and w > k:
        result = DecompositionResult(outcome=Outcome.ABOVE_K, k=k, width=w, message=f"width {w} exceeds {k}")
    else:
        result = result_for(t, w, k=k)
    result.exit_code = EXIT_CODES[result.outcome]
    _emit(result, fmt, output)
    sys.exit(result.exit_code)


@cli.command()
@solver_options
def oracle(k, input_path, output, fmt, cap):
    """Exact branch-width by trying every decomposition (small inputs only)"""
    parsed = read_input(input_path)
    if isinstance(parsed, nx.Graph):
        a = graphic_arrangement(parsed)
    elif isinstance(parsed, ArrangementFile):
        a = Arrangement.from_matrix(parsed.matrix(), parsed.part_sizes)
    else:
        raise InputFormatError("oracle takes an arrangement or a graph file")
    try:
        w, t = brute_branchwidth(a)
    except TooLarge as exc:
        result = DecompositionResult(outcome=Outcome.RESOURCE, k=k, message=str(exc))
    else:
        if k is not None and w > k:
            result = DecompositionResult(outcome=Outcome.ABOVE_K, k=k, width=w, message=f"branch-width {w} exceeds {k}")
        else:
            result = result_for(t, w, k=k)
    result.exit_code = EXIT_CODES[result.outcome]
    _emit(result, fmt, output)
    sys.exit(result.exit_code)


if __name__ == "__main__":
    cli()
