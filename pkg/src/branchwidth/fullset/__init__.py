from branchwidth.fullset.backtrack import Layout, backtrack_decomposition
from branchwidth.fullset.composition import CompositionTree, Stage
from branchwidth.fullset.compression import (
    compress_step,
    decompose,
    iterative_compression,
    minimum_width,
    smallest_k,
)
from branchwidth.fullset.dp import FullSetTable, antichain, run_fullset_dp
from branchwidth.fullset.evidence import Entry

__all__ = [
    "CompositionTree",
    "Entry",
    "FullSetTable",
    "Layout",
    "Stage",
    "antichain",
    "backtrack_decomposition",
    "compress_step",
    "decompose",
    "iterative_compression",
    "minimum_width",
    "run_fullset_dp",
    "smallest_k",
]
