from branchwidth.namu.compare import Alignment, is_tle, tle
from branchwidth.namu.core import STAR, ZERO, BNamu, coordinatize, project, transform, truncate
from branchwidth.namu.models import PairModel, TreeModel
from branchwidth.namu.safety import ksafe_extension_check, safe_anchor
from branchwidth.namu.sums import enumerate_sums, sum_namu, sum_size
from branchwidth.namu.trim import compactify, compactify_with_paths, compress_step, find_compressions, trim
from branchwidth.namu.typical import is_typical, typical, typical_sequences

__all__ = [
    "STAR",
    "ZERO",
    "Alignment",
    "BNamu",
    "PairModel",
    "TreeModel",
    "compactify",
    "compactify_with_paths",
    "compress_step",
    "coordinatize",
    "enumerate_sums",
    "find_compressions",
    "is_tle",
    "is_typical",
    "ksafe_extension_check",
    "project",
    "safe_anchor",
    "sum_namu",
    "sum_size",
    "tle",
    "transform",
    "trim",
    "typical",
    "typical_sequences",
]
