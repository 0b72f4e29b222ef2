# src/branchwidth/exceptions.py
from typing import Any, Optional


class BranchWidthError(Exception):
    """Base class for every error raised by the library"""


class ZeroInverse(BranchWidthError):
    """Inverse of the zero element requested"""


class NotPrime(BranchWidthError):
    """Field modulus is not a supported prime"""

    def __init__(self, p: int):
        super().__init__(f"modulus {p} is not a prime in [2, 65521]")
        self.p = p


class AmbientMismatch(BranchWidthError):
    """Subspaces or namus live in different ambient spaces"""


class ShapeMismatch(BranchWidthError):
    """Matrix shapes do not compose"""


class RejectedAboveK(BranchWidthError):
    """A frontend or preprocessing guard proved the width exceeds k"""

    def __init__(self, index: Any = None, reason: str = "part-dimension"):
        super().__init__(f"rejected ({reason}) at {index}")
        self.index = index
        self.reason = reason


class IndexOutOfRange(BranchWidthError):
    """Part index outside the arrangement"""


class LabelMismatch(BranchWidthError):
    """Tree leaf labels do not match the arrangement parts"""


class EmptySubset(BranchWidthError):
    """An operation needs a nonempty part subset"""


class ScopeMismatch(BranchWidthError):
    """The base-node parts are not covered by the decomposition"""


class PreconditionViolated(BranchWidthError):
    """A transform was requested where its precondition fails"""


class Unrooted(BranchWidthError):
    """A rooted tree was required"""


class WidthExceeded(BranchWidthError):
    """Boundary computation crossed the width cap"""

    def __init__(self, node: int, width: int, cap: int):
        super().__init__(f"width {width} exceeds cap {cap} at node {node}")
        self.node = node
        self.width = width
        self.cap = cap


class NotRREF(BranchWidthError):
    """Arrangement matrix is not in reduced row echelon form"""


class ExtensionFailure(BranchWidthError):
    """A child boundary basis is not expressible in the parent basis"""


class NotSubspace(BranchWidthError):
    """Projection target is not inside the ambient space"""


class NotTrimOf(BranchWidthError):
    """The base namu is not the trim of the namu being checked"""


class ResourceExceeded(BranchWidthError):
    """An intermediate namu would exceed the node cap"""

    def __init__(self, cap: int, where: Optional[str] = None):
        message = f"namu node cap {cap} exceeded"
        if where is not None:
            message = f"{message} at {where}"
        super().__init__(message)
        self.cap = cap
        self.where = where


class EvidenceCorrupt(BranchWidthError):
    """Evidence replay produced an inconsistent decomposition"""


class AboveK(BranchWidthError):
    """The branch-width is proven to exceed k"""

    def __init__(self, k: int, step: Optional[int] = None):
        message = f"branch-width exceeds {k}"
        if step is not None:
            message = f"{message} (sub-arrangement of {step} parts)"
        super().__init__(message)
        self.k = k
        self.step = step


class TooLarge(BranchWidthError):
    """Instance exceeds the brute-force cap"""


class InputFormatError(BranchWidthError):
    """Malformed input file"""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
