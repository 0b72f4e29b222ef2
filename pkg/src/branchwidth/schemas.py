# src/branchwidth/schemas.py
from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class OutputFormat(str, Enum):
    POSTORDER = "postorder"
    EDGES = "edges"
    JSON = "json"


class Outcome(str, Enum):
    FOUND = "found"
    ABOVE_K = "above_k"
    REJECTED = "rejected"
    RESOURCE = "resource"
    INPUT_ERROR = "input_error"


EXIT_CODES: Dict[str, int] = {
    Outcome.FOUND.value: 0,
    Outcome.ABOVE_K.value: 10,
    Outcome.REJECTED.value: 11,
    Outcome.RESOURCE.value: 12,
    Outcome.INPUT_ERROR.value: 2,
}


class BaseSchema(BaseModel):
    """Base schema with common configuration"""
    model_config = ConfigDict(
        from_attributes=True,
        use_enum_values=True,
    )


class TraceRecord(BaseSchema):
    """Size of one full-set table"""
    node: int = Field(..., ge=0)
    stage: str
    size: int = Field(..., ge=0)
    max_nodes: int = Field(default=0, ge=0)

    def line(self) -> str:
        return f"node {self.node} {self.stage}: {self.size} namus, at most {self.max_nodes} nodes"


class DecompositionResult(BaseSchema):
    """Outcome of one run as written by the CLI"""
    outcome: Outcome
    k: Optional[int] = Field(default=None, ge=0)
    width: Optional[int] = Field(default=None, ge=0)
    postorder: Optional[str] = None
    edges: List[List[int]] = Field(default_factory=list)
    leaves: Dict[int, int] = Field(default_factory=dict)
    exit_code: int = 0
    message: Optional[str] = None
    trace: List[TraceRecord] = Field(default_factory=list)
