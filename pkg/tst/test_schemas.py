import pytest
from pydantic import ValidationError

from branchwidth.schemas import EXIT_CODES, DecompositionResult, Outcome, TraceRecord


def test_every_outcome_has_an_exit_code():
    assert set(EXIT_CODES) == {o.value for o in Outcome}


def test_outcome_is_stored_as_its_value():
    result = DecompositionResult(outcome=Outcome.FOUND, width=2)
    assert result.outcome == "found"
    assert result.edges == []
    assert result.trace == []


def test_negative_widths_are_rejected():
    with pytest.raises(ValidationError):
        DecompositionResult(outcome=Outcome.FOUND, width=-1)


def test_trace_line():
    record = TraceRecord(node=3, stage="join", size=12, max_nodes=7)
    assert record.line() == "node 3 join: 12 namus, at most 7 nodes"
