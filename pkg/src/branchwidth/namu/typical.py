# src/branchwidth/namu/typical.py
"""Typical sequences of integers.

A sequence reduces by (i) deleting the strict interior of a run a_i..a_j
whose entries all lie between a_i and a_j, and (ii) deleting one of two equal
neighbours. ``typical`` returns the fixed point.
"""
from typing import Iterator, List, Sequence, Tuple


def _dedup(s: List[int]) -> List[int]:
    out: List[int] = []
    for x in s:
        if not out or out[-1] != x:
            out.append(x)
    return out


def _find_dominated_run(s: Sequence[int]) -> Tuple[int, int]:
    """First (i, j) with j > i + 1 and every entry between a_i and a_j, or (-1, -1)"""
    n = len(s)
    for i in range(n):
        lo = hi = s[i]
        for j in range(i + 1, n):
            lo = min(lo, s[j])
            hi = max(hi, s[j])
            if j > i + 1 and {lo, hi} == {min(s[i], s[j]), max(s[i], s[j])}:
                return i, j
    return -1, -1


def typical(s: Sequence[int]) -> Tuple[int, ...]:
    current = _dedup(list(s))
    while True:
        i, j = _find_dominated_run(current)
        if i < 0:
            return tuple(current)
        current = _dedup(current[: i + 1] + current[j:])


def is_typical(s: Sequence[int]) -> bool:
    return typical(s) == tuple(s)


def typical_sequences(k: int) -> Iterator[Tuple[int, ...]]:
    """Every typical sequence over {0..k}, shortest first within each prefix.

    Prefixes of typical sequences are typical, so the search extends typical
    prefixes only.
    """
    stack: List[Tuple[int, ...]] = [(x,) for x in range(k, -1, -1)]
    while stack:
        seq = stack.pop()
        yield seq
        for x in range(k, -1, -1):
            longer = seq + (x,)
            if is_typical(longer):
                stack.append(longer)
