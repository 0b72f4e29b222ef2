# src/branchwidth/field.py
"""Prime fields GF(p).

Elements are plain integers in ``[0, p)``. Matrices over the field are numpy
integer arrays reduced modulo ``p`` (see ``branchwidth.linalg``); GF(2)
matrices additionally get a bit-packed row representation there.
"""
from dataclasses import dataclass

from branchwidth.exceptions import NotPrime, ZeroInverse

MAX_PRIME = 65521


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The prime field GF(p)"""
    p: int

    def __post_init__(self):
        if not (2 <= self.p <= MAX_PRIME) or not _is_prime(self.p):
            raise NotPrime(self.p)

    @property
    def is_binary(self) -> bool:
        return self.p == 2

    def elements(self) -> range:
        return range(self.p)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        return elem_inverse(a, self)

    def __str__(self) -> str:
        return f"GF({self.p})"


def elem_inverse(a: int, spec: FieldSpec) -> int:
    """Multiplicative inverse by Fermat's little theorem"""
    a %= spec.p
    if a == 0:
        raise ZeroInverse(f"0 has no inverse in {spec}")
    return pow(a, spec.p - 2, spec.p)


GF2 = FieldSpec(2)
