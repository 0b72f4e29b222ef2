import pytest

from branchwidth.exceptions import NotPrime, ZeroInverse
from branchwidth.field import GF2, FieldSpec, elem_inverse


def test_inverse_mod_seven():
    assert elem_inverse(5, FieldSpec(7)) == 3


@pytest.mark.parametrize("p", [2, 3, 5, 7, 65521])
def test_every_nonzero_element_has_an_inverse(p):
    spec = FieldSpec(p)
    for a in (1, 2, p - 1):
        if a % p:
            assert spec.mul(a, spec.inv(a)) == 1


def test_zero_has_no_inverse():
    with pytest.raises(ZeroInverse):
        elem_inverse(0, FieldSpec(5))


@pytest.mark.parametrize("p", [0, 1, 4, 9, 65537])
def test_non_primes_are_rejected(p):
    with pytest.raises(NotPrime):
        FieldSpec(p)


def test_gf3_arithmetic(gf3):
    assert gf3.add(2, 2) == 1
    assert gf3.sub(0, 1) == 2
    assert gf3.neg(1) == 2
    assert gf3.mul(2, 2) == 1
    assert list(gf3.elements()) == [0, 1, 2]


def test_gf2_constant():
    assert GF2.is_binary
    assert str(GF2) == "GF(2)"
