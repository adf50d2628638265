from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from antileibniz.fields import CharacteristicError, FieldError, FieldSpec, is_prime


def test_primality_gate():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    with pytest.raises(FieldError):
        FieldSpec(4)


@pytest.mark.parametrize("text, value", [("4", 4), ("-3/7", Fraction(-3, 7)), ("3/2", Fraction(3, 2)),
                                         ("−1", -1), (" 0 ", 0)])
def test_parse_rational(text, value):
    assert FieldSpec().parse(text) == value


@pytest.mark.parametrize("text", ["1.5", "1e3", "", "3/", "a", "1/-2"])
def test_parse_rejects_inexact(text):
    with pytest.raises(FieldError):
        FieldSpec().parse(text)


def test_zero_denominator():
    with pytest.raises(FieldError, match="zero denominator"):
        FieldSpec().parse("1/0")


def test_floats_never_coerce():
    with pytest.raises(FieldError):
        FieldSpec()(0.5)
    with pytest.raises(FieldError):
        FieldSpec(5)(True)


def test_prime_field_residues():
    f = FieldSpec(5)
    assert f("3/2") == 4
    assert f(-1) == 4
    with pytest.raises(FieldError):
        f(Fraction(1, 5))
    assert f.inv(2) == 3 and f.div(1, 3) == 2


def test_small_characteristic_gate():
    FieldSpec(5).require_large_characteristic()
    for p in (2, 3):
        with pytest.raises(CharacteristicError):
            FieldSpec(p).require_large_characteristic()
        FieldSpec(p).require_large_characteristic(allow_small=True)


@given(st.fractions(max_denominator=50))
def test_format_parse_roundtrip(x):
    f = FieldSpec()
    assert f.parse(f.format(x)) == x


@given(st.integers(), st.integers(min_value=1, max_value=30))
def test_prime_reduction_is_a_ring_map(a, b):
    f = FieldSpec(7)
    assert f(a * b) == f(a) * f(b) % 7
    assert f(Fraction(a, b)) == f.div(a, b) if b % 7 else True


def test_arrays_are_exact():
    f = FieldSpec()
    arr = f.random(np.random.default_rng(0), (3, 3))
    assert arr.dtype == object and all(isinstance(v, Fraction) for v in arr.ravel())
    assert f.contract("ij,jk->ik", f.identity(3), arr).tolist() == arr.tolist()
