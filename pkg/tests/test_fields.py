import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as strat

from mulhopf.fields import GF, QQ, FieldError


def test_qq_parse_and_format():
    assert QQ.parse("3/4") == Fraction(3, 4)
    assert QQ.parse("-2") == Fraction(-2)
    assert QQ.parse("0") == Fraction(0)
    assert QQ.format(Fraction(3, 4)) == "3/4"
    assert QQ.format(Fraction(-5)) == "-5"
    assert QQ.format(QQ.zero) == "0"


def test_qq_parse_rejects_garbage():
    with pytest.raises(FieldError):
        QQ.parse("two")
    with pytest.raises(FieldError):
        QQ.parse("1/0")


def test_qq_arithmetic():
    a, b = Fraction(2, 3), Fraction(-1, 6)
    assert QQ.add(a, b) == Fraction(1, 2)
    assert QQ.mul(a, b) == Fraction(-1, 9)
    assert QQ.sub(a, b) == Fraction(5, 6)
    assert QQ.div(a, b) == Fraction(-4)
    assert QQ.inv(a) == Fraction(3, 2)
    assert QQ.neg(a) == Fraction(-2, 3)
    assert QQ.coerce(7) == Fraction(7)


def test_gf_construction_and_inverse():
    F = GF(7)
    assert F.p == 7
    for x in range(1, 7):
        assert F.mul(x, F.inv(x)) == F.one
    with pytest.raises(ZeroDivisionError):
        F.inv(F.zero)


def test_gf_parse_reduces_mod_p():
    F = GF(5)
    assert F.parse("7") == 2
    assert F.parse("-1") == 4
    assert F.coerce(-3) == 2
    assert F.format(F.coerce(9)) == "4"


def test_gf_rejects_non_primes():
    for n in (1, 4, 6, 0, -3, 9):
        with pytest.raises(FieldError):
            GF(n)


def test_field_random_is_deterministic_per_seed():
    for field in (QQ, GF(11)):
        xs = [field.random(random.Random(3)) for _ in range(5)]
        ys = [field.random(random.Random(3)) for _ in range(5)]
        assert xs == ys


rationals = strat.fractions(min_value=-50, max_value=50, max_denominator=12)
fp_elems = strat.integers(min_value=0, max_value=6)


@given(rationals, rationals, rationals)
def test_qq_ring_laws(a, b, c):
    assert QQ.add(QQ.add(a, b), c) == QQ.add(a, QQ.add(b, c))
    assert QQ.mul(QQ.mul(a, b), c) == QQ.mul(a, QQ.mul(b, c))
    assert QQ.mul(a, QQ.add(b, c)) == QQ.add(QQ.mul(a, b), QQ.mul(a, c))
    assert QQ.add(a, QQ.neg(a)) == QQ.zero
    assert QQ.mul(a, QQ.one) == a


@given(fp_elems, fp_elems, fp_elems)
def test_gf7_ring_laws(a, b, c):
    F = GF(7)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == F.zero
    if a != F.zero:
        assert F.mul(a, F.inv(a)) == F.one
