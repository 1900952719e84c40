import random
from fractions import Fraction

import pytest

from bamod.gaussq import GaussQ, I, ONE, ZERO, format_gaussq, parse_gaussq

from conftest import rand_gq


def test_norm_identity():
    assert GaussQ(1, 2) * GaussQ(1, -2) == GaussQ(5)


def test_i_squared():
    assert I * I == GaussQ(-1)


def test_conjugate_sum():
    a = GaussQ(Fraction(1, 2), Fraction(1, 3))
    b = GaussQ(Fraction(1, 2), Fraction(-1, 3))
    assert a + b == ONE


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussQ(1) / ZERO


def test_field_axioms_random():
    rng = random.Random(11)
    for _ in range(300):
        a, b, c = (rand_gq(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        if not b.is_zero:
            assert (a / b) * b == a


def test_pow():
    assert I ** 2 == GaussQ(-1)
    assert I ** 0 == ONE
    assert GaussQ(2) ** -2 == GaussQ(Fraction(1, 4))


def test_lowest_terms_invariant():
    g = GaussQ(Fraction(2, 4), Fraction(-6, 9))
    assert g.re == Fraction(1, 2) and g.re.denominator == 2
    assert g.im.denominator == 3 and g.im.numerator == -2


@pytest.mark.parametrize("text", ["1", "-2/3", "i", "-i", "2i", "1/2-1/3i",
                                  "1/2 + 1/3 i", "-1+i", "0"])
def test_parse_format_roundtrip(text):
    g = parse_gaussq(text)
    assert parse_gaussq(format_gaussq(g)) == g


def test_parse_rejects_garbage():
    for bad in ["", "1+", "x", "1//2", "i2"]:
        with pytest.raises(ValueError):
            parse_gaussq(bad)


def test_string_serialization_roundtrip():
    rng = random.Random(5)
    for _ in range(50):
        g = rand_gq(rng)
        assert GaussQ.from_strings(g.to_strings()) == g


def test_hash_consistency():
    assert hash(GaussQ(Fraction(2, 4))) == hash(GaussQ(Fraction(1, 2)))
    assert len({GaussQ(1, 2), GaussQ(1, 2), GaussQ(2, 1)}) == 2
