"""Exact arithmetic in Q(sqrt(p))."""

from fractions import Fraction
from random import Random

import pytest

from phinmod.errors import InvalidInputError
from phinmod.field import Scalar, is_prime, p_power, scalar_sqrt, sqrt_p

from util import random_scalar


def test_mul_identity_case():
    assert Scalar(1, 0, 2) * Scalar(0, 1, 2) == Scalar(0, 1, 2)


def test_inv_of_sqrt2():
    assert sqrt_p(2).inv() == Scalar(0, Fraction(1, 2), 2)
    assert sqrt_p(2) * sqrt_p(2).inv() == 1


def test_conjugate_product():
    # (1 + sqrt2)(1 - sqrt2) = 1 - 2 = -1
    assert Scalar(1, 1, 2) * Scalar(1, -1, 2) == Scalar(-1, 0, 2)


def test_sqrt_p_and_powers():
    assert sqrt_p(2) * sqrt_p(2) == 2
    assert p_power(-1, 3) == Fraction(1, 3)
    assert p_power(2, 2) * p_power(-2, 2) == 1
    assert sqrt_p(5) ** 2 == 5
    assert sqrt_p(2) ** -2 == Fraction(1, 2)


def test_field_axioms_randomized():
    rng = Random(2024)
    for p in (2, 3, 5):
        for _ in range(60):
            x, y, z = (random_scalar(rng, p) for _ in range(3))
            assert (x + y) + z == x + (y + z)
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z
            assert x + (-x) == 0
            if x:
                assert x * x.inv() == 1
                assert (x / x) == 1


def test_zero_iff_both_components_vanish():
    rng = Random(77)
    for p in (2, 3, 5):
        for _ in range(80):
            a = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
            b = Fraction(rng.randint(1, 9), rng.randint(1, 7))
            # a^2 = p b^2 has no rational solutions with b != 0
            assert a * a != p * b * b
            assert Scalar(a, b, p)
    assert not Scalar(0, 0, 3)


def test_mixing_primes_is_an_error():
    with pytest.raises(InvalidInputError):
        Scalar(1, 1, 2) * Scalar(1, 1, 3)
    with pytest.raises(InvalidInputError):
        Scalar(0, 1, 2) + Scalar(0, 1, 5)


def test_rational_scalars_cross_primes():
    # purely rational values denote the same number in any Q(sqrt(p))
    assert Scalar(3, 0, 2) == Scalar(3, 0, 3)
    assert Scalar(1, 0, 2) + Scalar(2, 0, 5) == 3
    assert Scalar(2, 0, 3) * sqrt_p(2) == Scalar(0, 2, 2)


def test_int_and_fraction_coercion():
    s = Scalar(1, 2, 3)
    assert s + 1 == Scalar(2, 2, 3)
    assert 2 * s == Scalar(2, 4, 3)
    assert s - Fraction(1, 2) == Scalar(Fraction(1, 2), 2, 3)
    assert s / 2 == Scalar(Fraction(1, 2), 1, 3)
    assert 1 / sqrt_p(2) == Scalar(0, Fraction(1, 2), 2)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Scalar(0, 0, 2).inv()
    with pytest.raises(ZeroDivisionError):
        Scalar(1, 1, 2) / Scalar(0, 0, 2)


def test_p_must_be_prime():
    with pytest.raises(InvalidInputError):
        Scalar(1, 0, 4)
    with pytest.raises(InvalidInputError):
        Scalar(1, 0, 1)
    assert is_prime(13) and not is_prime(21)


def test_serialization_roundtrip():
    rng = Random(5)
    for p in (2, 3):
        for _ in range(25):
            s = random_scalar(rng, p)
            pair = s.to_pair()
            assert all("/" in comp for comp in pair)
            assert Scalar.from_pair(pair, p) == s


def test_serialization_accepts_abbreviations():
    assert Scalar.from_pair(["0", "0"], 2) == 0
    assert Scalar.from_pair(["3", "-1/2"], 2) == Scalar(3, Fraction(-1, 2), 2)
    with pytest.raises(InvalidInputError):
        Scalar.from_pair(["1"], 2)


def test_conjugate_and_norm():
    s = Scalar(3, 2, 2)
    assert s.conjugate() == Scalar(3, -2, 2)
    assert s.norm() == 9 - 2 * 4
    assert (s * s.conjugate()).is_rational()


def test_scalar_sqrt():
    assert scalar_sqrt(Scalar(2, 0, 2)) == sqrt_p(2)
    assert scalar_sqrt(Scalar(Fraction(9, 4), 0, 2)) == Fraction(3, 2)
    # 3 + 2 sqrt2 = (1 + sqrt2)^2
    assert scalar_sqrt(Scalar(3, 2, 2)) == Scalar(1, 1, 2)
    assert scalar_sqrt(Scalar(3, 0, 2)) is None
    assert scalar_sqrt(Scalar(-1, 0, 2)) is None
    assert scalar_sqrt(Scalar(0, 0, 5)) == 0
