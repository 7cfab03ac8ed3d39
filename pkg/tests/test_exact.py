from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levydragon.exact import (
    ALPHA,
    HALF,
    ONE,
    ONE_MINUS_ALPHA,
    SHIFT,
    ZERO,
    DyadicGaussian,
    dg_add,
    dg_mul,
    dg_pow,
    dg_to_float,
    format_decimal,
    format_exact,
)

numerators = st.integers(min_value=-(2**30), max_value=2**30)
exponents = st.integers(min_value=0, max_value=40)
dyadics = st.builds(DyadicGaussian, numerators, numerators, exponents)


def as_fractions(x: DyadicGaussian) -> tuple[Fraction, Fraction]:
    return Fraction(x.a, 2**x.k), Fraction(x.b, 2**x.k)


def fraction_product(x, y):
    """Independent oracle: complex product over Q."""
    (a, b), (c, d) = as_fractions(x), as_fractions(y)
    return a * c - b * d, a * d + b * c


def test_add_examples():
    assert dg_add(HALF, SHIFT) == DyadicGaussian(0, 1, 1)
    assert dg_add(ALPHA, ONE_MINUS_ALPHA) == ONE
    assert dg_add(SHIFT, DyadicGaussian(1, -1, 1)) == ZERO


@pytest.mark.parametrize(
    "x, y, want",
    [
        (ALPHA, ONE_MINUS_ALPHA, (Fraction(1, 2), Fraction(0))),
        (ALPHA, ALPHA, (Fraction(0), Fraction(-1, 2))),
    ],
)
def test_mul_examples(x, y, want):
    assert fraction_product(x, y) == want
    assert as_fractions(dg_mul(x, y)) == want


def test_mul_identity():
    x = DyadicGaussian(7, -3, 5)
    assert dg_mul(x, ONE) == x


def test_pow_examples():
    repeated = ALPHA * ALPHA * ALPHA * ALPHA
    assert repeated == DyadicGaussian(-1, 0, 2)
    assert dg_pow(ALPHA, 4) == repeated
    assert dg_pow(ALPHA, 0) == ONE
    assert dg_pow(ONE_MINUS_ALPHA, 2) == ONE_MINUS_ALPHA * ONE_MINUS_ALPHA == DyadicGaussian(0, 1, 1)


def test_pow_rejects_negative():
    with pytest.raises(ValueError):
        dg_pow(ALPHA, -1)


def test_to_float_examples():
    assert dg_to_float(SHIFT) == -0.5 + 0.5j
    assert dg_to_float(ZERO) == 0j
    assert dg_to_float(ALPHA) == 0.5 - 0.5j


def test_to_float_large_numerators_round_correctly():
    x = DyadicGaussian(2**60 + 1, 0, 60)
    assert dg_to_float(x) == complex(1.0, 0.0)


def test_normal_form_examples():
    assert (DyadicGaussian(4, 2, 3).a, DyadicGaussian(4, 2, 3).b, DyadicGaussian(4, 2, 3).k) == (2, 1, 2)
    assert DyadicGaussian(4, 8, 0).k == 0
    assert DyadicGaussian(0, 0, 9) == ZERO and ZERO.k == 0
    assert DyadicGaussian(3, 0, -2) == DyadicGaussian(12)


def test_inverse_units_only():
    assert ALPHA.inverse() == DyadicGaussian(1, 1)
    assert ALPHA * ALPHA.inverse() == ONE
    assert DyadicGaussian(0, 1).inverse() == DyadicGaussian(0, -1)
    with pytest.raises(ValueError):
        DyadicGaussian(3).inverse()
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_coerce():
    assert DyadicGaussian.coerce(0.375) == DyadicGaussian(3, 0, 3)
    assert DyadicGaussian.coerce(Fraction(-1, 4)) == DyadicGaussian(-1, 0, 2)
    assert DyadicGaussian.coerce(0.5 - 0.25j) == DyadicGaussian(2, -1, 2)
    with pytest.raises(ValueError):
        DyadicGaussian.coerce(Fraction(1, 3))


def test_mixed_float_arithmetic_drops_to_complex():
    assert ALPHA * 2.0 == 1 - 1j
    assert 1.5 + HALF == 2.0
    assert 1 - ALPHA == ONE_MINUS_ALPHA


@pytest.mark.parametrize(
    "value, text",
    [
        (HALF, "1/2"),
        (SHIFT, "(-1+i)/2"),
        (DyadicGaussian(0, -1, 1), "-i/2"),
        (DyadicGaussian(2, -1, 1), "(2-i)/2"),
        (DyadicGaussian(12, -15, 4), "(12-15*i)/16"),
        (DyadicGaussian(-3), "-3"),
        (ZERO, "0"),
    ],
)
def test_format_exact(value, text):
    assert format_exact(value) == text
    assert str(value) == text


def test_format_decimal():
    assert format_decimal(0.5 - 0.5j) == "0.5-0.5*i"
    assert format_decimal(complex(-0.0, -0.0)) == "0+0*i"


@settings(max_examples=10_000, deadline=None)
@given(dyadics, dyadics, dyadics)
def test_ring_laws(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x + y == y + x
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z


@settings(max_examples=2_000, deadline=None)
@given(dyadics, dyadics)
def test_mul_matches_rational_oracle(x, y):
    assert as_fractions(x * y) == fraction_product(x, y)


@given(numerators, numerators, exponents)
def test_normal_form_idempotent(a, b, k):
    x = DyadicGaussian(a, b, k)
    again = DyadicGaussian(x.a, x.b, x.k)
    assert (again.a, again.b, again.k) == (x.a, x.b, x.k)
    if x.k > 0:
        assert x.a % 2 or x.b % 2
    assert as_fractions(x) == (Fraction(a, 2**k), Fraction(b, 2**k))


@pytest.mark.parametrize("n", range(129))
def test_alpha_powers_match_float(n):
    want = (0.5 - 0.5j) ** n
    assert abs(dg_to_float(dg_pow(ALPHA, n)) - want) <= 1e-12 * abs(want)


def test_alpha_modulus_squared():
    assert ALPHA * ALPHA.conjugate() == HALF
    assert ALPHA.norm() == Fraction(1, 2)
