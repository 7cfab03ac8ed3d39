import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levydragon.binary import BinaryWord, expand, q_prefix
from levydragon.curve import (
    LEVY_MAPS,
    SHIFTED_MAPS,
    decode_digits,
    f_eval,
    f_eval_general,
    f_recursion_oracle,
    g_eval,
    g_recursion_oracle,
    ifs_limit_oracle,
    tail_H,
    truncation_bound,
)
from levydragon.exact import ALPHA, HALF, ONE, ONE_MINUS_ALPHA, SHIFT, ZERO, DyadicGaussian
from levydragon.revolving import UnitDigit, gamma_sequence, xi_sequence
from levydragon.verify import all_dyadics

from conftest import dyadic, word

RHO = 1 / math.sqrt(2)
A = 0.5 - 0.5j


def float_g_term(w: BinaryWord, n: int) -> complex:
    """n-th term of the G series, straight from the digit formula."""
    q = q_prefix(w, n - 1)
    sign = 1 if w.digit(n) else -1
    return 0.5 * sign * A ** (n - 1 - q) * (1 - A) ** q


def test_f_examples():
    assert f_eval(BinaryWord()).exact == ZERO
    assert f_eval(dyadic(1, 2)).exact == ALPHA
    assert f_eval(dyadic(3, 4)).exact == DyadicGaussian(2, -1, 1)
    assert f_eval(dyadic(3, 4)).exact == g_eval(dyadic(3, 4)).exact - SHIFT
    assert f_eval(BinaryWord.one()).exact == ONE


def test_g_examples():
    assert g_eval(BinaryWord()).exact == SHIFT
    assert g_eval(dyadic(1, 2)).exact == ZERO
    assert g_eval(dyadic(3, 4)).exact == HALF
    assert g_eval(BinaryWord.one()).exact == ONE_MINUS_ALPHA


def test_non_terminating_values_carry_a_bound():
    w = expand(Fraction(1, 3), 128)
    p = f_eval(w, 128)
    assert p.exact is None and p.terms_used == 128
    assert p.tail_bound == truncation_bound(128)
    assert abs(p.approx - ifs_limit_oracle(LEVY_MAPS, w, 128)) < 1e-12


def test_f_eval_general_identity_at_half():
    for w in all_dyadics(8):
        p = f_eval_general(0.5, w, 64)
        assert p.approx == pytest.approx(float(w.value()), abs=1e-15)


def test_f_eval_general_specialises():
    w = word("100110110")
    assert abs(f_eval_general(A, w).approx - f_eval(w).approx) <= 1e-15


def test_f_eval_general_at_one_is_fixed_point():
    alpha = 0.3 + 0.3j
    p = f_eval_general(alpha, BinaryWord.one(), 200)
    fix = alpha / (1 - (1 - alpha))  # Fix(z -> (1-alpha) z + alpha)
    assert abs(fix - 1) < 1e-15
    # 200 float multiply-adds leave a few ulps on top of the tail
    assert abs(p.approx - fix) <= p.tail_bound + 1e-14


def test_f_eval_general_rejects_divergent():
    with pytest.raises(ValueError):
        f_eval_general(1.2, word("1"))
    with pytest.raises(ValueError):
        f_eval_general(-0.5, word("1"))


def test_recursion_oracle_examples():
    assert g_recursion_oracle(dyadic(1, 4)) == DyadicGaussian(-1, 0, 1)
    assert g_recursion_oracle(BinaryWord.one()) == ONE_MINUS_ALPHA
    assert g_recursion_oracle(dyadic(5, 8)) == g_eval(dyadic(5, 8)).exact
    assert f_recursion_oracle(dyadic(1, 2)) == ALPHA
    assert f_recursion_oracle(BinaryWord()) == ZERO
    assert f_recursion_oracle(dyadic(9, 16)) == f_eval(dyadic(9, 16)).exact
    with pytest.raises(ValueError):
        g_recursion_oracle(expand(Fraction(1, 3), 10))


def test_ifs_oracle_examples():
    assert abs(ifs_limit_oracle(LEVY_MAPS, BinaryWord.one(), 64) - 1) < 1e-9
    assert abs(ifs_limit_oracle(SHIFTED_MAPS, BinaryWord(), 64) - (-0.5 + 0.5j)) < 1e-9
    w = word("100110110")
    assert abs(ifs_limit_oracle(LEVY_MAPS, w, 64) - f_eval(w).approx) < 1e-9


@pytest.mark.parametrize("x", [Fraction(1, 2), Fraction(3, 4), Fraction(11, 16)])
def test_tail_H_vanishes(x):
    w = expand(x, 16)
    assert tail_H(w) == ZERO
    k = w.width
    assert abs(sum(float_g_term(w, n) for n in range(k, k + 200))) < 1e-12


def test_tail_H_rejects_zero():
    with pytest.raises(ValueError):
        tail_H(BinaryWord())


def test_g_partial_sum_matches_float_series():
    w = dyadic(11, 16)
    head = sum(float_g_term(w, n) for n in range(1, 300))
    assert abs(head - g_eval(w).approx) < 1e-12


def test_decode_examples(worked_word_a):
    assert decode_digits([UnitDigit.ONE], "levy").exact == ALPHA
    assert decode_digits(xi_sequence(worked_word_a, 9), "levy").exact == f_eval(worked_word_a).exact
    assert decode_digits(gamma_sequence(worked_word_a, 9), "shifted").exact == g_eval(worked_word_a).exact
    with pytest.raises(ValueError):
        decode_digits([UnitDigit.ONE, UnitDigit.MINUS_ONE], "shifted")


def test_decode_exhaustive_width_8():
    for w in all_dyadics(8):
        n = w.width
        assert decode_digits(xi_sequence(w, n), "levy").exact == f_eval(w).exact
        assert decode_digits(gamma_sequence(w, n), "shifted").exact == g_eval(w).exact


@pytest.mark.parametrize("n", [1, 2, 10, 64, 128])
def test_truncation_bound_is_the_geometric_tail(n):
    brute = math.fsum(RHO**k for k in range(n + 1, n + 400))
    assert truncation_bound(n, "levy") == pytest.approx(brute, rel=1e-12)
    assert truncation_bound(n, "shifted") == pytest.approx(brute / RHO, rel=1e-12)


def test_truncation_bound_values():
    assert truncation_bound(1) == pytest.approx(0.5 / (1 - RHO))
    assert truncation_bound(64) == pytest.approx(5.62e-10, rel=1e-3)
    assert truncation_bound(128) < 1.4e-19


def test_junction_continuity():
    target = f_eval(dyadic(1, 2)).approx
    for j in range(2, 41):
        x = Fraction(1, 2) - Fraction(1, 2**j)
        gap = abs(f_eval(expand(x, j)).approx - target)
        assert gap <= 2 * RHO**j / (1 - RHO)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=60))
def test_functional_equation(bits):
    w = BinaryWord(tuple(bits))
    if w.is_zero:
        return
    rest = BinaryWord(w.digits[1:])
    if w.digits[0]:
        assert f_eval(w).exact == ONE_MINUS_ALPHA * f_eval(rest).exact + ALPHA
        assert g_eval(w).exact == ONE_MINUS_ALPHA * g_eval(rest).exact + HALF
    else:
        assert f_eval(w).exact == ALPHA * f_eval(rest).exact
        assert g_eval(w).exact == ALPHA * g_eval(rest).exact - HALF
