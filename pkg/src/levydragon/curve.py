"""Evaluators for the Levy dragon parametrisation f and its translate G.

f solves  f(x) = alpha f(2x)               (x < 1/2)
          f(x) = (1-alpha) f(2x-1) + alpha (x >= 1/2)
and G solves the same recursion with offsets -1/2 and +1/2, alpha = (1-i)/2.

The closed forms are summed with integer numerators over a common power of
two, which keeps every partial sum exact.  The recursion, IFS and digit
decoders are independent routes to the same values and serve as oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .binary import BinaryWord, q_prefix
from .exact import ALPHA, HALF, ONE, ONE_MINUS_ALPHA, SHIFT, ZERO, DyadicGaussian, dg_pow, dg_to_float
from .geometry import LEVY_MAPS, SHIFTED_MAPS, AffineMap
from .revolving import Digit, UnitDigit, as_unit_digit, automaton_parse, build_graph

CURVES = ("levy", "shifted")
_RHO = 1 / math.sqrt(2)  # |alpha| = |1 - alpha|

_G1 = build_graph("G1")
_G2 = build_graph("G2")


@dataclass(frozen=True)
class CurvePoint:
    """A curve value: exact when available, else a float with a certified bound."""

    exact: Optional[DyadicGaussian]
    approx: complex
    terms_used: int
    tail_bound: float

    @classmethod
    def from_exact(cls, value: DyadicGaussian, terms_used: int) -> "CurvePoint":
        return cls(value, dg_to_float(value), terms_used, 0.0)


def _check_curve(curve: str) -> None:
    if curve not in CURVES:
        raise ValueError(f"unknown curve {curve!r}; expected one of {CURVES}")


def truncation_bound(n_terms: int, curve: str = "levy") -> float:
    """Bound on the series tail after ``n_terms`` terms.

    levy terms have modulus |alpha|**n; shifted terms (1/2)|alpha|**(n-1).
    The shifted bound drops the factor 1/2 and so is conservative by 2.
    """
    if n_terms < 1:
        raise ValueError("n_terms must be positive")
    _check_curve(curve)
    power = n_terms + 1 if curve == "levy" else n_terms
    return _RHO**power / (1 - _RHO)


def _sum_levy(bits: Sequence[int]) -> DyadicGaussian:
    """sum_{n<=N} omega_n alpha^(n-q) (1-alpha)^q, q = q(x, n-1)."""
    # p = numerator of (1-i)^(n-q) (1+i)^q; s = numerator of the sum over 2^n
    pr, pi = 1, -1
    sr = si = 0
    for bit in bits:
        sr <<= 1
        si <<= 1
        if bit:
            sr += pr
            si += pi
            pr, pi = pr - pi, pr + pi  # times (1 + i)
        else:
            pr, pi = pr + pi, pi - pr  # times (1 - i)
    return DyadicGaussian(sr, si, len(bits))


def _sum_shifted(bits: Sequence[int]) -> DyadicGaussian:
    """(1/2) sum_{n<=N} (-1)^(1-omega_n) alpha^(n-1-q) (1-alpha)^q."""
    pr, pi = 1, 0
    sr = si = 0
    for bit in bits:
        sr <<= 1
        si <<= 1
        if bit:
            sr += pr
            si += pi
            pr, pi = pr - pi, pr + pi
        else:
            sr -= pr
            si -= pi
            pr, pi = pr + pi, pi - pr
    return DyadicGaussian(sr, si, len(bits))


def _plan(w: BinaryWord, n_terms: int) -> tuple[int, bool]:
    """How many digits to sum, and whether that covers all of x."""
    if n_terms < 1:
        raise ValueError("n_terms must be positive")
    if w.terminating and n_terms >= w.width:
        return w.width, True
    return min(n_terms, w.width), False


def f_eval(w: BinaryWord, n_terms: int = 128) -> CurvePoint:
    """f(x) from its closed-form series.

    Exact for terminating words once ``n_terms`` covers them, and for x = 1
    (the all-ones tail is a geometric series).  Otherwise a float partial
    sum with ``tail_bound`` = truncation_bound(N, "levy").
    """
    if w.is_one:
        # sum_n alpha (1-alpha)^(n-1) = alpha / (1 - (1-alpha))
        return CurvePoint.from_exact(ALPHA * (ONE - ONE_MINUS_ALPHA).inverse(), 0)
    n, complete = _plan(w, n_terms)
    value = _sum_levy(w.digits[:n])
    if complete:
        return CurvePoint.from_exact(value, n)
    return CurvePoint(None, dg_to_float(value), n, truncation_bound(max(n, 1), "levy"))


def g_eval(w: BinaryWord, n_terms: int = 128) -> CurvePoint:
    """G(x) from its closed-form series.

    For a terminating word ending in its k-th digit, the terms from k on sum
    to zero (see :func:`tail_H`), so the exact value is the sum of the first
    k - 1 terms.  x = 0 and x = 1 are geometric series summed in closed form.
    """
    if w.is_one:
        # (1/2) sum_n (1-alpha)^(n-1) = (1/2) / alpha
        return CurvePoint.from_exact(HALF * ALPHA.inverse(), 0)
    if w.is_zero:
        # -(1/2) sum_n alpha^(n-1) = -(1/2) / (1 - alpha)
        return CurvePoint.from_exact(-HALF * ONE_MINUS_ALPHA.inverse(), 0)
    n, complete = _plan(w, n_terms)
    if complete:
        k = w.last_one()
        if tail_H(w):
            raise ArithmeticError(f"nonzero series tail at {w}")
        return CurvePoint.from_exact(_sum_shifted(w.digits[: k - 1]), k - 1)
    value = _sum_shifted(w.digits[:n])
    return CurvePoint(None, dg_to_float(value), n, truncation_bound(max(n, 1), "shifted"))


def f_eval_general(alpha: complex, w: BinaryWord, n_terms: int = 128) -> CurvePoint:
    """Float partial sum of sum_n omega_n alpha^(n-q) (1-alpha)^q for any alpha.

    Every term has modulus at most max(|alpha|, |1-alpha|)**n, which gives
    the tail bound.  Refuses alpha unless both moduli are below 1.
    """
    alpha = complex(alpha)
    beta = 1 - alpha
    ratio = max(abs(alpha), abs(beta))
    if abs(alpha) >= 1:
        raise ValueError(f"|alpha| = {abs(alpha)} must be < 1")
    if ratio >= 1:
        raise ValueError(f"|1 - alpha| = {abs(beta)} >= 1; no convergent tail bound")
    if w.is_one:
        n, complete = n_terms, False
    else:
        n, complete = _plan(w, n_terms)
    total = 0j
    power = alpha  # alpha^(n-q) (1-alpha)^q for the current n
    for k in range(1, n + 1):
        if w.digit(k):
            total += power
            power *= beta
        else:
            power *= alpha
    bound = 0.0 if complete else ratio ** (n + 1) / (1 - ratio)
    return CurvePoint(None, total, n, bound)


def g_recursion_oracle(w: BinaryWord) -> DyadicGaussian:
    """Unwind G(x) = alpha G(2x) - 1/2 | (1-alpha) G(2x-1) + 1/2 to G(0)."""
    if w.is_one:
        return ONE_MINUS_ALPHA  # G(1) = (1+i)/2
    if not w.terminating:
        raise ValueError("the recursion oracle needs a terminating dyadic word")
    value = SHIFT  # G(0) = (-1+i)/2
    for bit in reversed(w.digits):
        value = ONE_MINUS_ALPHA * value + HALF if bit else ALPHA * value - HALF
    return value


def f_recursion_oracle(w: BinaryWord) -> DyadicGaussian:
    """Unwind f(x) = alpha f(2x) | (1-alpha) f(2x-1) + alpha to f(0) = 0."""
    if w.is_one:
        return ONE
    if not w.terminating:
        raise ValueError("the recursion oracle needs a terminating dyadic word")
    value = ZERO
    for bit in reversed(w.digits):
        value = ONE_MINUS_ALPHA * value + ALPHA if bit else ALPHA * value
    return value


def ifs_limit_oracle(maps: tuple[AffineMap, AffineMap], w: BinaryWord, depth: int = 64) -> complex:
    """m_{omega_1} o ... o m_{omega_depth}(0) in floating point.

    The distance to the limit is at most ratio**depth * 2 for the two
    dragon IFSs, whose attractors lie in the disk of radius 2.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    for m in maps:
        if not m.is_contraction():
            raise ValueError(f"{m} is not a contraction")
    (c0, d0), (c1, d1) = maps[0].as_float(), maps[1].as_float()
    z = 0j
    for bit in reversed(w.prefix(depth)):
        z = c1 * z + d1 if bit else c0 * z + d0
    return z


def tail_H(w: BinaryWord) -> DyadicGaussian:
    """(1/2) sum_{n>=k} (-1)^(1-omega_n) alpha^(n-1-q) (1-alpha)^q at a dyadic x.

    k is the position of the last 1.  Past it every digit is 0, so with
    r = (1-alpha)/alpha and q = q(x, k-1) the tail is
        (1/2) (alpha^(k-1) r^q - r^(q+1) * alpha^k / (1 - alpha)),
    evaluated exactly.  It vanishes for every dyadic x.
    """
    if not w.terminating or w.is_one:
        raise ValueError("tail_H needs a terminating dyadic word")
    k = w.last_one()
    if k == 0:
        raise ValueError("x = 0 has no last 1")
    q = q_prefix(w, k - 1)
    r = ONE_MINUS_ALPHA * ALPHA.inverse()
    geometric = dg_pow(ALPHA, k) * (ONE - ALPHA).inverse()  # sum_{n>k} alpha^(n-1)
    return HALF * (dg_pow(ALPHA, k - 1) * dg_pow(r, q) - dg_pow(r, q + 1) * geometric)


def decode_digits(seq: Sequence[Digit], curve: str, extend: bool = True) -> CurvePoint:
    """Point of the curve named by a digit sequence.

    levy: sum xi_n alpha^n for a G1-realisable sequence.
    shifted: (1 - alpha) sum gamma_n alpha^n for a G2-realisable sequence.

    A finite sequence stands for the walk continued along 0-edges, i.e. the
    binary word padded with zeros.  For G2 that continuation emits
    -i^q forever and its geometric tail is added exactly.  ``extend=False``
    returns the bare partial sum with a tail bound instead.
    """
    _check_curve(curve)
    automaton = _G1 if curve == "levy" else _G2
    bits = automaton_parse(automaton, seq)
    if bits is None:
        raise ValueError(f"digit sequence is not realisable by {automaton.name}")
    digits = [as_unit_digit(d).exact() for d in seq]
    total = ZERO
    for d in reversed(digits):
        total = ALPHA * (d + total)
    n = len(digits)
    if curve == "levy":
        if extend or n == 0:
            return CurvePoint.from_exact(total, n)
        return CurvePoint(None, dg_to_float(total), n, truncation_bound(n, "levy"))
    if extend:
        q = sum(bits)
        tail_digit = -UnitDigit.from_power(q).exact()
        total = total + tail_digit * dg_pow(ALPHA, n + 1) * (ONE - ALPHA).inverse()
        return CurvePoint.from_exact(ONE_MINUS_ALPHA * total, n)
    value = ONE_MINUS_ALPHA * total
    return CurvePoint(None, dg_to_float(value), n, truncation_bound(max(n, 1), "shifted"))


def evaluate(curve: str, w: BinaryWord, n_terms: int = 128) -> CurvePoint:
    _check_curve(curve)
    return f_eval(w, n_terms) if curve == "levy" else g_eval(w, n_terms)


def recursion_oracle(curve: str, w: BinaryWord) -> DyadicGaussian:
    _check_curve(curve)
    return f_recursion_oracle(w) if curve == "levy" else g_recursion_oracle(w)


def curve_maps(curve: str) -> tuple[AffineMap, AffineMap]:
    _check_curve(curve)
    return LEVY_MAPS if curve == "levy" else SHIFTED_MAPS
