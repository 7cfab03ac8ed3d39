"""Exact arithmetic over dyadic Gaussian rationals (a + b*i) / 2**k."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Number = Union["DyadicGaussian", int]


def _odd_part(n: int) -> tuple[int, int]:
    """Split a nonzero integer into (odd part, power of two)."""
    shift = (n & -n).bit_length() - 1
    return n >> shift, shift


class DyadicGaussian:
    """The complex number ``(a + b*i) / 2**k`` in normal form.

    Normal form: ``k == 0`` or ``a`` and ``b`` are not both even.  Zero is
    ``(0, 0, 0)``.  Equality is therefore structural.  Numerators are Python
    integers, so there is no overflow.  Mixing with a float or complex
    operand drops to a complex float result.
    """

    __slots__ = ("a", "b", "k")

    def __init__(self, a: int = 0, b: int = 0, k: int = 0):
        if k < 0:
            a <<= -k
            b <<= -k
            k = 0
        if a == 0 and b == 0:
            k = 0
        else:
            # strip common factors of two, but never below k = 0
            tz = ((a | b) & -(a | b)).bit_length() - 1
            drop = min(tz, k)
            if drop:
                a >>= drop
                b >>= drop
                k -= drop
        self.a = a
        self.b = b
        self.k = k

    # -- construction ----------------------------------------------------

    @classmethod
    def coerce(cls, value) -> "DyadicGaussian":
        """Convert an int, dyadic Fraction, float or complex exactly.

        Floats are always dyadic, so the conversion is lossless.  Raises
        ``ValueError`` for rationals whose denominator is not a power of two.
        """
        if isinstance(value, DyadicGaussian):
            return value
        if isinstance(value, complex):
            re = cls.coerce(Fraction(value.real))
            im = cls.coerce(Fraction(value.imag))
            return re + im * I
        if isinstance(value, (int, float, Fraction)):
            frac = Fraction(value)
            den = frac.denominator
            if den & (den - 1):
                raise ValueError(f"{value!r} is not a dyadic rational")
            return cls(frac.numerator, 0, den.bit_length() - 1)
        raise TypeError(f"cannot convert {type(value).__name__} to DyadicGaussian")

    # -- ring operations -------------------------------------------------

    def _align(self, other: "DyadicGaussian") -> tuple[int, int, int, int, int]:
        k = max(self.k, other.k)
        s, o = k - self.k, k - other.k
        return self.a << s, self.b << s, other.a << o, other.b << o, k

    def __add__(self, other: Number) -> "DyadicGaussian":
        if isinstance(other, int):
            other = DyadicGaussian(other)
        elif isinstance(other, (float, complex)):
            return dg_to_float(self) + other
        elif not isinstance(other, DyadicGaussian):
            return NotImplemented
        a1, b1, a2, b2, k = self._align(other)
        return DyadicGaussian(a1 + a2, b1 + b2, k)

    __radd__ = __add__

    def __neg__(self) -> "DyadicGaussian":
        return DyadicGaussian(-self.a, -self.b, self.k)

    def __sub__(self, other: Number) -> "DyadicGaussian":
        if isinstance(other, int):
            other = DyadicGaussian(other)
        elif isinstance(other, (float, complex)):
            return dg_to_float(self) - other
        elif not isinstance(other, DyadicGaussian):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> "DyadicGaussian":
        if not isinstance(other, (int, float, complex)):
            return NotImplemented
        return (-self) + other

    def __mul__(self, other: Number) -> "DyadicGaussian":
        if isinstance(other, int):
            return DyadicGaussian(self.a * other, self.b * other, self.k)
        if isinstance(other, (float, complex)):
            return dg_to_float(self) * other
        if not isinstance(other, DyadicGaussian):
            return NotImplemented
        return DyadicGaussian(
            self.a * other.a - self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.k + other.k,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "DyadicGaussian":
        return dg_pow(self, n)

    def conjugate(self) -> "DyadicGaussian":
        return DyadicGaussian(self.a, -self.b, self.k)

    def norm(self) -> Fraction:
        """|z|**2 as an exact rational."""
        return Fraction(self.a * self.a + self.b * self.b, 1 << (2 * self.k))

    def half(self, times: int = 1) -> "DyadicGaussian":
        return DyadicGaussian(self.a, self.b, self.k + times)

    def is_invertible(self) -> bool:
        n = self.a * self.a + self.b * self.b
        return n != 0 and n & (n - 1) == 0

    def inverse(self) -> "DyadicGaussian":
        """Multiplicative inverse, when it stays in the ring.

        The units of Z[i][1/2] are exactly the elements whose numerator norm
        a**2 + b**2 is a power of two.
        """
        n = self.a * self.a + self.b * self.b
        if n == 0:
            raise ZeroDivisionError("DyadicGaussian inverse of zero")
        odd, e = _odd_part(n)
        if odd != 1:
            raise ValueError(f"{self} has no inverse with a power-of-two denominator")
        # 1/z = conj(z) * 2**k / n
        return DyadicGaussian(self.a << self.k, -self.b << self.k, e)

    def __truediv__(self, other: Number) -> "DyadicGaussian":
        if isinstance(other, int):
            other = DyadicGaussian(other)
        elif not isinstance(other, DyadicGaussian):
            return NotImplemented
        return self * other.inverse()

    # -- comparison and conversion ---------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = DyadicGaussian(other)
        if not isinstance(other, DyadicGaussian):
            return NotImplemented
        return (self.a, self.b, self.k) == (other.a, other.b, other.k)

    def __hash__(self) -> int:
        return hash((DyadicGaussian, self.a, self.b, self.k))

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __complex__(self) -> complex:
        return dg_to_float(self)

    def __repr__(self) -> str:
        return f"DyadicGaussian({self.a}, {self.b}, {self.k})"

    def __str__(self) -> str:
        return format_exact(self)


def dg_add(x: DyadicGaussian, y: DyadicGaussian) -> DyadicGaussian:
    return x + y


def dg_mul(x: DyadicGaussian, y: DyadicGaussian) -> DyadicGaussian:
    return x * y


def dg_pow(base: DyadicGaussian, n: int) -> DyadicGaussian:
    """Exact ``base**n`` by binary powering; ``n`` must be non-negative."""
    if n < 0:
        raise ValueError("dg_pow requires a non-negative exponent")
    result = ONE
    square = base
    while n:
        if n & 1:
            result = result * square
        n >>= 1
        if n:
            square = square * square
    return result


def dg_to_float(x: DyadicGaussian) -> complex:
    # int / int is correctly rounded even when |a| or |b| exceed 2**53
    den = 1 << x.k
    return complex(x.a / den, x.b / den)


def _gaussian_text(a: int, b: int) -> str:
    if b == 0:
        return str(a)
    if b == 1:
        imag = "i"
    elif b == -1:
        imag = "-i"
    else:
        imag = f"{b}*i"
    if a == 0:
        return imag
    sign = "" if imag.startswith("-") else "+"
    return f"{a}{sign}{imag}"


def format_exact(x: DyadicGaussian) -> str:
    """Render as ``num`` or ``num/den`` with a parenthesised two-term numerator.

    >>> format_exact(DyadicGaussian(-1, 1, 1))
    '(-1+i)/2'
    >>> format_exact(DyadicGaussian(1, 0, 1))
    '1/2'
    """
    num = _gaussian_text(x.a, x.b)
    if x.k == 0:
        return num
    if x.a and x.b:
        num = f"({num})"
    return f"{num}/{1 << x.k}"


def format_decimal(z: complex) -> str:
    """Decimal ``re±im*i`` form with 17 significant digits."""
    re, im = z.real + 0.0, z.imag + 0.0
    sign = "-" if im < 0 else "+"
    return f"{re:.17g}{sign}{abs(im):.17g}*i"


ZERO = DyadicGaussian(0)
ONE = DyadicGaussian(1)
I = DyadicGaussian(0, 1)
HALF = DyadicGaussian(1, 0, 1)
#: alpha = (1 - i)/2
ALPHA = DyadicGaussian(1, -1, 1)
#: 1 - alpha = (1 + i)/2
ONE_MINUS_ALPHA = DyadicGaussian(1, 1, 1)
#: the translation s = (-1 + i)/2
SHIFT = DyadicGaussian(-1, 1, 1)
