"""Binary expansions of x in [0, 1] and the prefix count q(x, n).

Conventions: a dyadic x takes its terminating expansion (trailing zeros),
and x = 1 is the all-ones expansion rather than ``1.000...``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[Fraction, int, str]

_BITS = frozenset((0, 1))
_ASCII_BITS = bytes.maketrans(b"01", b"\x00\x01")
_BINARY_LITERAL = re.compile(r"^\s*(?:(0|1)?\.([01]*)|(0|1))\s*b\s*$")


@dataclass(frozen=True)
class BinaryWord:
    """The digits omega_1 ... omega_w of x, plus how to read past them.

    ``terminating`` words stand for x exactly (digits beyond the word are 0)
    and are stored with trailing zeros stripped.  Non-terminating words are
    truncations of a longer expansion; reading past them is an error.
    ``is_one`` marks x = 1, whose every digit is 1.
    """

    digits: tuple[int, ...] = ()
    is_one: bool = False
    terminating: bool = True

    def __post_init__(self):
        digits = self.digits
        if type(digits) is not tuple:
            digits = tuple(map(int, digits))
        if not _BITS.issuperset(digits):
            raise ValueError(f"binary digits must be 0 or 1, got {self.digits!r}")
        if self.is_one:
            if digits:
                raise ValueError("the x = 1 word carries no explicit digits")
            object.__setattr__(self, "terminating", True)
        elif self.terminating:
            end = len(digits)
            while end and digits[end - 1] == 0:
                end -= 1
            digits = digits[:end]
        object.__setattr__(self, "digits", digits)

    @classmethod
    def from_bits(cls, bits: str, terminating: bool = True) -> "BinaryWord":
        """``"0110"`` -> omega = (0, 1, 1, 0)."""
        raw = bits.encode("ascii")
        if raw.translate(None, b"01"):
            raise ValueError(f"binary digits must be 0 or 1, got {bits!r}")
        return cls(tuple(raw.translate(_ASCII_BITS)), terminating=terminating)

    @classmethod
    def one(cls) -> "BinaryWord":
        return cls(is_one=True)

    @property
    def width(self) -> int:
        return len(self.digits)

    @property
    def is_zero(self) -> bool:
        return self.terminating and not self.is_one and not self.digits

    def digit(self, n: int) -> int:
        """omega_n, 1-based."""
        if n < 1:
            raise IndexError("binary digits are numbered from 1")
        if self.is_one:
            return 1
        if n <= len(self.digits):
            return self.digits[n - 1]
        if self.terminating:
            return 0
        raise IndexError(
            f"digit {n} is beyond the {len(self.digits)} known digits of a "
            "non-terminating expansion"
        )

    def prefix(self, n: int) -> tuple[int, ...]:
        """(omega_1, ..., omega_n), padding past the stored word."""
        if self.is_one:
            return (1,) * n
        if n <= len(self.digits):
            return self.digits[:n]
        if not self.terminating:
            self.digit(n)  # raises
        return self.digits + (0,) * (n - len(self.digits))

    def last_one(self) -> int:
        """Index k of the final 1 of a terminating word (0 for x = 0)."""
        if self.is_one or not self.terminating:
            raise ValueError("only terminating dyadic words have a last 1")
        return len(self.digits)

    def value(self) -> Fraction:
        """x itself for terminating words, the truncation otherwise."""
        if self.is_one:
            return Fraction(1)
        num = 0
        for d in self.digits:
            num = 2 * num + d
        return Fraction(num, 1 << len(self.digits))

    def __str__(self) -> str:
        if self.is_one:
            return "1b"
        tail = "" if self.terminating else "..."
        return f"0.{''.join(str(int(d)) for d in self.digits)}{tail}b"


def expand(x: Rational, n_digits: int) -> BinaryWord:
    """First ``n_digits`` binary digits of a rational x in [0, 1].

    Digits come from exact long division.  The result is terminating when
    x is dyadic with at most ``n_digits`` digits.
    """
    if n_digits < 1:
        raise ValueError("n_digits must be positive")
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError(f"x = {x} lies outside [0, 1]")
    if x == 1:
        return BinaryWord.one()
    num, den = x.numerator, x.denominator
    digits = []
    for _ in range(n_digits):
        num *= 2
        if num >= den:
            digits.append(1)
            num -= den
        else:
            digits.append(0)
        if num == 0:
            break
    return BinaryWord(tuple(digits), terminating=(num == 0))


def q_prefix(w: BinaryWord, n: int) -> int:
    """q(x, n): the number of 1s among omega_1..omega_n; q(x, 0) = 0."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if w.is_one:
        return n
    if n > w.width:
        w.digit(n)  # non-terminating words raise here
        n = w.width
    return sum(w.digits[:n])


def shift_left(w: BinaryWord) -> BinaryWord:
    """Drop omega_1: the word for 2x (omega_1 = 0) or 2x - 1 (omega_1 = 1)."""
    if w.is_one:
        return w
    if not w.digits:
        if w.terminating:
            raise ValueError("x = 0 has no shift target")
        raise IndexError("no known digits left to shift")
    return BinaryWord(w.digits[1:], terminating=w.terminating)


def parse_x(text: str, n_digits: int) -> BinaryWord:
    """Parse a CLI x value into a word of at most ``n_digits`` digits.

    Accepts a binary literal ``"0.0101b"`` (taken digit for digit), a
    fraction ``"p/q"`` or a decimal string.  Decimals go through an exact
    rational so float rounding never changes a digit.
    """
    m = _BINARY_LITERAL.match(text)
    if m:
        lead, frac, whole = m.groups()
        if whole is not None:
            lead, frac = whole, ""
        if lead == "1":
            if "1" in frac:
                raise ValueError(f"{text!r} lies outside [0, 1]")
            return BinaryWord.one()
        word = BinaryWord.from_bits(frac)
        if word.width > n_digits:
            return BinaryWord(word.digits[:n_digits], terminating=False)
        return word
    try:
        x = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse x = {text!r}") from exc
    return expand(x, n_digits)
