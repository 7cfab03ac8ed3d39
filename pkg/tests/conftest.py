from fractions import Fraction

import pytest

from levydragon.binary import BinaryWord, expand


def word(bits: str) -> BinaryWord:
    return BinaryWord.from_bits(bits)


def dyadic(num: int, den: int) -> BinaryWord:
    return expand(Fraction(num, den), max(den.bit_length(), 1))


@pytest.fixture
def worked_word_a() -> BinaryWord:
    """x = (0.100110110)_2"""
    return word("100110110")


@pytest.fixture
def worked_word_b() -> BinaryWord:
    """x = (0.01011001101)_2"""
    return word("01011001101")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
