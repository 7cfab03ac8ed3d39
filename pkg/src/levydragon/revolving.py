"""Revolving digit sequences, the generalized revolving condition, and the
directed-graph automata that generate the digits from binary input."""

from __future__ import annotations

import cmath
import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .binary import BinaryWord
from .exact import ONE, ZERO, DyadicGaussian

GRC_TOLERANCE = 1e-12


class UnitDigit(enum.Enum):
    """A digit in {0, 1, i, -1, -i}; nonzero digits are i**power."""

    ZERO = None
    ONE = 0
    I = 1
    MINUS_ONE = 2
    MINUS_I = 3

    @property
    def power(self) -> Optional[int]:
        return self.value

    @classmethod
    def from_power(cls, m: int) -> "UnitDigit":
        return _BY_POWER[m % 4]

    @classmethod
    def parse(cls, text: str) -> "UnitDigit":
        try:
            return _BY_TEXT[text.strip()]
        except KeyError:
            raise ValueError(f"not a unit digit: {text!r}") from None

    def __mul__(self, other: "UnitDigit") -> "UnitDigit":
        if not isinstance(other, UnitDigit):
            return NotImplemented
        if self is UnitDigit.ZERO or other is UnitDigit.ZERO:
            return UnitDigit.ZERO
        return _BY_POWER[(self.value + other.value) % 4]

    def __neg__(self) -> "UnitDigit":
        if self is UnitDigit.ZERO:
            return self
        return _BY_POWER[(self.value + 2) % 4]

    def __complex__(self) -> complex:
        return _COMPLEX[self]

    def exact(self) -> DyadicGaussian:
        return _EXACT[self]

    def __str__(self) -> str:
        return _TEXT[self]


_BY_POWER = (UnitDigit.ONE, UnitDigit.I, UnitDigit.MINUS_ONE, UnitDigit.MINUS_I)
_TEXT = {
    UnitDigit.ZERO: "0",
    UnitDigit.ONE: "1",
    UnitDigit.I: "i",
    UnitDigit.MINUS_ONE: "-1",
    UnitDigit.MINUS_I: "-i",
}
_BY_TEXT = {v: k for k, v in _TEXT.items()}
_COMPLEX = {
    UnitDigit.ZERO: 0j,
    UnitDigit.ONE: 1 + 0j,
    UnitDigit.I: 1j,
    UnitDigit.MINUS_ONE: -1 + 0j,
    UnitDigit.MINUS_I: -1j,
}
_EXACT = {
    UnitDigit.ZERO: ZERO,
    UnitDigit.ONE: ONE,
    UnitDigit.I: DyadicGaussian(0, 1),
    UnitDigit.MINUS_ONE: DyadicGaussian(-1),
    UnitDigit.MINUS_I: DyadicGaussian(0, -1),
}
# gamma digit for (current bit, q mod 4): bit 1 -> i**q, bit 0 -> -i**q
_GAMMA = (
    tuple(_BY_POWER[(m + 2) % 4] for m in range(4)),
    _BY_POWER,
)


def format_digits(seq: Iterable[UnitDigit]) -> str:
    """``"1,-i,-i,..."``"""
    return ",".join(_TEXT[d] for d in seq)


@dataclass(frozen=True)
class ThetaAlphabet:
    """Delta_theta = {0, 1, e^{i theta}, ..., e^{(p-1) i theta}} for
    theta = sign * 2*pi*q/p, normalised into (-pi, pi]."""

    p: int
    q: int
    sign: int = 1
    theta: float = field(init=False)
    members: tuple[complex, ...] = field(init=False)

    def __post_init__(self):
        if self.p < 1 or self.q < 0:
            raise ValueError("need p >= 1 and q >= 0")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        theta = self.sign * 2 * math.pi * self.q / self.p
        if not -math.pi < theta <= math.pi:
            raise ValueError(f"theta = {theta} is outside (-pi, pi]")
        members = (0j,) + tuple(cmath.exp(1j * j * theta) for j in range(self.p))
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "members", members)

    @property
    def is_quarter_turn(self) -> bool:
        return self.p == 4 and self.q == 1 and self.sign == 1

    def rotation(self) -> complex:
        return cmath.exp(1j * self.theta)


QUARTER_TURN = ThetaAlphabet(4, 1)

Digit = Union[UnitDigit, complex, DyadicGaussian]


def xi_sequence(w: BinaryWord, n: int) -> list[UnitDigit]:
    """(xi_1, ..., xi_n) with xi_k = omega_k * i**q(x, k-1)."""
    if n < 1:
        raise ValueError("n must be positive")
    bits = w.prefix(n)
    zero = UnitDigit.ZERO
    qs = itertools.accumulate(bits, initial=0)
    return [_BY_POWER[q & 3] if bit else zero for bit, q in zip(bits, qs)]


def gamma_sequence(w: BinaryWord, n: int) -> list[UnitDigit]:
    """(gamma_1, ..., gamma_n) with gamma_k = (-1)**(1-omega_k) * i**q(x, k-1)."""
    if n < 1:
        raise ValueError("n must be positive")
    bits = w.prefix(n)
    qs = itertools.accumulate(bits, initial=0)
    return [_GAMMA[bit][q & 3] for bit, q in zip(bits, qs)]


def as_unit_digit(d: Digit) -> UnitDigit:
    if isinstance(d, UnitDigit):
        return d
    if isinstance(d, DyadicGaussian):
        for u, v in _EXACT.items():
            if v == d:
                return u
    elif isinstance(d, (int, float, complex)):
        for u, v in _COMPLEX.items():
            if abs(complex(d) - v) <= GRC_TOLERANCE:
                return u
    raise ValueError(f"{d!r} is not in the alphabet {{0, 1, i, -1, -i}}")


def grc_check(seq: Sequence[Digit], alphabet: ThetaAlphabet = QUARTER_TURN) -> bool:
    """True iff consecutive nonzero terms differ by the factor e^{i theta}.

    Exact for the quarter-turn alphabet; other alphabets compare complex
    floats within ``GRC_TOLERANCE``.  Raises ``ValueError`` for a digit
    outside the alphabet.
    """
    if alphabet.is_quarter_turn:
        # _value_ is the plain attribute behind the slow Enum.value property
        nonzero = [(d if type(d) is UnitDigit else as_unit_digit(d))._value_ for d in seq]
        nonzero = [m for m in nonzero if m is not None]
        return all((b - a) & 3 == 1 for a, b in zip(nonzero, nonzero[1:]))

    rot = alphabet.rotation()
    prev = None
    ok = True
    for d in seq:
        z = complex(d)
        if not any(abs(z - m) <= GRC_TOLERANCE for m in alphabet.members):
            raise ValueError(f"{d!r} is not in Delta_theta for theta = {alphabet.theta}")
        if abs(z) <= GRC_TOLERANCE:
            continue
        if prev is not None and abs(z - rot * prev) > GRC_TOLERANCE:
            ok = False
        prev = z
    return ok


# -- automata -----------------------------------------------------------

State = tuple[int, int]


@dataclass(frozen=True)
class DigitAutomaton:
    """A Moore machine over binary input.

    A state is ``(m, b)``: m = q(x, n-1) mod 4 and b = omega_n.  Reading
    bit b' moves (m, b) to ((m + b) mod 4, b').  ``edge0`` are the blue
    arrows, ``edge1`` the red ones.
    """

    name: str
    states: tuple[State, ...]
    emission: dict[State, UnitDigit]
    edge0: dict[State, State]
    edge1: dict[State, State]
    initial0: State
    initial1: State

    def initial(self, bit: int) -> State:
        return self.initial1 if bit else self.initial0

    def step(self, state: State, bit: int) -> State:
        return self.edge1[state] if bit else self.edge0[state]

    def edges(self) -> list[tuple[State, int, State]]:
        return [(s, b, self.step(s, b)) for s in self.states for b in (0, 1)]


def build_graph(which: str) -> DigitAutomaton:
    """G1 (emits xi) or G2 (emits gamma), derived from the digit formulas."""
    key = which.upper()
    if key not in ("G1", "G2"):
        raise ValueError(f"unknown graph {which!r}; expected G1 or G2")
    states = tuple((m, b) for m in range(4) for b in (0, 1))
    emission = {}
    for m, b in states:
        if b:
            emission[(m, b)] = _BY_POWER[m]
        elif key == "G1":
            emission[(m, b)] = UnitDigit.ZERO
        else:
            emission[(m, b)] = _BY_POWER[(m + 2) % 4]
    edge0 = {(m, b): ((m + b) % 4, 0) for m, b in states}
    edge1 = {(m, b): ((m + b) % 4, 1) for m, b in states}
    return DigitAutomaton(key, states, emission, edge0, edge1, (0, 0), (0, 1))


def automaton_run(a: DigitAutomaton, w: BinaryWord, n: int) -> list[UnitDigit]:
    """Emissions along the walk reading omega_1..omega_n from initial_{omega_1}."""
    if n < 1:
        raise ValueError("n must be positive")
    bits = w.prefix(n)
    emission, edge0, edge1 = a.emission, a.edge0, a.edge1
    state = a.initial1 if bits[0] else a.initial0
    out = [emission[state]]
    for bit in bits[1:]:
        state = edge1[state] if bit else edge0[state]
        out.append(emission[state])
    return out


def automaton_parse(a: DigitAutomaton, seq: Sequence[Digit]) -> Optional[tuple[int, ...]]:
    """Recover the binary input whose walk emits ``seq``, or None.

    Both automata are output-deterministic: the two successors of any
    state emit different digits, so the walk is unique when it exists.
    """
    bits = []
    state = None
    for d in seq:
        u = as_unit_digit(d)
        if state is None:
            choices = ((0, a.initial0), (1, a.initial1))
        else:
            choices = ((0, a.edge0[state]), (1, a.edge1[state]))
        for bit, target in choices:
            if a.emission[target] is u:
                bits.append(bit)
                state = target
                break
        else:
            return None
    return tuple(bits)


class Move(enum.Enum):
    STAY = 0
    FWD1 = 1
    FWD2 = 2
    BACK1 = 3


def classify_moves(seq: Sequence[UnitDigit]) -> list[Move]:
    """Classify each step gamma_{k+1}/gamma_k; counterclockwise is forward."""
    powers = []
    for d in seq:
        u = as_unit_digit(d)
        if u is UnitDigit.ZERO:
            raise ValueError("classify_moves needs nonzero digits")
        powers.append(u.value)
    return [Move((b - a) % 4) for a, b in zip(powers, powers[1:])]


def _node_id(state: State) -> str:
    return f"s{state[0]}{state[1]}"


def graph_to_dot(a: DigitAutomaton) -> str:
    """DOT digraph: blue 0-edges, red 1-edges, nodes labelled by emission.

    The two start states are drawn as double circles.
    """
    lines = [f"digraph {a.name} {{", "  rankdir=LR;"]
    for s in a.states:
        shape = "doublecircle" if s in (a.initial0, a.initial1) else "circle"
        lines.append(
            f'  {_node_id(s)} [label="{a.emission[s]}", shape={shape}, '
            f'tooltip="q mod 4 = {s[0]}, bit = {s[1]}"];'
        )
    for src, bit, dst in a.edges():
        color = "red" if bit else "blue"
        lines.append(f'  {_node_id(src)} -> {_node_id(dst)} [color={color}, label="{bit}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
