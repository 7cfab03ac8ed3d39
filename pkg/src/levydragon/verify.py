"""Property suites behind ``levydragon verify``.

Each check returns a :class:`CheckResult`; the suite runner stops reporting
success at the first failure.  Randomised checks take a ``random.Random``
seeded by the caller so repeated runs are identical.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from . import binary, curve, exact, geometry, render, revolving
from .binary import BinaryWord
from .exact import ALPHA, ONE_MINUS_ALPHA, SHIFT, DyadicGaussian

DEFAULT_SEED = 20021957


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.name}{extra}"


Check = Callable[[random.Random], tuple[bool, str]]


def all_words(max_len: int) -> Iterator[tuple[int, ...]]:
    """Every bit tuple of length 1..max_len (2**(max_len+1) - 2 of them)."""
    for length in range(1, max_len + 1):
        yield from itertools.product((0, 1), repeat=length)


def all_dyadics(max_width: int) -> Iterator[BinaryWord]:
    """Canonical words of every dyadic x in (0, 1) with at most ``max_width`` digits."""
    for width in range(1, max_width + 1):
        for j in range(1, 1 << width, 2):
            yield binary.expand(Fraction(j, 1 << width), width)


def random_word(rng: random.Random, length: int) -> BinaryWord:
    return BinaryWord.from_bits(format(rng.getrandbits(length), f"0{length}b"), terminating=False)


def _random_dg(rng: random.Random, bits: int = 30) -> DyadicGaussian:
    lim = 1 << bits
    return DyadicGaussian(rng.randrange(-lim, lim), rng.randrange(-lim, lim), rng.randrange(0, 40))


# -- exact arithmetic -----------------------------------------------------


def check_ring_laws(rng, cases: int = 10_000):
    for _ in range(cases):
        x, y, z = (_random_dg(rng) for _ in range(3))
        if (x + y) + z != x + (y + z) or (x * y) * z != x * (y * z):
            return False, f"associativity fails at {x!r}, {y!r}, {z!r}"
        if x + y != y + x or x * y != y * x:
            return False, f"commutativity fails at {x!r}, {y!r}"
        if x * (y + z) != x * y + x * z:
            return False, f"distributivity fails at {x!r}, {y!r}, {z!r}"
    return True, f"{cases} triples"


def check_normal_form(rng, cases: int = 2_000):
    for _ in range(cases):
        x = _random_dg(rng)
        again = DyadicGaussian(x.a, x.b, x.k)
        if again != x or (again.a, again.b, again.k) != (x.a, x.b, x.k):
            return False, f"renormalising changed {x!r}"
        if x.k > 0 and x.a % 2 == 0 and x.b % 2 == 0:
            return False, f"{x!r} is not in normal form"
    return True, f"{cases} values"


def check_alpha_powers(rng):
    for n in range(129):
        got = exact.dg_to_float(exact.dg_pow(ALPHA, n))
        want = (0.5 - 0.5j) ** n
        if abs(got - want) > 1e-12 * abs(want):
            return False, f"alpha^{n}: {got} vs {want}"
    return True, "n <= 128"


def check_alpha_norm(rng):
    ok = ALPHA * ALPHA.conjugate() == exact.HALF
    return ok, "alpha * conj(alpha) = 1/2"


# -- binary expansion -----------------------------------------------------


def check_q_prefix(rng, cases: int = 1_000):
    for _ in range(cases):
        w = random_word(rng, 32)
        prev = 0
        for n in range(33):
            q = binary.q_prefix(w, n)
            if n and q - prev != w.digit(n):
                return False, f"q jump at n={n} for {w}"
            prev = q
    return True, f"{cases} words"


def check_expand_truncation(rng, cases: int = 2_000):
    for _ in range(cases):
        den = rng.randrange(1, 10_000)
        x = Fraction(rng.randrange(0, den + 1), den)
        n = rng.randrange(1, 60)
        w = binary.expand(x, n)
        if not 0 <= x - w.value() < Fraction(1, 1 << n):
            return False, f"expand({x}, {n}) = {w} is off by >= 2^-{n}"
        if w.terminating and w.digits and w.digits[-1] == 0:
            return False, f"expand({x}, {n}) kept trailing zeros"
    return True, f"{cases} rationals"


def check_shift_left(rng, max_width: int = 12):
    count = 0
    for w in all_dyadics(max_width):
        if w.width < 2:
            continue
        x = w.value()
        if binary.shift_left(binary.expand(x, max_width)) != binary.expand((2 * x) % 1, max_width - 1):
            return False, f"shift mismatch at {w}"
        count += 1
    return True, f"{count} dyadics"


# -- revolving digits and automata ---------------------------------------


def check_automata_exhaustive(rng, max_len: int = 16):
    g1, g2 = revolving.build_graph("G1"), revolving.build_graph("G2")
    count = 0
    for bits in all_words(max_len):
        w = BinaryWord(bits)
        n = len(bits)
        if revolving.automaton_run(g1, w, n) != revolving.xi_sequence(w, n):
            return False, f"G1 differs from xi at {bits}"
        if revolving.automaton_run(g2, w, n) != revolving.gamma_sequence(w, n):
            return False, f"G2 differs from gamma at {bits}"
        count += 1
    return True, f"{count} words"


def check_xi_grc(rng, cases: int = 100_000, length: int = 64):
    for _ in range(cases):
        w = random_word(rng, length)
        if not revolving.grc_check(revolving.xi_sequence(w, length)):
            return False, f"xi of {w} violates the GRC"
    return True, f"{cases} words of length {length}"


def check_gamma_not_grc(rng):
    failing = [
        bits
        for bits in itertools.product((0, 1), repeat=2)
        if not revolving.grc_check(revolving.gamma_sequence(BinaryWord(bits), 2))
    ]
    return bool(failing), f"length-2 words failing: {failing}"


def check_gamma_nonzero(rng, max_len: int = 12):
    for bits in all_words(max_len):
        if revolving.UnitDigit.ZERO in revolving.gamma_sequence(BinaryWord(bits), len(bits)):
            return False, f"zero gamma digit for {bits}"
    return True, f"all words of length <= {max_len}"


def check_gamma_ratio_law(rng, max_len: int = 12):
    for bits in all_words(max_len):
        seq = revolving.gamma_sequence(BinaryWord(bits), len(bits))
        for k in range(len(bits) - 1):
            a, b = bits[k], bits[k + 1]
            # (-1)^(a - b) * i^a as a power of i
            want = (2 * ((a - b) % 2) + a) % 4
            if (seq[k + 1].power - seq[k].power) % 4 != want:
                return False, f"ratio law fails at {bits}, k={k + 1}"
    return True, f"all words of length <= {max_len}"


def check_quarter_alphabet(rng):
    alphabet = revolving.ThetaAlphabet(4, 1)
    want = [0, 1, 1j, -1, -1j]
    ok = len(alphabet.members) == 5 and all(abs(a - b) <= 1e-12 for a, b in zip(alphabet.members, want))
    return ok, "Delta_{pi/2} = {0, 1, i, -1, -i}"


# -- curve evaluation -----------------------------------------------------


def check_oracles_exact(rng, max_width: int = 12):
    count = 0
    for w in all_dyadics(max_width):
        if curve.f_eval(w).exact != curve.f_recursion_oracle(w):
            return False, f"f_eval != recursion at {w}"
        if curve.g_eval(w).exact != curve.g_recursion_oracle(w):
            return False, f"g_eval != recursion at {w}"
        if curve.tail_H(w):
            return False, f"tail_H != 0 at {w}"
        count += 1
    return True, f"{count} dyadics"


def check_decode_exhaustive(rng, max_width: int = 12):
    for w in all_dyadics(max_width):
        n = w.width
        if curve.decode_digits(revolving.xi_sequence(w, n), "levy").exact != curve.f_eval(w, n).exact:
            return False, f"levy decode mismatch at {w}"
        if curve.decode_digits(revolving.gamma_sequence(w, n), "shifted").exact != curve.g_eval(w, n).exact:
            return False, f"shifted decode mismatch at {w}"
    return True, f"dyadics of width <= {max_width}"


def check_translation_exact(rng, max_width: int = 12):
    for w in all_dyadics(max_width):
        if curve.g_eval(w).exact - curve.f_eval(w).exact != SHIFT:
            return False, f"G - f != s at {w}"
    return True, f"dyadics of width <= {max_width}"


def check_translation_random(rng, cases: int = 10_000, n_terms: int = 128):
    bound = 2 * curve.truncation_bound(n_terms, "levy")
    tol = max(bound, 1e-12)
    s = complex(SHIFT)
    worst = 0.0
    for _ in range(cases):
        den = rng.randrange(2, 1 << 40)
        w = binary.expand(Fraction(rng.randrange(0, den + 1), den), n_terms)
        diff = curve.g_eval(w, n_terms).approx - curve.f_eval(w, n_terms).approx
        worst = max(worst, abs(diff - s))
    return worst <= tol, f"{cases} rationals, max |G - f - s| = {worst:.3g} (tol {tol:.1g})"


def check_functional_equations(rng, max_width: int = 12):
    for w in all_dyadics(max_width):
        x = w.value()
        tail = binary.shift_left(w)
        f, f_tail = curve.f_eval(w).exact, curve.f_eval(tail).exact
        g, g_tail = curve.g_eval(w).exact, curve.g_eval(tail).exact
        if x < Fraction(1, 2):
            ok = f == ALPHA * f_tail and g == ALPHA * g_tail - exact.HALF
        else:
            ok = f == ONE_MINUS_ALPHA * f_tail + ALPHA and g == ONE_MINUS_ALPHA * g_tail + exact.HALF
        if not ok:
            return False, f"functional equation residual at x = {x}"
    return True, f"dyadics of width <= {max_width}"


def check_ifs_agreement(rng, cases: int = 1_000, n_terms: int = 128, depth: int = 64):
    tol = curve.truncation_bound(n_terms) + 2 * (1 / math.sqrt(2)) ** depth
    worst = 0.0
    for _ in range(cases):
        w = random_word(rng, n_terms)
        got = curve.f_eval(w, n_terms).approx
        oracle = curve.ifs_limit_oracle(geometry.LEVY_MAPS, w, depth)
        worst = max(worst, abs(got - oracle))
    return worst <= tol, f"{cases} words, max gap {worst:.3g} (tol {tol:.3g})"


def check_endpoints(rng):
    zero, one, half = BinaryWord(), BinaryWord.one(), BinaryWord((1,))
    ok = (
        curve.f_eval(zero).exact == 0
        and curve.f_eval(one).exact == 1
        and curve.g_eval(zero).exact == SHIFT
        and curve.g_eval(one).exact == 1 + SHIFT
        and curve.g_eval(half).exact == 0
    )
    return ok, "f(0), f(1), G(0), G(1), G(1/2)"


def check_junction_continuity(rng, max_j: int = 40):
    f_half = complex(curve.f_eval(BinaryWord((1,))).exact)
    for j in range(2, max_j + 1):
        w = binary.expand(Fraction(1, 2) - Fraction(1, 1 << j), j)
        gap = abs(complex(curve.f_eval(w).exact) - f_half)
        if gap > 2 * (1 / math.sqrt(2)) ** (j - 1):
            return False, f"|f(1/2 - 2^-{j}) - f(1/2)| = {gap:.3g}"
    return True, f"j <= {max_j}"


def check_tail_numeric(rng):
    # direct float summation of 200 tail terms at x = 11/16
    w = binary.expand(Fraction(11, 16), 8)
    k = w.last_one()
    alpha = 0.5 - 0.5j
    total = 0j
    for n in range(k, k + 200):
        bit = w.digit(n)
        q = binary.q_prefix(w, n - 1)
        total += 0.5 * (1 if bit else -1) * alpha ** (n - 1 - q) * (1 - alpha) ** q
    return abs(total) < 1e-12, f"|H(11/16)| ~ {abs(total):.2g}"


# -- geometry and rendering ----------------------------------------------


def check_polylines(rng, max_depth: int = 10):
    levy_fix = (0j, 1 + 0j)
    s = complex(SHIFT)
    for d in range(max_depth + 1):
        lp = geometry.levy_polyline(d)
        sp = geometry.shifted_polyline(d)
        if len(lp) != (1 << d) + 1:
            return False, f"vertex count at depth {d}"
        if (lp.vertices[0], lp.vertices[-1]) != levy_fix:
            return False, f"levy endpoints at depth {d}"
        if (sp.vertices[0], sp.vertices[-1]) != (s, 1 + s):
            return False, f"shifted endpoints at depth {d}"
        edges = np.abs(np.diff(lp.vertices))
        want = (1 / math.sqrt(2)) ** d
        if np.max(np.abs(edges - want)) > 1e-12 * want:
            return False, f"unequal edges at depth {d}"
        if not np.array_equal(sp.vertices, lp.vertices + s):
            return False, f"shifted != levy + s at depth {d}"
        if d and not np.array_equal(geometry.levy_polyline(d - 1).vertices, lp.vertices[::2]):
            return False, f"refinement inconsistency at depth {d}"
    return True, f"depth <= {max_depth}"


def check_polyline_values(rng, max_depth: int = 10):
    lp = geometry.levy_polyline(max_depth).vertices
    sp = geometry.shifted_polyline(max_depth).vertices
    for j in range((1 << max_depth) + 1):
        w = binary.expand(Fraction(j, 1 << max_depth), max_depth)
        if complex(curve.f_eval(w).exact) != lp[j] or complex(curve.g_eval(w).exact) != sp[j]:
            return False, f"vertex {j} differs from the closed form"
    return True, f"all 2^{max_depth} + 1 vertices"


def check_general_family(rng, depth: int = 10):
    maps = geometry.general_family(1, 0)
    same = np.array_equal(geometry.attractor_polyline(maps, depth).vertices, geometry.levy_polyline(depth).vertices)
    return same, "general_family(1, 0) reproduces the Levy polyline"


def check_csv_round_trip(rng, depth: int = 10):
    p = geometry.shifted_polyline(depth)
    xs, pts = render.read_csv(render.to_csv(p))
    ok = np.max(np.abs(pts - p.vertices)) <= 1e-12 and np.array_equal(xs, p.parameters())
    return bool(ok), f"depth {depth}"


def check_svg_inverse(rng, depth: int = 10):
    p = geometry.levy_polyline(depth)
    view = render.Viewport.fit(p.vertices, render.RenderSpec())
    px, py = view.to_pixels(p.vertices)
    back = view.from_pixels(np.round(px, 3), np.round(py, 3))
    err = float(np.max(np.abs(back - p.vertices)) * view.scale)
    return err <= 0.5, f"max round-trip error {err:.3g} px"


SUITES: dict[str, list[tuple[str, Check]]] = {
    "exact": [
        ("ring laws", check_ring_laws),
        ("normal form idempotence", check_normal_form),
        ("alpha powers vs float", check_alpha_powers),
        ("|alpha|^2 = 1/2", check_alpha_norm),
    ],
    "binary": [
        ("q_prefix monotone steps", check_q_prefix),
        ("expand truncation bound", check_expand_truncation),
        ("shift_left vs expand(2x mod 1)", check_shift_left),
    ],
    "revolving": [
        ("automata equal formulas (length <= 16)", check_automata_exhaustive),
        ("xi satisfies GRC", check_xi_grc),
        ("some gamma violates GRC", check_gamma_not_grc),
        ("gamma never zero", check_gamma_nonzero),
        ("gamma ratio law", check_gamma_ratio_law),
        ("quarter-turn alphabet", check_quarter_alphabet),
    ],
    "curve": [
        ("closed forms equal recursion; tail_H = 0", check_oracles_exact),
        ("digit decode equals closed forms", check_decode_exhaustive),
        ("G - f = s on dyadics", check_translation_exact),
        ("G - f = s on random rationals", check_translation_random),
        ("functional equation residuals", check_functional_equations),
        ("f agrees with IFS limit", check_ifs_agreement),
        ("endpoint values", check_endpoints),
        ("junction continuity at 1/2", check_junction_continuity),
        ("float tail sum at 11/16", check_tail_numeric),
    ],
    "geometry": [
        ("polyline structure", check_polylines),
        ("polyline vertices equal closed forms", check_polyline_values),
        ("general family (1, 0)", check_general_family),
    ],
    "render": [
        ("CSV round trip", check_csv_round_trip),
        ("SVG pixel transform invertible", check_svg_inverse),
    ],
}


def suite_names() -> list[str]:
    return [*SUITES, "all"]


def run_suite(name: str, seed: int = DEFAULT_SEED) -> list[CheckResult]:
    """Run one suite (or ``"all"``) and return its results in order."""
    if name == "all":
        groups = list(SUITES)
    elif name in SUITES:
        groups = [name]
    else:
        raise KeyError(f"unknown suite {name!r}; choose from {suite_names()}")
    results = []
    for group in groups:
        for label, check in SUITES[group]:
            rng = random.Random(f"{seed}:{group}:{label}")
            start = time.perf_counter()
            try:
                passed, detail = check(rng)
            except Exception as exc:  # a crash is a failed property
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            results.append(CheckResult(f"{group}: {label}", bool(passed), detail, time.perf_counter() - start))
    return results
