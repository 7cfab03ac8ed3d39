"""Complex affine contractions, de Rham compatibility and attractor polylines."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .exact import ALPHA, ONE, ONE_MINUS_ALPHA, SHIFT, ZERO, DyadicGaussian

Scalar = Union[DyadicGaussian, complex]

DEFAULT_MAX_DEPTH = 26
DE_RHAM_TOLERANCE = 1e-12


def _coerce_scalar(value) -> Scalar:
    """Keep dyadic values exact; anything else becomes a complex float."""
    if isinstance(value, DyadicGaussian):
        return value
    if isinstance(value, int):
        return DyadicGaussian(value)
    return complex(value)


@dataclass(frozen=True)
class AffineMap:
    """z -> c*z + d on the complex plane."""

    c: Scalar
    d: Scalar

    def __post_init__(self):
        object.__setattr__(self, "c", _coerce_scalar(self.c))
        object.__setattr__(self, "d", _coerce_scalar(self.d))

    def __call__(self, z):
        return self.c * z + self.d

    @property
    def is_exact(self) -> bool:
        return isinstance(self.c, DyadicGaussian) and isinstance(self.d, DyadicGaussian)

    @property
    def ratio(self) -> float:
        """Contraction ratio |c|."""
        return abs(complex(self.c))

    def is_contraction(self) -> bool:
        return self.ratio < 1

    def as_float(self) -> tuple[complex, complex]:
        return complex(self.c), complex(self.d)


#: psi_0, psi_1 generate the Levy dragon
LEVY_MAPS = (AffineMap(ALPHA, ZERO), AffineMap(ONE_MINUS_ALPHA, ALPHA))
#: phi_0, phi_1 generate the dragon translated by s = (-1 + i)/2
SHIFTED_MAPS = (AffineMap(ALPHA, -ONE.half()), AffineMap(ONE_MINUS_ALPHA, ONE.half()))


def fixed_point(m: AffineMap) -> Scalar:
    """d / (1 - c); exact when 1 - c is a unit of the dyadic Gaussian ring."""
    one_minus_c = 1 - m.c
    if one_minus_c == 0:
        raise ValueError("a map with c = 1 has no unique fixed point")
    if m.is_exact and one_minus_c.is_invertible():
        return m.d * one_minus_c.inverse()
    return complex(m.d) / complex(one_minus_c)


class DeRhamWitness(NamedTuple):
    compatible: bool
    #: m1(Fix(m0))
    left: Scalar
    #: m0(Fix(m1))
    right: Scalar


def de_rham_check(m0: AffineMap, m1: AffineMap) -> DeRhamWitness:
    """Test m1(Fix(m0)) == m0(Fix(m1)), the condition for a continuous solution."""
    for m in (m0, m1):
        if not m.is_contraction():
            raise ValueError(f"{m} is not a contraction")
    left = m1(fixed_point(m0))
    right = m0(fixed_point(m1))
    if isinstance(left, DyadicGaussian) and isinstance(right, DyadicGaussian):
        ok = left == right
    else:
        ok = abs(complex(left) - complex(right)) <= DE_RHAM_TOLERANCE
    return DeRhamWitness(ok, left, right)


def conjugate_by_shift(m: AffineMap, s) -> AffineMap:
    """T o m o T^-1 for the translation T(z) = z + s."""
    s = _coerce_scalar(s)
    return AffineMap(m.c, m.d + s - m.c * s)


def general_family(lam, tau) -> tuple[AffineMap, AffineMap]:
    """g_0(z) = ((1-i)/2) z + ((1+i)/2) tau,  g_1(z) = ((1+i)/2) z + ((1-i)/2)(tau + lam).

    Dyadic parameters (ints, dyadic Fractions, DyadicGaussian) give exact maps.
    """
    lam = _try_exact(lam)
    tau = _try_exact(tau)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    return AffineMap(ALPHA, ONE_MINUS_ALPHA * tau), AffineMap(ONE_MINUS_ALPHA, ALPHA * (tau + lam))


def _try_exact(value) -> Scalar:
    if isinstance(value, (float, complex)):
        return complex(value)
    try:
        return DyadicGaussian.coerce(value)
    except (TypeError, ValueError):
        return complex(value)


@dataclass(frozen=True)
class Polyline:
    """Vertices f(j / 2**depth), j = 0..2**depth, of a de Rham curve."""

    vertices: np.ndarray
    depth: int
    curve: str = "custom"

    def __len__(self) -> int:
        return len(self.vertices)

    def parameters(self) -> np.ndarray:
        return np.arange(len(self.vertices), dtype=np.float64) / float(1 << self.depth)


def max_depth() -> int:
    value = os.environ.get("DRAGON_MAX_DEPTH")
    return int(value) if value else DEFAULT_MAX_DEPTH


def attractor_polyline(
    maps: tuple[AffineMap, AffineMap], depth: int, curve: str = "custom", depth_cap: int | None = None
) -> Polyline:
    """Depth-``depth`` polyline of the curve solving f = m0 o f(2x) | m1 o f(2x-1).

    Starting from the endpoint pair (Fix(m0), Fix(m1)), each level maps the
    previous vertex list through m0 for the left half and m1 for the right
    half; the shared junction vertex is kept once.
    """
    cap = max_depth() if depth_cap is None else depth_cap
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if depth > cap:
        raise ValueError(f"depth {depth} exceeds the cap {cap} (set DRAGON_MAX_DEPTH to raise it)")
    m0, m1 = maps
    witness = de_rham_check(m0, m1)
    if not witness.compatible:
        raise ValueError(
            f"maps fail the de Rham condition: m1(Fix m0) = {witness.left}, "
            f"m0(Fix m1) = {witness.right}"
        )
    c0, d0 = m0.as_float()
    c1, d1 = m1.as_float()
    out = np.empty((1 << depth) + 1, dtype=np.complex128)
    out[0] = complex(fixed_point(m0))
    out[1] = complex(fixed_point(m1))
    n = 1  # current number of segments
    scratch = np.empty_like(out)
    for _ in range(depth):
        prev = out[: n + 1]
        np.multiply(prev, c1, out=scratch[: n + 1])
        scratch[: n + 1] += d1
        # right half first: the left half overwrites prev in place
        out[n + 1 : 2 * n + 1] = scratch[1 : n + 1]
        np.multiply(prev, c0, out=prev)
        prev += d0
        n *= 2
    return Polyline(out, depth, curve)


def levy_polyline(depth: int, **kwargs) -> Polyline:
    return attractor_polyline(LEVY_MAPS, depth, curve="levy", **kwargs)


def shifted_polyline(depth: int, **kwargs) -> Polyline:
    return attractor_polyline(SHIFTED_MAPS, depth, curve="shifted", **kwargs)


__all__ = [
    "AffineMap",
    "DeRhamWitness",
    "LEVY_MAPS",
    "Polyline",
    "SHIFT",
    "SHIFTED_MAPS",
    "attractor_polyline",
    "conjugate_by_shift",
    "de_rham_check",
    "fixed_point",
    "general_family",
    "levy_polyline",
    "shifted_polyline",
]
