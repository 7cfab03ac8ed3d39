"""SVG and CSV output for curve polylines."""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import TextIO

import numpy as np
import polars as pl

from .geometry import Polyline

COLOR_MODES = ("solid", "gradient")
_GRADIENT_BANDS = 256


@dataclass(frozen=True)
class RenderSpec:
    width: int = 800
    height: int = 800
    margin: int = 20
    color_mode: str = "solid"
    stroke_width: float = 1.0
    stroke: str = "#1f3b73"

    def __post_init__(self):
        if self.color_mode not in COLOR_MODES:
            raise ValueError(f"color_mode must be one of {COLOR_MODES}")
        if self.width <= 2 * self.margin or self.height <= 2 * self.margin:
            raise ValueError("margin leaves no drawing area")


@dataclass(frozen=True)
class Viewport:
    """Uniform-scale map from the complex plane to SVG pixels (y down)."""

    scale: float
    x0: float
    y0: float

    @classmethod
    def fit(cls, points: np.ndarray, spec: RenderSpec) -> "Viewport":
        re, im = points.real, points.imag
        xmin, xmax = float(re.min()), float(re.max())
        ymin, ymax = float(im.min()), float(im.max())
        avail_w = spec.width - 2 * spec.margin
        avail_h = spec.height - 2 * spec.margin
        span_x, span_y = xmax - xmin, ymax - ymin
        if span_x == 0 and span_y == 0:
            scale = 1.0
        elif span_x == 0:
            scale = avail_h / span_y
        elif span_y == 0:
            scale = avail_w / span_x
        else:
            scale = min(avail_w / span_x, avail_h / span_y)
        # center the drawing; pixel = (re - x0) * scale, (y0 - im) * scale
        x0 = xmin - (spec.width / scale - span_x) / 2
        y0 = ymax + (spec.height / scale - span_y) / 2
        return cls(scale, x0, y0)

    def to_pixels(self, z) -> tuple[np.ndarray, np.ndarray]:
        z = np.asarray(z)
        return (z.real - self.x0) * self.scale, (self.y0 - z.imag) * self.scale

    def from_pixels(self, px, py) -> np.ndarray:
        px, py = np.asarray(px, dtype=float), np.asarray(py, dtype=float)
        return (px / self.scale + self.x0) + 1j * (self.y0 - py / self.scale)


def _points_attr(px: np.ndarray, py: np.ndarray) -> str:
    return " ".join(f"{x:.3f},{y:.3f}" for x, y in zip(px.tolist(), py.tolist()))


def to_svg(p: Polyline, spec: RenderSpec = RenderSpec()) -> str:
    """SVG 1.1 document drawing the polyline, fitted to the viewport.

    Gradient mode cuts the polyline into bands coloured by hue, following
    the parameter from magenta at 0 to red at 1.
    """
    if len(p.vertices) < 2:
        raise ValueError("need at least two vertices to draw")
    view = Viewport.fit(p.vertices, spec)
    px, py = view.to_pixels(p.vertices)
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}">',
        f"<title>{p.curve} dragon, depth {p.depth}</title>",
        f'<g fill="none" stroke-width="{spec.stroke_width}" '
        'stroke-linejoin="round" stroke-linecap="round">',
    ]
    if spec.color_mode == "solid":
        out.append(f'<polyline stroke="{spec.stroke}" points="{_points_attr(px, py)}"/>')
    else:
        n_seg = len(px) - 1
        bands = min(_GRADIENT_BANDS, n_seg)
        cuts = np.linspace(0, n_seg, bands + 1).round().astype(int)
        for lo, hi in zip(cuts[:-1].tolist(), cuts[1:].tolist()):
            hue = 300.0 + 60.0 * lo / n_seg
            out.append(
                f'<polyline stroke="hsl({hue % 360:.1f},85%,50%)" '
                f'points="{_points_attr(px[lo : hi + 1], py[lo : hi + 1])}"/>'
            )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_csv(p: Polyline, fh: TextIO) -> None:
    """Rows ``x,re,im`` with x = j / 2**depth.

    Floats are written in their shortest round-trip form (at most 17
    significant digits), so parsing the file recovers every vertex exactly.
    """
    frame = pl.DataFrame(
        {
            "x": p.parameters(),
            # + 0.0 turns -0.0 into 0.0
            "re": p.vertices.real + 0.0,
            "im": p.vertices.imag + 0.0,
        }
    )
    fh.write(frame.write_csv(line_terminator="\n"))


def to_csv(p: Polyline) -> str:
    buf = io.StringIO()
    write_csv(p, buf)
    return buf.getvalue()


def read_csv(text: str) -> tuple[np.ndarray, np.ndarray]:
    """Parse ``to_csv`` output back into (parameters, points)."""
    lines = text.strip().splitlines()
    if not lines or lines[0].strip() != "x,re,im":
        raise ValueError("missing x,re,im header")
    data = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    if data.size == 0:
        return np.empty(0), np.empty(0, dtype=complex)
    return data[:, 0], data[:, 1] + 1j * data[:, 2]
