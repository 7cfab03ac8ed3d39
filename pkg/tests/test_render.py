import re
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from levydragon.geometry import Polyline, levy_polyline, shifted_polyline
from levydragon.render import RenderSpec, Viewport, read_csv, to_csv, to_svg

SVG = "{http://www.w3.org/2000/svg}"


def svg_points(text: str) -> np.ndarray:
    root = ET.fromstring(text.encode())
    coords = []
    for line in root.iter(f"{SVG}polyline"):
        coords += [tuple(map(float, pair.split(","))) for pair in line.get("points").split()]
    return np.array(coords)


def test_svg_depth_one_structure():
    text = to_svg(levy_polyline(1))
    root = ET.fromstring(text.encode())
    assert root.get("version") == "1.1"
    lines = list(root.iter(f"{SVG}polyline"))
    assert len(lines) == 1
    assert len(lines[0].get("points").split()) == 3


def test_svg_aspect_matches_vertices():
    p = levy_polyline(12)
    pts = svg_points(to_svg(p, RenderSpec(width=900, height=600)))
    px_w, px_h = np.ptp(pts[:, 0]), np.ptp(pts[:, 1])
    v_w, v_h = np.ptp(p.vertices.real), np.ptp(p.vertices.imag)
    assert px_w / px_h == pytest.approx(v_w / v_h, rel=0.01)


def test_svg_fits_inside_margin():
    spec = RenderSpec(width=400, height=300, margin=25)
    pts = svg_points(to_svg(shifted_polyline(10), spec))
    assert pts[:, 0].min() >= 25 - 1e-3 and pts[:, 0].max() <= 375 + 1e-3
    assert pts[:, 1].min() >= 25 - 1e-3 and pts[:, 1].max() <= 275 + 1e-3


def test_svg_gradient_is_well_formed():
    text = to_svg(levy_polyline(10), RenderSpec(color_mode="gradient"))
    root = ET.fromstring(text.encode())
    lines = list(root.iter(f"{SVG}polyline"))
    assert len(lines) == 256
    hues = [float(re.match(r"hsl\(([\d.]+)", ln.get("stroke")).group(1)) for ln in lines]
    assert hues[0] == 300.0 and len(set(hues)) == 256


def test_svg_errors():
    with pytest.raises(ValueError):
        to_svg(Polyline(np.array([0j]), 0))
    with pytest.raises(ValueError):
        RenderSpec(color_mode="rainbow")


def test_csv_depth_one_shifted():
    text = to_csv(shifted_polyline(1))
    assert text.splitlines() == ["x,re,im", "0.0,-0.5,0.5", "0.5,0.0,0.0", "1.0,0.5,0.5"]


@pytest.mark.parametrize("d", [0, 3, 9])
def test_csv_row_count(d):
    assert len(to_csv(levy_polyline(d)).splitlines()) == 2**d + 2


def test_csv_quarter_row():
    rows = to_csv(levy_polyline(2)).splitlines()
    assert [float(v) for v in rows[2].split(",")] == [0.25, 0.0, -0.5]


def test_csv_round_trip_exact():
    p = levy_polyline(10)
    params, pts = read_csv(to_csv(p))
    assert np.array_equal(params, p.parameters())
    assert np.max(np.abs(pts - p.vertices)) <= 1e-12


def test_pixel_transform_inverts():
    p = shifted_polyline(10)
    view = Viewport.fit(p.vertices, RenderSpec())
    px, py = view.to_pixels(p.vertices)
    back = view.from_pixels(np.round(px, 3), np.round(py, 3))
    assert np.max(np.abs(back - p.vertices)) * view.scale <= 0.5
