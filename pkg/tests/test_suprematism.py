import re
import xml.etree.ElementTree as ET
from pathlib import Path

import numpy as np
import pytest

from coinrep import suprematism as sup
from coinrep.errors import BadSpec

GOLDEN = Path(__file__).parent / "golden"
SPHERE = 0.5 + 1 / (2 * np.sqrt(3))
SVG_NS = "{http://www.w3.org/2000/svg}"


def law_of_cosines(p):
    """d_k**2 from the angle of 60 degrees at V_{k+1}."""
    p = np.asarray(p, dtype=float)
    out = []
    for k in range(3):
        a = np.sqrt(2) * (1 - p[k])
        b = np.sqrt(2) * p[(k + 1) % 3]
        out.append(a * a + b * b - 2 * a * b * np.cos(np.pi / 3))
    return np.array(out)


def squares(svg):
    root = ET.fromstring(svg.split("?>", 1)[1])
    return [e for e in root.iter(f"{SVG_NS}rect")]


def test_corner():
    tri = sup.triada([0, 0, 0])
    np.testing.assert_allclose(tri.sides, np.sqrt(2), atol=1e-15)
    assert tri.total == pytest.approx(6, abs=1e-12)


def test_center():
    tri = sup.triada([0.5, 0.5, 0.5])
    np.testing.assert_allclose(tri.areas, 0.5, atol=1e-15)
    assert tri.total == pytest.approx(1.5, abs=1e-12)
    assert sup.area_closed_form([0.5, 0.5, 0.5]) == 1.5


def test_sphere_point():
    assert sup.area_closed_form([SPHERE] * 3) == pytest.approx(3, abs=1e-12)
    assert sup.triada([SPHERE] * 3).total == pytest.approx(3, abs=1e-12)


def test_three_side_formulas_agree(rng):
    p = rng.random((2000, 3))
    geo = sup.sides_geometric(p) ** 2
    np.testing.assert_allclose(geo, sup.sides_squared(p), atol=1e-12)
    for q in p[:200]:
        np.testing.assert_allclose(sup.sides_squared(q), law_of_cosines(q), atol=1e-12)


def test_side_sum_is_closed_form(rng):
    p = rng.random((100_000, 3))
    total = np.sum(sup.sides_geometric(p) ** 2, axis=-1)
    assert np.max(np.abs(total - sup.area_closed_form(p))) < 1e-12


def test_triangle_inequality_and_cyclic_invariance(rng):
    p = rng.random((5000, 3))
    d = sup.sides_geometric(p)
    tol = 1e-12
    assert np.all(d[:, 0] <= d[:, 1] + d[:, 2] + tol)
    assert np.all(d[:, 1] <= d[:, 0] + d[:, 2] + tol)
    assert np.all(d[:, 2] <= d[:, 0] + d[:, 1] + tol)
    rolled = np.roll(p, 1, axis=1)
    np.testing.assert_allclose(
        np.sum(sup.sides_geometric(rolled) ** 2, axis=1), np.sum(d ** 2, axis=1), atol=1e-12
    )


def test_vertices_on_sides(rng):
    p = rng.random(3)
    a = sup.inner_vertices(p)
    for k in range(3):
        start, end = sup.OUTER[k], sup.OUTER[(k + 1) % 3]
        assert np.linalg.norm(a[k] - start) == pytest.approx(np.sqrt(2) * p[k], abs=1e-14)
        assert np.linalg.norm(a[k] - end) == pytest.approx(np.sqrt(2) * (1 - p[k]), abs=1e-14)


@pytest.mark.parametrize("region, value", [("classical", 6.0), ("quantum", 3.0)])
def test_max_area(region, value):
    res = sup.max_area(region, step=1e-2)
    assert res.s_max == pytest.approx(value, abs=1e-6)
    if region == "quantum":
        assert np.sum((res.argmax - 0.5) ** 2) <= 0.25 + 1e-12


def test_max_area_rejects_unknown_region():
    with pytest.raises(ValueError):
        sup.max_area("both")


def test_render_spec_validation():
    with pytest.raises(BadSpec):
        sup.RenderSpec(width=0)
    with pytest.raises(BadSpec):
        sup.RenderSpec(scale=-1)
    with pytest.raises(BadSpec):
        sup.RenderSpec(layout="spiral")
    with pytest.raises(BadSpec):
        sup.RenderSpec(colors=("#000",))


@pytest.mark.parametrize("layout", sup.LAYOUTS)
def test_golden_files(layout):
    svg = sup.render_svg([0.6, 0.7, 0.8], sup.RenderSpec(layout=layout))
    assert svg == (GOLDEN / f"p060708_{layout}.svg").read_text()


@pytest.mark.parametrize("layout", ["triada", "tower"])
def test_three_squares(layout, rng):
    p = rng.random(3)
    spec = sup.RenderSpec(layout=layout, scale=100)
    rects = squares(sup.render_svg(p, spec))
    assert len(rects) == 3
    sides = sorted(float(r.get("width")) for r in rects)
    np.testing.assert_allclose(sides, sorted(sup.sides_geometric(p) * 100), atol=1e-3)
    fills = [r.get("fill") for r in rects]
    assert sorted(fills) == sorted([sup.RED, sup.BLACK, sup.WHITE])
    assert all(r.get("stroke") == sup.BLACK for r in rects)


def test_corner_triada_equal_squares():
    rects = squares(sup.render_svg([0, 0, 0], sup.RenderSpec(layout="triada", scale=100)))
    assert [float(r.get("width")) for r in rects] == [pytest.approx(141.421, abs=1e-3)] * 3


def test_tower_largest_at_bottom():
    rects = squares(sup.render_svg([0.1, 0.9, 0.4], sup.RenderSpec(layout="tower")))
    bottom = max(rects, key=lambda r: float(r.get("y")))
    assert float(bottom.get("width")) == max(float(r.get("width")) for r in rects)


def test_triangle_corner_inner_equals_outer():
    svg = sup.render_svg([0, 0, 0], sup.RenderSpec(layout="triangle"))
    polys = re.findall(r'<polygon points="([^"]+)"', svg)
    assert len(polys) == 2
    assert polys[0] == polys[1]


def test_svg_is_well_formed_and_deterministic(rng):
    p = rng.random(3)
    for layout in sup.LAYOUTS:
        spec = sup.RenderSpec(layout=layout)
        a, b = sup.render_svg(p, spec), sup.render_svg(p.copy(), spec)
        assert a == b
        root = ET.fromstring(a.split("?>", 1)[1])
        assert root.get("version") == "1.1"
