"""Triangle geometry of a qubit state and the triada of Malevich's squares.

The outer triangle is equilateral with side sqrt(2) and vertices V1, V2, V3
taken counter-clockwise. Point A_k sits on side V_k -> V_{k+1} at distance
sqrt(2) * p_k from V_k. The inner triangle is A1 A2 A3, and its sides are

    d_k = |A_k A_{k+1}|,    d_k**2 = 2(1-p_k)**2 + 2 p_{k+1}**2 - 2(1-p_k) p_{k+1}

(law of cosines at V_{k+1}, indices cyclic). The three squares built on these
sides have total area

    S = 2[3(1 - p1 - p2 - p3) + 2(p1**2 + p2**2 + p3**2) + p1 p2 + p2 p3 + p3 p1].

S reaches 6 on the classical cube and 3 on the quantum (Bloch) ball.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import qubit
from .errors import BadSpec

SIDE = np.sqrt(2.0)
OUTER = np.array([
    [0.0, 0.0],
    [SIDE, 0.0],
    [SIDE / 2.0, SIDE * np.sqrt(3.0) / 2.0],
])


def inner_vertices(p) -> np.ndarray:
    """Coordinates of A1, A2, A3 (shape ``(..., 3, 2)``)."""
    p = qubit.as_triple(p)
    start = OUTER
    end = np.roll(OUTER, -1, axis=0)
    return start + p[..., :, None] * (end - start)


def sides_geometric(p) -> np.ndarray:
    a = inner_vertices(p)
    return np.linalg.norm(np.roll(a, -1, axis=-2) - a, axis=-1)


def sides_squared(p) -> np.ndarray:
    """Law-of-cosines squared sides ``d_k**2``."""
    p = qubit.as_triple(p)
    q = 1.0 - p
    nxt = np.roll(p, -1, axis=-1)
    return 2 * q ** 2 + 2 * nxt ** 2 - 2 * q * nxt


def area_closed_form(p):
    p = qubit.as_triple(p)
    p1, p2, p3 = p[..., 0], p[..., 1], p[..., 2]
    return 2 * (
        3 * (1 - p1 - p2 - p3)
        + 2 * p1 ** 2 + 2 * p2 ** 2 + 2 * p3 ** 2
        + p1 * p2 + p2 * p3 + p3 * p1
    )


@dataclass(frozen=True)
class SquareTriada:
    sides: np.ndarray
    areas: np.ndarray
    total: float


def triada(p) -> SquareTriada:
    p = qubit.as_triple(p)
    if p.shape != (3,):
        raise ValueError("triada takes a single triple")
    d = sides_geometric(p)
    areas = d ** 2
    return SquareTriada(d, areas, float(np.sum(areas)))


# -- extremal areas ----------------------------------------------------------


def _hessian(f, x0, h=1e-3) -> np.ndarray:
    x0 = np.asarray(x0, dtype=float)
    n = len(x0)
    e = np.eye(n) * h
    hess = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            hess[i, j] = (
                f(x0 + e[i] + e[j]) - f(x0 + e[i] - e[j])
                - f(x0 - e[i] + e[j]) + f(x0 - e[i] - e[j])
            ) / (4 * h * h)
    return hess


def _cube_faces(step: float):
    g = np.linspace(0.0, 1.0, int(round(1.0 / step)) + 1)
    u, v = np.meshgrid(g, g, indexing="ij")
    u, v = u.ravel(), v.ravel()
    for axis in range(3):
        for value in (0.0, 1.0):
            pts = np.empty((u.size, 3))
            others = [k for k in range(3) if k != axis]
            pts[:, axis] = value
            pts[:, others[0]] = u
            pts[:, others[1]] = v
            yield pts


def _sphere_rows(step: float):
    theta = np.linspace(0.0, np.pi, int(round(np.pi / step)) + 1)
    phi = np.arange(0.0, 2 * np.pi, step)
    cp, sp = np.cos(phi), np.sin(phi)
    for chunk in np.array_split(theta, 32):
        st, ct = np.sin(chunk)[:, None], np.cos(chunk)[:, None]
        d = np.stack([st * cp, st * sp, np.broadcast_to(ct, (len(chunk), len(phi)))], axis=-1)
        yield np.clip(0.5 + 0.5 * d.reshape(-1, 3), 0.0, 1.0)


@dataclass(frozen=True)
class MaxAreaResult:
    region: str
    s_max: float
    argmax: np.ndarray
    grid_max: float


def max_area(region: str, step: float = 1e-3) -> MaxAreaResult:
    """Maximize S over the classical cube or the quantum ball.

    S is a quadratic with constant Hessian; the Hessian is checked to be
    positive definite, so the maximum over a convex region lies on its
    boundary. The boundary (cube faces, or sphere in polar angles) is
    searched on a grid of the given step and the best point refined with
    SLSQP under the region's constraints.
    """
    if region not in ("classical", "quantum"):
        raise ValueError(f"region must be 'classical' or 'quantum', got {region!r}")
    hess = _hessian(lambda x: float(area_closed_form(np.clip(x, 0, 1))), qubit.CENTER)
    if np.min(np.linalg.eigvalsh(0.5 * (hess + hess.T))) <= 0:
        raise RuntimeError("area is not convex; boundary search would be incomplete")

    chunks = _cube_faces(step) if region == "classical" else _sphere_rows(step)
    best_val, best_pt = -np.inf, None
    for pts in chunks:
        vals = area_closed_form(pts)
        k = int(np.argmax(vals))
        if vals[k] > best_val:
            best_val, best_pt = float(vals[k]), pts[k].copy()

    constraints = []
    if region == "quantum":
        constraints = [{"type": "ineq", "fun": lambda x: 0.25 - np.sum((x - 0.5) ** 2)}]
    res = minimize(
        lambda x: -float(area_closed_form(np.clip(x, 0.0, 1.0))),
        best_pt,
        method="SLSQP",
        bounds=[(0.0, 1.0)] * 3,
        constraints=constraints,
        options={"ftol": 1e-15, "maxiter": 500},
    )
    x = np.clip(res.x, 0.0, 1.0)
    if region == "quantum":
        # pull back onto the ball if SLSQP stepped outside by rounding
        r = np.linalg.norm(x - 0.5)
        if r > 0.5:
            x = 0.5 + (x - 0.5) * (0.5 / r)
    refined = float(area_closed_form(x))
    if refined >= best_val:
        best_val, best_pt = refined, x
    return MaxAreaResult(region, best_val, best_pt, float(np.max(area_closed_form(best_pt))))


def area_ratio(step: float = 1e-3) -> float:
    return max_area("classical", step).s_max / max_area("quantum", step).s_max


# -- rendering ---------------------------------------------------------------

RED, BLACK, WHITE = "#D40000", "#000000", "#FFFFFF"
LAYOUTS = ("triangle", "triada", "tower")


@dataclass(frozen=True)
class RenderSpec:
    width: int = 400
    height: int = 400
    scale: float = 120.0
    layout: str = "triada"
    colors: tuple = (RED, BLACK, WHITE)
    stroke: str = BLACK

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise BadSpec("canvas width and height must be positive")
        if not np.isfinite(self.scale) or self.scale <= 0:
            raise BadSpec("scale must be positive")
        if self.layout not in LAYOUTS:
            raise BadSpec(f"layout must be one of {LAYOUTS}, got {self.layout!r}")
        if len(self.colors) != 3:
            raise BadSpec("need exactly three square colors")


def _f(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def _header(spec: RenderSpec, title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}">',
        f"<title>{title}</title>",
    ]


def _square(x, y, side, fill, stroke) -> str:
    return (
        f'<rect class="square" x="{_f(x)}" y="{_f(y)}" width="{_f(side)}" height="{_f(side)}" '
        f'fill="{fill}" stroke="{stroke}" stroke-width="1"/>'
    )


def _polygon(points, **attrs) -> str:
    pts = " ".join(f"{_f(x)},{_f(y)}" for x, y in points)
    extra = " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attrs.items())
    return f'<polygon points="{pts}" {extra}/>'


def render_svg(p, spec: RenderSpec = RenderSpec()) -> str:
    """Draw the triangle, the triada of squares or the tower as an SVG 1.1 document."""
    p = qubit.as_triple(p)
    if p.shape != (3,):
        raise ValueError("render_svg takes a single triple")
    margin = 20.0
    label = "p = (" + ", ".join(_f(x) for x in p) + ")"
    out = _header(spec, f"{spec.layout}: {label}")

    if spec.layout == "triangle":
        height = SIDE * np.sqrt(3.0) / 2.0

        def to_px(pt):
            return (margin + spec.scale * pt[0], margin + spec.scale * (height - pt[1]))

        outer = [to_px(v) for v in OUTER]
        inner = [to_px(v) for v in inner_vertices(p)]
        out.append(_polygon(outer, fill="none", stroke=spec.stroke, stroke_width="1.5"))
        out.append(_polygon(inner, fill="none", stroke=spec.colors[0], stroke_width="1.5"))
        for name, (x, y) in zip(("V1", "V2", "V3"), outer):
            out.append(f'<text x="{_f(x)}" y="{_f(y - 4)}" font-size="12">{name}</text>')
        for name, (x, y) in zip(("A1", "A2", "A3"), inner):
            out.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="2.5" fill="{spec.stroke}"/>')
            out.append(f'<text x="{_f(x + 4)}" y="{_f(y + 14)}" font-size="12">{name}</text>')
    else:
        sides = sides_geometric(p) * spec.scale
        squares = list(zip(sides, spec.colors))
        if spec.layout == "triada":
            base = margin + float(np.max(sides))
            x = margin
            for side, color in squares:
                out.append(_square(x, base - side, side, color, spec.stroke))
                x += side + margin
        else:
            # tower: largest at the bottom; ties keep side order
            order = sorted(range(3), key=lambda k: (-sides[k], k))
            width = float(np.max(sides))
            y = margin + float(np.sum(sides))
            for k in order:
                side, color = squares[k]
                y -= side
                out.append(_square(margin + (width - side) / 2.0, y, side, color, spec.stroke))
    out.append("</svg>")
    return "\n".join(out) + "\n"
