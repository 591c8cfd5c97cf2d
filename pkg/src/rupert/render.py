"""Static SVG figures of a solution: outer projection red, inner black."""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .errors import InvalidSolution
from .geometry import Polyhedron, convex_hull
from .nieuwland import mu_of
from .solver import SolutionSeptuple, _septuple_transforms, verify

PADDING = 0.05  # fraction of the outer bounding box added on each side


@dataclass(frozen=True)
class RenderSpec:
    width_px: int = 640
    height_px: int = 640
    outer_color: str = "red"
    inner_color: str = "black"
    stroke_width: float = 2.0

    def __post_init__(self):
        if self.width_px <= 0 or self.height_px <= 0:
            raise ValueError("render dimensions must be positive")


def _world_to_pixel(outer_vertices: np.ndarray, spec: RenderSpec):
    """Uniform world-to-pixel affine map fitting the outer hull plus padding.

    Returns (scale, cx, cy): pixel = (scale*(u - cx) + W/2, H/2 - scale*(v - cy)).
    The vertical axis is flipped, matching SVG's downward y.
    """
    lo = outer_vertices.min(axis=0)
    hi = outer_vertices.max(axis=0)
    span = hi - lo
    span[span == 0.0] = 1.0
    pad = 1.0 + 2.0 * PADDING
    scale = min(spec.width_px / (span[0] * pad), spec.height_px / (span[1] * pad))
    center = (lo + hi) / 2.0
    return scale, float(center[0]), float(center[1])


SUBPIXEL_TOL = 0.05  # px; path vertices deviating less than this are dropped


def _decimate_subpixel(px: np.ndarray, tol: float = SUBPIXEL_TOL) -> np.ndarray:
    """Drop path vertices that deviate from their neighbors' chord by less
    than ``tol`` pixels; keeps the drawn outline but not invisible slivers."""
    pts = list(map(tuple, px))
    changed = True
    while changed and len(pts) > 3:
        changed = False
        for i in range(len(pts)):
            if len(pts) == 3:
                break
            a = pts[i - 1]
            b = pts[i]
            c = pts[(i + 1) % len(pts)]
            chord = math.hypot(c[0] - a[0], c[1] - a[1])
            dev = abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
            if chord > 0 and dev / chord < tol:
                del pts[i]
                changed = True
                break
    return np.array(pts)


def _pixel_points(points: np.ndarray, transform, spec: RenderSpec) -> str:
    scale, cx, cy = transform
    px = scale * (points[:, 0] - cx) + spec.width_px / 2.0
    py = spec.height_px / 2.0 - scale * (points[:, 1] - cy)
    keep = _decimate_subpixel(np.column_stack([px, py]))
    return " ".join(f"{x:.10g},{y:.10g}" for x, y in keep)


def render_solution(P: Polyhedron, v: SolutionSeptuple,
                    spec: RenderSpec | None = None) -> str:
    """SVG document with the two projection hulls, inner polygon drawn last.

    Renders even when the solution does not verify; the margin (and the
    scaling number when the margin is positive) is annotated in a desc
    element.
    """
    spec = spec or RenderSpec()
    A, B, t = _septuple_transforms(v)
    inner = convex_hull(P.vertices @ A.T + t)
    outer = convex_hull(P.vertices @ B.T)
    m = verify(P, v)
    if m > 0.0:
        try:
            mu_text = f"{mu_of(P, v).mu:.9f}"
        except InvalidSolution:
            mu_text = "n/a"
    else:
        mu_text = "n/a"
    transform = _world_to_pixel(outer.vertices, spec)
    outer_pts = _pixel_points(outer.vertices, transform, spec)
    inner_pts = _pixel_points(inner.vertices, transform, spec)
    style = f'fill="none" stroke-width="{spec.stroke_width:.10g}"'
    desc = escape(f"solid={P.name} margin={m:.9g} mu={mu_text}")
    return "\n".join(
        [
            '<?xml version="1.0" encoding="UTF-8"?>',
            "<!-- pixel = (s*(u - cx) + W/2, H/2 - s*(v - cy)); the y axis is"
            " flipped to match SVG screen coordinates -->",
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{spec.width_px}" height="{spec.height_px}" '
            f'viewBox="0 0 {spec.width_px} {spec.height_px}">',
            f"  <desc>{desc}</desc>",
            f'  <polygon points="{outer_pts}" {style} stroke="{escape(spec.outer_color)}"/>',
            f'  <polygon points="{inner_pts}" {style} stroke="{escape(spec.inner_color)}"/>',
            "</svg>",
            "",
        ]
    )
