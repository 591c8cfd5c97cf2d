"""Strict containment of one convex polygon in another.

The rotation-only and rotation-plus-translation fits sample a grid of
angles, refine the best cell by golden-section search, and accept only
placements that pass the exact determinant test at every vertex.  The
contract is Las Vegas: a returned fit is always sound, a not-found verdict
may be a false negative.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from ._lp import LPInfeasible, max_delta_translation
from .geometry import ConvexPolygon, _rotation_matrix

TWO_PI = 2.0 * math.pi
GOLDEN_ITERS = 48
DEFAULT_ROTATION_SAMPLES = 1024
DEFAULT_ROTATION_TRANSLATION_SAMPLES = 2048

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class FitResult:
    """Outcome of a containment query: placement (x, y, alpha) plus margin.

    When ``found`` is true the placed inner polygon passes the strict
    determinant test at every vertex and ``margin`` is the least distance
    from an inner vertex to the outer boundary.
    """

    found: bool
    x: float = 0.0
    y: float = 0.0
    alpha: float = 0.0
    margin: float = 0.0

    @staticmethod
    def not_found() -> "FitResult":
        return FitResult(False)


def strictly_inside(B, Q: ConvexPolygon) -> bool:
    """Exact strict-interior test: det(A_i - B, A_{i+1} - B) > 0 for all edges."""
    v = Q.vertices
    nxt = np.roll(v, -1, axis=0)
    bx, by = float(B[0]), float(B[1])
    det = (v[:, 0] - bx) * (nxt[:, 1] - by) - (v[:, 1] - by) * (nxt[:, 0] - bx)
    return bool(np.all(det > 0.0))


def margin(B, Q: ConvexPolygon) -> float:
    """Signed distance from ``B`` to the boundary of ``Q``; positive inside."""
    normals, offsets = Q._edge_normals
    b = np.asarray(B, dtype=float)
    return float(np.min(offsets - normals @ b))


def _placement_margin(points: np.ndarray, Q: ConvexPolygon) -> float:
    normals, offsets = Q._edge_normals
    return float(np.min(offsets[None, :] - points @ normals.T))


def _all_strictly_inside(points: np.ndarray, Q: ConvexPolygon) -> bool:
    return all(strictly_inside(p, Q) for p in points)


def _grid_rotation_margins(inner: np.ndarray, Q: ConvexPolygon, alphas: np.ndarray) -> np.ndarray:
    """Min containment margin of ``R_alpha(inner)`` in ``Q`` for every alpha."""
    normals, offsets = Q._edge_normals
    c, s = np.cos(alphas)[:, None], np.sin(alphas)[:, None]
    rx = c * inner[:, 0] - s * inner[:, 1]
    ry = s * inner[:, 0] + c * inner[:, 1]
    d = offsets[None, None, :] - (rx[..., None] * normals[:, 0] + ry[..., None] * normals[:, 1])
    return d.min(axis=(1, 2))


def _rotation_margin(inner: np.ndarray, Q: ConvexPolygon, alpha: float) -> float:
    return _placement_margin(inner @ _rotation_matrix(alpha).T, Q)


def _golden_max(f, lo: float, hi: float, iters: int = GOLDEN_ITERS):
    """Golden-section maximization; returns the best point actually evaluated."""
    a, b = lo, hi
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1, f2 = f(x1), f(x2)
    best_x, best_f = (x1, f1) if f1 >= f2 else (x2, f2)
    for _ in range(iters):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = f(x2)
            if f2 > best_f:
                best_x, best_f = x2, f2
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = f(x1)
            if f1 > best_f:
                best_x, best_f = x1, f1
    return best_x, best_f


def fit_rotation(P: ConvexPolygon, Q: ConvexPolygon,
                 samples: int = DEFAULT_ROTATION_SAMPLES) -> FitResult:
    """Find alpha with ``R_alpha(P)`` strictly inside ``Q``.

    Both polygons must be centrally symmetric about the origin (the
    caller's responsibility), which makes the search pi-periodic.  Scans
    ``samples`` angles on [0, pi), refines the best cell by golden-section
    search and verifies the winner exactly.
    """
    inner = P.vertices
    step = math.pi / samples
    alphas = np.arange(samples) * step
    margins = _grid_rotation_margins(inner, Q, alphas)
    k = int(np.argmax(margins))
    r_inner = float(np.max(np.linalg.norm(inner, axis=1)))
    # The margin is r_inner-Lipschitz in alpha, so a best sample this deep
    # below zero cannot reach a positive value anywhere on the circle.
    if margins[k] <= -r_inner * step:
        return FitResult.not_found()
    center = float(alphas[k])
    f = lambda a: _rotation_margin(inner, Q, a)
    a_star, m_star = _golden_max(f, center - step, center + step)
    if margins[k] >= m_star:
        a_star, m_star = center, float(margins[k])
    if m_star <= 0.0:
        return FitResult.not_found()
    placed = inner @ _rotation_matrix(a_star).T
    if not _all_strictly_inside(placed, Q):
        return FitResult.not_found()
    return FitResult(True, 0.0, 0.0, a_star % TWO_PI, _placement_margin(placed, Q))


def _lp_seed(tag: int, offsets: np.ndarray) -> int:
    digest = hashlib.blake2b(offsets.tobytes(), digest_size=8).digest()
    return (int.from_bytes(digest, "little") ^ tag) & 0x7FFFFFFFFFFFFFFF


def _translation_lp(inner: np.ndarray, Q: ConvexPolygon, tag: int):
    """Deepest translation of ``inner`` into ``Q``: returns (t, delta*)."""
    normals, offsets = Q._edge_normals
    support = np.max(inner @ normals.T, axis=0)
    c = offsets - support
    r_in = float(np.max(np.linalg.norm(inner, axis=1)))
    r_out = float(np.max(np.linalg.norm(Q.vertices, axis=1)))
    box = 2.0 * (r_in + r_out) + 1.0
    tx, ty, delta = max_delta_translation(normals, c, box, _lp_seed(tag, c))
    return np.array([tx, ty]), float(delta)


def fit_translation(P: ConvexPolygon, Q: ConvexPolygon, seed: int = 0) -> FitResult:
    """Deepest pure-translation placement of ``P`` inside ``Q``.

    Solves the linear program  max delta  s.t.  n_i . (p_j + t) <= b_i - delta
    exactly over the outer edges; found iff the optimum is strictly positive
    and the exact vertex test confirms it.
    """
    try:
        t, delta = _translation_lp(P.vertices, Q, seed)
    except LPInfeasible:
        return FitResult.not_found()
    if delta <= 0.0:
        return FitResult.not_found()
    placed = P.vertices + t
    if not _all_strictly_inside(placed, Q):
        return FitResult.not_found()
    return FitResult(True, float(t[0]), float(t[1]), 0.0, delta)


def fit_rotation_translation(P: ConvexPolygon, Q: ConvexPolygon,
                             samples: int = DEFAULT_ROTATION_TRANSLATION_SAMPLES,
                             seed: int = 0) -> FitResult:
    """Find (x, y, alpha) with the moved ``P`` strictly inside ``Q``.

    For each grid angle the translation subproblem is a small linear
    program.  A cheap exact upper bound (edge-length-weighted average of
    the slack offsets, valid because the outer edge vectors sum to zero)
    discards angles that cannot possibly fit before any LP is solved.
    """
    inner = P.vertices
    normals, offsets = Q._edge_normals
    step = TWO_PI / samples
    alphas = np.arange(samples) * step

    c, s = np.cos(alphas)[:, None], np.sin(alphas)[:, None]
    rx = c * inner[:, 0] - s * inner[:, 1]
    ry = s * inner[:, 0] + c * inner[:, 1]
    support = (rx[..., None] * normals[:, 0] + ry[..., None] * normals[:, 1]).max(axis=1)
    slack = offsets[None, :] - support  # (samples, n_edges)

    v = Q.vertices
    edge_len = np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)
    weights = edge_len / edge_len.sum()
    upper = slack @ weights  # delta*(alpha) <= upper(alpha)

    r_inner = float(np.max(np.linalg.norm(inner, axis=1)))

    cache: dict[float, tuple[np.ndarray, float]] = {}

    def delta_at(alpha: float):
        if alpha not in cache:
            rot = inner @ _rotation_matrix(alpha).T
            try:
                cache[alpha] = _translation_lp(rot, Q, seed + 1)
            except LPInfeasible:
                cache[alpha] = (np.zeros(2), -np.inf)
        return cache[alpha]

    best_k = -1
    best_delta = -np.inf
    order = np.argsort(-upper)
    for k in order:
        if upper[k] <= max(0.0, best_delta):
            break
        _, delta = delta_at(float(alphas[k]))
        if delta > best_delta:
            best_delta = delta
            best_k = int(k)
    if best_k < 0 or best_delta <= -r_inner * step:
        return FitResult.not_found()

    center = float(alphas[best_k])
    f = lambda a: delta_at(a)[1]
    a_star, d_star = _golden_max(f, center - step, center + step)
    if best_delta >= d_star:
        a_star, d_star = center, best_delta
    if d_star <= 0.0:
        return FitResult.not_found()
    t, _ = delta_at(a_star)
    placed = inner @ _rotation_matrix(a_star).T + t
    if not _all_strictly_inside(placed, Q):
        return FitResult.not_found()
    return FitResult(True, float(t[0]), float(t[1]), a_star % TWO_PI,
                     _placement_margin(placed, Q))
