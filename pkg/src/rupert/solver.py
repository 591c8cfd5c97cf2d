"""Randomized search for passage solutions and their rigorous verification.

A solution is a septuple ``(x, y, alpha, theta1, phi1, theta2, phi2)``: the
projection along ``(theta1, phi1)``, rotated by ``alpha`` and translated by
``(x, y)``, must lie strictly inside the projection along ``(theta2, phi2)``.
For polyhedra centrally symmetric about the origin the translation can be
fixed at ``(0, 0)``, shrinking the search space from 7 to 5 parameters.

Every solution returned by the search routines has been re-verified; the
not-found outcome is only a budget signal.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .containment import (
    DEFAULT_ROTATION_SAMPLES,
    fit_rotation,
    fit_rotation_translation,
)
from .errors import NotFound, NotPointSymmetric
from .geometry import (
    ConvexPolygon,
    Polyhedron,
    ProjectionAngles,
    TWO_PI,
    _projection_matrix,
    _rotation_matrix,
    convex_hull,
    hull_indices,
)

# Below this fraction of the circumradius a verification margin is
# recomputed with 128-bit-significand arithmetic before being trusted.
ADAPTIVE_MARGIN_REL = 1e-7
_MP_PREC = 128


@dataclass(frozen=True)
class SolutionSeptuple:
    """The seven parameters encoding a passage solution."""

    x: float
    y: float
    alpha: float
    theta1: float
    phi1: float
    theta2: float
    phi2: float

    def __post_init__(self):
        for name in ("x", "y", "alpha", "theta1", "phi1", "theta2", "phi2"):
            object.__setattr__(self, name, float(getattr(self, name)))

    def as_tuple(self) -> tuple[float, ...]:
        return (self.x, self.y, self.alpha, self.theta1, self.phi1, self.theta2, self.phi2)

    @staticmethod
    def from_tuple(t) -> "SolutionSeptuple":
        return SolutionSeptuple(*map(float, t))


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for the randomized search.

    ``batch_size`` projections are drawn per batch and all ordered pairs
    passing the area/perimeter/diameter filters are tried.  Searches are
    reproducible: every projection draw uses an RNG stream derived from
    ``(seed, trial_index)``, so results do not depend on evaluation order.
    """

    seed: int = 0
    batch_size: int = 100
    max_batches: int = 1000
    rotation_samples: int = DEFAULT_ROTATION_SAMPLES
    point_symmetric_mode: bool | None = None

    def __post_init__(self):
        if self.batch_size < 2:
            raise ValueError("batch_size must be at least 2")
        if self.rotation_samples < 4:
            raise ValueError("rotation_samples must be at least 4")


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """Independent, order-insensitive RNG stream for one trial."""
    key = (index & 0xFFFFFFFF, (index >> 32) & 0xFFFFFFFF)
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=key))


def draw_projection(rng: np.random.Generator) -> ProjectionAngles:
    """Projection direction uniform on the sphere.

    theta is uniform on [0, 2*pi); phi = arccos(u) with u uniform on
    (-1, 1), which makes the direction vector uniformly distributed.
    """
    theta = rng.uniform(0.0, TWO_PI)
    phi = math.acos(rng.uniform(-1.0, 1.0))
    return ProjectionAngles(theta, phi)


def _septuple_transforms(v: SolutionSeptuple):
    """(A, B, t): inner map A = R_alpha M1 with translation t, outer map B = M2."""
    A = _rotation_matrix(v.alpha) @ _projection_matrix(v.theta1, v.phi1)
    B = _projection_matrix(v.theta2, v.phi2)
    return A, B, np.array([v.x, v.y])


def verify(P: Polyhedron, v: SolutionSeptuple) -> float:
    """Margin of the septuple: positive iff it is a valid solution.

    Projects all vertices through both maps, hulls the outer image and
    returns the least signed distance of an inner image point to the outer
    boundary.  Margins within ``1e-7 * R`` of zero are recomputed with
    128-bit-significand arithmetic.
    """
    A, B, t = _septuple_transforms(v)
    inner = P.vertices @ A.T + t
    outer_poly = convex_hull(P.vertices @ B.T)
    normals, offsets = outer_poly._edge_normals
    m = float(np.min(offsets[None, :] - inner @ normals.T))
    if abs(m) < ADAPTIVE_MARGIN_REL * P.circumradius:
        m = _verify_mp(P, v)
    return m


def _verify_mp(P: Polyhedron, v: SolutionSeptuple, mu: float = 1.0) -> float:
    """Recompute the verification margin with mpmath at extended precision."""
    import mpmath

    with mpmath.workprec(_MP_PREC):
        mpf = mpmath.mpf
        sin, cos, sqrt = mpmath.sin, mpmath.cos, mpmath.sqrt
        t1, p1 = mpf(v.theta1), mpf(v.phi1)
        t2, p2 = mpf(v.theta2), mpf(v.phi2)
        al = mpf(v.alpha)
        M1 = [[-sin(t1), cos(t1), mpf(0)], [-cos(t1) * cos(p1), -sin(t1) * cos(p1), sin(p1)]]
        M2 = [[-sin(t2), cos(t2), mpf(0)], [-cos(t2) * cos(p2), -sin(t2) * cos(p2), sin(p2)]]
        ca, sa = cos(al), sin(al)
        A = [
            [ca * M1[0][0] - sa * M1[1][0], ca * M1[0][1] - sa * M1[1][1], ca * M1[0][2] - sa * M1[1][2]],
            [sa * M1[0][0] + ca * M1[1][0], sa * M1[0][1] + ca * M1[1][1], sa * M1[0][2] + ca * M1[1][2]],
        ]
        verts = [[mpf(c) for c in row] for row in P.vertices]
        scale = mpf(mu)
        tx, ty = mpf(v.x), mpf(v.y)
        inner = [
            (
                scale * sum(A[0][k] * p[k] for k in range(3)) + tx,
                scale * sum(A[1][k] * p[k] for k in range(3)) + ty,
            )
            for p in verts
        ]
        outer = [
            (sum(M2[0][k] * p[k] for k in range(3)), sum(M2[1][k] * p[k] for k in range(3)))
            for p in verts
        ]
        xs = [p[0] for p in outer]
        ys = [p[1] for p in outer]
        diag2 = (max(xs) - min(xs)) ** 2 + (max(ys) - min(ys)) ** 2
        hull = [outer[i] for i in hull_indices(outer, eps=diag2 * mpf(2) ** -100)]
        n = len(hull)
        best = None
        for bx, by in inner:
            for i in range(n):
                ax, ay = hull[i]
                cx, cy = hull[(i + 1) % n]
                det = (ax - bx) * (cy - by) - (ay - by) * (cx - bx)
                d = det / sqrt((cx - ax) ** 2 + (cy - ay) ** 2)
                if best is None or d < best:
                    best = d
        return float(best)


def solve_naive(P: Polyhedron, cfg: SearchConfig) -> SolutionSeptuple:
    """Blind 7-parameter sampling: draw, project, hull, test, repeat.

    Useful as a baseline and as an oracle for the faster search.  Raises
    :class:`NotFound` after ``max_batches * batch_size`` draws.
    """
    R = P.circumradius
    total = cfg.max_batches * cfg.batch_size
    for it in range(total):
        rng = trial_rng(cfg.seed, it)
        x = rng.uniform(-R, R)
        y = rng.uniform(-R, R)
        theta1 = rng.uniform(0.0, TWO_PI)
        theta2 = rng.uniform(0.0, TWO_PI)
        alpha = rng.uniform(0.0, TWO_PI)
        phi1 = rng.uniform(0.0, math.pi)
        phi2 = rng.uniform(0.0, math.pi)
        v = SolutionSeptuple(x, y, alpha, theta1, phi1, theta2, phi2)
        A, B, t = _septuple_transforms(v)
        inner = P.vertices @ A.T + t
        outer = convex_hull(P.vertices @ B.T)
        normals, offsets = outer._edge_normals
        if np.min(offsets[None, :] - inner @ normals.T) <= 0.0:
            continue
        if verify(P, v) > 0.0:
            return v
    raise NotFound(f"no solution for {P.name} within {total} naive draws")


def _batch_projections(P: Polyhedron, cfg: SearchConfig, batch: int):
    """Draw one batch of projections; returns (angles, hulls)."""
    angles = []
    hulls = []
    base = batch * cfg.batch_size
    for i in range(cfg.batch_size):
        rng = trial_rng(cfg.seed, base + i)
        a = draw_projection(rng)
        angles.append(a)
        pts = P.vertices @ _projection_matrix(a.theta, a.phi).T
        hulls.append(convex_hull(pts))
    return angles, hulls


def filtered_pairs(hulls: list[ConvexPolygon]) -> list[tuple[int, int]]:
    """Ordered pairs (inner j, outer k) passing the three necessary filters.

    A fit of j inside k requires strictly smaller area, perimeter and
    diameter.  Pairs are ordered by descending area ratio so the slackest
    candidates are tried first.
    """
    areas = [h.area for h in hulls]
    peris = [h.perimeter for h in hulls]
    dias = [h.diameter for h in hulls]
    pairs = []
    m = len(hulls)
    for j in range(m):
        for k in range(m):
            if j == k:
                continue
            if areas[j] < areas[k] and peris[j] < peris[k] and dias[j] < dias[k]:
                pairs.append((areas[k] / areas[j], j, k))
    pairs.sort(key=lambda p: (-p[0], p[1], p[2]))
    return [(j, k) for _, j, k in pairs]


def solve(P: Polyhedron, cfg: SearchConfig | None = None,
          deadline: float | None = None) -> SolutionSeptuple:
    """Batched randomized search with invariant prefilters.

    Per batch, ``batch_size`` random projections are hulled and their
    area/perimeter/diameter cached; each ordered pair passing all three
    strict inequalities is handed to the containment solver (rotation only
    when the polyhedron is centrally symmetric, rotation plus translation
    otherwise).  The first verified fit is returned.

    ``deadline`` is an optional ``time.monotonic()`` timestamp checked
    between batches.  Raises :class:`NotFound` when the budget runs out.
    """
    cfg = cfg or SearchConfig()
    symmetric = cfg.point_symmetric_mode
    if symmetric is None:
        symmetric = P.point_symmetric
    elif symmetric and not P.point_symmetric:
        raise NotPointSymmetric(f"{P.name} is not centrally symmetric about the origin")

    for batch in range(cfg.max_batches):
        if deadline is not None and time.monotonic() > deadline:
            raise NotFound(f"no solution for {P.name} before the deadline")
        angles, hulls = _batch_projections(P, cfg, batch)
        for j, k in filtered_pairs(hulls):
            if symmetric:
                fit = fit_rotation(hulls[j], hulls[k], cfg.rotation_samples)
            else:
                fit = fit_rotation_translation(
                    hulls[j], hulls[k], 2 * cfg.rotation_samples, seed=cfg.seed
                )
            if not fit.found:
                continue
            v = SolutionSeptuple(
                fit.x, fit.y, fit.alpha,
                angles[j].theta, angles[j].phi,
                angles[k].theta, angles[k].phi,
            )
            if verify(P, v) > 0.0:
                return v
    raise NotFound(f"no solution for {P.name} within {cfg.max_batches} batches")
