"""Projection parametrization, planar isometries, convex hulls and polygon invariants.

Conventions used throughout the package:

* A projection direction on the unit sphere is parametrized by two angles
  ``(theta, phi)`` via ``X(theta, phi) = (cos t sin p, sin t sin p, cos p)``.
* The associated orthogonal projection onto the plane normal to that
  direction is the 2x3 matrix with rows ``(-sin t, cos t, 0)`` and
  ``(-cos t cos p, -sin t cos p, sin p)``.
* Planar isometries are "rotate about the origin by alpha, then translate
  by (x, y)".

All angles are radians stored as 64-bit floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import DegenerateInput, NotConvexPosition

TWO_PI = 2.0 * math.pi

# Tolerance factor for dropping collinear points from hulls; scaled by the
# squared bounding-box diagonal so it is invariant under uniform scaling.
COLLINEAR_EPS = 1e-12

_PHI_SLACK = 1e-6  # published solution tables carry phi values a few 1e-7 past pi


@dataclass(frozen=True)
class ProjectionAngles:
    """A point on the sphere of projection directions.

    ``theta`` is reduced modulo 2*pi at construction; ``phi`` must lie in
    [0, pi] up to a small slack that absorbs rounding in published data.
    """

    theta: float
    phi: float

    def __post_init__(self):
        t = float(self.theta) % TWO_PI
        if t >= TWO_PI:  # tiny negative inputs round up to the full period
            t = 0.0
        p = float(self.phi)
        if not (math.isfinite(t) and math.isfinite(p)):
            raise ValueError("angles must be finite")
        if p < -_PHI_SLACK or p > math.pi + _PHI_SLACK:
            raise ValueError(f"phi={p!r} outside [0, pi]")
        object.__setattr__(self, "theta", t)
        object.__setattr__(self, "phi", min(max(p, 0.0), math.pi))


def direction(angles: ProjectionAngles) -> np.ndarray:
    """Unit vector X(theta, phi) of the projection direction."""
    t, p = angles.theta, angles.phi
    sp = math.sin(p)
    return np.array([math.cos(t) * sp, math.sin(t) * sp, math.cos(p)])


def projection_matrix(angles: ProjectionAngles) -> np.ndarray:
    """2x3 orthogonal projection onto the plane normal to X(theta, phi).

    Both rows are unit vectors orthogonal to each other and to the
    projection direction.
    """
    return _projection_matrix(angles.theta, angles.phi)


def _projection_matrix(theta: float, phi: float) -> np.ndarray:
    st, ct = math.sin(theta), math.cos(theta)
    sp, cp = math.sin(phi), math.cos(phi)
    return np.array([[-st, ct, 0.0], [-ct * cp, -st * cp, sp]])


def _rotation_matrix(alpha: float) -> np.ndarray:
    c, s = math.cos(alpha), math.sin(alpha)
    return np.array([[c, -s], [s, c]])


class Polyhedron:
    """A named finite set of vertices in convex position in 3-space.

    Invariants enforced at construction: at least four non-coplanar
    vertices, all extremal on their 3-D convex hull, the origin strictly
    inside the hull, and (when flagged point symmetric) closure under
    negation.  ``circumradius`` is the largest vertex norm.
    """

    __slots__ = ("name", "vertices", "point_symmetric", "circumradius")

    def __init__(self, name: str, vertices, point_symmetric: bool = False):
        verts = np.asarray(vertices, dtype=float)
        if verts.ndim != 2 or verts.shape[1] != 3:
            raise DegenerateInput("vertices must be an (N, 3) array")
        if verts.shape[0] < 4:
            raise DegenerateInput("a polyhedron needs at least 4 vertices")
        if not np.all(np.isfinite(verts)):
            raise DegenerateInput("vertices must be finite")
        _check_convex_position(verts)
        if point_symmetric and not _antipodally_closed(verts):
            raise DegenerateInput(
                "point_symmetric flag set but vertex set is not antipodally closed"
            )
        verts = verts.copy()
        verts.flags.writeable = False
        self.name = str(name)
        self.vertices = verts
        self.point_symmetric = bool(point_symmetric)
        self.circumradius = float(np.max(np.linalg.norm(verts, axis=1)))

    @classmethod
    def from_points(cls, name: str, points, point_symmetric: bool | None = None):
        """Build from an arbitrary 3-D point cloud, keeping hull vertices only.

        ``point_symmetric`` defaults to whatever the antipodal-closure test
        reports for the extracted hull vertices.
        """
        from scipy.spatial import ConvexHull

        pts = np.asarray(points, dtype=float)
        try:
            hull = ConvexHull(pts)
        except Exception as exc:  # Qhull rejects degenerate clouds
            raise DegenerateInput(f"cannot take 3-D hull: {exc}") from exc
        verts = pts[np.sort(hull.vertices)]
        if point_symmetric is None:
            point_symmetric = _antipodally_closed(verts)
        return cls(name, verts, point_symmetric)

    def __len__(self) -> int:
        return self.vertices.shape[0]

    def __reduce__(self):
        return (Polyhedron, (self.name, np.asarray(self.vertices), self.point_symmetric))

    def __repr__(self) -> str:
        return (
            f"Polyhedron({self.name!r}, N={len(self)}, "
            f"point_symmetric={self.point_symmetric}, R={self.circumradius:.6g})"
        )


def _check_convex_position(verts: np.ndarray) -> None:
    from scipy.spatial import ConvexHull

    try:
        hull = ConvexHull(verts)
    except Exception as exc:
        raise DegenerateInput(f"degenerate vertex set: {exc}") from exc
    if len(hull.vertices) != verts.shape[0]:
        inside = sorted(set(range(verts.shape[0])) - set(hull.vertices))
        raise NotConvexPosition(f"vertices {inside} are not extremal")
    # hull.equations rows are (n, d) with n.x + d <= 0 inside; the origin is
    # strictly interior iff every offset d is strictly negative.
    if np.max(hull.equations[:, 3]) >= 0.0:
        raise DegenerateInput("origin is not strictly inside the convex hull")


def _antipodally_closed(verts: np.ndarray, rel_tol: float = 1e-9) -> bool:
    scale = float(np.max(np.abs(verts))) or 1.0
    tol = rel_tol * scale
    for v in verts:
        if np.min(np.linalg.norm(verts + v, axis=1)) > tol:
            return False
    return True


def project(P: Polyhedron, angles: ProjectionAngles) -> np.ndarray:
    """All vertices of ``P`` projected along ``angles``; shape (N, 2)."""
    return P.vertices @ projection_matrix(angles).T


def hull_indices(points: Sequence, eps=None) -> list[int]:
    """Indices of the strict convex hull of 2-D ``points``, CCW order.

    Monotone chain over lexicographically sorted points; boundary points
    collinear within ``eps`` (an absolute cross-product threshold) are
    dropped.  Works with any numeric type supporting arithmetic and
    comparison, which the high-precision verification path relies on.
    """
    n = len(points)
    order = sorted(range(n), key=lambda i: (points[i][0], points[i][1]))
    if eps is None:
        xs = [points[i][0] for i in range(n)]
        ys = [points[i][1] for i in range(n)]
        diag2 = (max(xs) - min(xs)) ** 2 + (max(ys) - min(ys)) ** 2
        eps = COLLINEAR_EPS * diag2

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[int] = []
    for i in order:
        while len(lower) > 1 and cross(points[lower[-2]], points[lower[-1]], points[i]) <= eps:
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in reversed(order):
        while len(upper) > 1 and cross(points[upper[-2]], points[upper[-1]], points[i]) <= eps:
            upper.pop()
        upper.append(i)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateInput("all points collinear within tolerance")
    return hull


class ConvexPolygon:
    """A strictly convex polygon: CCW vertices, no three collinear.

    Build one with :func:`convex_hull`; the constructor validates a hull
    that is already strict.  Area, perimeter and diameter are cached, as
    are the outward unit edge normals and offsets used by containment
    queries.
    """

    __slots__ = ("vertices", "__dict__")

    def __init__(self, vertices, _trusted: bool = False):
        verts = np.asarray(vertices, dtype=float)
        if verts.ndim != 2 or verts.shape[1] != 2 or verts.shape[0] < 3:
            raise DegenerateInput("need at least 3 planar vertices")
        if not _trusted:
            nxt = np.roll(verts, -1, axis=0)
            nxt2 = np.roll(verts, -2, axis=0)
            e1 = nxt - verts
            e2 = nxt2 - nxt
            crosses = e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0]
            if np.any(crosses <= 0.0):
                raise DegenerateInput("vertices are not in strict CCW convex position")
        verts = verts.copy()
        verts.flags.writeable = False
        self.vertices = verts

    def __len__(self) -> int:
        return self.vertices.shape[0]

    @cached_property
    def area(self) -> float:
        """Shoelace area."""
        v = self.vertices
        nxt = np.roll(v, -1, axis=0)
        return 0.5 * float(np.sum(v[:, 0] * nxt[:, 1] - nxt[:, 0] * v[:, 1]))

    @cached_property
    def perimeter(self) -> float:
        v = self.vertices
        return float(np.sum(np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)))

    @cached_property
    def diameter(self) -> float:
        """Largest vertex-pair distance, by rotating calipers."""
        return _calipers_diameter(self.vertices)

    @cached_property
    def _edge_normals(self) -> tuple[np.ndarray, np.ndarray]:
        """(outward unit normals, offsets): inside iff normals @ p < offsets."""
        v = self.vertices
        e = np.roll(v, -1, axis=0) - v
        lengths = np.linalg.norm(e, axis=1)
        normals = np.column_stack([e[:, 1], -e[:, 0]]) / lengths[:, None]
        offsets = np.einsum("ij,ij->i", normals, v)
        return normals, offsets

    def __repr__(self) -> str:
        return f"ConvexPolygon(n={len(self)}, area={self.area:.6g})"


def _calipers_diameter(v: np.ndarray) -> float:
    n = v.shape[0]
    best = 0.0
    j = 1
    for i in range(n):
        i1 = (i + 1) % n
        ex, ey = v[i1, 0] - v[i, 0], v[i1, 1] - v[i, 1]
        while True:
            j1 = (j + 1) % n
            dx, dy = v[j1, 0] - v[j, 0], v[j1, 1] - v[j, 1]
            if ex * dy - ey * dx > 0.0:
                j = j1
            else:
                break
        for k in (i, i1):
            d = (v[k, 0] - v[j, 0]) ** 2 + (v[k, 1] - v[j, 1]) ** 2
            if d > best:
                best = d
    return math.sqrt(best)


def convex_hull(points) -> ConvexPolygon:
    """Strict CCW convex hull of a 2-D point set.

    Interior points and boundary points collinear within the scale-relative
    tolerance are removed.  Raises :class:`DegenerateInput` when all points
    are collinear.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 3:
        raise DegenerateInput("need at least 3 planar points")
    if not np.all(np.isfinite(pts)):
        raise DegenerateInput("points must be finite")
    idx = hull_indices([tuple(p) for p in pts])
    return ConvexPolygon(pts[idx], _trusted=True)


def area(poly: ConvexPolygon) -> float:
    return poly.area


def perimeter(poly: ConvexPolygon) -> float:
    return poly.perimeter


def diameter(poly: ConvexPolygon) -> float:
    return poly.diameter


def apply_isometry(poly: ConvexPolygon, alpha: float, x: float, y: float) -> ConvexPolygon:
    """Rotate ``poly`` by ``alpha`` about the origin, then translate by (x, y).

    CCW order and the cached invariants are preserved (rotation and
    translation are rigid motions).
    """
    verts = poly.vertices @ _rotation_matrix(alpha).T + np.array([x, y])
    return ConvexPolygon(verts, _trusted=True)
