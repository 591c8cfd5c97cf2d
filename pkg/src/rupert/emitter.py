"""Silhouette enumeration and integer polynomial system generation.

Whether a passage solution with a prescribed outer silhouette exists is
equivalent to the solvability of a system of strict polynomial inequalities
in seven variables: the determinant conditions placing every projected
vertex left of every silhouette edge, with all trigonometric functions
replaced by the rational circle parametrization

    t  ->  ( (1 - t^2) / (1 + t^2),  2 t / (1 + t^2) )

and denominators cleared by the square of the product of the five
``1 + t^2`` factors.  This module builds those systems exactly; deciding
them is delegated to external tools through the ``.polysys`` text format.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterator

import numpy as np

from .errors import AmbiguousSilhouette, DomainError, NonIntegerCoordinates, TooLarge
from .geometry import Polyhedron, ProjectionAngles, hull_indices, projection_matrix
from .polynomial import ONE, VARIABLES, IntPolynomial
from .solver import draw_projection, trial_rng

ENUMERATION_GUARD = 12  # |S_n| grows like e * n!
COUNT_GUARD = 20
DEGREE_BOUND = 22  # proven bound on the total degree of every inequality


@dataclass(frozen=True)
class Silhouette:
    """A cycle of 1-based vertex indices, smallest index first."""

    cycle: tuple[int, ...]

    def __post_init__(self):
        cyc = tuple(int(i) for i in self.cycle)
        if not cyc:
            raise DomainError("silhouette cycle must be non-empty")
        if any(i < 1 for i in cyc):
            raise DomainError("silhouette indices are 1-based")
        if len(set(cyc)) != len(cyc):
            raise DomainError("silhouette indices must be distinct")
        k = cyc.index(min(cyc))
        object.__setattr__(self, "cycle", cyc[k:] + cyc[:k])

    def __len__(self) -> int:
        return len(self.cycle)

    def __iter__(self):
        return iter(self.cycle)


@dataclass(frozen=True)
class PolySystem:
    """``k * n`` integer polynomial inequalities tied to one silhouette."""

    variables: tuple[str, ...]
    inequalities: tuple[IntPolynomial, ...]
    silhouette: Silhouette
    max_total_degree: int
    max_abs_coeff: int
    equations: tuple[str, ...] = field(default_factory=tuple)


def silhouette_of(P: Polyhedron, angles: ProjectionAngles) -> Silhouette:
    """Indices of the vertices on the projected hull boundary, CCW.

    Vertices with bitwise-identical projections (an axis-aligned view of a
    symmetric solid) are merged onto the smallest index; projections that
    nearly but not exactly coincide with a hull point raise
    :class:`AmbiguousSilhouette`.
    """
    pts = P.vertices @ projection_matrix(angles).T
    idx = hull_indices([tuple(p) for p in pts])
    span = float(np.max(pts, axis=0).max() - np.min(pts, axis=0).min()) or 1.0
    tol = 1e-9 * span
    cycle = []
    for i in idx:
        u = pts[i]
        close = np.flatnonzero(np.maximum(np.abs(pts[:, 0] - u[0]), np.abs(pts[:, 1] - u[1])) <= tol)
        exact = [int(j) for j in close if pts[j, 0] == u[0] and pts[j, 1] == u[1]]
        if len(exact) != len(close):
            raise AmbiguousSilhouette(
                f"vertices {sorted(int(j) + 1 for j in close)} project within "
                f"tolerance of one hull point"
            )
        cycle.append(min(exact) + 1)
    return Silhouette(tuple(cycle))


def count_cycles(n: int) -> int:
    """|S_n|: the number of cycles over non-empty subsets of {1..n}."""
    if n < 1:
        raise DomainError("n must be at least 1")
    if n > COUNT_GUARD:
        raise TooLarge(f"count_cycles limited to n <= {COUNT_GUARD}")
    return sum(math.comb(n, k) * math.factorial(k - 1) for k in range(1, n + 1))


def enumerate_cycles(n: int) -> Iterator[Silhouette]:
    """Yield every element of S_n exactly once, canonicalized."""
    if n < 1:
        raise DomainError("n must be at least 1")
    if n > ENUMERATION_GUARD:
        raise TooLarge(f"enumerate_cycles limited to n <= {ENUMERATION_GUARD}")
    for k in range(1, n + 1):
        for subset in combinations(range(1, n + 1), k):
            first, rest = subset[0], subset[1:]
            for perm in permutations(rest):
                yield Silhouette((first,) + perm)


def discover_silhouettes(P: Polyhedron, samples: int = 100_000, seed: int = 0) -> list[Silhouette]:
    """Silhouettes observed over ``samples`` random projections.

    A cheap substitute for full enumeration: the number of silhouettes a
    solid actually realizes is far smaller than |S_n|.  Draws that hit an
    ambiguous projection are skipped.
    """
    seen: set[tuple[int, ...]] = set()
    for i in range(samples):
        angles = draw_projection(trial_rng(seed, i))
        try:
            s = silhouette_of(P, angles)
        except AmbiguousSilhouette:
            continue
        seen.add(s.cycle)
    return [Silhouette(c) for c in sorted(seen, key=lambda c: (len(c), c))]


def _halved_cos_sin(var: str) -> tuple[IntPolynomial, IntPolynomial, IntPolynomial]:
    """(cos numerator, sin numerator, denominator) under the circle map."""
    t = IntPolynomial.variable(var)
    t2 = t * t
    return ONE - t2, 2 * t, ONE + t2


def _integer_vertices(P: Polyhedron) -> list[tuple[int, int, int]]:
    verts = P.vertices
    rounded = np.rint(verts)
    if not np.array_equal(verts, rounded):
        raise NonIntegerCoordinates(
            f"{P.name} has non-integer coordinates; rescale before emitting"
        )
    return [tuple(int(c) for c in row) for row in rounded]


def emit_system(P: Polyhedron, s: Silhouette,
                extra_equations: tuple[str, ...] = ()) -> PolySystem:
    """Build the cleared determinant system for silhouette ``s``.

    Requires integer vertex coordinates (scale rational data first).  With
    an n-vertex polyhedron and a length-k silhouette the system has exactly
    ``k * n`` inequalities, each of total degree at most 22, and every
    coefficient is an exact integer.  ``extra_equations`` are appended
    verbatim as ``= 0`` constraints (minimal polynomials for algebraic
    coordinates, supplied by the caller).
    """
    verts = _integer_vertices(P)
    n = len(verts)
    if any(i > n for i in s.cycle):
        raise DomainError(f"silhouette index exceeds vertex count {n}")

    cos_a, sin_a, den_a = _halved_cos_sin("a")
    cos_b1, sin_b1, den_b1 = _halved_cos_sin("b1")
    cos_b2, sin_b2, den_b2 = _halved_cos_sin("b2")
    cos_c1, sin_c1, den_c1 = _halved_cos_sin("c1")
    cos_c2, sin_c2, den_c2 = _halved_cos_sin("c2")
    X, Y = IntPolynomial.variable("x"), IntPolynomial.variable("y")

    den_inner = den_a * den_b1 * den_c1  # matches the inner map denominators
    den_outer = den_b2 * den_c2
    clear_all = den_inner * den_outer  # one factor F; entries of F*Z are polynomials

    def inner_image(p):
        """F * (T_{x,y} R_alpha M_{theta1,phi1} p), entrywise polynomial."""
        px, py, pz = p
        row1 = sin_b1 * (-px) + cos_b1 * py  # over den_b1
        row2 = cos_b1 * cos_c1 * (-px) - sin_b1 * cos_c1 * py + sin_c1 * den_b1 * pz
        u1 = row1 * den_c1  # over den_b1 * den_c1
        u2 = row2
        v1 = cos_a * u1 - sin_a * u2  # over den_inner
        v2 = sin_a * u1 + cos_a * u2
        return den_outer * v1 + clear_all * X, den_outer * v2 + clear_all * Y

    def outer_image(q):
        """F * (M_{theta2,phi2} q), entrywise polynomial."""
        qx, qy, qz = q
        row1 = (sin_b2 * (-qx) + cos_b2 * qy) * den_c2
        row2 = cos_b2 * cos_c2 * (-qx) - sin_b2 * cos_c2 * qy + sin_c2 * den_b2 * qz
        return den_inner * row1, den_inner * row2

    inner = [inner_image(p) for p in verts]
    silhouette_pts = {i: outer_image(verts[i - 1]) for i in s.cycle}

    inequalities = []
    cyc = s.cycle
    k = len(cyc)
    for i in range(k):
        q1 = silhouette_pts[cyc[i]]
        q2 = silhouette_pts[cyc[(i + 1) % k]]
        for p in inner:
            e11, e12 = q1[0] - p[0], q1[1] - p[1]
            e21, e22 = q2[0] - p[0], q2[1] - p[1]
            inequalities.append(e11 * e22 - e12 * e21)

    max_deg = max(poly.total_degree() for poly in inequalities)
    if max_deg > DEGREE_BOUND:
        raise AssertionError(f"degree bound violated: {max_deg} > {DEGREE_BOUND}")
    return PolySystem(
        variables=VARIABLES,
        inequalities=tuple(inequalities),
        silhouette=s,
        max_total_degree=max_deg,
        max_abs_coeff=max(poly.max_abs_coeff() for poly in inequalities),
        equations=tuple(extra_equations),
    )


def to_polysys(system: PolySystem, name: str = "") -> str:
    """Serialize to the ``.polysys`` text format.

    Line 1 is a JSON header; every following line is one constraint,
    ``<polynomial> > 0`` or ``<expression> = 0``.
    """
    header = {
        "format": "polysys",
        "name": name,
        "variables": list(system.variables),
        "silhouette": list(system.silhouette.cycle),
        "inequalities": len(system.inequalities),
        "equations": len(system.equations),
        "max_total_degree": system.max_total_degree,
        "max_abs_coeff": str(system.max_abs_coeff),
    }
    lines = [json.dumps(header)]
    lines.extend(f"{poly.to_string()} > 0" for poly in system.inequalities)
    lines.extend(f"{eq} = 0" for eq in system.equations)
    return "\n".join(lines) + "\n"
