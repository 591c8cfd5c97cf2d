"""Scaling headroom of a solution and random-perturbation improvement.

The scaling number of a solution ``v`` is the supremum of ``mu`` for which
the inner projection of the polyhedron scaled by ``mu`` still fits strictly
inside the outer projection at the same seven parameters.  Any value above 1
certifies a passage with room to spare; the supremum over all solutions is
the polyhedron's Nieuwland number.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .containment import margin as point_margin
from .errors import InvalidSolution
from .geometry import Polyhedron, convex_hull
from .solver import SolutionSeptuple, _septuple_transforms, verify

MU_PROBE = 1e-6  # a solution must hold at least at this scale to be usable
DEFAULT_MU_ITERS = 60


@dataclass(frozen=True)
class NieuwlandResult:
    mu: float
    iterations: int
    margin_at_mu_minus: float


@dataclass(frozen=True)
class ImproveConfig:
    """Hill-climbing parameters.

    The perturbation window starts at ``initial_window`` (radians for the
    angles, fraction of the circumradius for x and y) and shrinks by
    ``shrink_factor`` after ``stall_threshold`` consecutive rejections.
    """

    seed: int = 0
    rounds: int = 20000
    initial_window: float = 0.05
    shrink_factor: float = 0.5
    stall_threshold: int = 200
    min_window: float = 1e-7

    def __post_init__(self):
        if not (0.0 < self.shrink_factor < 1.0):
            raise ValueError("shrink_factor must be strictly between 0 and 1")
        if self.rounds < 0:
            raise ValueError("rounds must be non-negative")


class _InclusionContext:
    """Projections of a septuple, reused across many scale tests."""

    def __init__(self, P: Polyhedron, v: SolutionSeptuple):
        A, B, t = _septuple_transforms(v)
        self.dirs = P.vertices @ A.T  # inner images before scaling/translation
        self.t = t
        self.outer = convex_hull(P.vertices @ B.T)
        self.normals, self.offsets = self.outer._edge_normals

    def margin(self, mu: float) -> float:
        pts = mu * self.dirs + self.t
        return float(np.min(self.offsets[None, :] - pts @ self.normals.T))

    def holds(self, mu: float) -> bool:
        return self.margin(mu) > 0.0

    def bracket_top(self) -> float:
        """A scale guaranteed to fail: 2 R_outer / r_inner.

        ``r_inner`` is the margin of the projected origin inside the inner
        projection hull, a lower bound on its inradius; once ``mu r_inner``
        exceeds the outer circumradius the scaled copy cannot fit.
        """
        r_outer = float(np.max(np.linalg.norm(self.outer.vertices, axis=1)))
        r_inner = point_margin((0.0, 0.0), convex_hull(self.dirs))
        if r_inner <= 0.0:
            raise InvalidSolution("projected origin not inside the inner projection")
        return 2.0 * r_outer / r_inner


def inclusion_holds(P: Polyhedron, v: SolutionSeptuple, mu: float) -> bool:
    """Does the inner projection of ``mu * P`` fit strictly at ``v``?"""
    return _InclusionContext(P, v).holds(mu)


def mu_of(P: Polyhedron, v: SolutionSeptuple, iters: int = DEFAULT_MU_ITERS,
          tested: list | None = None) -> NieuwlandResult:
    """Largest verified scale of ``v`` by binary search.

    The predicate ``mu -> inclusion holds`` is monotone because the origin
    is interior: shrinking about the projected origin preserves strict
    containment by convexity.  ``tested`` optionally collects every
    ``(mu, held)`` probe.  Raises :class:`InvalidSolution` when the
    inclusion fails even at ``mu = 1e-6``.
    """
    ctx = _InclusionContext(P, v)
    if not ctx.holds(MU_PROBE):
        raise InvalidSolution("inclusion fails at mu = 1e-6; not a solution")
    hi = ctx.bracket_top()
    while ctx.holds(hi):  # cannot occur mathematically; guards rounding
        hi *= 2.0
    lo = 0.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        held = ctx.holds(mid)
        if tested is not None:
            tested.append((mid, held))
        if held:
            lo = mid
        else:
            hi = mid
    return NieuwlandResult(mu=lo, iterations=iters, margin_at_mu_minus=ctx.margin(lo))


def improve(P: Polyhedron, v: SolutionSeptuple, cfg: ImproveConfig | None = None,
            deadline: float | None = None, target_mu: float | None = None,
            history: list | None = None) -> SolutionSeptuple:
    """Random-perturbation hill climbing on the scaling number.

    All parameters are jittered by uniform noise in ``+-window`` (only the
    five angles when the polyhedron is centrally symmetric and x = y = 0,
    which the climb then preserves exactly); strictly better scales are
    accepted.  Never returns anything worse than the input.  ``deadline``
    (a ``time.monotonic()`` timestamp) and ``target_mu`` stop the climb
    early; ``history`` collects the accepted ``(round, mu)`` pairs.
    """
    cfg = cfg or ImproveConfig()
    if verify(P, v) <= 0.0:
        raise InvalidSolution("improve requires a verified solution as the start")
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed))
    reduced = P.point_symmetric and v.x == 0.0 and v.y == 0.0
    R = P.circumradius

    best = v
    best_mu = mu_of(P, v).mu
    window = cfg.initial_window
    stall = 0
    for rnd in range(cfg.rounds):
        if deadline is not None and time.monotonic() > deadline:
            break
        if target_mu is not None and best_mu >= target_mu:
            break
        r = rng.uniform(-window, window, size=5 if reduced else 7)
        if reduced:
            cand = SolutionSeptuple(
                0.0, 0.0, best.alpha + r[0],
                best.theta1 + r[1], best.phi1 + r[2],
                best.theta2 + r[3], best.phi2 + r[4],
            )
        else:
            cand = SolutionSeptuple(
                best.x + R * r[0], best.y + R * r[1], best.alpha + r[2],
                best.theta1 + r[3], best.phi1 + r[4],
                best.theta2 + r[5], best.phi2 + r[6],
            )
        try:
            cand_mu = mu_of(P, cand).mu
        except InvalidSolution:
            cand_mu = -math.inf
        if cand_mu > best_mu:
            best, best_mu = cand, cand_mu
            stall = 0
            if history is not None:
                history.append((rnd, best_mu))
        else:
            stall += 1
            if stall >= cfg.stall_threshold:
                window *= cfg.shrink_factor
                stall = 0
                if window < cfg.min_window:
                    # fully converged locally; re-expand to hunt for a better
                    # basin instead of burning the budget on frozen proposals
                    window = cfg.initial_window
    return best
