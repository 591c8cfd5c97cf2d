"""Monte-Carlo passage probability with exact binomial confidence intervals.

The Rupertness of a centrally symmetric polyhedron is the probability that
two independent uniform projections admit an in-plane rotation placing the
first strictly inside the second.  Trials are reproducible (one derived RNG
stream per trial index) and the success count is a plain sum, so estimates
are independent of evaluation order and worker count.

Under-sampling of the rotation grid can only turn a success into a failure,
so the estimator is biased downward, never upward.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .containment import DEFAULT_ROTATION_SAMPLES, fit_rotation
from .errors import DomainError, NotPointSymmetric
from .geometry import Polyhedron, _projection_matrix, convex_hull
from .solver import draw_projection, trial_rng

_LENTZ_TINY = 1e-300
_CF_EPS = 3e-16


@dataclass(frozen=True)
class RupertnessEstimate:
    n: int
    k: int
    point_estimate: float
    ci_low: float
    ci_high: float
    confidence: float


def _log_beta(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the regularized incomplete beta (modified Lentz)."""
    max_iter = 200 + 4 * int(math.sqrt(max(a, b)))
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _LENTZ_TINY:
        d = _LENTZ_TINY
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _LENTZ_TINY:
            d = _LENTZ_TINY
        c = 1.0 + aa / c
        if abs(c) < _LENTZ_TINY:
            c = _LENTZ_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _LENTZ_TINY:
            d = _LENTZ_TINY
        c = 1.0 + aa / c
        if abs(c) < _LENTZ_TINY:
            c = _LENTZ_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise ArithmeticError(f"incomplete beta fraction did not converge (a={a}, b={b}, x={x})")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = a * math.log(x) + b * math.log1p(-x) - _log_beta(a, b)
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def inverse_regularized_incomplete_beta(a: float, b: float, p: float) -> float:
    """Solve I_x(a, b) = p for x, by bracketed Newton iteration."""
    if p <= 0.0:
        return 0.0
    if p >= 1.0:
        return 1.0
    lo, hi = 0.0, 1.0
    x = a / (a + b)
    ln_b = _log_beta(a, b)
    for _ in range(200):
        f = regularized_incomplete_beta(a, b, x) - p
        if f > 0.0:
            hi = x
        else:
            lo = x
        pdf = 0.0
        if 0.0 < x < 1.0:
            pdf = math.exp((a - 1.0) * math.log(x) + (b - 1.0) * math.log1p(-x) - ln_b)
        if pdf > 0.0:
            nxt = x - f / pdf
        else:
            nxt = 0.5 * (lo + hi)
        if not (lo < nxt < hi):
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) <= 1e-16 + 1e-14 * x:
            return nxt
        x = nxt
    return x


def clopper_pearson(k: int, n: int, alpha: float) -> tuple[float, float]:
    """Exact two-sided 1-alpha confidence bounds for a binomial proportion.

    Beta-quantile form: low solves I_low(k, n-k+1) = alpha/2 and high solves
    I_high(k+1, n-k) = 1 - alpha/2; the edge cases k = 0 and k = n use the
    closed forms 0 and 1 with the opposite bound ``1 - (alpha/2)**(1/n)``
    (respectively its mirror).
    """
    if not isinstance(k, (int, np.integer)) or not isinstance(n, (int, np.integer)):
        raise DomainError("k and n must be integers")
    if n < 1 or k < 0 or k > n:
        raise DomainError(f"need 0 <= k <= n and n >= 1, got k={k}, n={n}")
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must be in (0, 1), got {alpha}")
    if k == 0:
        return 0.0, 1.0 - (alpha / 2.0) ** (1.0 / n)
    if k == n:
        return (alpha / 2.0) ** (1.0 / n), 1.0
    low = inverse_regularized_incomplete_beta(float(k), float(n - k + 1), alpha / 2.0)
    high = inverse_regularized_incomplete_beta(float(k + 1), float(n - k), 1.0 - alpha / 2.0)
    return low, high


def rupertness_trial(P: Polyhedron, rng: np.random.Generator,
                     samples: int = DEFAULT_ROTATION_SAMPLES) -> bool:
    """One Bernoulli trial: can two fresh uniform projections be extended?

    Applies the three necessary invariant filters before the rotation
    search; the verdict of :func:`fit_rotation` is exact on success.
    """
    if not P.point_symmetric:
        raise NotPointSymmetric(f"Rupertness is defined only for centrally symmetric"
                                f" polyhedra; {P.name} is not")
    a1 = draw_projection(rng)
    a2 = draw_projection(rng)
    inner = convex_hull(P.vertices @ _projection_matrix(a1.theta, a1.phi).T)
    outer = convex_hull(P.vertices @ _projection_matrix(a2.theta, a2.phi).T)
    if not (inner.area < outer.area and inner.perimeter < outer.perimeter
            and inner.diameter < outer.diameter):
        return False
    return fit_rotation(inner, outer, samples).found


def _count_successes(payload) -> int:
    name, vertices, seed, start, stop, samples = payload
    P = Polyhedron(name, vertices, point_symmetric=True)
    k = 0
    for i in range(start, stop):
        if rupertness_trial(P, trial_rng(seed, i), samples):
            k += 1
    return k


def estimate_rupertness(P: Polyhedron, n: int, alpha: float = 0.001, seed: int = 0,
                        samples: int = DEFAULT_ROTATION_SAMPLES,
                        workers: int = 1) -> RupertnessEstimate:
    """Run ``n`` independent trials and attach the Clopper-Pearson interval.

    Deterministic for fixed ``seed`` and ``n`` regardless of ``workers``:
    trial i always consumes the stream derived from ``(seed, i)``.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"need at least one trial, got n={n}")
    if not P.point_symmetric:
        raise NotPointSymmetric(f"Rupertness is defined only for centrally symmetric"
                                f" polyhedra; {P.name} is not")
    if workers > 1:
        chunk = max(1, -(-n // (4 * workers)))
        payloads = [
            (P.name, np.asarray(P.vertices), seed, lo, min(lo + chunk, n), samples)
            for lo in range(0, n, chunk)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            k = sum(pool.map(_count_successes, payloads))
    else:
        k = _count_successes((P.name, np.asarray(P.vertices), seed, 0, n, samples))
    low, high = clopper_pearson(k, n, alpha)
    return RupertnessEstimate(n=int(n), k=int(k), point_estimate=k / n,
                              ci_low=low, ci_high=high, confidence=1.0 - alpha)
