"""Randomized incremental solver for tiny linear programs (d <= 3).

Used to compute the deepest translation placement of one convex polygon
inside another: maximize delta subject to ``n_i . t + delta <= c_i`` over
``t = (x, y)``.  Problems are made a priori feasible and bounded by box
constraints, so the recursion never has to handle rays.

The incremental scheme processes constraints in a seeded random order; when
the running optimum violates a constraint, the optimum of the enlarged set
lies on that constraint's boundary and the problem recurses with one fewer
variable.  Expected linear time in the constraint count for fixed dimension.
"""

from __future__ import annotations

import random

_FEAS_EPS = 1e-9


class LPInfeasible(Exception):
    """Numerically infeasible subproblem (possible only through rounding)."""


def _solve(c, constraints, lo, hi, rng):
    d = len(c)
    if d == 1:
        a, b = lo[0], hi[0]
        for (coef,), rhs in constraints:
            if coef > 0.0:
                b = min(b, rhs / coef)
            elif coef < 0.0:
                a = max(a, rhs / coef)
            elif rhs < -_FEAS_EPS:
                raise LPInfeasible
        if a > b + _FEAS_EPS:
            raise LPInfeasible
        if c[0] > 0.0:
            return [b]
        if c[0] < 0.0:
            return [a]
        return [(a + b) / 2.0]

    z = [hi[k] if c[k] > 0.0 else lo[k] if c[k] < 0.0 else (lo[k] + hi[k]) / 2.0 for k in range(d)]
    order = list(range(len(constraints)))
    rng.shuffle(order)
    scale = max(1.0, *(abs(v) for v in lo + hi))
    for pos, ci in enumerate(order):
        a, b = constraints[ci]
        if sum(a[k] * z[k] for k in range(d)) <= b + _FEAS_EPS * scale:
            continue
        # Optimum of the first pos+1 constraints lies on a . z == b.
        k = max(range(d), key=lambda i: abs(a[i]))
        ak = a[k]
        if ak == 0.0:
            raise LPInfeasible
        # z_k = alpha + beta . w  where w drops coordinate k
        rest = [i for i in range(d) if i != k]
        alpha = b / ak
        beta = [-a[i] / ak for i in rest]

        def reduce_constraint(ar, br):
            coef = [ar[i] + ar[k] * beta[j] for j, i in enumerate(rest)]
            return coef, br - ar[k] * alpha

        sub = [reduce_constraint(*constraints[order[q]]) for q in range(pos)]
        # box bounds of the eliminated coordinate become ordinary constraints
        sub.append((beta[:], hi[k] - alpha))
        sub.append(([-bj for bj in beta], alpha - lo[k]))
        sub_c = [c[i] + c[k] * beta[j] for j, i in enumerate(rest)]
        w = _solve(sub_c, sub, [lo[i] for i in rest], [hi[i] for i in rest], rng)
        z = [0.0] * d
        for j, i in enumerate(rest):
            z[i] = w[j]
        z[k] = alpha + sum(beta[j] * w[j] for j in range(d - 1))
    return z


def max_delta_translation(normals, offsets, box_radius: float, seed: int):
    """Maximize delta s.t. ``normals[i] . t + delta <= offsets[i]``.

    Returns ``(tx, ty, delta)``.  ``box_radius`` bounds ``|t|`` and
    ``|delta|`` safely away from any meaningful optimum.  Raises
    :class:`LPInfeasible` only under pathological rounding.
    """
    cons = [((float(nx), float(ny), 1.0), float(off)) for (nx, ny), off in zip(normals, offsets)]
    r = float(box_radius)
    lo = [-r, -r, -2.0 * r]
    hi = [r, r, r]
    rng = random.Random(seed)
    z = _solve([0.0, 0.0, 1.0], cons, lo, hi, rng)
    return z[0], z[1], z[2]
