"""The tiny LP solver against scipy's linprog as an independent oracle."""

import numpy as np
import pytest
from scipy.optimize import linprog

from rupert._lp import max_delta_translation

from conftest import random_convex_polygon


def _oracle(normals, offsets, box):
    # maximize delta == minimize -delta over (tx, ty, delta)
    A = np.column_stack([normals, np.ones(len(normals))])
    res = linprog(
        c=[0.0, 0.0, -1.0],
        A_ub=A,
        b_ub=offsets,
        bounds=[(-box, box), (-box, box), (-2 * box, box)],
        method="highs",
    )
    assert res.success
    return -res.fun


@pytest.mark.parametrize("seed", range(20))
def test_matches_scipy_on_random_instances(seed):
    rng = np.random.default_rng(100 + seed)
    Q = random_convex_polygon(rng, rng.integers(4, 30))
    normals, offsets = Q._edge_normals
    # random inner support shifts, some making the program "infeasible at
    # positive delta" (optimal delta negative)
    c = offsets - rng.uniform(0.0, 1.5, size=len(offsets))
    box = 10.0
    tx, ty, delta = max_delta_translation(normals, c, box, seed=seed)
    expected = _oracle(normals, c, box)
    assert abs(delta - expected) < 1e-7
    # the reported point must achieve the reported value
    achieved = np.min(c - normals @ np.array([tx, ty]))
    assert achieved >= delta - 1e-7


def test_deterministic_for_fixed_seed():
    rng = np.random.default_rng(200)
    Q = random_convex_polygon(rng, 12)
    normals, offsets = Q._edge_normals
    a = max_delta_translation(normals, offsets, 5.0, seed=9)
    b = max_delta_translation(normals, offsets, 5.0, seed=9)
    assert a == b
