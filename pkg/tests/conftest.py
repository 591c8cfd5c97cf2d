import os

import numpy as np
import pytest

import rupert as rp
from rupert.records import SolutionRecord

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "..", "goldens")


def golden_records():
    recs = []
    for f in sorted(os.listdir(GOLDEN_DIR)):
        if f.endswith(".json"):
            recs.append(SolutionRecord.load(os.path.join(GOLDEN_DIR, f)))
    return recs


def golden(solid: str) -> SolutionRecord:
    for rec in golden_records():
        if rec.solid == solid:
            return rec
    raise KeyError(solid)


@pytest.fixture(scope="session")
def cube():
    return rp.get("cube")


@pytest.fixture(scope="session")
def octahedron():
    return rp.get("octahedron")


@pytest.fixture(scope="session")
def tetrahedron():
    return rp.get("tetrahedron")


def random_convex_polygon(rng, n_points=12, scale=1.0, symmetric=False):
    """Hull of a random normal cloud; symmetric=True closes it under negation."""
    pts = rng.normal(size=(n_points, 2)) * scale
    if symmetric:
        pts = np.vstack([pts, -pts])
    return rp.convex_hull(pts)
