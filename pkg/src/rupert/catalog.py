"""Embedded solid catalog and JSON polyhedron files.

The five Platonic and thirteen Archimedean solids are generated from their
exact coordinate recipes (golden ratio, sqrt(2), the tribonacci constant and
the snub-dodecahedron radicals evaluated to full double precision).  The
thirteen Catalan solids ship as JSON data files, computed as polar duals of
their Archimedean parents in the same coordinate frame, and are loaded
through the same :func:`load` path as user files.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from itertools import product
from typing import Callable

import numpy as np

from .errors import ParseError, UnknownSolid
from .geometry import Polyhedron

PHI = (1.0 + math.sqrt(5.0)) / 2.0
SQRT2 = math.sqrt(2.0)


def _tribonacci() -> float:
    s = math.sqrt(33.0)
    return (1.0 + (19.0 + 3.0 * s) ** (1.0 / 3.0) + (19.0 - 3.0 * s) ** (1.0 / 3.0)) / 3.0


def _snub_dodecahedron_constants() -> tuple[float, float]:
    xi = ((PHI / 2.0 + 0.5 * math.sqrt(PHI - 5.0 / 27.0)) ** (1.0 / 3.0)
          + (PHI / 2.0 - 0.5 * math.sqrt(PHI - 5.0 / 27.0)) ** (1.0 / 3.0))
    alpha = xi - 1.0 / xi
    beta = xi * PHI + PHI * PHI + PHI / xi
    return alpha, beta


def _clean(v: float) -> float:
    return v if v != 0.0 else 0.0  # normalizes -0.0


_PERMS = {
    "all": ((0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)),
    "even": ((0, 1, 2), (1, 2, 0), (2, 0, 1)),
    "odd": ((0, 2, 1), (2, 1, 0), (1, 0, 2)),
}

_SIGN_RULES = {
    "any": lambda s: True,
    "even_minus": lambda s: sum(1 for t in s if t < 0) % 2 == 0,
    "even_plus": lambda s: sum(1 for t in s if t > 0) % 2 == 0,
    "odd_plus": lambda s: sum(1 for t in s if t > 0) % 2 == 1,
    "odd_minus": lambda s: sum(1 for t in s if t < 0) % 2 == 1,
}


def _spread(parts) -> np.ndarray:
    """Expand (perm kind, sign rule, base triple) patterns into a vertex array."""
    pts = set()
    for perm_kind, sign_rule, base in parts:
        rule = _SIGN_RULES[sign_rule]
        for signs in product((1.0, -1.0), repeat=3):
            if not rule(signs):
                continue
            sv = tuple(_clean(s * b) for s, b in zip(signs, base))
            for perm in _PERMS[perm_kind]:
                pts.add(tuple(sv[i] for i in perm))
    return np.array(sorted(pts), dtype=float)


def _platonic_archimedean() -> dict[str, tuple[str, bool, Callable[[], np.ndarray]]]:
    t = _tribonacci()
    sd_a, sd_b = _snub_dodecahedron_constants()
    sd_bases = [
        (2.0 * sd_a, 2.0, 2.0 * sd_b),
        (sd_a + sd_b / PHI + PHI, -sd_a * PHI + sd_b + 1.0 / PHI, sd_a / PHI + sd_b * PHI - 1.0),
        (sd_a + sd_b / PHI - PHI, sd_a * PHI - sd_b + 1.0 / PHI, sd_a / PHI + sd_b * PHI + 1.0),
        (-sd_a / PHI + sd_b * PHI + 1.0, -sd_a + sd_b / PHI - PHI, sd_a * PHI + sd_b - 1.0 / PHI),
        (-sd_a / PHI + sd_b * PHI - 1.0, sd_a - sd_b / PHI - PHI, sd_a * PHI + sd_b + 1.0 / PHI),
    ]
    recipes = {
        "tetrahedron": ("Platonic", False, [("all", "even_minus", (1.0, 1.0, 1.0))]),
        "cube": ("Platonic", True, [("all", "any", (1.0, 1.0, 1.0))]),
        "octahedron": ("Platonic", True, [("all", "any", (0.0, 0.0, 1.0))]),
        "dodecahedron": ("Platonic", True, [
            ("all", "any", (1.0, 1.0, 1.0)),
            ("even", "any", (0.0, 1.0 / PHI, PHI)),
        ]),
        "icosahedron": ("Platonic", True, [("even", "any", (0.0, PHI, 1.0))]),
        "truncated_tetrahedron": ("Archimedean", False, [("all", "even_minus", (1.0, 1.0, 3.0))]),
        "cuboctahedron": ("Archimedean", True, [("all", "any", (1.0, 1.0, 0.0))]),
        "truncated_cube": ("Archimedean", True, [("all", "any", (1.0, 1.0, SQRT2 - 1.0))]),
        "truncated_octahedron": ("Archimedean", True, [("all", "any", (0.0, 1.0, 2.0))]),
        "rhombicuboctahedron": ("Archimedean", True, [("all", "any", (1.0, 1.0, 1.0 + SQRT2))]),
        "truncated_cuboctahedron": ("Archimedean", True, [
            ("all", "any", (1.0, 1.0 + SQRT2, 1.0 + 2.0 * SQRT2)),
        ]),
        "snub_cube": ("Archimedean", False, [
            ("even", "even_plus", (1.0, 1.0 / t, t)),
            ("odd", "odd_plus", (1.0, 1.0 / t, t)),
        ]),
        "icosidodecahedron": ("Archimedean", True, [
            ("all", "any", (0.0, 0.0, PHI)),
            ("even", "any", (0.5, PHI / 2.0, PHI * PHI / 2.0)),
        ]),
        "truncated_dodecahedron": ("Archimedean", True, [
            ("even", "any", (0.0, 1.0 / PHI, 2.0 + PHI)),
            ("even", "any", (1.0 / PHI, PHI, 2.0 * PHI)),
            ("even", "any", (PHI, 2.0, PHI + 1.0)),
        ]),
        "truncated_icosahedron": ("Archimedean", True, [
            ("odd", "any", (0.0, 1.0, 3.0 * PHI)),
            ("odd", "any", (1.0, 2.0 + PHI, 2.0 * PHI)),
            ("odd", "any", (PHI, 2.0, 2.0 * PHI + 1.0)),
        ]),
        "rhombicosidodecahedron": ("Archimedean", True, [
            ("even", "any", (1.0, 1.0, PHI ** 3)),
            ("even", "any", (PHI * PHI, PHI, 2.0 * PHI)),
            ("even", "any", (2.0 + PHI, 0.0, PHI * PHI)),
        ]),
        "truncated_icosidodecahedron": ("Archimedean", True, [
            ("even", "any", (1.0 / PHI, 1.0 / PHI, 3.0 + PHI)),
            ("even", "any", (2.0 / PHI, PHI, 1.0 + 2.0 * PHI)),
            ("even", "any", (1.0 / PHI, PHI * PHI, 3.0 * PHI - 1.0)),
            ("even", "any", (2.0 * PHI - 1.0, 2.0, 2.0 + PHI)),
            ("even", "any", (PHI, 3.0, 2.0 * PHI)),
        ]),
        "snub_dodecahedron": ("Archimedean", False,
                              [("even", "odd_minus", base) for base in sd_bases]),
    }
    return {
        name: (family, sym, (lambda parts=parts: _spread(parts)))
        for name, (family, sym, parts) in recipes.items()
    }


CATALAN_NAMES = (
    "triakis_tetrahedron",
    "rhombic_dodecahedron",
    "triakis_octahedron",
    "tetrakis_hexahedron",
    "deltoidal_icositetrahedron",
    "disdyakis_dodecahedron",
    "pentagonal_icositetrahedron",
    "rhombic_triacontahedron",
    "triakis_icosahedron",
    "pentakis_dodecahedron",
    "deltoidal_hexecontahedron",
    "disdyakis_triacontahedron",
    "pentagonal_hexecontahedron",
)

_BUILDERS = _platonic_archimedean()


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    family: str  # Platonic | Archimedean | Catalan | Johnson | Custom
    point_symmetric: bool
    vertex_count: int


def canonical_name(name: str) -> str:
    return name.strip().lower().replace(" ", "_").replace("-", "_")


def _catalan_resource(name: str):
    return resources.files("rupert").joinpath(f"data/catalan/{name}.json")


def names() -> list[str]:
    return list(_BUILDERS) + list(CATALAN_NAMES)


def get(name: str) -> Polyhedron:
    """Catalog lookup by name; Catalan solids come from the packaged files."""
    key = canonical_name(name)
    if key in _BUILDERS:
        family, sym, builder = _BUILDERS[key]
        return Polyhedron(key, builder(), point_symmetric=sym)
    if key in CATALAN_NAMES:
        with resources.as_file(_catalan_resource(key)) as path:
            return load(path)
    raise UnknownSolid(f"no solid named {name!r} in the catalog")


def entries() -> list[CatalogEntry]:
    out = []
    for name, (family, sym, builder) in _BUILDERS.items():
        out.append(CatalogEntry(name, family, sym, len(builder())))
    for name in CATALAN_NAMES:
        P = get(name)
        out.append(CatalogEntry(name, "Catalan", P.point_symmetric, len(P)))
    return out


def load(path, recenter: bool = False) -> Polyhedron:
    """Read a polyhedron JSON file: name, vertices, point_symmetric.

    ``recenter`` subtracts the vertex centroid, for files whose origin is
    not interior.  Convex position of every vertex is enforced.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from exc
    return from_dict(doc, recenter=recenter, source=str(path))


def from_dict(doc, recenter: bool = False, source: str = "<data>") -> Polyhedron:
    """Validate a decoded polyhedron document (the load() schema)."""
    if not isinstance(doc, dict):
        raise ParseError(f"{source}: expected a JSON object")
    try:
        name = doc["name"]
        raw = doc["vertices"]
        sym = doc["point_symmetric"]
    except KeyError as exc:
        raise ParseError(f"{source}: missing field {exc}") from exc
    if not isinstance(name, str) or not isinstance(sym, bool):
        raise ParseError(f"{source}: bad field types")
    try:
        verts = np.array(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{source}: vertices must be numeric triples") from exc
    if verts.ndim != 2 or verts.shape[1] != 3:
        raise ParseError(f"{source}: vertices must be an N x 3 array")
    if recenter:
        verts = verts - verts.mean(axis=0)
    return Polyhedron(name, verts, point_symmetric=sym)


def save(P: Polyhedron, path) -> None:
    doc = {
        "name": P.name,
        "vertices": [[float(c) for c in row] for row in P.vertices],
        "point_symmetric": P.point_symmetric,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
