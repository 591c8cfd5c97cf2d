#!/usr/bin/env python3
"""Regenerate the packaged Catalan solid JSON files.

Each Catalan solid is the polar dual of its Archimedean parent: one dual
vertex n/d per face plane {p : n . p = d} of the parent (origin interior,
d > 0).  Polar duality about any sphere centered at the origin gives the
same shape up to uniform scale, and the dual inherits the parent's
coordinate frame, which is what makes the published solution parameters
apply to these files verbatim.

Usage: python tools/make_catalan_data.py
"""

import json
import os
import sys

import numpy as np
from scipy.spatial import ConvexHull

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from rupert import catalog  # noqa: E402
from rupert.geometry import Polyhedron, _antipodally_closed  # noqa: E402

DUAL_OF = {
    "triakis_tetrahedron": "truncated_tetrahedron",
    "rhombic_dodecahedron": "cuboctahedron",
    "triakis_octahedron": "truncated_cube",
    "tetrakis_hexahedron": "truncated_octahedron",
    "deltoidal_icositetrahedron": "rhombicuboctahedron",
    "disdyakis_dodecahedron": "truncated_cuboctahedron",
    "pentagonal_icositetrahedron": "snub_cube",
    "rhombic_triacontahedron": "icosidodecahedron",
    "triakis_icosahedron": "truncated_dodecahedron",
    "pentakis_dodecahedron": "truncated_icosahedron",
    "deltoidal_hexecontahedron": "rhombicosidodecahedron",
    "disdyakis_triacontahedron": "truncated_icosidodecahedron",
    "pentagonal_hexecontahedron": "snub_dodecahedron",
}


def polar_dual(vertices: np.ndarray) -> np.ndarray:
    hull = ConvexHull(vertices)
    # Qhull rows are (n, d) with n . p + d <= 0 inside; simplices sharing a
    # face repeat the same plane, so cluster on the rounded equation.
    planes = np.unique(np.round(hull.equations, 9), axis=0)
    duals = [eq[:3] / -eq[3] for eq in planes]
    return np.array(sorted(map(tuple, duals)))


def main() -> None:
    out_dir = os.path.join(os.path.dirname(__file__), "..", "src", "rupert", "data", "catalan")
    os.makedirs(out_dir, exist_ok=True)
    for name, parent_name in DUAL_OF.items():
        parent = catalog.get(parent_name)
        verts = polar_dual(parent.vertices)
        sym = _antipodally_closed(verts)
        Polyhedron(name, verts, point_symmetric=sym)  # validates before writing
        doc = {
            "name": name,
            "vertices": [[float(c) for c in row] for row in verts],
            "point_symmetric": bool(sym),
        }
        path = os.path.join(out_dir, f"{name}.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
        print(f"{name}: {len(verts)} vertices (dual of {parent_name}), "
              f"point_symmetric={sym}")


if __name__ == "__main__":
    main()
