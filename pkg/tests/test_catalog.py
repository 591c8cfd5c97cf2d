import json
import math

import numpy as np
import pytest
from scipy.spatial import ConvexHull

import rupert as rp
from rupert import catalog
from rupert.errors import (
    DegenerateInput,
    NotConvexPosition,
    ParseError,
    UnknownSolid,
)

VERTEX_COUNTS = {
    "tetrahedron": 4,
    "cube": 8,
    "octahedron": 6,
    "dodecahedron": 20,
    "icosahedron": 12,
    "truncated_tetrahedron": 12,
    "cuboctahedron": 12,
    "truncated_cube": 24,
    "truncated_octahedron": 24,
    "rhombicuboctahedron": 24,
    "truncated_cuboctahedron": 48,
    "snub_cube": 24,
    "icosidodecahedron": 30,
    "truncated_dodecahedron": 60,
    "truncated_icosahedron": 60,
    "rhombicosidodecahedron": 60,
    "truncated_icosidodecahedron": 120,
    "snub_dodecahedron": 60,
    "triakis_tetrahedron": 8,
    "rhombic_dodecahedron": 14,
    "triakis_octahedron": 14,
    "tetrakis_hexahedron": 14,
    "deltoidal_icositetrahedron": 26,
    "disdyakis_dodecahedron": 26,
    "pentagonal_icositetrahedron": 38,
    "rhombic_triacontahedron": 32,
    "triakis_icosahedron": 32,
    "pentakis_dodecahedron": 32,
    "deltoidal_hexecontahedron": 62,
    "disdyakis_triacontahedron": 62,
    "pentagonal_hexecontahedron": 92,
}


def test_catalog_covers_expected_names():
    assert set(catalog.names()) == set(VERTEX_COUNTS)


@pytest.mark.parametrize("name", sorted(VERTEX_COUNTS))
def test_vertex_counts(name):
    assert len(rp.get(name)) == VERTEX_COUNTS[name]


def test_circumradii():
    assert abs(rp.get("cube").circumradius - math.sqrt(3)) < 1e-12
    assert abs(rp.get("octahedron").circumradius - 1.0) < 1e-12
    assert abs(rp.get("icosahedron").circumradius
               - math.sqrt(1 + ((1 + math.sqrt(5)) / 2) ** 2)) < 1e-12


@pytest.mark.parametrize("name", sorted(VERTEX_COUNTS))
def test_convex_position_and_interior_origin(name):
    P = rp.get(name)
    hull = ConvexHull(P.vertices)
    assert len(hull.vertices) == len(P)
    assert np.max(hull.equations[:, 3]) < 0  # origin strictly inside


@pytest.mark.parametrize("name", sorted(VERTEX_COUNTS))
def test_point_symmetric_flag_matches_antipodal_closure(name):
    P = rp.get(name)
    closed = all(
        np.min(np.linalg.norm(P.vertices + v, axis=1)) < 1e-9 * P.circumradius
        for v in P.vertices
    )
    assert P.point_symmetric == closed


def test_known_flags():
    for name in ("tetrahedron", "truncated_tetrahedron", "snub_cube",
                 "snub_dodecahedron", "triakis_tetrahedron",
                 "pentagonal_icositetrahedron", "pentagonal_hexecontahedron"):
        assert not rp.get(name).point_symmetric
    for name in ("cube", "octahedron", "rhombicosidodecahedron",
                 "rhombic_triacontahedron", "deltoidal_hexecontahedron"):
        assert rp.get(name).point_symmetric


def test_name_normalization():
    assert len(rp.get("Truncated Icosidodecahedron")) == 120
    assert len(rp.get("rhombic-dodecahedron")) == 14


def test_unknown_solid():
    with pytest.raises(UnknownSolid):
        rp.get("nosuchsolid")


def test_save_load_round_trip(tmp_path, cube):
    path = tmp_path / "cube.json"
    rp.save(cube, path)
    again = rp.load(path)
    assert again.name == cube.name
    assert again.point_symmetric == cube.point_symmetric
    assert np.array_equal(again.vertices, cube.vertices)


def test_load_rejects_interior_vertex(tmp_path):
    doc = {
        "name": "bad",
        "vertices": [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1], [0, 0, 0.01]],
        "point_symmetric": False,
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(NotConvexPosition):
        rp.load(path)


def test_load_rejects_coplanar(tmp_path):
    doc = {
        "name": "flat",
        "vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]],
        "point_symmetric": False,
    }
    path = tmp_path / "flat.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(DegenerateInput):
        rp.load(path)


def test_load_rejects_bad_json(tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    with pytest.raises(ParseError):
        rp.load(path)
    path.write_text(json.dumps({"name": "x", "vertices": [[1, 2, 3]]}))
    with pytest.raises(ParseError):
        rp.load(path)


def test_load_recenter(tmp_path, tetrahedron):
    shifted = tetrahedron.vertices + np.array([5.0, 0.0, 0.0])
    doc = {
        "name": "shifted",
        "vertices": [[float(c) for c in row] for row in shifted],
        "point_symmetric": False,
    }
    path = tmp_path / "shifted.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(DegenerateInput):
        rp.load(path)  # origin no longer interior
    P = rp.load(path, recenter=True)
    assert np.allclose(P.vertices.mean(axis=0), 0.0, atol=1e-12)


def test_point_symmetric_flag_validated(tmp_path, tetrahedron):
    doc = {
        "name": "liar",
        "vertices": [[float(c) for c in row] for row in tetrahedron.vertices],
        "point_symmetric": True,
    }
    path = tmp_path / "liar.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(DegenerateInput):
        rp.load(path)


def test_entries_listing():
    entries = {e.name: e for e in catalog.entries()}
    assert entries["cube"].family == "Platonic"
    assert entries["snub_cube"].family == "Archimedean"
    assert entries["rhombic_dodecahedron"].family == "Catalan"
    assert entries["truncated_icosidodecahedron"].vertex_count == 120
