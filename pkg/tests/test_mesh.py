import json
import math

import numpy as np
import pytest

from src.errors import UnsupportedDimension
from src.geometry.mesh import (
    cell_mesh,
    cover_patch_tiles,
    export_mesh,
    fundamental_tiles,
    hyperplane_basis,
    read_off,
    summary,
)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_hyperplane_basis_is_orthonormal(n):
    b = hyperplane_basis(n)
    assert b.shape == (n + 1, n)
    assert np.allclose(b.T @ b, np.eye(n))
    assert np.allclose(b.sum(axis=0), 0.0)


def edge_lengths(mesh):
    for face in mesh.faces:
        points = mesh.vertices[face]
        yield from np.linalg.norm(points - np.roll(points, -1, axis=0), axis=1)


def test_hexagons_for_p2(tessellations):
    t = tessellations(2)
    mesh = cell_mesh(t, fundamental_tiles(t))
    assert mesh.vertices.shape == (18, 3)
    assert len(mesh.faces) == 3
    assert all(len(face) == 6 for face in mesh.faces)
    assert [tag for tag, _, _ in mesh.groups] == ["P1", "P2", "P3"]
    assert np.allclose(list(edge_lengths(mesh)), math.sqrt(2))
    assert np.allclose(mesh.vertices[:, 2], 0.0)


def test_truncated_octahedra_for_p3(tessellations):
    t = tessellations(3)
    mesh = cell_mesh(t, fundamental_tiles(t))
    assert mesh.vertices.shape == (96, 3)
    assert len(mesh.faces) == 56
    sides = sorted(len(face) for face in mesh.faces[:14])
    assert sides == [4] * 6 + [6] * 8
    assert np.allclose(list(edge_lengths(mesh)), math.sqrt(2))


@pytest.mark.parametrize("n", [1, 4])
def test_geometric_export_is_limited_to_low_dimensions(n, tessellations, tmp_path):
    t = tessellations(n)
    with pytest.raises(UnsupportedDimension):
        cell_mesh(t, fundamental_tiles(t))
    with pytest.raises(UnsupportedDimension):
        export_mesh(t, "off", tmp_path / "x.off")


def test_summary_counts(tessellations):
    s = summary(tessellations(3))
    assert (s.cells, s.facets, s.edges, s.vertices) == (4, 14, 36, 24)
    assert str(s) == "cells=4 facets=14 edges=36 vertices=24"


def test_off_export_reads_back(tessellations, tmp_path):
    t = tessellations(3)
    path = tmp_path / "cells.off"
    result = export_mesh(t, "off", path)
    vertices, faces = read_off(path)
    assert vertices.shape == (96, 3)
    assert len(faces) == 56
    assert result.cells == 4
    assert max(max(f) for f in faces) == 95


def test_obj_export_groups_cells(tessellations, tmp_path):
    t = tessellations(2)
    path = tmp_path / "nested" / "cells.obj"
    export_mesh(t, "obj", path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert [line for line in lines if line.startswith("o ")] == ["o P1", "o P2", "o P3"]
    assert sum(line.startswith("v ") for line in lines) == 18
    assert sum(line.startswith("f ") for line in lines) == 3


def test_cover_patch_export(tessellations, tmp_path):
    t = tessellations(2)
    tiles = cover_patch_tiles(t, 1)
    assert len(tiles) == 27
    assert tiles[0][0] == "P1@-1,-1"
    result = export_mesh(t, "off", tmp_path / "patch.off", cover_patch=1)
    assert result.cells == 27


def test_json_export_holds_the_face_lattice(tessellations, tmp_path):
    t = tessellations(4)
    path = tmp_path / "lattice.json"
    result = export_mesh(t, "json", path)
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["n"] == 4
    assert data["cells"] == ["P1", "P2", "P3", "P4", "P5"]
    assert len(data["facets"]) == 30
    assert data["faces_by_dimension"]["0"] == 120
    assert data["faces_by_dimension"]["4"] == 1
    assert result.vertices == 120


def test_unknown_format_is_rejected(tessellations, tmp_path):
    with pytest.raises(ValueError):
        export_mesh(tessellations(2), "stl", tmp_path / "x.stl")


def test_read_off_rejects_other_files(tmp_path):
    path = tmp_path / "bad.off"
    path.write_text("PLY\n", encoding="utf-8")
    with pytest.raises(ValueError):
        read_off(path)
