"""
Mesh export of the permutohedral tiling: OFF/OBJ polygon soups for n = 2, 3
and a face-lattice JSON for any n.

Vertex coordinates are derived data: the exact lattice points are projected
to R^n by an orthonormal basis of the hyperplane sum x = const and written
as floats. Incidence comes from Divisions, never from the floats.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from src.errors import UnsupportedDimension
from src.geometry.coamoeba import cover_object_id, object_id
from src.geometry.permutohedron import (
    Division,
    LatticeVector,
    TorusTessellation,
    ordered_divisions,
    vertices_on_face,
)

LOGGER = logging.getLogger(__name__)

MESH_FORMATS = ("off", "obj")
FORMATS = MESH_FORMATS + ("json",)


@dataclass(frozen=True)
class MeshSummary:
    """Counts per cell, plus the number of cells written."""

    cells: int
    facets: int
    edges: int
    vertices: int

    def __str__(self) -> str:
        return f"cells={self.cells} facets={self.facets} edges={self.edges} vertices={self.vertices}"


@dataclass
class Mesh:
    """Polygon soup grouped by cell; faces index into vertices (0-based)."""

    vertices: np.ndarray
    faces: list[list[int]]
    groups: list[tuple[str, int, int]]  # (tag, first face, end face)


def hyperplane_basis(n: int) -> np.ndarray:
    """(n+1) x n orthonormal basis of {sum x = 0}."""
    spanning = np.zeros((n + 1, n))
    for k in range(n):
        spanning[k, k] = 1.0
        spanning[n, k] = -1.0
    q, _ = np.linalg.qr(spanning)
    return q


def _order_by_angle(points: np.ndarray) -> np.ndarray:
    """Cyclic order of coplanar points around their centroid."""
    centered = points - points.mean(axis=0)
    _, _, vt = np.linalg.svd(centered)
    u, v = centered @ vt[0], centered @ vt[1]
    return np.argsort((np.arctan2(v, u) + 2 * np.pi) % (2 * np.pi))


def _polygons(n: int) -> list[Division]:
    """2-dimensional faces of the permutohedron."""
    return ordered_divisions(n + 1, n - 1)


def cell_mesh(t: TorusTessellation, tiles: Sequence[tuple[str, LatticeVector]]) -> Mesh:
    n = t.n
    if n not in (2, 3):
        raise UnsupportedDimension(f"Geometric export supports n = 2, 3, got n={n}; use the json format")
    basis = hyperplane_basis(n)
    center = np.array([float(c) for c in t.center])
    polygons = _polygons(n)
    vertices: list[np.ndarray] = []
    faces: list[list[int]] = []
    groups: list[tuple[str, int, int]] = []
    for tag, tile in tiles:
        index: dict[tuple, int] = {}
        first = len(faces)
        offset = np.array(tile.coordinates, dtype=float)
        for face in polygons:
            corners = vertices_on_face(face)
            ids = []
            for corner in corners:
                if corner not in index:
                    index[corner] = len(vertices)
                    projected = (np.array(corner, dtype=float) + offset - center) @ basis
                    vertices.append(np.pad(projected, (0, 3 - n)))
                ids.append(index[corner])
            ordered = _order_by_angle(np.array([vertices[k] for k in ids]))
            faces.append([ids[k] for k in ordered])
        groups.append((tag, first, len(faces)))
    return Mesh(np.array(vertices), faces, groups)


def summary(t: TorusTessellation, cells: int | None = None) -> MeshSummary:
    n = t.n
    size = n + 1
    return MeshSummary(
        cells=cells if cells is not None else len(t.cells),
        facets=len(t.polytope.facets),
        edges=len(ordered_divisions(size, n)),
        vertices=len(t.polytope.vertices),
    )


def fundamental_tiles(t: TorusTessellation) -> list[tuple[str, LatticeVector]]:
    return [(object_id(i), tile) for i, tile in enumerate(t.cells, start=1)]


def cover_patch_tiles(t: TorusTessellation, radius: int = 1) -> list[tuple[str, LatticeVector]]:
    """Tiles (i, lam) with lam in the box [-radius, radius]^n: a patch of the universal cover."""
    tiles = []
    for lam in itertools.product(range(-radius, radius + 1), repeat=t.n):
        for i in range(1, t.n + 2):
            tiles.append((cover_object_id(i, lam), t.tile(i, lam)))
    return tiles


def write_obj(path: Path, mesh: Mesh, comment: str = "") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# obj export\n")
        if comment:
            fh.write(f"# {comment}\n")
        for vertex in mesh.vertices:
            fh.write("v %0.6f %0.6f %0.6f\n" % tuple(vertex))
        for tag, first, end in mesh.groups:
            fh.write(f"o {tag}\n")
            for face in mesh.faces[first:end]:
                fh.write("f " + " ".join(str(k + 1) for k in face) + "\n")


def write_off(path: Path, mesh: Mesh) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("OFF\n")
        fh.write(f"{len(mesh.vertices)} {len(mesh.faces)} 0\n")
        for vertex in mesh.vertices:
            fh.write("%0.6f %0.6f %0.6f\n" % tuple(vertex))
        for face in mesh.faces:
            fh.write(f"{len(face)} " + " ".join(map(str, face)) + "\n")


def read_off(path: Path) -> tuple[np.ndarray, list[list[int]]]:
    with open(path, encoding="utf-8") as fh:
        if fh.readline().strip() != "OFF":
            raise ValueError(f"{path} is not an OFF file")
        n_vertices, n_faces, _ = (int(s) for s in fh.readline().split())
        vertices = np.asarray([[float(s) for s in fh.readline().split()] for _ in range(n_vertices)])
        faces = [[int(s) for s in fh.readline().split()][1:] for _ in range(n_faces)]
    return vertices, faces


def export_mesh(t: TorusTessellation, fmt: str, path: Path, cover_patch: int | None = None) -> MeshSummary:
    """
    Write the tiling to path. cover_patch=r exports the cover tiles with
    lam in [-r, r]^n instead of the n+1 fundamental cells.
    """
    if fmt not in FORMATS:
        raise ValueError(f"Unknown format {fmt!r}; expected one of {FORMATS}")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        from src.serialization import face_lattice_dump, write_json

        write_json(path, face_lattice_dump(t))
        result = summary(t)
    else:
        tiles = cover_patch_tiles(t, cover_patch) if cover_patch is not None else fundamental_tiles(t)
        mesh = cell_mesh(t, tiles)
        if fmt == "obj":
            write_obj(path, mesh, comment=f"permutohedral tiling n={t.n}")
        else:
            write_off(path, mesh)
        result = summary(t, cells=len(tiles))
    LOGGER.info("Wrote %s (%s)", path, result)
    return result
