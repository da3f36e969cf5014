import math
from collections import Counter
from fractions import Fraction

import pytest
import sympy

from src.geometry.permutohedron import (
    BOUNDARY,
    Division,
    LatticeVector,
    barycenter,
    build_permutohedron,
    cell_volume,
    cells_containing,
    codim2_neighbors,
    ell,
    face_of_division,
    facet_to_wedge,
    from_lambda_coordinates,
    lattice_covolume,
    locate_tile,
    neighbor_translation,
    ordered_divisions,
    point_location,
    random_torus_points,
    torus_residue,
    vertices_on_face,
)
from src.mirror.beilinson import WedgeMonomial


def three_block_count(size: int) -> int:
    return 3**size - 3 * 2**size + 3


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_face_counts(n):
    p = build_permutohedron(n)
    assert len(p.vertices) == math.factorial(n + 1)
    assert len(p.facets) == 2 ** (n + 1) - 2
    assert len(p.codim2) == (three_block_count(n + 1) if n >= 2 else 0)
    assert len(p.faces(0)) == len(p.vertices)
    assert p.faces(n) == [Division.of(range(1, n + 2))]


def test_division_validation():
    with pytest.raises(ValueError):
        Division.of({1}, {3})
    with pytest.raises(ValueError):
        Division.of({1, 2}, {2, 3})
    with pytest.raises(ValueError):
        Division.of({1, 2}, ())
    d = Division.of({2}, {1, 3})
    assert d.dimension == 1
    assert str(d) == "{2}|{1,3}"


def test_face_relation():
    vertex = Division.of({1}, {2}, {3})
    assert vertex.is_face_of(Division.of({1, 2}, {3}))
    assert vertex.is_face_of(Division.of({1}, {2, 3}))
    assert not vertex.is_face_of(Division.of({1, 3}, {2}))
    assert vertex.merged(0) == Division.of({1, 2}, {3})


def test_ordered_divisions_are_sorted_and_complete():
    facets = ordered_divisions(3, 2)
    assert len(facets) == 6
    assert facets == sorted(facets, key=Division.sort_key)


def test_vertices_and_barycenters():
    facet = Division.of({1}, {2, 3})
    assert vertices_on_face(facet) == [(1, 2, 3), (1, 3, 2)]
    assert barycenter(facet) == (Fraction(1), Fraction(5, 2), Fraction(5, 2))
    p = build_permutohedron(2)
    assert all(p.on_facet(v, facet) for v in vertices_on_face(facet))
    assert p.contains(barycenter(Division.of({1, 2, 3})), strict=True)
    assert p.contains((1, 2, 3))
    assert not p.contains((1, 2, 3), strict=True)
    assert not p.contains((0, 3, 3))


def test_facet_wedge_and_translation():
    facet = Division.of({1}, {2, 3})
    assert facet_to_wedge(facet) == WedgeMonomial((2, 3))
    assert neighbor_translation(facet) == ell(2, 2) + ell(2, 3)
    with pytest.raises(ValueError):
        facet_to_wedge(Division.of({1}, {2}, {3}))


def test_lattice_vectors():
    assert ell(2, 3).coordinates == (-1, -1, 2)
    assert sum((ell(3, i) for i in range(1, 5)), LatticeVector.zero(3)) == LatticeVector.zero(3)
    with pytest.raises(ValueError):
        LatticeVector((1, 0, -1))
    g = from_lambda_coordinates(2, (1, -1))
    assert g.in_sublattice()
    assert g.lambda_coordinates == (1, -1)
    assert not ell(2, 1).in_sublattice()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cells_are_the_residues_of_l_n_plus_one(n, tessellations):
    t = tessellations(n)
    assert len(t.cells) == n + 1
    for i in range(1, n + 2):
        assert torus_residue((i - 1) * ell(n, n + 1)) == i - 1
        assert t.cell_of_tile(t.tile(i, (1,) * n)) == i


@pytest.mark.parametrize("n", [2, 3])
def test_crossing_a_facet_lands_in_the_neighbor_tile(n, tessellations):
    t = tessellations(n)
    center = t.center
    for facet in t.polytope.facets:
        b = barycenter(facet)
        beyond = tuple(x + (x - c) / 100 for x, c in zip(b, center))
        assert locate_tile(beyond, n) == neighbor_translation(facet)
        assert point_location(b, t) is BOUNDARY


@pytest.mark.parametrize("n", [2, 3])
def test_codim2_stars_close_up(n):
    for e in build_permutohedron(n).codim2:
        star = codim2_neighbors(e)
        second, first, union = star.composition
        assert union == second | first
        assert star.tiles[1] + neighbor_translation(star.facets[1]) == star.tiles[2]
        assert neighbor_translation(star.facets[2]) == star.tiles[2]


def test_point_location(tessellations):
    t = tessellations(2)
    assert point_location(t.center, t) == 1
    shifted = ell(2, 3).translate(t.center)
    assert point_location(shifted, t) == 2
    assert cells_containing(shifted, t) == [2]
    with pytest.raises(ValueError):
        point_location((Fraction(1), Fraction(1), Fraction(1)), t)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_volume_matches_covolume(n):
    assert cell_volume(n) == (n + 1) ** (n - 1)
    assert lattice_covolume(n) == (n + 1) ** n
    assert (n + 1) * cell_volume(n) == lattice_covolume(n)


def sample_tiling(t, count: int, seed: int) -> Counter:
    hits: Counter = Counter()
    for p in random_torus_points(t.n, count, seed=seed):
        inside = cells_containing(p, t)
        assert len(inside) <= 1
        hits[inside[0] if inside else BOUNDARY] += 1
    return hits


@pytest.mark.parametrize("n", [2, 3])
def test_sampled_points_lie_in_exactly_one_cell(n, tessellations):
    hits = sample_tiling(tessellations(n), 2000, seed=3)
    assert set(hits) - {BOUNDARY} == set(range(1, n + 2))


@pytest.mark.slow
@pytest.mark.parametrize("n", [2, 3, 4])
def test_tiling_at_full_sample_size(n, tessellations):
    count = 100_000
    hits = sample_tiling(tessellations(n), count, seed=0)
    assert hits[BOUNDARY] < count // 1000
    for i in range(1, n + 2):
        assert abs(hits[i] / count - 1 / (n + 1)) < 0.02


@pytest.mark.parametrize("n", [2, 3])
def test_supporting_equalities_cut_out_each_face(n):
    vertices = build_permutohedron(n).vertices
    for length in range(1, n + 2):
        for div in ordered_divisions(n + 1, length):
            equalities = face_of_division(div)
            assert len(equalities) == length - 1
            on_face = []
            for v in vertices:
                sums = [(sum(v[k - 1] for k in prefix), value) for prefix, value in equalities]
                assert all(s >= value for s, value in sums)
                if all(s == value for s, value in sums):
                    on_face.append(v)
            assert sorted(on_face) == vertices_on_face(div)
            base = on_face[0]
            rank = sympy.Matrix([[a - b for a, b in zip(v, base)] for v in on_face]).rank()
            assert rank == div.dimension
