"""
Permutohedron of order n+1, its face lattice and the permutohedral tiling of the torus.

Points live in the ambient integer lattice Z^{n+1}, on the hyperplane
H = {sum x = 1 + 2 + ... + (n+1)}. Faces are indexed by ordered set divisions
B_1 | ... | B_m of {1, ..., n+1}: the face where the coordinates in B_1 take
the smallest values, those in B_2 the next smallest, and so on.
"""
from __future__ import annotations

import enum
import itertools
import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from src.algebra.exactlinalg import RationalMatrix, determinant
from src.mirror.beilinson import WedgeMonomial

LOGGER = logging.getLogger(__name__)

Point = tuple[Fraction, ...]


def triangular(k: int) -> int:
    return k * (k + 1) // 2


# --- divisions ------------------------------------------------------------------


@dataclass(frozen=True)
class Division:
    """Ordered division of {1, ..., size} into nonempty disjoint blocks."""

    blocks: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(frozenset(b) for b in self.blocks))
        if any(not b for b in self.blocks):
            raise ValueError("Division blocks must be nonempty")
        union: set[int] = set()
        for b in self.blocks:
            if union & b:
                raise ValueError(f"Division blocks overlap: {self}")
            union |= b
        if union != set(range(1, len(union) + 1)):
            raise ValueError(f"Division blocks must cover 1..{len(union)}, got {sorted(union)}")

    @classmethod
    def of(cls, *blocks: Iterable[int]) -> "Division":
        return cls(tuple(frozenset(b) for b in blocks))

    @property
    def size(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def length(self) -> int:
        return len(self.blocks)

    @property
    def dimension(self) -> int:
        """Dimension of the face it indexes."""
        return self.size - self.length

    def sort_key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(b)) for b in self.blocks)

    def merged(self, r: int) -> "Division":
        """Merge blocks r and r+1 (0-based): the next face up in the lattice."""
        if not 0 <= r < self.length - 1:
            raise IndexError(f"Cannot merge block {r} of a {self.length}-block division")
        blocks = self.blocks[:r] + (self.blocks[r] | self.blocks[r + 1],) + self.blocks[r + 2 :]
        return Division(blocks)

    def is_face_of(self, other: "Division") -> bool:
        """True when other is obtained from self by merging adjacent blocks."""
        if self.size != other.size:
            return False
        k = 0
        for big in other.blocks:
            acc: frozenset[int] = frozenset()
            while k < self.length and acc < big:
                acc |= self.blocks[k]
                k += 1
            if acc != big:
                return False
        return k == self.length

    def __str__(self) -> str:
        return "|".join("{" + ",".join(map(str, sorted(b))) + "}" for b in self.blocks)


def ordered_divisions(size: int, length: int) -> list[Division]:
    """All ordered divisions of {1..size} into exactly `length` blocks, sorted."""
    out = []
    for labels in itertools.product(range(length), repeat=size):
        if len(set(labels)) != length:
            continue
        blocks = [set() for _ in range(length)]
        for element, label in enumerate(labels, start=1):
            blocks[label].add(element)
        out.append(Division(tuple(frozenset(b) for b in blocks)))
    return sorted(out, key=Division.sort_key)


def face_of_division(div: Division) -> list[tuple[frozenset[int], int]]:
    """Supporting equalities sum_{U} x = 1 + ... + |U| for the prefix unions U."""
    equalities = []
    prefix: frozenset[int] = frozenset()
    for block in div.blocks[:-1]:
        prefix |= block
        equalities.append((prefix, triangular(len(prefix))))
    return equalities


def vertices_on_face(div: Division) -> list[tuple[int, ...]]:
    """Vertices of the face: block r takes the values s_{r-1}+1 .. s_r in every order."""
    per_block = []
    start = 1
    for block in div.blocks:
        values = range(start, start + len(block))
        per_block.append([dict(zip(sorted(block), p)) for p in itertools.permutations(values)])
        start += len(block)
    vertices = []
    for choice in itertools.product(*per_block):
        assignment: dict[int, int] = {}
        for part in choice:
            assignment.update(part)
        vertices.append(tuple(assignment[k] for k in range(1, div.size + 1)))
    return sorted(vertices)


def barycenter(div: Division) -> Point:
    """Coordinates in block r equal (s_{r-1} + s_r + 1) / 2, s_r the running block sizes."""
    coords: dict[int, Fraction] = {}
    before = 0
    for block in div.blocks:
        after = before + len(block)
        value = Fraction(before + after + 1, 2)
        for k in block:
            coords[k] = value
        before = after
    return tuple(coords[k] for k in range(1, div.size + 1))


def facet_to_wedge(f: Division) -> WedgeMonomial:
    if f.length != 2:
        raise ValueError(f"Expected a facet (2 blocks), got {f}")
    return WedgeMonomial.of(f.blocks[1])


# --- the polytope ------------------------------------------------------------------


@dataclass(frozen=True)
class Permutohedron:
    n: int
    vertices: tuple[tuple[int, ...], ...]
    facets: tuple[Division, ...]
    codim2: tuple[Division, ...]

    @property
    def size(self) -> int:
        return self.n + 1

    def faces(self, dim: int) -> list[Division]:
        if not 0 <= dim <= self.n:
            raise ValueError(f"Face dimension must lie in 0..{self.n}, got {dim}")
        return ordered_divisions(self.size, self.size - dim)

    def contains(self, x: Sequence[int | Fraction], strict: bool = False) -> bool:
        return _in_permutohedron(x, strict)

    def on_facet(self, vertex: Sequence[int], f: Division) -> bool:
        return sum(vertex[k - 1] for k in f.blocks[0]) == triangular(len(f.blocks[0]))


def build_permutohedron(n: int) -> Permutohedron:
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    size = n + 1
    vertices = tuple(sorted(itertools.permutations(range(1, size + 1))))
    facets = tuple(ordered_divisions(size, 2))
    codim2 = tuple(ordered_divisions(size, 3)) if size >= 3 else ()
    LOGGER.debug("permutohedron n=%d: %d vertices, %d facets, %d codim-2 faces", n, len(vertices), len(facets), len(codim2))
    return Permutohedron(n, vertices, facets, codim2)


def _in_permutohedron(x: Sequence[int | Fraction], strict: bool) -> bool:
    """sum of the k smallest coordinates >= 1 + ... + k, strict for proper subsets."""
    size = len(x)
    if sum(x) != triangular(size):
        return False
    running = 0
    for k, value in enumerate(sorted(x), start=1):
        running += value
        if k == size:
            break
        bound = triangular(k)
        if running < bound or (strict and running == bound):
            return False
    return True


# --- lattices ---------------------------------------------------------------------


@dataclass(frozen=True)
class LatticeVector:
    """Point of L = {x in Z^{n+1} : sum x = 0, all x_k congruent mod n+1}."""

    coordinates: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coordinates", tuple(int(c) for c in self.coordinates))
        size = len(self.coordinates)
        if sum(self.coordinates) != 0:
            raise ValueError(f"Lattice vector must sum to zero, got {self.coordinates}")
        if any((c - self.coordinates[0]) % size for c in self.coordinates):
            raise ValueError(f"Coordinates of {self.coordinates} are not congruent mod {size}")

    @classmethod
    def zero(cls, n: int) -> "LatticeVector":
        return cls((0,) * (n + 1))

    @property
    def n(self) -> int:
        return len(self.coordinates) - 1

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(tuple(a + b for a, b in zip(self.coordinates, other.coordinates, strict=True)))

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(tuple(a - b for a, b in zip(self.coordinates, other.coordinates, strict=True)))

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(tuple(-a for a in self.coordinates))

    def __mul__(self, k: int) -> "LatticeVector":
        return LatticeVector(tuple(k * a for a in self.coordinates))

    __rmul__ = __mul__

    @property
    def ell_coefficients(self) -> tuple[int, ...]:
        """Coefficients c with x = sum c_i l_i, normalized by c_{n+1} = 0."""
        size = len(self.coordinates)
        last = self.coordinates[-1]
        return tuple((x - last) // size for x in self.coordinates)

    def in_sublattice(self) -> bool:
        """Membership in Lambda: every coordinate divisible by n+1."""
        size = len(self.coordinates)
        return all(c % size == 0 for c in self.coordinates)

    @property
    def lambda_coordinates(self) -> tuple[int, ...]:
        """Coordinates in the basis g_k = l_k - l_{n+1}, k = 1..n."""
        if not self.in_sublattice():
            raise ValueError(f"{self.coordinates} is not in the sublattice")
        size = len(self.coordinates)
        return tuple(c // size for c in self.coordinates[:-1])

    def translate(self, x: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
        return tuple(Fraction(a) + b for a, b in zip(x, self.coordinates, strict=True))


def ell(n: int, i: int) -> LatticeVector:
    """l_i = (n+1) e_i - (e_1 + ... + e_{n+1})."""
    if not 1 <= i <= n + 1:
        raise ValueError(f"l_{i} is undefined for n={n}")
    return LatticeVector(tuple((n + 1 if k == i else 0) - 1 for k in range(1, n + 2)))


def lattice_vector(n: int, subset: Iterable[int]) -> LatticeVector:
    total = LatticeVector.zero(n)
    for i in subset:
        total = total + ell(n, i)
    return total


def lambda_generator(n: int, k: int) -> LatticeVector:
    """g_k = l_k + (l_1 + ... + l_n) = l_k - l_{n+1}."""
    return ell(n, k) - ell(n, n + 1)


def from_lambda_coordinates(n: int, coords: Sequence[int]) -> LatticeVector:
    if len(coords) != n:
        raise ValueError(f"Expected {n} sublattice coordinates, got {len(coords)}")
    total = LatticeVector.zero(n)
    for k, c in enumerate(coords, start=1):
        total = total + c * lambda_generator(n, k)
    return total


def neighbor_translation(f: Division) -> LatticeVector:
    """The tile across facet B_1 | B_2 is the translate by sum_{i in B_2} l_i."""
    if f.length != 2:
        raise ValueError(f"Expected a facet (2 blocks), got {f}")
    return lattice_vector(f.size - 1, f.blocks[1])


def torus_residue(t: LatticeVector) -> int:
    """Class of t in L / Lambda = Z/(n+1), normalized so that (i-1) l_{n+1} maps to i-1."""
    size = len(t.coordinates)
    return (-t.coordinates[0]) % size


@dataclass(frozen=True)
class CodimTwoStar:
    """
    The three tiles around the codim-2 face B_1|B_2|B_3 of the base tile.

    facets[0] = (B_1 u B_2 | B_3) leaves the base tile for the tile at l(B_3);
    facets[1] = (B_3 u B_1 | B_2) leaves that tile for the tile at l(B_2 u B_3);
    facets[2] = (B_1 | B_2 u B_3) leaves the base tile for the same tile.
    """

    face: Division
    tiles: tuple[LatticeVector, LatticeVector, LatticeVector]
    facets: tuple[Division, Division, Division]

    @property
    def composition(self) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
        """(B_2, B_2', B_2'') with B_2'' = B_2 u B_2'."""
        return self.facets[0].blocks[1], self.facets[1].blocks[1], self.facets[2].blocks[1]


def codim2_neighbors(e: Division) -> CodimTwoStar:
    if e.length != 3:
        raise ValueError(f"Expected a codim-2 face (3 blocks), got {e}")
    b1, b2, b3 = e.blocks
    n = e.size - 1
    first = Division((b1 | b2, b3))
    second = Division((b3 | b1, b2))
    third = Division((b1, b2 | b3))
    tiles = (LatticeVector.zero(n), lattice_vector(n, b3), lattice_vector(n, b2 | b3))
    return CodimTwoStar(e, tiles, (first, second, third))


# --- the torus tessellation ------------------------------------------------------------


class Boundary(enum.Enum):
    BOUNDARY = "boundary"


BOUNDARY = Boundary.BOUNDARY


@dataclass(frozen=True)
class TorusTessellation:
    """Cells P_i = P + (i-1) l_{n+1}, i = 1..n+1, modulo Lambda."""

    n: int
    polytope: Permutohedron

    @cached_property
    def cells(self) -> tuple[LatticeVector, ...]:
        return tuple((i - 1) * ell(self.n, self.n + 1) for i in range(1, self.n + 2))

    @cached_property
    def lambda_basis(self) -> tuple[LatticeVector, ...]:
        return tuple(lambda_generator(self.n, k) for k in range(1, self.n + 1))

    @property
    def center(self) -> Point:
        return (Fraction(self.n + 2, 2),) * (self.n + 1)

    def cell_of_tile(self, t: LatticeVector) -> int:
        return torus_residue(t) + 1

    def tile(self, i: int, lam: Sequence[int] = ()) -> LatticeVector:
        """Tile of cell i translated by lam in g-coordinates."""
        offset = from_lambda_coordinates(self.n, lam) if lam else LatticeVector.zero(self.n)
        return self.cells[i - 1] + offset


def build_tessellation(n: int) -> TorusTessellation:
    return TorusTessellation(n, build_permutohedron(n))


def _closest_in_coset(q: Sequence[Fraction], r: int) -> tuple[int, ...]:
    """Closest x = (n+1)y - r*1 to q with y integral and sum y = r."""
    size = len(q)
    target = [(x + r) / size for x in q]
    rounded = [math.floor(y + Fraction(1, 2)) for y in target]
    excess = sum(rounded) - r
    order = sorted(range(size), key=lambda k: target[k] - rounded[k])
    if excess > 0:
        for k in order[:excess]:
            rounded[k] -= 1
    elif excess < 0:
        for k in order[excess:]:
            rounded[k] += 1
    return tuple(size * y - r for y in rounded)


def _centered(p: Sequence[Fraction], n: int) -> list[Fraction]:
    center = Fraction(n + 2, 2)
    return [Fraction(x) - center for x in p]


def locate_tile(p: Sequence[Fraction], n: int) -> LatticeVector:
    """Closest point of L to p - center, exact: one rounding per coset of (n+1)Z^{n+1}."""
    q = _centered(p, n)
    candidates = [_closest_in_coset(q, r) for r in range(n + 1)]
    best = min(candidates, key=lambda x: sum((a - b) ** 2 for a, b in zip(q, x)))
    return LatticeVector(best)


def _on_hyperplane(p: Sequence[Fraction], n: int) -> None:
    if len(p) != n + 1 or sum(p) != triangular(n + 1):
        raise ValueError(f"Point {tuple(map(str, p))} is not on the hyperplane of the order-{n + 1} permutohedron")


def point_location(p: Sequence[Fraction], t: TorusTessellation) -> int | Boundary:
    """Cell whose interior contains p, or BOUNDARY when p lies on a cell boundary."""
    _on_hyperplane(p, t.n)
    tile = locate_tile(p, t.n)
    local = tuple(Fraction(x) - c for x, c in zip(p, tile.coordinates))
    if _in_permutohedron(local, strict=True):
        return t.cell_of_tile(tile)
    return BOUNDARY


def cells_containing(p: Sequence[Fraction], t: TorusTessellation) -> list[int]:
    """
    Every cell whose interior contains p. A tile whose interior contains p is
    the closest lattice point overall, so one candidate per coset suffices.
    """
    _on_hyperplane(p, t.n)
    q = _centered(p, t.n)
    found = []
    for r in range(t.n + 1):
        tile = LatticeVector(_closest_in_coset(q, r))
        local = tuple(Fraction(x) - c for x, c in zip(p, tile.coordinates))
        if _in_permutohedron(local, strict=True):
            found.append(t.cell_of_tile(tile))
    return found


def random_torus_points(n: int, count: int, seed: int = 0, denominator: int = 10**6) -> Iterator[Point]:
    """Uniform rational points of the fundamental parallelepiped of Lambda around the center."""
    rng = random.Random(seed)
    basis = [lambda_generator(n, k).coordinates for k in range(1, n + 1)]
    center = Fraction(n + 2, 2)
    for _ in range(count):
        s = [Fraction(rng.randrange(denominator), denominator) for _ in range(n)]
        yield tuple(center + sum(sk * g[j] for sk, g in zip(s, basis)) for j in range(n + 1))


# --- volumes -------------------------------------------------------------------------


def _projected(x: Sequence[Fraction]) -> list[Fraction]:
    return list(x[:-1])


def _flags(div: Division) -> Iterator[list[Division]]:
    """Chains of faces from div up to the whole polytope, merging adjacent blocks."""
    if div.length == 1:
        yield [div]
        return
    for r in range(div.length - 1):
        for chain in _flags(div.merged(r)):
            yield [div] + chain


def cell_volume(n: int) -> Fraction:
    """
    Volume of one cell in the coordinates (x_1, ..., x_n), by barycentric
    subdivision over complete face flags. Equals (n+1)^{n-1}.
    """
    total = Fraction(0)
    simplices = 0
    for perm in itertools.permutations(range(1, n + 2)):
        vertex = Division(tuple(frozenset({k}) for k in perm))
        for chain in _flags(vertex):
            points = [_projected(barycenter(d)) for d in chain]
            base = points[0]
            rows = [[a - b for a, b in zip(pt, base)] for pt in points[1:]]
            total += abs(determinant(RationalMatrix.from_rows(rows, cols=n)))
            simplices += 1
    LOGGER.debug("cell volume n=%d from %d simplices", n, simplices)
    return total / math.factorial(n)


def lattice_covolume(n: int) -> Fraction:
    """Covolume of Lambda in the same projected coordinates."""
    rows = [[Fraction(c) for c in lambda_generator(n, k).coordinates[:-1]] for k in range(1, n + 1)]
    return abs(determinant(RationalMatrix.from_rows(rows, cols=n)))
