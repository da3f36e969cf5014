"""
Tropical coamoeba of the mirror of P^n and its A-infinity categories.

The tessellation is the permutohedral tiling of the torus. A facet B_1 | B_2
of a tile leads to the tile translated by l(B_2) and carries degree |B_2|;
since every l_k has torus residue 1, it joins cell P_i to cell P_{i+|B_2|}.
Morphisms are therefore indexed by the subset S = B_2, and a codimension-two
face B_1 | B_2 | B_3 of P_i composes S = B_3 (P_i -> P_j) with S = B_2
(P_j -> P_k) into S = B_2 u B_3.

Cover objects are pairs (i, lam), lam in Lambda written in the basis
g_k = l_k - l_{n+1}; the tile of (i, lam) is (i-1) l_{n+1} + lam.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from src.algebra.ainfinity import AInfCategory, CategoryBuilder, Morphism, check_a_infinity
from src.algebra.exactlinalg import RationalMatrix, determinant
from src.errors import NotFiniteIndex, SignInconsistency
from src.geometry.permutohedron import (
    Division,
    TorusTessellation,
    build_tessellation,
    codim2_neighbors,
    facet_to_wedge,
)
from src.mirror.beilinson import Character, WedgeMonomial, wedge_product

LOGGER = logging.getLogger(__name__)

LambdaCoords = tuple[int, ...]


@dataclass(frozen=True)
class TropicalCoamoeba:
    tessellation: TorusTessellation
    deg: dict[Division, int]
    sgn: dict[Division, int]

    @property
    def n(self) -> int:
        return self.tessellation.n


def _sign(face: Division) -> int:
    """
    sgn(e) for e = B_1 | B_2 | B_3, from
    wedge(B_2 u B_3) = sgn(e) (-1)^{|B_3|} wedge(B_2) ^ wedge(B_3).
    """
    _, b2, b3 = face.blocks
    product = wedge_product(WedgeMonomial.of(b2), WedgeMonomial.of(b3))
    assert product is not None
    parity, _ = product
    return parity * (-1) ** (len(b3) % 2)


def build_coamoeba(n: int) -> TropicalCoamoeba:
    tessellation = build_tessellation(n)
    polytope = tessellation.polytope
    deg = {f: len(f.blocks[1]) for f in polytope.facets}
    sgn = {e: _sign(e) for e in polytope.codim2}
    for e in polytope.codim2:
        star = codim2_neighbors(e)
        first, second, coarse = star.facets
        if deg[coarse] != deg[first] + deg[second]:
            raise SignInconsistency(f"Degrees do not add up at codim-2 face {e}")
        u = facet_to_wedge(second)
        v = facet_to_wedge(first)
        w = facet_to_wedge(coarse)
        product = wedge_product(u, v)
        if product is None or product[1] != w:
            raise SignInconsistency(f"Facet monomials at {e} do not compose")
        if product[0] != sgn[e] * (-1) ** (deg[first] % 2):
            raise SignInconsistency(f"Sign formula fails at codim-2 face {e}")
    LOGGER.debug("coamoeba n=%d: %d facets, %d codim-2 faces", n, len(deg), len(sgn))
    return TropicalCoamoeba(tessellation, deg, sgn)


def _subsets(n: int) -> list[frozenset[int]]:
    """Proper nonempty subsets of {1..n+1}, by size then lexicographically."""
    out = []
    for k in range(1, n + 1):
        out.extend(frozenset(c) for c in itertools.combinations(range(1, n + 2), k))
    return out


def _facet(n: int, s: frozenset[int]) -> Division:
    return Division((frozenset(range(1, n + 2)) - s, s))


def _compositions(n: int) -> Iterator[tuple[frozenset[int], frozenset[int], Division]]:
    """(B_2, B_3, face) for every codim-2 face B_1 | B_2 | B_3."""
    everything = frozenset(range(1, n + 2))
    for b3 in _subsets(n):
        for b2 in _subsets(n):
            if b2 & b3 or (b2 | b3) == everything:
                continue
            yield b2, b3, Division((everything - b2 - b3, b2, b3))


def object_id(i: int) -> str:
    return f"P{i}"


def category_of(g: TropicalCoamoeba) -> AInfCategory:
    """Directed category P_1 < ... < P_{n+1} with m_2 read off the codim-2 faces."""
    n = g.n
    builder = CategoryBuilder()
    for i in range(1, n + 2):
        builder.add_object(object_id(i))
    for i in range(1, n + 2):
        for s in _subsets(n):
            j = i + len(s)
            if j <= n + 1:
                builder.add_morphism(object_id(i), object_id(j), facet_to_wedge(_facet(n, s)).name, g.deg[_facet(n, s)])
    for b2, b3, face in _compositions(n):
        for i in range(1, n + 2):
            j = i + len(b3)
            k = j + len(b2)
            if k > n + 1:
                continue
            builder.add_op(
                (
                    Morphism(object_id(j), object_id(k), WedgeMonomial.of(b2).name),
                    Morphism(object_id(i), object_id(j), WedgeMonomial.of(b3).name),
                ),
                Morphism(object_id(i), object_id(k), WedgeMonomial.of(b2 | b3).name),
                g.sgn[face],
            )
    cat = builder.build()
    violations = check_a_infinity(cat, max_arity=4)
    if violations:
        raise SignInconsistency(f"{len(violations)} A-infinity relation(s) fail, first on {violations[0].inputs}")
    return cat


# --- characters ----------------------------------------------------------------------


def _g_character(n: int, k: int) -> Character:
    if k == 1:
        return Character.unit(n, n)
    return Character.unit(n, n) - Character.unit(n, k - 1)


def character_of(i: int, lam: Sequence[int]) -> Character:
    """chi(lam) - (i-1) unit_n, with chi(g_1) = unit_n and chi(g_k) = unit_n - unit_{k-1}."""
    n = len(lam)
    total = Character.zero(n)
    for k, c in enumerate(lam, start=1):
        total = total + c * _g_character(n, k)
    return total - (i - 1) * Character.unit(n, n)


def lambda_from_character(i: int, chi: Character) -> LambdaCoords:
    """Inverse of character_of for fixed i."""
    n = chi.rank
    c = (chi + (i - 1) * Character.unit(n, n)).weight
    lam = [0] * n
    for k in range(2, n + 1):
        lam[k - 1] = -c[k - 2]
    lam[0] = sum(c)
    return tuple(lam)


def one_parameter_label(i: int, lam: Sequence[int]) -> int:
    """Last coordinate of the character: the lift index for the C^* carrying e_{n+1}."""
    return character_of(i, lam).weight[-1]


def facet_shift(n: int, s: Iterable[int]) -> LambdaCoords:
    """lam-change across the facet with B_2 = s: one unit for each k <= n in s."""
    members = set(s)
    return tuple(1 if k in members else 0 for k in range(1, n + 1))


def _add(a: Sequence[int], b: Sequence[int]) -> LambdaCoords:
    return tuple(x + y for x, y in zip(a, b, strict=True))


# --- the universal cover ---------------------------------------------------------------


def cover_object_id(i: int, lam: Sequence[int]) -> str:
    return f"P{i}@{','.join(map(str, lam))}"


def parse_cover_object(obj: str) -> tuple[int, LambdaCoords]:
    cell, _, coords = obj.partition("@")
    return int(cell[1:]), tuple(int(c) for c in coords.split(",")) if coords else ()


@dataclass(frozen=True)
class CoverWindow:
    """Finite set of cover objects (i, lam)."""

    n: int
    objects: tuple[tuple[int, LambdaCoords], ...]
    radius: int | None = None
    _members: frozenset = field(default=frozenset(), init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_members", frozenset(self.objects))

    @classmethod
    def around_origin(cls, n: int, radius: int = 1) -> "CoverWindow":
        """All cells with every g-coordinate of lam in [-radius, radius]."""
        if radius < 0:
            raise ValueError(f"Window radius must be non-negative, got {radius}")
        box = itertools.product(range(-radius, radius + 1), repeat=n)
        objects = tuple((i, lam) for lam in box for i in range(1, n + 2))
        return cls(n, objects, radius)

    def __contains__(self, item: tuple[int, LambdaCoords]) -> bool:
        return item in self._members

    def character(self, i: int, lam: Sequence[int]) -> Character:
        return character_of(i, lam)


Step = Callable[[int, LambdaCoords, frozenset[int]], "LambdaCoords | None"]


def _build_cover(
    g: TropicalCoamoeba,
    objects: Sequence[tuple[int, LambdaCoords]],
    step: Step,
    name: Callable[[int, LambdaCoords], str],
) -> AInfCategory:
    """
    Shared cover/quotient construction. step(i, lam, s) is the label of the
    object reached from (i, lam) across the facet s, or None when it is not
    an object of the category.
    """
    n = g.n
    builder = CategoryBuilder()
    for i, lam in objects:
        builder.add_object(name(i, lam))
    for i, lam in objects:
        for s in _subsets(n):
            j = i + len(s)
            if j > n + 1:
                continue
            target = step(i, lam, s)
            if target is not None:
                builder.add_morphism(name(i, lam), name(j, target), WedgeMonomial.of(s).name, g.deg[_facet(n, s)])
    for b2, b3, face in _compositions(n):
        for i, lam in objects:
            j = i + len(b3)
            k = j + len(b2)
            if k > n + 1:
                continue
            mid = step(i, lam, b3)
            if mid is None:
                continue
            end = step(j, mid, b2)
            if end is None:
                continue
            a, b, c = name(i, lam), name(j, mid), name(k, end)
            builder.add_op(
                (Morphism(b, c, WedgeMonomial.of(b2).name), Morphism(a, b, WedgeMonomial.of(b3).name)),
                Morphism(a, c, WedgeMonomial.of(b2 | b3).name),
                g.sgn[face],
            )
    return builder.build()


def cover_category(g: TropicalCoamoeba, w: CoverWindow) -> AInfCategory:
    """Restriction of the pulled-back category to the objects of the window."""
    if w.n != g.n:
        raise ValueError(f"Window is for n={w.n}, coamoeba for n={g.n}")

    def step(i: int, lam: LambdaCoords, s: frozenset[int]) -> LambdaCoords | None:
        target = _add(lam, facet_shift(g.n, s))
        return target if (i + len(s), target) in w else None

    cat = _build_cover(g, w.objects, step, cover_object_id)
    LOGGER.debug("cover window n=%d: %d objects, %d morphisms", g.n, len(w.objects), sum(cat.hom_dims().values()))
    return cat


def cover_provenance(m: Morphism) -> dict[str, object]:
    """Facet division and translates behind a cover morphism."""
    i, lam = parse_cover_object(m.source)
    n = len(lam)
    s = WedgeMonomial.parse(m.name).indices
    j, mu = parse_cover_object(m.target)
    return {
        "division": _facet(n, frozenset(s)),
        "source_translate": lam,
        "target_translate": mu,
        "source_character": character_of(i, lam),
        "target_character": character_of(j, mu),
    }


# --- finite quotients ---------------------------------------------------------------------


def _hermite_rows(basis: Sequence[Sequence[int]]) -> list[list[int]]:
    """Upper-triangular row Hermite form of a nonsingular integer basis."""
    rows = [list(map(int, r)) for r in basis]
    size = len(rows)
    for c in range(size):
        while True:
            live = [r for r in range(c, size) if rows[r][c] != 0]
            if not live:
                raise NotFiniteIndex("Sublattice basis is singular")
            pivot = min(live, key=lambda r: abs(rows[r][c]))
            rows[c], rows[pivot] = rows[pivot], rows[c]
            done = True
            for r in range(c + 1, size):
                q = rows[r][c] // rows[c][c]
                if q:
                    rows[r] = [a - q * b for a, b in zip(rows[r], rows[c])]
                if rows[r][c]:
                    done = False
            if done:
                break
        if rows[c][c] < 0:
            rows[c] = [-a for a in rows[c]]
    for c in range(size):
        for r in range(c):
            q = rows[r][c] // rows[c][c]
            if q:
                rows[r] = [a - q * b for a, b in zip(rows[r], rows[c])]
    return rows


@dataclass(frozen=True)
class SublatticeQuotient:
    """Lambda / Lambda' with canonical coset representatives 0 <= v_k < d_k."""

    hermite: tuple[tuple[int, ...], ...]

    @classmethod
    def from_basis(cls, basis: Sequence[Sequence[int]]) -> "SublatticeQuotient":
        size = len(basis)
        if any(len(v) != size for v in basis):
            raise NotFiniteIndex(f"Need {size} vectors of length {size} for a full-rank sublattice")
        det = determinant(RationalMatrix.from_rows([[Fraction(x) for x in v] for v in basis], cols=size))
        if det == 0:
            raise NotFiniteIndex("Sublattice basis is singular; the quotient is infinite")
        return cls(tuple(tuple(r) for r in _hermite_rows(basis)))

    @property
    def index(self) -> int:
        return abs(math.prod(self.hermite[k][k] for k in range(len(self.hermite))))

    def reduce(self, v: Sequence[int]) -> LambdaCoords:
        w = list(v)
        for k, row in enumerate(self.hermite):
            q = w[k] // row[k]
            if q:
                w = [a - q * b for a, b in zip(w, row)]
        return tuple(w)

    def cosets(self) -> list[LambdaCoords]:
        return [tuple(v) for v in itertools.product(*(range(self.hermite[k][k]) for k in range(len(self.hermite))))]


def quotient_object_id(i: int, coset: Sequence[int]) -> str:
    return f"P{i}#{','.join(map(str, coset))}"


def quotient_by_sublattice(g: TropicalCoamoeba, basis: Sequence[Sequence[int]]) -> AInfCategory:
    """
    Category of the quotient of the cover by Lambda' (basis in g-coordinates):
    objects (cell, coset), homs summed over coset representatives.
    """
    if len(basis) != g.n:
        raise NotFiniteIndex(f"Sublattice of Z^{g.n} needs {g.n} basis vectors, got {len(basis)}")
    quotient = SublatticeQuotient.from_basis(basis)
    objects = [(i, coset) for coset in quotient.cosets() for i in range(1, g.n + 2)]

    def step(i: int, lam: LambdaCoords, s: frozenset[int]) -> LambdaCoords:
        return quotient.reduce(_add(lam, facet_shift(g.n, s)))

    cat = _build_cover(g, objects, step, quotient_object_id)
    LOGGER.info("quotient n=%d: index %d, %d objects", g.n, quotient.index, len(objects))
    return cat


def finite_subgroup_sublattice(n: int) -> list[LambdaCoords]:
    """
    Sublattice for [P^n / A], A = (Z/(n+1))^{n-1}: in character coordinates
    spanned by (1, ..., 1) and (n+1) e_k for k = 2..n. Index (n+1)^{n-1}.
    """
    vectors = [Character((1,) * n)] + [(n + 1) * Character.unit(n, k) for k in range(2, n + 1)]
    return [lambda_from_character(1, v) for v in vectors]
