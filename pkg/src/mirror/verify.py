"""
Verification pipeline: the category of vanishing cycles, its cones, and the
comparison with the exterior (Beilinson) category along two routes.

Route 1 (twisted complexes): objects D_i of the delta category, cones
C_a = Cone(id: D_a -> D_{a+n}), hom cohomology, descent over lifts, and the
induced m_2 on cohomology. Route 2 (coamoeba): the category read off the
permutohedral tessellation. Both must agree with the exterior category.
"""
from __future__ import annotations

import hashlib
import logging
import math
import threading
from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from src.algebra.ainfinity import (
    UNIT_NAME,
    AInfCategory,
    CategoryBuilder,
    HomCohomology,
    Morphism,
    check_a_infinity,
)
from src.algebra.exactlinalg import RationalMatrix, cohomology
from src.algebra.twisted import (
    SigmaElement,
    SigmaMorphism,
    TwistedComplex,
    cone,
    from_object,
    hom_cohomology,
    m_tw,
    to_category_element,
)
from src.errors import NotInSubspace, WindowTooSmall
from src.geometry.coamoeba import (
    CoverWindow,
    build_coamoeba,
    category_of,
    character_of,
    cover_object_id,
    cover_category,
    finite_subgroup_sublattice,
    one_parameter_label,
    parse_cover_object,
    quotient_by_sublattice,
)
from src.geometry.permutohedron import (
    build_tessellation,
    cell_volume,
    cells_containing,
    lattice_covolume,
    random_torus_points,
)
from src.mirror.beilinson import (
    WedgeMonomial,
    build_exterior_category,
    equivariant_hom,
    exterior_m2,
    monomials,
    object_id as exterior_id,
    partial_invariants,
    standard_weights,
)

LOGGER = logging.getLogger(__name__)

HEARTBEAT_INTERVAL_SEC = 15


@contextmanager
def heartbeat_while(interval_sec: float, message: str) -> Iterator[None]:
    """Log a heartbeat every interval_sec while the block runs."""
    stop = threading.Event()

    def _run() -> None:
        while not stop.wait(interval_sec):
            LOGGER.info("[heartbeat] %s", message)

    t = threading.Thread(target=_run, daemon=True)
    t.start()
    try:
        yield
    finally:
        stop.set()


# --- the delta category ----------------------------------------------------------------


def delta_id(i: int) -> str:
    return f"D{i}"


def cone_id(a: int) -> str:
    return f"C{a}"


def delta_hom_basis(n: int, a: int, b: int) -> list[WedgeMonomial]:
    """
    hom(D_a, D_b): the unit for a = b; wedge^{(b-a) mod n} of span(e_1..e_n)
    for b > a, with wedge^0 + wedge^n (id and its dual) when n divides b - a.
    """
    if b < a:
        return []
    if b == a:
        return [WedgeMonomial()]
    k = (b - a) % n
    if k:
        return monomials(range(1, n + 1), k)
    return [WedgeMonomial(), WedgeMonomial(tuple(range(1, n + 1)))]


def delta_m2(n: int, a: int, b: int, c: int, second: WedgeMonomial, first: WedgeMonomial) -> tuple[int, WedgeMonomial] | None:
    """m_2(second, first) for first in hom(D_a, D_b), second in hom(D_b, D_c)."""
    product = exterior_m2(second, first)
    if product is None or product[1] not in delta_hom_basis(n, a, c):
        return None
    return product


def delta_morphism(a: int, b: int, mono: WedgeMonomial) -> Morphism:
    return Morphism(delta_id(a), delta_id(b), UNIT_NAME if a == b else mono.name)


def window_for(n: int, radius: int) -> range:
    """D_{-radius} .. D_{n+radius}: room for the cones C_a, |a| <= radius."""
    return range(-radius, n + radius + 1)


def build_delta_category(n: int, window: range) -> AInfCategory:
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if len(window) < 2 * n + 1:
        raise WindowTooSmall(f"Window of {len(window)} objects is shorter than 2n+1 = {2 * n + 1}")
    builder = CategoryBuilder()
    indices = list(window)
    for i in indices:
        builder.add_object(delta_id(i))
    for a in indices:
        for b in indices:
            if b > a:
                for mono in delta_hom_basis(n, a, b):
                    builder.add_morphism(delta_id(a), delta_id(b), mono.name, mono.degree)
    for ia, a in enumerate(indices):
        for ib in range(ia + 1, len(indices)):
            b = indices[ib]
            for c in indices[ib + 1 :]:
                for first in delta_hom_basis(n, a, b):
                    for second in delta_hom_basis(n, b, c):
                        product = delta_m2(n, a, b, c, second, first)
                        if product is None:
                            continue
                        sign, mono = product
                        builder.add_op(
                            (delta_morphism(b, c, second), delta_morphism(a, b, first)),
                            delta_morphism(a, c, mono),
                            sign,
                        )
    cat = builder.build()
    LOGGER.debug("delta category n=%d on %d objects", n, len(indices))
    return cat


# --- cones --------------------------------------------------------------------------------


def build_cones(n: int, window: range, delta: AInfCategory | None = None) -> list[TwistedComplex]:
    """C_a = Cone(id_{a,a+n}: D_a -> D_{a+n}) for every admissible a."""
    delta = delta or build_delta_category(n, window)
    cones = []
    for a in window:
        if a + n not in window:
            continue
        x0 = from_object(delta, delta_id(a))
        x1 = from_object(delta, delta_id(a + n))
        c = {SigmaMorphism(0, 0, 0, 0, Morphism(delta_id(a), delta_id(a + n), WedgeMonomial().name)): Fraction(1)}
        cones.append(cone(delta, x0, x1, c, name=cone_id(a)))
    return cones


@dataclass
class ConeSystem:
    """Cones over one delta category, with cached hom cohomology."""

    n: int
    delta: AInfCategory
    cones: dict[int, TwistedComplex]
    _homs: dict[tuple[int, int], HomCohomology] = field(default_factory=dict, repr=False)

    def hom(self, a: int, b: int) -> HomCohomology:
        if (a, b) not in self._homs:
            self._homs[(a, b)] = hom_cohomology(self.delta, self.cones[a], self.cones[b])
        return self._homs[(a, b)]

    def dims(self, a: int, b: int) -> dict[int, int]:
        return self.hom(a, b).dims()

    def coordinates(self, a: int, b: int, degree: int, element: Mapping[SigmaMorphism, Fraction]) -> tuple[Fraction, ...]:
        cat_element = to_category_element(self.cones[a], self.cones[b], element)
        return self.hom(a, b).coordinates(degree, cat_element)

    def product(self, a: int, b: int, c: int, second: SigmaElement, first: SigmaElement) -> SigmaElement:
        return m_tw(self.delta, [self.cones[a], self.cones[b], self.cones[c]], [second, first])


def build_cone_system(n: int, radius: int | None = None) -> ConeSystem:
    radius = n if radius is None else radius
    window = window_for(n, radius)
    delta = build_delta_category(n, window)
    cones = {int(x.name[1:]): x for x in build_cones(n, window, delta)}
    return ConeSystem(n, delta, cones)


def expected_cone_dims(n: int, k: int) -> dict[int, int]:
    """Closed form of hom cohomology between C_a and C_{a+k} on the cover."""
    if 1 <= k <= n:
        return {k: math.comb(n, k)}
    if -n <= k <= -1:
        return {k + n + 1: math.comb(n, k + n)}
    if k == 0:
        return {0: 1, n + 1: 1}
    return {}


def descended_hom(system: ConeSystem, k: int, a: int = 0) -> dict[int, int]:
    """hom(C_i, C_{i+k}) downstairs: the sum over lifts C_{a+k} and C_{a+k-n-1}."""
    total: dict[int, int] = {}
    for lift in (k, k - system.n - 1):
        if a + lift not in system.cones:
            continue
        for degree, dim in system.dims(a, a + lift).items():
            total[degree] = total.get(degree, 0) + dim
    return dict(sorted(total.items()))


def class_of_monomial(n: int, a: int, mu: WedgeMonomial) -> tuple[int, int, SigmaElement]:
    """
    The cone class standing for mu in wedge V, V = span(e_1..e_{n+1}), as
    (target cone index, degree, cocycle in hom(C_a, C_b)).
    Without e_{n+1}: mu on both diagonal blocks of hom(C_a, C_{a+|mu|}).
    With mu = rho ^ e_{n+1}: (-1)^{|rho|} rho on the off-diagonal block of
    hom(C_a, C_{a+|mu|-n-1}).
    """
    if n + 1 not in mu.indices:
        b = a + mu.degree
        element = {
            SigmaMorphism(0, 0, 1, 1, delta_morphism(a, b, mu)): Fraction(1),
            SigmaMorphism(1, 1, 0, 0, delta_morphism(a + n, b + n, mu)): Fraction(1),
        }
        return b, mu.degree, element
    rho = WedgeMonomial(mu.indices[:-1])
    b = a + mu.degree - n - 1
    sign = Fraction(-1 if rho.degree % 2 else 1)
    element = {SigmaMorphism(0, 1, 1, 0, delta_morphism(a, b + n, rho)): sign}
    return b, mu.degree, element


# --- the oracle -------------------------------------------------------------------------------


def double_complex_oracle(n: int, i: int, j: int) -> dict[int, int]:
    """
    Cohomology dims of hom(C_i, C_j) from the 2x2 square

        hom(D_{i+n}, D_j)[-1] --h--> hom(D_i, D_j)
              |v_L                      |v_R
        hom(D_{i+n}, D_{j+n}) --h--> hom(D_i, D_{j+n})[+1]

    with h(x) = (-1)^{|x|-1} m_2(x, id_{i,i+n}), v_L = -m_2(id_{j,j+n}, .),
    v_R = +m_2(id_{j,j+n}, .), built directly from the wedge formula.
    """
    blocks = {
        "TL": (i + n, j, -1),
        "TR": (i, j, 0),
        "BL": (i + n, j + n, 0),
        "BR": (i, j + n, 1),
    }
    cells: list[tuple[str, WedgeMonomial, int]] = []
    for label, (src, tgt, offset) in blocks.items():
        cells.extend((label, mono, mono.degree + offset) for mono in delta_hom_basis(n, src, tgt))
    index = {(label, mono): k for k, (label, mono, _) in enumerate(cells)}
    unit = WedgeMonomial()
    arrows: dict[tuple[int, int], Fraction] = {}

    def push(source: tuple[str, WedgeMonomial], target_label: str, product: tuple[int, WedgeMonomial] | None, sign: int) -> None:
        if product is None:
            return
        key = (target_label, product[1])
        if key in index:
            pos = (index[key], index[source])
            arrows[pos] = arrows.get(pos, Fraction(0)) + sign * product[0]

    for label, mono, _ in cells:
        src, tgt, _ = blocks[label]
        if label in ("TL", "BL"):
            target = "TR" if label == "TL" else "BR"
            h_sign = -1 if (mono.degree - 1) % 2 else 1
            push((label, mono), target, delta_m2(n, i, i + n, tgt, mono, unit), h_sign)
        if label in ("TL", "TR"):
            target = "BL" if label == "TL" else "BR"
            v_sign = -1 if label == "TL" else 1
            push((label, mono), target, delta_m2(n, src, j, j + n, unit, mono), v_sign)

    degrees = sorted({d for _, _, d in cells})
    by_degree = {d: [k for k, (_, _, dk) in enumerate(cells) if dk == d] for d in degrees}

    def matrix(d: int) -> RationalMatrix:
        cols = by_degree.get(d, [])
        rows = by_degree.get(d + 1, [])
        row_pos = {k: r for r, k in enumerate(rows)}
        col_pos = {k: c for c, k in enumerate(cols)}
        entries = {
            (row_pos[t], col_pos[s]): v for (t, s), v in arrows.items() if s in col_pos and t in row_pos and v
        }
        return RationalMatrix(len(rows), len(cols), entries)

    dims = {}
    for d in degrees:
        h = cohomology(matrix(d - 1), matrix(d), degree=d)
        if h.dimension:
            dims[d] = h.dimension
    return dims


# --- comparison -----------------------------------------------------------------------------


@dataclass(frozen=True)
class Mismatch:
    check: str
    key: str
    expected: str
    actual: str


@dataclass(frozen=True)
class CheckResult:
    name: str
    cases: int
    failures: int

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass(frozen=True)
class HomTable:
    """Per-pair graded dims and a hash of the m_2 constants landing in each pair."""

    dims: dict[tuple[str, str], dict[int, int]]
    fingerprints: dict[tuple[str, str], str]


def hom_table(cat: AInfCategory) -> HomTable:
    dims = {key: space.dims_by_degree() for key, space in cat.homs.items() if space.dim and key[0] != key[1]}
    lines: dict[tuple[str, str], list[str]] = {}
    for inputs, output in cat.ops.items():
        for m, c in output.items():
            pair = (m.source, m.target)
            if pair in dims:
                lines.setdefault(pair, []).append(f"{[x.name for x in inputs]}->{m.name}:{c}")
    fingerprints = {
        pair: hashlib.sha256("\n".join(sorted(lines.get(pair, []))).encode()).hexdigest()[:16] for pair in dims
    }
    return HomTable(dims, fingerprints)


def inject_sign_flip(cat: AInfCategory) -> AInfCategory:
    """Negate the first non-unit m_2 constant: a mutation that verification must catch."""
    units = set(cat.units.values())
    candidates = sorted(
        (k for k in cat.ops if len(k) == 2 and not units.intersection(k)),
        key=lambda k: [(m.source, m.target, m.name) for m in k],
    )
    if not candidates:
        return cat
    key = candidates[0]
    ops = dict(cat.ops)
    ops[key] = {m: -c for m, c in ops[key].items()}
    LOGGER.warning("Injected sign flip on m_2%s", tuple(m.name for m in key))
    return AInfCategory(cat.objects, cat.homs, ops, cat.units)


def _rename(m: Morphism, object_map: Mapping[str, str]) -> Morphism:
    return Morphism(object_map[m.source], object_map[m.target], m.name)


def compare_structure_constants(
    left: AInfCategory, right: AInfCategory, object_map: Mapping[str, str], check: str = "structure_constants"
) -> list[Mismatch]:
    mismatches = []
    renamed = {tuple(_rename(m, object_map) for m in k): {_rename(m, object_map): c for m, c in v.items()} for k, v in left.ops.items()}
    for key in sorted(set(renamed) | set(right.ops), key=str):
        ours, theirs = dict(renamed.get(key, {})), dict(right.ops.get(key, {}))
        if ours != theirs:
            mismatches.append(
                Mismatch(check, f"m_{len(key)}{tuple(m.name for m in key)} on {key[-1].source}->{key[0].target}", _render(theirs), _render(ours))
            )
    return mismatches


def compare_categories(left: AInfCategory, right: AInfCategory, object_map: Mapping[str, str], check: str = "categories") -> list[Mismatch]:
    """Object-by-object, basis-by-basis, constant-by-constant comparison under object_map."""
    mismatches = []
    if sorted(object_map[x] for x in left.objects) != sorted(right.objects):
        mismatches.append(Mismatch(check, "objects", str(sorted(right.objects)), str(sorted(object_map.values()))))
        return mismatches
    for x in left.objects:
        for y in left.objects:
            ours = sorted(left.hom(x, y).basis)
            theirs = sorted(right.hom(object_map[x], object_map[y]).basis)
            if ours != theirs:
                mismatches.append(Mismatch(check, f"hom({x},{y})", str(theirs), str(ours)))
    mismatches.extend(compare_structure_constants(left, right, object_map, check))
    return mismatches


def compare_hom_tables(left: HomTable, right: HomTable, object_map: Mapping[str, str], check: str = "hom_table") -> list[Mismatch]:
    """Dims and m_2 fingerprints pair by pair; fingerprints only hash morphism names."""
    mismatches = []
    renamed = {(object_map[x], object_map[y]): (x, y) for x, y in left.dims}
    for pair in sorted(set(renamed) | set(right.dims)):
        ours = renamed.get(pair)
        if ours is None or pair not in right.dims:
            mismatches.append(Mismatch(check, f"hom{pair} present", str(pair in right.dims), str(ours is not None)))
            continue
        if left.dims[ours] != right.dims[pair]:
            mismatches.append(Mismatch(check, f"dims{pair}", str(right.dims[pair]), str(left.dims[ours])))
        if left.fingerprints[ours] != right.fingerprints[pair]:
            mismatches.append(Mismatch(check, f"fingerprint{pair}", right.fingerprints[pair], left.fingerprints[ours]))
    return mismatches


def _render(element: Mapping[Morphism, Fraction]) -> str:
    if not element:
        return "0"
    return " + ".join(f"{c}*{m.name}" for m, c in sorted(element.items(), key=lambda kv: kv[0]))


@dataclass
class ComparisonReport:
    n: int
    checks: list[CheckResult] = field(default_factory=list)
    mismatches: list[Mismatch] = field(default_factory=list)
    hom_table: HomTable | None = None

    @property
    def verdict(self) -> str:
        return "pass" if not self.mismatches else "fail"

    def record(self, name: str, cases: int, found: Sequence[Mismatch]) -> None:
        self.checks.append(CheckResult(name, cases, len(found)))
        self.mismatches.extend(found)
        LOGGER.info("n=%d %s: %d case(s), %d mismatch(es)", self.n, name, cases, len(found))


# --- the individual checks -----------------------------------------------------------------


def check_relations(named: Mapping[str, AInfCategory], max_arity: int = 4) -> tuple[int, list[Mismatch]]:
    found = []
    for label, cat in named.items():
        for v in check_a_infinity(cat, max_arity=max_arity):
            found.append(Mismatch("a_infinity", f"{label}: {tuple(m.name for m in v.inputs)}", "0", _render(v.residue)))
    return len(named), found


def check_cone_dims(system: ConeSystem) -> tuple[int, list[Mismatch]]:
    """Generic twisted-complex cohomology against the oracle and the closed form, every pair."""
    found = []
    cases = 0
    n = system.n
    for a in sorted(system.cones):
        for b in sorted(system.cones):
            cases += 1
            generic = system.dims(a, b)
            oracle = double_complex_oracle(n, a, b)
            closed = expected_cone_dims(n, b - a)
            if generic != oracle:
                found.append(Mismatch("cone_dims", f"hom(C{a},C{b}) oracle", str(oracle), str(generic)))
            if generic != closed:
                found.append(Mismatch("cone_dims", f"hom(C{a},C{b}) closed form", str(closed), str(generic)))
    return cases, found


def check_descended_dims(system: ConeSystem) -> tuple[int, list[Mismatch]]:
    found = []
    n = system.n
    for k in range(1, n + 1):
        expected = {k: math.comb(n + 1, k)}
        actual = descended_hom(system, k)
        if actual != expected:
            found.append(Mismatch("descended_dims", f"hom(C_i,C_i+{k})", str(expected), str(actual)))
    return n, found


def check_induced_products(system: ConeSystem) -> tuple[int, list[Mismatch]]:
    """m_2 on cone classes equals the exterior m_2 under class_of_monomial, exactly."""
    n = system.n
    found = []
    cases = 0
    everything = range(1, n + 2)
    a = 0
    for k1 in range(1, n + 1):
        for k2 in range(1, n + 1 - k1):
            for first in monomials(everything, k1):
                for second in monomials(everything, k2):
                    cases += 1
                    key = f"m_2({second},{first})"
                    b, d1, rep1 = class_of_monomial(n, a, first)
                    b2, d2, rep2 = class_of_monomial(n, b, second)
                    if b not in system.cones or b2 not in system.cones:
                        found.append(Mismatch("induced_products", key, "cones in window", "window too small"))
                        continue
                    product = system.product(a, b, b2, rep2, rep1)
                    expected = exterior_m2(second, first)
                    try:
                        actual = system.coordinates(a, b2, d1 + d2, product)
                        if expected is None:
                            target = tuple(Fraction(0) for _ in actual)
                        else:
                            sign, mono = expected
                            c, d3, rep3 = class_of_monomial(n, a, mono)
                            if c != b2:
                                raise NotInSubspace(f"{mono} lifts to C{c}, product lands in C{b2}")
                            target = tuple(sign * x for x in system.coordinates(a, c, d3, rep3))
                    except NotInSubspace as exc:
                        found.append(Mismatch("induced_products", key, "cocycle", str(exc)))
                        continue
                    if actual != target:
                        found.append(Mismatch("induced_products", key, str(target), str(actual)))
    return cases, found


def check_coamoeba_route(n: int, flip: bool = False) -> tuple[int, list[Mismatch]]:
    coamoeba = category_of(build_coamoeba(n))
    if flip:
        coamoeba = inject_sign_flip(coamoeba)
    exterior = build_exterior_category(n)
    object_map = {f"P{i}": exterior_id(i) for i in range(1, n + 2)}
    found = compare_categories(coamoeba, exterior, object_map, check="coamoeba_route")
    found.extend(compare_hom_tables(hom_table(coamoeba), hom_table(exterior), object_map, check="coamoeba_route"))
    return 2, found


def check_equivariant_cover(n: int, radius: int = 1) -> tuple[int, list[Mismatch]]:
    """Cover hom dims from an origin object equal the equivariant_hom counts."""
    window = CoverWindow.around_origin(n, radius)
    cover = cover_category(build_coamoeba(n), window)
    weights = standard_weights(n)
    found = []
    cases = 0
    origin = (0,) * n
    for i in range(1, n + 2):
        source = cover_object_id(i, origin)
        for target in cover.objects:
            j, mu = parse_cover_object(target)
            if j <= i:
                continue
            cases += 1
            delta = character_of(j, mu) - character_of(i, origin)
            expected = sorted(m.name for m in equivariant_hom(i, j, delta, weights))
            actual = sorted(cover.hom(source, target).names)
            if expected != actual:
                found.append(Mismatch("equivariant_cover", f"hom({source},{target})", str(expected), str(actual)))
    return cases, found


def one_parameter_table(cover: AInfCategory, n: int, i: int, j: int) -> dict[int, dict[int, int]]:
    """Cover homs out of (i, 0) into cell j, summed by difference of one-parameter labels."""
    origin = (0,) * n
    source = cover_object_id(i, origin)
    base = one_parameter_label(i, origin)
    table: dict[int, dict[int, int]] = {}
    for target in cover.objects:
        cell, mu = parse_cover_object(target)
        if cell != j:
            continue
        for degree, dim in cover.hom(source, target).dims_by_degree().items():
            row = table.setdefault(one_parameter_label(j, mu) - base, {})
            row[degree] = row.get(degree, 0) + dim
    return {m: row for m, row in table.items() if any(row.values())}


def check_one_parameter_tables(n: int, radius: int = 1) -> tuple[int, list[Mismatch]]:
    """Cover homs grouped by one-parameter label against partial_invariants, for every i < j."""
    cover = cover_category(build_coamoeba(n), CoverWindow.around_origin(n, radius))
    found = []
    cases = 0
    for i in range(1, n + 2):
        for j in range(i + 1, n + 2):
            table = one_parameter_table(cover, n, i, j)
            # labels outside [-1, 0] must stay empty on both sides
            for m in sorted(set(table) | {-2, -1, 0, 1}):
                cases += 1
                expected = partial_invariants(n, i, j, m)
                actual = table.get(m, {})
                if expected != actual:
                    found.append(Mismatch("one_parameter_tables", f"({i},{j},m={m})", str(expected), str(actual)))
    return cases, found


VOLUME_CHECK_MAX_N = 3
QUOTIENT_CHECK_MAX_N = 3


def check_tiling(n: int, sample_count: int = 0, seed: int = 0) -> tuple[int, list[Mismatch]]:
    """
    Random torus points each lie in at most one open cell, boundary hits stay
    below 1% of the sample; for small n the cells fill the covolume exactly.
    """
    t = build_tessellation(n)
    found = []
    hits: Counter = Counter()
    for p in random_torus_points(n, sample_count, seed=seed):
        inside = cells_containing(p, t)
        hits[len(inside)] += 1
        if len(inside) > 1:
            found.append(Mismatch("tiling", str(tuple(map(str, p))), "one cell", str(inside)))
    if sample_count and hits[0] * 100 >= sample_count:
        found.append(Mismatch("tiling", "boundary fraction", "< 1%", f"{hits[0]}/{sample_count}"))
    cases = sample_count
    if n <= VOLUME_CHECK_MAX_N:
        cases += 1
        total, covolume = (n + 1) * cell_volume(n), lattice_covolume(n)
        if total != covolume:
            found.append(Mismatch("tiling", "volume", str(covolume), str(total)))
    return cases, found


def run_verification(
    n: int,
    radius: int | None = None,
    inject_flip: bool = False,
    heartbeat_interval_sec: float = HEARTBEAT_INTERVAL_SEC,
    sample_count: int = 0,
    sample_seed: int = 0,
) -> ComparisonReport:
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    report = ComparisonReport(n)
    with heartbeat_while(heartbeat_interval_sec, f"verifying n={n}..."):
        system = build_cone_system(n, radius)
        exterior = build_exterior_category(n)
        report.hom_table = hom_table(exterior)
        coamoeba = build_coamoeba(n)
        named = {
            "exterior": exterior,
            "delta": system.delta,
            "coamoeba": category_of(coamoeba),
            "cover": cover_category(coamoeba, CoverWindow.around_origin(n, 1)),
        }
        if n <= QUOTIENT_CHECK_MAX_N:
            named["quotient"] = quotient_by_sublattice(coamoeba, finite_subgroup_sublattice(n))
        report.record("a_infinity", *check_relations(named))
        report.record("cone_dims", *check_cone_dims(system))
        report.record("descended_dims", *check_descended_dims(system))
        report.record("induced_products", *check_induced_products(system))
        report.record("coamoeba_route", *check_coamoeba_route(n, flip=inject_flip))
        report.record("equivariant_cover", *check_equivariant_cover(n))
        report.record("one_parameter_tables", *check_one_parameter_tables(n))
        report.record("tiling", *check_tiling(n, sample_count, sample_seed))
    LOGGER.info("n=%d verdict: %s", n, report.verdict)
    return report
