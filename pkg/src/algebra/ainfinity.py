"""
Finite A-infinity categories with exact structure constants.

Operations follow the convention m_l(a_l, ..., a_1) with a_1 the first
arrow: a_k in hom(c_{k-1}, c_k). Structure constants are stored sparsely,
keyed by the tuple of input basis morphisms in that order; an absent key
means the operation vanishes on that tuple.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, NamedTuple, Sequence

from src.algebra.exactlinalg import RationalMatrix, SubquotientBasis, cohomology
from src.errors import InducedProductIllDefined, NotComposable, NotInSubspace, UnknownObject

LOGGER = logging.getLogger(__name__)

UNIT_NAME = "id"
DEFAULT_MAX_ARITY = 4


class Morphism(NamedTuple):
    """A basis morphism of hom(source, target)."""

    source: str
    target: str
    name: str


Element = dict[Morphism, Fraction]


def element_add(a: Mapping[Morphism, Fraction], b: Mapping[Morphism, Fraction], coefficient: int | Fraction = 1) -> Element:
    out = dict(a)
    for m, value in b.items():
        total = out.get(m, 0) + coefficient * value
        if total:
            out[m] = Fraction(total)
        else:
            out.pop(m, None)
    return out


def basis_element(m: Morphism, coefficient: int | Fraction = 1) -> Element:
    return {m: Fraction(coefficient)} if coefficient else {}


@dataclass(frozen=True)
class GradedSpace:
    """Finite-dimensional Z-graded space with a named basis."""

    basis: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        names = [name for name, _ in self.basis]
        if len(set(names)) != len(names):
            raise ValueError(f"Basis names must be unique, got {names}")
        object.__setattr__(self, "_degrees", dict(self.basis))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.basis]

    def degree(self, name: str) -> int:
        return self._degrees[name]

    def __contains__(self, name: str) -> bool:
        return name in self._degrees

    def in_degree(self, k: int) -> list[str]:
        return [name for name, d in self.basis if d == k]

    def degrees(self) -> list[int]:
        return sorted({d for _, d in self.basis})

    def dims_by_degree(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for _, d in self.basis:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))


EMPTY_SPACE = GradedSpace()


@dataclass(frozen=True)
class AInfCategory:
    objects: tuple[str, ...]
    homs: Mapping[tuple[str, str], GradedSpace]
    ops: Mapping[tuple[Morphism, ...], Mapping[Morphism, Fraction]]
    units: Mapping[str, Morphism] = field(default_factory=dict)

    def __post_init__(self) -> None:
        known = set(self.objects)
        if len(known) != len(self.objects):
            raise ValueError("Object ids must be unique")
        for (x, y) in self.homs:
            if x not in known or y not in known:
                raise UnknownObject(f"hom({x}, {y}) refers to an unknown object")
        outgoing: dict[str, list[Morphism]] = {x: [] for x in self.objects}
        for (x, y), space in self.homs.items():
            outgoing[x].extend(Morphism(x, y, name) for name in space.names)
        object.__setattr__(self, "_outgoing", outgoing)
        for inputs, output in self.ops.items():
            self._validate_op(inputs, output)

    def _validate_op(self, inputs: tuple[Morphism, ...], output: Mapping[Morphism, Fraction]) -> None:
        if not inputs:
            raise ValueError("Curved operations (m_0) are not supported")
        chain = tuple(reversed(inputs))
        for first, second in zip(chain, chain[1:]):
            if first.target != second.source:
                raise NotComposable(f"Inputs {inputs} are not composable")
        total = sum(self.degree(m) for m in inputs) + 2 - len(inputs)
        for m in output:
            if (m.source, m.target) != (chain[0].source, chain[-1].target):
                raise NotComposable(f"Output {m} of {inputs} has the wrong endpoints")
            if self.degree(m) != total:
                raise ValueError(
                    f"m_{len(inputs)}{tuple(i.name for i in inputs)} -> {m.name} breaks the degree rule "
                    f"({self.degree(m)} != {total})"
                )

    # --- access -----------------------------------------------------------

    def _check(self, x: str) -> None:
        if x not in self._outgoing:
            raise UnknownObject(f"Unknown object {x!r}")

    def hom(self, x: str, y: str) -> GradedSpace:
        self._check(x)
        self._check(y)
        return self.homs.get((x, y), EMPTY_SPACE)

    def basis(self, x: str, y: str) -> list[Morphism]:
        return [Morphism(x, y, name) for name in self.hom(x, y).names]

    def degree(self, m: Morphism) -> int:
        space = self.homs.get((m.source, m.target))
        if space is None or m.name not in space:
            raise KeyError(f"{m} is not a basis morphism")
        return space.degree(m.name)

    def element_degree(self, element: Mapping[Morphism, Fraction]) -> int | None:
        degrees = {self.degree(m) for m in element}
        if len(degrees) > 1:
            raise ValueError("Element is not homogeneous")
        return degrees.pop() if degrees else None

    def outgoing(self, x: str) -> list[Morphism]:
        return self._outgoing[x]

    @property
    def present_arities(self) -> frozenset[int]:
        return frozenset(len(k) for k, v in self.ops.items() if v)

    @property
    def max_arity(self) -> int:
        return max(self.present_arities, default=0)

    def op(self, inputs: Sequence[Morphism]) -> Mapping[Morphism, Fraction]:
        return self.ops.get(tuple(inputs), {})

    def evaluate(self, elements: Sequence[Mapping[Morphism, Fraction]]) -> Element:
        """m_l on linear combinations, elements given as (a_l, ..., a_1)."""
        out: Element = {}
        if len(elements) not in self.present_arities:
            return out
        for combo in itertools.product(*(e.items() for e in elements)):
            inputs = tuple(m for m, _ in combo)
            result = self.ops.get(inputs)
            if not result:
                continue
            coefficient = Fraction(1)
            for _, c in combo:
                coefficient *= c
            out = element_add(out, result, coefficient)
        return out

    def composable_tuples(self, length: int) -> Iterator[tuple[Morphism, ...]]:
        """All basis tuples (a_length, ..., a_1) forming a composable chain."""

        def extend(prefix: list[Morphism]) -> Iterator[tuple[Morphism, ...]]:
            if len(prefix) == length:
                yield tuple(reversed(prefix))
                return
            for m in self._outgoing[prefix[-1].target]:
                yield from extend(prefix + [m])

        for x in self.objects:
            for m in self._outgoing[x]:
                yield from extend([m])

    def hom_dims(self) -> dict[tuple[str, str], int]:
        return {key: space.dim for key, space in self.homs.items() if space.dim}

    def to_dump(self, kind: str, n: int | None = None):
        from src.serialization import category_dump

        return category_dump(self, kind, n)


class CategoryBuilder:
    """Incremental construction of an AInfCategory with optional strict units."""

    def __init__(self) -> None:
        self._objects: list[str] = []
        self._homs: dict[tuple[str, str], list[tuple[str, int]]] = {}
        self._ops: dict[tuple[Morphism, ...], Element] = {}
        self._units: dict[str, Morphism] = {}

    def add_object(self, x: str, unit: bool = True) -> None:
        if x in self._objects:
            raise ValueError(f"Object {x!r} already present")
        self._objects.append(x)
        if unit:
            self._units[x] = self.add_morphism(x, x, UNIT_NAME, 0)

    def add_morphism(self, source: str, target: str, name: str, degree: int) -> Morphism:
        for x in (source, target):
            if x not in self._objects:
                raise UnknownObject(f"Unknown object {x!r}")
        self._homs.setdefault((source, target), []).append((name, degree))
        return Morphism(source, target, name)

    def add_op(self, inputs: Sequence[Morphism], output: Morphism, coefficient: int | Fraction = 1) -> None:
        key = tuple(inputs)
        self._ops[key] = element_add(self._ops.get(key, {}), basis_element(output, coefficient))

    def unit(self, x: str) -> Morphism:
        return self._units[x]

    def build(self, strict_units: bool = True) -> AInfCategory:
        homs = {key: GradedSpace(tuple(basis)) for key, basis in self._homs.items()}
        ops = {k: v for k, v in self._ops.items() if v}
        if strict_units:
            ops.update(strict_unit_ops(homs, self._units))
        return AInfCategory(tuple(self._objects), homs, ops, dict(self._units))


def strict_unit_ops(
    homs: Mapping[tuple[str, str], GradedSpace], units: Mapping[str, Morphism]
) -> dict[tuple[Morphism, ...], Element]:
    """m_2(a, id) = a and m_2(id, a) = (-1)^{deg a} a for every basis morphism a."""
    ops: dict[tuple[Morphism, ...], Element] = {}
    unit_set = set(units.values())
    for (x, y), space in homs.items():
        for name, degree in space.basis:
            a = Morphism(x, y, name)
            if a in unit_set:
                ops[(a, a)] = {a: Fraction(1)}
                continue
            if x in units:
                ops[(a, units[x])] = {a: Fraction(1)}
            if y in units:
                ops[(units[y], a)] = {a: Fraction((-1) ** (degree % 2))}
    return ops


# --- A-infinity relations --------------------------------------------------


@dataclass(frozen=True)
class RelationViolation:
    inputs: tuple[Morphism, ...]
    residue: Mapping[Morphism, Fraction]

    @property
    def arity(self) -> int:
        return len(self.inputs)


def relation_residue(cat: AInfCategory, chain: tuple[Morphism, ...]) -> Element:
    """Left side of the A-infinity relation on (a_l, ..., a_1)."""
    l = len(chain)
    arities = cat.present_arities
    degrees = [cat.degree(m) for m in reversed(chain)]  # degrees[k-1] = deg a_k
    total: Element = {}
    for i in range(l):
        for j in range(i + 1, l + 1):
            if (j - i) not in arities or (l + i - j + 1) not in arities:
                continue
            inner = cat.evaluate([{m: Fraction(1)} for m in chain[l - j : l - i]])
            if not inner:
                continue
            outer_inputs = (
                [{m: Fraction(1)} for m in chain[: l - j]]
                + [inner]
                + [{m: Fraction(1)} for m in chain[l - i :]]
            )
            value = cat.evaluate(outer_inputs)
            sign = -1 if (sum(degrees[:i]) - i) % 2 else 1
            total = element_add(total, value, sign)
    return total


def check_a_infinity(cat: AInfCategory, max_arity: int = DEFAULT_MAX_ARITY) -> list[RelationViolation]:
    """
    Evaluate the A-infinity relations on every composable basis tuple of
    arity <= max_arity. Arities where no two present operations can meet
    (a + b != l + 1 for all present a, b) vanish identically and are skipped.
    """
    arities = cat.present_arities
    violations: list[RelationViolation] = []
    for l in range(1, max_arity + 1):
        if not any(a + b == l + 1 for a in arities for b in arities):
            continue
        checked = 0
        for chain in cat.composable_tuples(l):
            checked += 1
            residue = relation_residue(cat, chain)
            if residue:
                violations.append(RelationViolation(chain, residue))
        LOGGER.debug("arity %d: %d tuples checked", l, checked)
    if violations:
        LOGGER.info("%d A-infinity relation violation(s)", len(violations))
    return violations


# --- derived constructions -------------------------------------------------


def directed_subcategory(cat: AInfCategory, order: Sequence[str]) -> AInfCategory:
    """Units on the diagonal, hom(x, y) kept for x before y, zero otherwise."""
    if sorted(order) != sorted(cat.objects):
        raise ValueError("order must list every object exactly once")
    position = {x: k for k, x in enumerate(order)}
    units = dict(cat.units)
    homs: dict[tuple[str, str], GradedSpace] = {}
    for x in order:
        if x not in units:
            units[x] = Morphism(x, x, UNIT_NAME)
        homs[(x, x)] = GradedSpace(((units[x].name, 0),))
    for (x, y), space in cat.homs.items():
        if position[x] < position[y] and space.dim:
            homs[(x, y)] = space

    def survives(m: Morphism) -> bool:
        if m.source == m.target:
            return m == units[m.source]
        return position[m.source] < position[m.target]

    ops: dict[tuple[Morphism, ...], Element] = {}
    for inputs, output in cat.ops.items():
        if not all(survives(m) for m in inputs):
            continue
        kept = {m: c for m, c in output.items() if survives(m)}
        if kept:
            ops[inputs] = kept
    missing_units = {x: u for x, u in units.items() if x not in cat.units}
    if missing_units:
        unit_ops = strict_unit_ops(homs, missing_units)
        for key, value in unit_ops.items():
            ops.setdefault(key, value)
    return AInfCategory(tuple(order), homs, ops, units)


def dg_differential(cat: AInfCategory, element: Mapping[Morphism, Fraction]) -> Element:
    """d(a) = (-1)^{deg a} m_1(a)."""
    out: Element = {}
    for m, c in element.items():
        sign = -1 if cat.degree(m) % 2 else 1
        out = element_add(out, cat.evaluate([{m: c}]), sign)
    return out


def dg_compose(cat: AInfCategory, a2: Mapping[Morphism, Fraction], a1: Mapping[Morphism, Fraction]) -> Element:
    """a_2 o a_1 = (-1)^{deg a_1} m_2(a_2, a_1)."""
    out: Element = {}
    for m, c in a1.items():
        sign = -1 if cat.degree(m) % 2 else 1
        out = element_add(out, cat.evaluate([a2, {m: c}]), sign)
    return out


# --- cohomological category --------------------------------------------------


class CohomologyClass(NamedTuple):
    source: str
    target: str
    degree: int
    index: int


@dataclass(frozen=True)
class HomCohomology:
    """Cohomology of one hom complex, degree by degree."""

    chains: Mapping[int, tuple[Morphism, ...]]
    groups: Mapping[int, SubquotientBasis]

    def dims(self) -> dict[int, int]:
        return {k: g.dimension for k, g in sorted(self.groups.items()) if g.dimension}

    def representative(self, degree: int, index: int) -> Element:
        basis = self.chains[degree]
        vector = self.groups[degree].representatives[index]
        return {m: c for m, c in zip(basis, vector) if c}

    def coordinates(self, degree: int, element: Mapping[Morphism, Fraction]) -> tuple[Fraction, ...]:
        basis = self.chains.get(degree, ())
        if degree not in self.groups:
            if element:
                raise NotInSubspace(f"No cochains in degree {degree}")
            return ()
        vector = [Fraction(0)] * len(basis)
        position = {m: k for k, m in enumerate(basis)}
        for m, c in element.items():
            if m not in position:
                raise NotInSubspace(f"{m} is not a degree-{degree} cochain")
            vector[position[m]] = c
        return self.groups[degree].coordinates(vector)

    def is_exact(self, degree: int, element: Mapping[Morphism, Fraction]) -> bool:
        try:
            return not any(self.coordinates(degree, element))
        except NotInSubspace:
            return False


def _differential_matrix(cat: AInfCategory, source: Sequence[Morphism], target: Sequence[Morphism]) -> RationalMatrix:
    position = {m: k for k, m in enumerate(target)}
    entries: dict[tuple[int, int], Fraction] = {}
    for j, m in enumerate(source):
        for out, c in cat.op((m,)).items():
            entries[(position[out], j)] = c
    return RationalMatrix(len(target), len(source), entries)


def hom_cohomology(cat: AInfCategory, x: str, y: str) -> HomCohomology:
    space = cat.hom(x, y)
    chains = {k: tuple(Morphism(x, y, name) for name in space.in_degree(k)) for k in space.degrees()}
    groups: dict[int, SubquotientBasis] = {}
    for k, basis in chains.items():
        below = chains.get(k - 1, ())
        above = chains.get(k + 1, ())
        groups[k] = cohomology(
            _differential_matrix(cat, below, basis),
            _differential_matrix(cat, basis, above),
            degree=k,
        )
    return HomCohomology(chains, groups)


@dataclass(frozen=True)
class CohomologicalCategory:
    objects: tuple[str, ...]
    homs: Mapping[tuple[str, str], HomCohomology]
    products: Mapping[tuple[CohomologyClass, CohomologyClass], Mapping[CohomologyClass, Fraction]]

    def dims(self, x: str, y: str) -> dict[int, int]:
        h = self.homs.get((x, y))
        return h.dims() if h else {}

    def classes(self, x: str, y: str) -> list[CohomologyClass]:
        h = self.homs.get((x, y))
        if h is None:
            return []
        return [
            CohomologyClass(x, y, k, r)
            for k, group in sorted(h.groups.items())
            for r in range(group.dimension)
        ]

    def representative(self, c: CohomologyClass) -> Element:
        return self.homs[(c.source, c.target)].representative(c.degree, c.index)


def induced_product(
    cat: AInfCategory,
    homs: Mapping[tuple[str, str], HomCohomology],
    c2: CohomologyClass,
    c1: CohomologyClass,
) -> dict[CohomologyClass, Fraction]:
    x, z = c1.source, c2.target
    rep1 = homs[(c1.source, c1.target)].representative(c1.degree, c1.index)
    rep2 = homs[(c2.source, c2.target)].representative(c2.degree, c2.index)
    product = cat.evaluate([rep2, rep1])
    degree = c1.degree + c2.degree
    target = homs.get((x, z))
    if target is None:
        if product:
            raise InducedProductIllDefined(f"m_2{c2, c1} landed in a zero hom space")
        return {}
    try:
        coords = target.coordinates(degree, product)
    except NotInSubspace as exc:
        raise InducedProductIllDefined(f"m_2 of cocycles {c2}, {c1} is not closed") from exc
    return {CohomologyClass(x, z, degree, r): c for r, c in enumerate(coords) if c}


def _check_well_defined(cat: AInfCategory, homs: Mapping[tuple[str, str], HomCohomology], x: str, y: str, z: str) -> None:
    """m_2 of a coboundary with a cocycle must be a coboundary, on both sides."""
    hxy, hyz, hxz = homs[(x, y)], homs[(y, z)], homs.get((x, z))
    for k1, g1 in hxy.groups.items():
        for k2, g2 in hyz.groups.items():
            exact_left = [dict(zip(hxy.chains[k1], v)) for v in g1.image]
            exact_right = [dict(zip(hyz.chains[k2], v)) for v in g2.image]
            closed_left = [hxy.representative(k1, r) for r in range(g1.dimension)]
            closed_right = [hyz.representative(k2, r) for r in range(g2.dimension)]
            pairs = [(b2, a1) for b2 in closed_right for a1 in exact_left]
            pairs += [(b2, a1) for b2 in exact_right for a1 in closed_left]
            for b2, a1 in pairs:
                product = cat.evaluate([b2, a1])
                if product and (hxz is None or not hxz.is_exact(k1 + k2, product)):
                    raise InducedProductIllDefined(f"m_2 on hom({y},{z}) x hom({x},{y}) depends on representatives")


def cohomological_category(cat: AInfCategory) -> CohomologicalCategory:
    """Homs replaced by m_1-cohomology, composition induced by m_2."""
    homs = {(x, y): hom_cohomology(cat, x, y) for (x, y), space in cat.homs.items() if space.dim}
    products: dict[tuple[CohomologyClass, CohomologyClass], dict[CohomologyClass, Fraction]] = {}
    by_source: dict[str, list[str]] = {}
    for (x, y) in homs:
        by_source.setdefault(x, []).append(y)
    has_m1 = 1 in cat.present_arities
    for (x, y), hxy in homs.items():
        for z in by_source.get(y, []):
            if has_m1:
                _check_well_defined(cat, homs, x, y, z)
            for k1, g1 in hxy.groups.items():
                for r1 in range(g1.dimension):
                    c1 = CohomologyClass(x, y, k1, r1)
                    for k2, g2 in homs[(y, z)].groups.items():
                        for r2 in range(g2.dimension):
                            c2 = CohomologyClass(y, z, k2, r2)
                            value = induced_product(cat, homs, c2, c1)
                            if value:
                                products[(c2, c1)] = value
    return CohomologicalCategory(cat.objects, homs, products)
