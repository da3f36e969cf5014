"""
Twisted complexes over a finite A-infinity category.

Multiplicity spaces are one-dimensional shifts C[k] (C[k] sits in degree -k),
so a formal sum is a list of (shift, object) terms and a morphism of the
additive enlargement is a combination of SigmaMorphism basis elements
(source term, target term, morphism). Twisted differentials point strictly
from earlier to later terms, which keeps every insertion sum finite.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, NamedTuple, Sequence

from src.algebra.ainfinity import (
    AInfCategory,
    GradedSpace,
    HomCohomology,
    Morphism,
    hom_cohomology as _hom_cohomology,
)
from src.errors import MaurerCartanViolation, NotClosed, NotComposable, UnknownObject

LOGGER = logging.getLogger(__name__)


class Term(NamedTuple):
    shift: int
    obj: str


@dataclass(frozen=True)
class FormalSum:
    terms: tuple[Term, ...] = ()

    def __len__(self) -> int:
        return len(self.terms)


class SigmaMorphism(NamedTuple):
    """1_{source_shift, target_shift} tensor morphism, from term p to term q."""

    source_term: int
    target_term: int
    source_shift: int
    target_shift: int
    morphism: Morphism

    @property
    def shift_degree(self) -> int:
        return self.source_shift - self.target_shift


SigmaElement = dict[SigmaMorphism, Fraction]


def sigma_add(a: Mapping[SigmaMorphism, Fraction], b: Mapping[SigmaMorphism, Fraction], coefficient: int | Fraction = 1) -> SigmaElement:
    out = dict(a)
    for m, value in b.items():
        total = out.get(m, 0) + coefficient * value
        if total:
            out[m] = Fraction(total)
        else:
            out.pop(m, None)
    return out


def sigma_degree(cat: AInfCategory, m: SigmaMorphism) -> int:
    return m.shift_degree + cat.degree(m.morphism)


def sigma_name(m: SigmaMorphism) -> str:
    return f"{m.source_term},{m.target_term}:{m.morphism.name}"


def sigma_basis(cat: AInfCategory, x: FormalSum, y: FormalSum) -> list[SigmaMorphism]:
    """Basis ordered by (source term, target term, morphism basis order)."""
    out: list[SigmaMorphism] = []
    for p, (s, a) in enumerate(x.terms):
        for q, (t, b) in enumerate(y.terms):
            out.extend(SigmaMorphism(p, q, s, t, m) for m in cat.basis(a, b))
    return out


def hom_sigma(cat: AInfCategory, x: FormalSum, y: FormalSum) -> GradedSpace:
    for term in x.terms + y.terms:
        if term.obj not in cat.objects:
            raise UnknownObject(f"Unknown object {term.obj!r}")
    return GradedSpace(tuple((sigma_name(m), sigma_degree(cat, m)) for m in sigma_basis(cat, x, y)))


def _sigma_sign(cat: AInfCategory, chain: Sequence[SigmaMorphism]) -> int:
    """(-1)^dagger with dagger = sum_{p<q} deg(phi_p) (deg(x_q) - 1), chain = a_1 .. a_d."""
    dagger = 0
    shift_total = 0
    for m in chain:
        dagger += shift_total * (cat.degree(m.morphism) - 1)
        shift_total += m.shift_degree
    return -1 if dagger % 2 else 1


def _first_break(chain: Sequence[SigmaMorphism]) -> tuple[SigmaMorphism, SigmaMorphism] | None:
    for first, second in zip(chain, chain[1:]):
        if first.target_term != second.source_term or first.target_shift != second.source_shift:
            return first, second
    return None


def m_sigma_basis(cat: AInfCategory, inputs: Sequence[SigmaMorphism]) -> SigmaElement:
    chain = list(reversed(inputs))
    broken = _first_break(chain)
    if broken:
        raise NotComposable(f"Sigma morphisms {broken[0]} and {broken[1]} do not compose")
    result = cat.op(tuple(m.morphism for m in inputs))
    if not result:
        return {}
    sign = _sigma_sign(cat, chain)
    head, tail = chain[0], chain[-1]
    return {
        SigmaMorphism(head.source_term, tail.target_term, head.source_shift, tail.target_shift, m): sign * c
        for m, c in result.items()
    }


def m_sigma(cat: AInfCategory, elements: Sequence[Mapping[SigmaMorphism, Fraction]]) -> SigmaElement:
    """Multilinear m_d on the additive enlargement, elements given as (a_d, ..., a_1)."""
    out: SigmaElement = {}
    if len(elements) not in cat.present_arities:
        return out
    for combo in itertools.product(*(e.items() for e in elements)):
        inputs = [m for m, _ in combo]
        # chains whose terms do not line up contribute zero
        if _first_break(inputs[::-1]):
            continue
        value = m_sigma_basis(cat, inputs)
        if not value:
            continue
        coefficient = Fraction(1)
        for _, c in combo:
            coefficient *= c
        out = sigma_add(out, value, coefficient)
    return out


@dataclass(frozen=True)
class TwistedComplex:
    name: str
    underlying: FormalSum
    differential: Mapping[SigmaMorphism, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        terms = self.underlying.terms
        for m in self.differential:
            p, q = m.source_term, m.target_term
            if not (0 <= p < q < len(terms)):
                raise MaurerCartanViolation(f"{self.name}: differential component {p}->{q} is not strictly forward")
            if (m.source_shift, m.morphism.source) != terms[p] or (m.target_shift, m.morphism.target) != terms[q]:
                raise MaurerCartanViolation(f"{self.name}: differential component {m} does not match the terms")

    @property
    def terms(self) -> tuple[Term, ...]:
        return self.underlying.terms


def maurer_cartan_residue(cat: AInfCategory, x: TwistedComplex) -> SigmaElement:
    """sum_r m_r(delta, ..., delta); finite since delta is strictly forward."""
    delta = dict(x.differential)
    residue: SigmaElement = {}
    if not delta:
        return residue
    for r in range(1, min(cat.max_arity, len(x.terms) - 1) + 1):
        residue = sigma_add(residue, m_sigma(cat, [delta] * r))
    return residue


def twisted_complex(
    cat: AInfCategory, name: str, terms: Sequence[Term], differential: Mapping[SigmaMorphism, Fraction] | None = None
) -> TwistedComplex:
    """Validated constructor: degree-1 forward differential satisfying Maurer-Cartan."""
    x = TwistedComplex(name, FormalSum(tuple(Term(*t) for t in terms)), dict(differential or {}))
    for term in x.terms:
        if term.obj not in cat.objects:
            raise UnknownObject(f"Unknown object {term.obj!r}")
    for m in x.differential:
        if sigma_degree(cat, m) != 1:
            raise MaurerCartanViolation(f"{name}: differential component {m} has degree {sigma_degree(cat, m)}")
    residue = maurer_cartan_residue(cat, x)
    if residue:
        raise MaurerCartanViolation(f"{name}: Maurer-Cartan residue {residue}")
    return x


def from_object(cat: AInfCategory, obj: str, name: str | None = None) -> TwistedComplex:
    return twisted_complex(cat, name or obj, [Term(0, obj)])


def shift(cat: AInfCategory, x: TwistedComplex, k: int) -> TwistedComplex:
    """X[k]: every multiplicity shift raised by k, differential unchanged."""
    terms = [Term(s + k, obj) for s, obj in x.terms]
    delta = {m._replace(source_shift=m.source_shift + k, target_shift=m.target_shift + k): c for m, c in x.differential.items()}
    return twisted_complex(cat, f"{x.name}[{k}]", terms, delta)


# --- operations on twisted complexes ----------------------------------------


def _check_element(x: TwistedComplex, y: TwistedComplex, element: Mapping[SigmaMorphism, Fraction]) -> None:
    for m in element:
        p, q = m.source_term, m.target_term
        if not (0 <= p < len(x.terms) and 0 <= q < len(y.terms)):
            raise NotComposable(f"{m} is not a morphism {x.name} -> {y.name}")
        if (m.source_shift, m.morphism.source) != x.terms[p] or (m.target_shift, m.morphism.target) != y.terms[q]:
            raise NotComposable(f"{m} is not a morphism {x.name} -> {y.name}")


def _insertions(d: int, budget: int) -> Iterator[tuple[int, ...]]:
    for counts in itertools.product(range(budget + 1), repeat=d + 1):
        if sum(counts) <= budget:
            yield counts


def m_tw(
    cat: AInfCategory,
    complexes: Sequence[TwistedComplex],
    elements: Sequence[Mapping[SigmaMorphism, Fraction]],
) -> SigmaElement:
    """
    m_d on twisted complexes X_0 -> ... -> X_d, elements given as (a_d, ..., a_1):
    the sum over all ways of inserting delta_{X_k} between the arguments.
    """
    d = len(elements)
    if len(complexes) != d + 1:
        raise NotComposable(f"{d} morphisms need {d + 1} twisted complexes, got {len(complexes)}")
    for k in range(1, d + 1):
        _check_element(complexes[k - 1], complexes[k], elements[d - k])
    out: SigmaElement = {}
    deltas = [dict(x.differential) for x in complexes]
    for counts in _insertions(d, cat.max_arity - d):
        if any(counts[k] and not deltas[k] for k in range(d + 1)):
            continue
        if any(counts[k] >= len(complexes[k].terms) for k in range(d + 1)):
            continue
        arguments: list[Mapping[SigmaMorphism, Fraction]] = [deltas[d]] * counts[d]
        for k in range(d, 0, -1):
            arguments.append(elements[d - k])
            arguments.extend([deltas[k - 1]] * counts[k - 1])
        out = sigma_add(out, m_sigma(cat, arguments))
    return out


def cone(cat: AInfCategory, x0: TwistedComplex, x1: TwistedComplex, c: Mapping[SigmaMorphism, Fraction], name: str | None = None) -> TwistedComplex:
    """C = C[1] (x) X_0 + X_1 with differential [[delta_0, 0], [-c, delta_1]]."""
    _check_element(x0, x1, c)
    for m in c:
        if sigma_degree(cat, m) != 0:
            raise NotClosed(f"Cone of a non-degree-0 morphism ({m})")
    if m_tw(cat, [x0, x1], [c]):
        raise NotClosed(f"m_1 of the cone morphism {x0.name} -> {x1.name} is non-zero")
    offset = len(x0.terms)
    terms = [Term(s + 1, obj) for s, obj in x0.terms] + list(x1.terms)
    delta: SigmaElement = {}
    for m, v in x0.differential.items():
        delta[m._replace(source_shift=m.source_shift + 1, target_shift=m.target_shift + 1)] = v
    for m, v in x1.differential.items():
        delta[m._replace(source_term=m.source_term + offset, target_term=m.target_term + offset)] = v
    for m, v in c.items():
        shifted = SigmaMorphism(m.source_term, m.target_term + offset, m.source_shift + 1, m.target_shift, m.morphism)
        delta = sigma_add(delta, {shifted: -v})
    return twisted_complex(cat, name or f"Cone({x0.name}->{x1.name})", terms, delta)


# --- materialized subcategories of Tw ---------------------------------------


def to_category_element(x: TwistedComplex, y: TwistedComplex, element: Mapping[SigmaMorphism, Fraction]) -> dict[Morphism, Fraction]:
    return {Morphism(x.name, y.name, sigma_name(m)): c for m, c in element.items()}


def to_sigma_element(x: TwistedComplex, y: TwistedComplex, element: Mapping[Morphism, Fraction]) -> SigmaElement:
    out: SigmaElement = {}
    for m, c in element.items():
        indices, _, name = m.name.partition(":")
        p, q = (int(v) for v in indices.split(","))
        (s, a), (t, b) = x.terms[p], y.terms[q]
        out[SigmaMorphism(p, q, s, t, Morphism(a, b, name))] = c
    return out


def twisted_category(
    cat: AInfCategory, complexes: Sequence[TwistedComplex], max_arity: int | None = None
) -> AInfCategory:
    """Full subcategory of Tw on the given complexes, operations up to max_arity."""
    by_name = {x.name: x for x in complexes}
    if len(by_name) != len(complexes):
        raise ValueError("Twisted complex names must be unique")
    homs = {
        (x.name, y.name): hom_sigma(cat, x.underlying, y.underlying)
        for x in complexes
        for y in complexes
    }
    homs = {k: v for k, v in homs.items() if v.dim}
    skeleton = AInfCategory(tuple(by_name), homs, {})
    top = cat.max_arity if max_arity is None else max_arity
    ops: dict[tuple[Morphism, ...], dict[Morphism, Fraction]] = {}
    for d in range(1, top + 1):
        for chain in skeleton.composable_tuples(d):
            objs = [by_name[chain[-1].source]] + [by_name[m.target] for m in reversed(chain)]
            args = [to_sigma_element(by_name[m.source], by_name[m.target], {m: Fraction(1)}) for m in chain]
            value = m_tw(cat, objs, args)
            if value:
                ops[chain] = to_category_element(objs[0], objs[-1], value)
    LOGGER.debug("twisted category on %d complexes: %d non-zero structure constants", len(complexes), len(ops))
    return AInfCategory(tuple(by_name), homs, ops)


def hom_cohomology(cat: AInfCategory, x: TwistedComplex, y: TwistedComplex) -> HomCohomology:
    """Per-degree cohomology of (hom(x, y), m_1) with echelon-form representatives."""
    objects = (x.name,) if x.name == y.name else (x.name, y.name)
    space = hom_sigma(cat, x.underlying, y.underlying)
    ops: dict[tuple[Morphism, ...], dict[Morphism, Fraction]] = {}
    for m in sigma_basis(cat, x.underlying, y.underlying):
        value = m_tw(cat, [x, y], [{m: Fraction(1)}])
        if value:
            ops[(Morphism(x.name, y.name, sigma_name(m)),)] = to_category_element(x, y, value)
    complex_category = AInfCategory(objects, {(x.name, y.name): space}, ops)
    return _hom_cohomology(complex_category, x.name, y.name)
