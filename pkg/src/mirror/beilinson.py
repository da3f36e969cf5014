"""
Exterior-algebra category of the Beilinson collection on P^n, with torus weights.

Objects E_1, ..., E_{n+1}; hom(E_i, E_j) = wedge^{j-i} V for i < j, the unit
alone for i = j, zero otherwise. Composition m_2(s, t) = (-1)^{deg t} s ^ t.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from src.algebra.ainfinity import UNIT_NAME, AInfCategory, CategoryBuilder, Morphism


@dataclass(frozen=True, order=True)
class WedgeMonomial:
    indices: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if any(a >= b for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError(f"Wedge indices must be strictly ascending, got {self.indices}")
        if any(k < 1 for k in self.indices):
            raise ValueError(f"Wedge indices start at 1, got {self.indices}")

    @classmethod
    def of(cls, indices: Iterable[int]) -> "WedgeMonomial":
        return cls(tuple(sorted(indices)))

    @classmethod
    def parse(cls, name: str) -> "WedgeMonomial":
        if name in ("1", UNIT_NAME):
            return cls()
        return cls.of(int(part.lstrip("e")) for part in name.split("^"))

    @property
    def degree(self) -> int:
        return len(self.indices)

    @property
    def name(self) -> str:
        return "^".join(f"e{k}" for k in self.indices) if self.indices else "1"

    def __str__(self) -> str:
        return self.name


def wedge_product(left: WedgeMonomial, right: WedgeMonomial) -> tuple[int, WedgeMonomial] | None:
    """left ^ right as (sign, monomial); None when an index repeats."""
    if set(left.indices) & set(right.indices):
        return None
    word = left.indices + right.indices
    inversions = sum(1 for a, b in itertools.combinations(word, 2) if a > b)
    return (-1 if inversions % 2 else 1), WedgeMonomial.of(word)


def monomials(indices: Sequence[int], degree: int) -> list[WedgeMonomial]:
    return [WedgeMonomial(c) for c in itertools.combinations(sorted(indices), degree)]


def exterior_m2(second: WedgeMonomial, first: WedgeMonomial) -> tuple[int, WedgeMonomial] | None:
    """m_2(second, first) = (-1)^{deg first} second ^ first."""
    product = wedge_product(second, first)
    if product is None:
        return None
    sign, monomial = product
    return (-sign if first.degree % 2 else sign), monomial


# --- characters and weights -------------------------------------------------


@dataclass(frozen=True)
class Character:
    weight: tuple[int, ...]

    @classmethod
    def zero(cls, rank: int) -> "Character":
        return cls((0,) * rank)

    @classmethod
    def unit(cls, rank: int, k: int) -> "Character":
        """k-th standard character, 1-based."""
        return cls(tuple(1 if j == k - 1 else 0 for j in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.weight)

    def __add__(self, other: "Character") -> "Character":
        return Character(tuple(a + b for a, b in zip(self.weight, other.weight, strict=True)))

    def __sub__(self, other: "Character") -> "Character":
        return Character(tuple(a - b for a, b in zip(self.weight, other.weight, strict=True)))

    def __neg__(self) -> "Character":
        return Character(tuple(-a for a in self.weight))

    def __mul__(self, k: int) -> "Character":
        return Character(tuple(k * a for a in self.weight))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.weight)


def standard_weights(n: int) -> tuple[Character, ...]:
    """w(e_1) = 0, w(e_k) = (k-1)-th unit character of Z^n for k = 2..n+1."""
    return (Character.zero(n),) + tuple(Character.unit(n, k - 1) for k in range(2, n + 2))


def one_parameter_weights(n: int) -> tuple[Character, ...]:
    """V = rho_0^n + rho_1 with e_{n+1} carrying rho_1."""
    return tuple(Character((1 if k == n + 1 else 0,)) for k in range(1, n + 2))


def monomial_weight(m: WedgeMonomial, weights: Sequence[Character]) -> Character:
    total = Character.zero(weights[0].rank)
    for k in m.indices:
        total = total + weights[k - 1]
    return total


def equivariant_hom(i: int, i_prime: int, delta: Character, weights: Sequence[Character]) -> list[WedgeMonomial]:
    """Degree-(i'-i) monomials with total weight + delta = 0."""
    n = len(weights) - 1
    if not 1 <= i < i_prime <= n + 1:
        raise ValueError(f"Need 1 <= i < i' <= {n + 1}, got i={i}, i'={i_prime}")
    return [
        m
        for m in monomials(range(1, n + 2), i_prime - i)
        if (monomial_weight(m, weights) + delta).is_zero()
    ]


def partial_invariants(n: int, i: int, i_prime: int, m: int, weights: Sequence[Character] | None = None) -> dict[int, int]:
    """Invariant dims of wedge^{i'-i} V (x) rho_m for a single C^* factor."""
    weights = weights or one_parameter_weights(n)
    found = equivariant_hom(i, i_prime, Character((m,)), weights)
    return {i_prime - i: len(found)} if found else {}


def sheaf_label(i: int, n: int) -> str:
    k = n + 1 - i
    return "O" if k == 0 else f"Omega^{k}({k})[{k}]"


# --- the category -------------------------------------------------------------


def object_id(i: int) -> str:
    return f"E{i}"


def build_exterior_category(n: int) -> AInfCategory:
    """Directed, formal: only m_2 (and the unit) is non-zero."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    builder = CategoryBuilder()
    count = n + 1
    for i in range(1, count + 1):
        builder.add_object(object_id(i))
    basis: dict[tuple[int, int], list[Morphism]] = {}
    for i in range(1, count + 1):
        for j in range(i + 1, count + 1):
            basis[(i, j)] = [
                builder.add_morphism(object_id(i), object_id(j), mono.name, mono.degree)
                for mono in monomials(range(1, count + 1), j - i)
            ]
    for i, j, k in itertools.combinations(range(1, count + 1), 3):
        for first in basis[(i, j)]:
            for second in basis[(j, k)]:
                product = exterior_m2(WedgeMonomial.parse(second.name), WedgeMonomial.parse(first.name))
                if product is None:
                    continue
                sign, mono = product
                builder.add_op((second, first), Morphism(object_id(i), object_id(k), mono.name), Fraction(sign))
    return builder.build()


@dataclass(frozen=True)
class ExteriorCategory:
    """The exterior category together with its torus weights."""

    n: int
    category: AInfCategory
    weights: tuple[Character, ...]

    def monomial(self, m: Morphism) -> WedgeMonomial:
        return WedgeMonomial.parse(m.name)

    def label(self, i: int) -> str:
        return sheaf_label(i, self.n)


def exterior_category(n: int, weights: Sequence[Character] | None = None) -> ExteriorCategory:
    return ExteriorCategory(n, build_exterior_category(n), tuple(weights or standard_weights(n)))
