import math
from collections import Counter

import pytest

from src.algebra.ainfinity import Morphism, check_a_infinity
from src.mirror.beilinson import (
    Character,
    WedgeMonomial,
    build_exterior_category,
    equivariant_hom,
    exterior_category,
    exterior_m2,
    monomial_weight,
    monomials,
    one_parameter_weights,
    partial_invariants,
    sheaf_label,
    standard_weights,
    wedge_product,
)


def test_wedge_monomial_is_canonical():
    assert WedgeMonomial.of([3, 1]) == WedgeMonomial((1, 3))
    assert WedgeMonomial.parse("e1^e3").indices == (1, 3)
    assert WedgeMonomial.parse("1") == WedgeMonomial()
    assert WedgeMonomial((1, 3)).name == "e1^e3"
    with pytest.raises(ValueError):
        WedgeMonomial((3, 1))


def test_wedge_product_signs():
    assert wedge_product(WedgeMonomial((2,)), WedgeMonomial((1,))) == (-1, WedgeMonomial((1, 2)))
    assert wedge_product(WedgeMonomial((1,)), WedgeMonomial((1, 2))) is None
    assert exterior_m2(WedgeMonomial((2,)), WedgeMonomial((1,))) == (1, WedgeMonomial((1, 2)))


def test_exterior_hom_dims_for_p3():
    cat = build_exterior_category(3)
    assert cat.hom("E1", "E2").dim == 4
    assert cat.hom("E1", "E3").dim == 6
    assert cat.hom("E1", "E4").dim == 4
    assert cat.hom("E2", "E1").dim == 0
    assert cat.hom("E2", "E2").names == ["id"]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_exterior_hom_dims_are_binomial(n):
    cat = build_exterior_category(n)
    for i in range(1, n + 2):
        for j in range(i + 1, n + 2):
            assert cat.hom(f"E{i}", f"E{j}").dims_by_degree() == {j - i: math.comb(n + 1, j - i)}


def test_exterior_products():
    cat = build_exterior_category(3)
    a1 = Morphism("E1", "E2", "e1")
    a2 = Morphism("E2", "E3", "e2")
    assert cat.op((a2, a1)) == {Morphism("E1", "E3", "e1^e2"): 1}
    assert cat.op((Morphism("E2", "E3", "e1"), a1)) == {}


@pytest.mark.parametrize("n", [2, 3])
def test_exterior_category_passes_relations(n):
    assert check_a_infinity(build_exterior_category(n), max_arity=4) == []


def test_exterior_category_rejects_n_zero():
    with pytest.raises(ValueError):
        build_exterior_category(0)


def test_equivariant_fixtures_for_p3():
    w = one_parameter_weights(3)
    assert equivariant_hom(1, 2, Character((-1,)), w) == [WedgeMonomial((4,))]
    assert len(equivariant_hom(1, 2, Character((0,)), w)) == 3
    assert equivariant_hom(1, 3, Character((0,)), w) == monomials([1, 2, 3], 2)
    assert len(equivariant_hom(1, 3, Character((-1,)), w)) == 3
    assert equivariant_hom(1, 4, Character((0,)), w) == [WedgeMonomial((1, 2, 3))]
    assert len(equivariant_hom(1, 4, Character((-1,)), w)) == 3
    assert equivariant_hom(1, 2, Character((5,)), w) == []


def test_equivariant_hom_requires_directed_pair():
    with pytest.raises(ValueError):
        equivariant_hom(2, 2, Character.zero(3), standard_weights(3))


@pytest.mark.parametrize("n", [2, 3])
def test_summing_characters_recovers_binomials(n):
    weights = standard_weights(n)
    for i in range(1, n + 2):
        for j in range(i + 1, n + 2):
            counts = Counter(monomial_weight(m, weights) for m in monomials(range(1, n + 2), j - i))
            total = sum(len(equivariant_hom(i, j, -chi, weights)) for chi in counts)
            assert total == math.comb(n + 1, j - i)


def test_standard_weights_are_distinct_characters():
    weights = standard_weights(3)
    assert weights[0].is_zero()
    assert weights[1] == Character.unit(3, 1)
    assert weights[3] == Character.unit(3, 3)


def test_translation_covariance():
    n = 3
    weights = standard_weights(n)
    delta = -weights[1]
    for k in range(1, n + 2):
        shifted = equivariant_hom(1, 3, delta - weights[k - 1], weights)
        for m in equivariant_hom(1, 2, delta, weights):
            product = wedge_product(m, WedgeMonomial((k,)))
            if product is not None:
                assert product[1] in shifted


def test_partial_invariants():
    assert partial_invariants(3, 1, 4, 0) == {3: 1}
    assert partial_invariants(3, 1, 2, 0) == {1: 3}
    assert partial_invariants(3, 1, 2, -1) == {1: 1}
    assert partial_invariants(3, 1, 2, 4) == {}


def test_metadata_labels():
    assert sheaf_label(1, 3) == "Omega^3(3)[3]"
    assert sheaf_label(4, 3) == "O"
    ext = exterior_category(2)
    assert ext.label(2) == "Omega^1(1)[1]"
    assert ext.monomial(Morphism("E1", "E3", "e1^e3")) == WedgeMonomial((1, 3))
