from fractions import Fraction

import pytest

from src.algebra.ainfinity import (
    UNIT_NAME,
    CategoryBuilder,
    GradedSpace,
    Morphism,
    check_a_infinity,
    cohomological_category,
    dg_compose,
    dg_differential,
    directed_subcategory,
    hom_cohomology,
)
from src.algebra.twisted import twisted_category
from src.errors import NotComposable, UnknownObject
from src.mirror.verify import build_delta_category, delta_id, inject_sign_flip, window_for
from src.geometry.coamoeba import category_of


def two_term_complex(acyclic: bool = True):
    builder = CategoryBuilder()
    builder.add_object("X", unit=False)
    builder.add_object("Y", unit=False)
    a = builder.add_morphism("X", "Y", "a", 0)
    b = builder.add_morphism("X", "Y", "b", 1)
    if acyclic:
        builder.add_op((a,), b, 1)
    return builder.build()


def test_graded_space_rejects_duplicate_names():
    with pytest.raises(ValueError):
        GradedSpace((("a", 0), ("a", 1)))
    space = GradedSpace((("a", 0), ("b", 2), ("c", 2)))
    assert space.dims_by_degree() == {0: 1, 2: 2}
    assert space.in_degree(2) == ["b", "c"]


def test_degree_rule_is_enforced():
    builder = CategoryBuilder()
    for x in ("X", "Y", "Z"):
        builder.add_object(x)
    f = builder.add_morphism("X", "Y", "f", 1)
    g = builder.add_morphism("Y", "Z", "g", 1)
    builder.add_morphism("X", "Z", "h", 1)
    builder.add_op((g, f), Morphism("X", "Z", "h"))
    with pytest.raises(ValueError, match="degree rule"):
        builder.build()


def test_non_composable_inputs_are_rejected():
    builder = CategoryBuilder()
    for x in ("X", "Y", "Z"):
        builder.add_object(x)
    f = builder.add_morphism("X", "Y", "f", 0)
    h = builder.add_morphism("X", "Z", "h", 0)
    builder.add_op((h, f), Morphism("X", "Z", "h"))
    with pytest.raises(NotComposable):
        builder.build()


def test_unknown_object():
    builder = CategoryBuilder()
    builder.add_object("X")
    with pytest.raises(UnknownObject):
        builder.add_morphism("X", "W", "f", 0)
    cat = builder.build()
    with pytest.raises(UnknownObject):
        cat.hom("X", "W")


def test_strict_units(exteriors):
    cat = exteriors(2)
    a = Morphism("E1", "E2", "e1")
    unit1, unit2 = cat.units["E1"], cat.units["E2"]
    assert unit1.name == UNIT_NAME
    assert cat.op((a, unit1)) == {a: 1}
    assert cat.op((unit2, a)) == {a: -1}
    b = Morphism("E1", "E3", "e1^e2")
    assert cat.op((cat.units["E3"], b)) == {b: 1}


@pytest.mark.parametrize("n", [2, 3])
def test_associative_product_passes(exteriors, n):
    assert check_a_infinity(exteriors(n), max_arity=3) == []


def test_corrupted_sign_is_caught_at_arity_three(coamoebas):
    cat = inject_sign_flip(category_of(coamoebas(3)))
    violations = check_a_infinity(cat, max_arity=3)
    assert violations
    assert {v.arity for v in violations} == {3}


def test_delta_category_passes_to_arity_four():
    cat = build_delta_category(3, range(1, 9))
    assert len(cat.objects) == 8
    assert check_a_infinity(cat, max_arity=4) == []


def test_directed_subcategory_of_exterior(exteriors):
    cat = exteriors(1)
    directed = directed_subcategory(cat, ["E1", "E2"])
    assert directed.hom("E1", "E2") == cat.hom("E1", "E2")
    assert directed.hom("E2", "E1").dim == 0
    assert directed_subcategory(directed, ["E1", "E2"]).homs == directed.homs


def test_directed_subcategory_of_delta_category():
    cat = build_delta_category(3, range(1, 9))
    directed = directed_subcategory(cat, [delta_id(i) for i in range(1, 9)])
    assert directed.hom("D5", "D2").dim == 0
    assert directed.hom("D2", "D5").dims_by_degree()[3] == 1


def test_directed_subcategory_reversed_order_keeps_units_only(exteriors):
    cat = exteriors(2)
    directed = directed_subcategory(cat, ["E3", "E2", "E1"])
    assert directed.hom_dims() == {("E1", "E1"): 1, ("E2", "E2"): 1, ("E3", "E3"): 1}


def test_directed_subcategory_of_single_object():
    builder = CategoryBuilder()
    builder.add_object("X")
    builder.add_morphism("X", "X", "t", 2)
    directed = directed_subcategory(builder.build(), ["X"])
    assert directed.hom("X", "X").names == [UNIT_NAME]


def test_cohomological_category_with_zero_differential(exteriors):
    cat = exteriors(2)
    h = cohomological_category(cat)
    assert h.dims("E1", "E3") == {2: 3}
    assert h.dims("E1", "E2") == {1: 3}


def test_acyclic_two_term_complex():
    assert hom_cohomology(two_term_complex(), "X", "Y").dims() == {}
    assert hom_cohomology(two_term_complex(acyclic=False), "X", "Y").dims() == {0: 1, 1: 1}


def test_cone_homs_through_cohomological_category(cones):
    system = cones(3)
    tw = twisted_category(system.delta, [system.cones[0], system.cones[2], system.cones[-2]])
    h = cohomological_category(tw)
    assert h.dims("C0", "C2") == {2: 3}
    assert h.dims("C0", "C-2") == {2: 3}


def test_dg_translation_signs(exteriors):
    cat = exteriors(2)
    a1 = {Morphism("E1", "E2", "e1"): Fraction(1)}
    a2 = {Morphism("E2", "E3", "e2"): Fraction(1)}
    # m_2(e2, e1) = -e2 ^ e1 = e1 ^ e2; the dg composite flips it once more
    assert cat.evaluate([a2, a1]) == {Morphism("E1", "E3", "e1^e2"): 1}
    assert dg_compose(cat, a2, a1) == {Morphism("E1", "E3", "e1^e2"): -1}
    assert dg_differential(cat, a1) == {}
