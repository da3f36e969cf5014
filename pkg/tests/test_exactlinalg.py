import random
from fractions import Fraction

import pytest
import sympy

from src.algebra.exactlinalg import (
    RationalMatrix,
    cohomology,
    determinant,
    kernel_basis,
    rank,
    solve_in_span,
)
from src.errors import CompositionNotZero, NotInSubspace
from src.mirror.beilinson import WedgeMonomial, monomials, wedge_product


def wedge_matrix(dim: int, multiplier: int, degree: int) -> RationalMatrix:
    """Matrix of e_multiplier ^ (.) from wedge^degree to wedge^{degree+1} of a dim-dimensional space."""
    source = monomials(range(1, dim + 1), degree)
    target = monomials(range(1, dim + 1), degree + 1)
    position = {m: k for k, m in enumerate(target)}
    entries = {}
    for j, m in enumerate(source):
        product = wedge_product(WedgeMonomial((multiplier,)), m)
        if product is not None:
            sign, out = product
            entries[(position[out], j)] = sign
    return RationalMatrix(len(target), len(source), entries)


def random_matrix(rng: random.Random, rows: int, cols: int, density: float = 0.5) -> RationalMatrix:
    entries = {
        (i, j): Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        for i in range(rows)
        for j in range(cols)
        if rng.random() < density
    }
    return RationalMatrix(rows, cols, entries)


def random_unimodular(rng: random.Random, size: int) -> RationalMatrix:
    m = RationalMatrix.identity(size)
    for _ in range(3 * size):
        i, j = rng.sample(range(size), 2) if size > 1 else (0, 0)
        if i == j:
            continue
        step = RationalMatrix(size, size, {**{(k, k): 1 for k in range(size)}, (i, j): rng.randint(-2, 2)})
        m = step @ m
    return m


def test_rank_trivial_cases():
    assert rank(RationalMatrix.identity(2)) == 2
    assert rank(RationalMatrix.zeros(3, 2)) == 0


def test_rank_of_wedge_multiplication():
    m = wedge_matrix(4, 1, 1)
    assert m.shape == (6, 4)
    assert rank(m) == 3


def test_kernel_basis_trivial_cases():
    assert len(kernel_basis(RationalMatrix.zeros(2, 3))) == 3
    assert kernel_basis(RationalMatrix.identity(2)) == []


def test_kernel_of_wedge_multiplication_is_the_multiplier():
    basis = kernel_basis(wedge_matrix(3, 1, 1))
    assert basis == [(Fraction(1), Fraction(0), Fraction(0))]


def test_rank_nullity_against_sympy():
    rng = random.Random(7)
    for _ in range(25):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = random_matrix(rng, rows, cols)
        reference = sympy.Matrix(m.to_rows())
        assert rank(m) == reference.rank()
        assert rank(m) + len(kernel_basis(m)) == cols
        assert len(kernel_basis(m)) == len(reference.nullspace())
        for v in kernel_basis(m):
            assert not any(m.apply(v))


def test_sparse_and_dense_storage_agree():
    sparse = RationalMatrix(4, 4, {(0, 0): 1})
    dense = RationalMatrix.from_rows([[1, 2, 3, 4], [0, 1, 0, 0], [5, 0, 1, 0], [0, 0, 0, 1]])
    assert sparse.storage == "sparse"
    assert dense.storage == "dense"
    assert (dense @ sparse).to_rows() == (RationalMatrix.from_rows(dense.to_rows()) @ sparse).to_rows()
    assert dense.transpose().transpose() == dense


def test_cohomology_trivial_cases():
    zero = RationalMatrix.zeros(3, 3)
    assert cohomology(zero, zero).dimension == 3
    assert cohomology(RationalMatrix.identity(3), zero).dimension == 0


def test_cohomology_rejects_non_complex():
    d = RationalMatrix.identity(2)
    with pytest.raises(CompositionNotZero):
        cohomology(d, d)


def test_cohomology_of_koszul_piece():
    # wedge^0 -> wedge^1 -> wedge^2 by e_1 ^ (.): exact in the middle
    d_in = wedge_matrix(3, 1, 0)
    d_out = wedge_matrix(3, 1, 1)
    h = cohomology(d_in, d_out, degree=1)
    assert h.dimension == 0
    assert h.degree == 1


def test_cohomology_dimension_invariant_under_basis_change():
    rng = random.Random(11)
    # C^0 -> C^1 -> C^2 with d_out . d_in = 0 by construction
    d_in = RationalMatrix.from_rows([[1, 0], [0, 0], [0, 1], [0, 0]])
    d_out = RationalMatrix.from_rows([[0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
    expected = cohomology(d_in, d_out).dimension
    assert expected == 0
    for _ in range(5):
        p = random_unimodular(rng, 4)
        p_inv = RationalMatrix.from_rows([[Fraction(int(x.p), int(x.q)) for x in row] for row in sympy.Matrix(p.to_rows()).inv().tolist()])
        assert cohomology(p @ d_in, d_out @ p_inv).dimension == expected


def test_cohomology_is_bit_exact_across_runs():
    d_in = RationalMatrix.from_rows([[1, 2], [2, 4], [0, 1]])
    d_out = RationalMatrix.from_rows([[2, -1, 0]])
    first = cohomology(d_in, d_out)
    second = cohomology(d_in, d_out)
    assert first.representatives == second.representatives


def test_coordinates_of_cocycles():
    zero = RationalMatrix.zeros(2, 0)
    d_out = RationalMatrix.from_rows([[1, 1]])
    h = cohomology(zero, d_out)
    assert h.dimension == 1
    (rep,) = h.representatives
    assert h.coordinates([3 * x for x in rep]) == (Fraction(3),)
    with pytest.raises(NotInSubspace):
        h.coordinates([Fraction(1), Fraction(0)])


def test_solve_in_span():
    basis = [(Fraction(1), Fraction(1), Fraction(0)), (Fraction(0), Fraction(1), Fraction(1))]
    assert solve_in_span(basis, (Fraction(2), Fraction(5), Fraction(3))) == (Fraction(2), Fraction(3))
    with pytest.raises(NotInSubspace):
        solve_in_span(basis, (Fraction(1), Fraction(0), Fraction(0)))


def test_determinant():
    assert determinant(RationalMatrix.from_rows([[2, 1], [1, 1]])) == 1
    assert determinant(RationalMatrix.from_rows([[1, 2], [2, 4]])) == 0
    with pytest.raises(ValueError):
        determinant(RationalMatrix.zeros(2, 3))
