from fractions import Fraction
from itertools import product

import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

import exact_linalg
from exact_linalg import IntegerMatrix


def random_matrix(rng, max_rows=4, max_cols=5, bound=3):
    m = int(rng.integers(1, max_rows + 1))
    n = int(rng.integers(1, max_cols + 1))
    return IntegerMatrix.from_rows(rng.integers(-bound, bound + 1, size=(m, n)).tolist())


def test_from_columns_transposes_from_rows():
    A = IntegerMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    assert IntegerMatrix.from_columns([(1, 4), (2, 5), (3, 6)]) == A
    assert A.transpose().rows == ((1, 4), (2, 5), (3, 6))


def test_matmul_and_identity():
    A = IntegerMatrix.from_rows([[1, 2], [3, 4]])
    B = IntegerMatrix.from_rows([[0, 1], [1, 0]])
    assert (A @ B).rows == ((2, 1), (4, 3))
    assert A @ IntegerMatrix.identity(2) == A


def test_apply_rejects_wrong_length():
    with pytest.raises(ValueError):
        IntegerMatrix.from_rows([[1, 2]]).apply((1, 2, 3))


def test_ragged_entries_rejected():
    with pytest.raises(ValueError):
        IntegerMatrix(2, 2, ((1, 2), (3,)))


def test_rank_matches_sympy(rng):
    for _ in range(50):
        A = random_matrix(rng)
        assert exact_linalg.rank(A) == Matrix(A.rows).rank()


def test_determinant_matches_sympy(rng):
    for _ in range(30):
        n = int(rng.integers(1, 5))
        A = IntegerMatrix.from_rows(rng.integers(-4, 5, size=(n, n)).tolist())
        assert exact_linalg.determinant(A) == Matrix(A.rows).det()


def test_determinant_of_singular_matrix():
    assert exact_linalg.determinant(IntegerMatrix.from_rows([[1, 2], [2, 4]])) == 0


def test_smith_remultiplies_exactly(rng):
    for _ in range(50):
        A = random_matrix(rng)
        d = exact_linalg.smith(A)
        assert d.U @ A @ d.V == d.S
        assert abs(exact_linalg.determinant(d.U)) == 1
        assert abs(exact_linalg.determinant(d.V)) == 1
        for i, row in enumerate(d.S.rows):
            for j, x in enumerate(row):
                if i != j:
                    assert x == 0
        nonzero = [x for x in d.diagonal if x]
        for a, b in zip(nonzero, nonzero[1:]):
            assert b % a == 0


def test_smith_diagonal_matches_sympy(rng):
    for _ in range(30):
        A = random_matrix(rng)
        ours = sorted(abs(x) for x in exact_linalg.smith(A).diagonal if x)
        snf = smith_normal_form(Matrix(A.rows), domain=ZZ)
        theirs = sorted(
            abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0
        )
        assert ours == theirs


def test_invariant_factors():
    A = IntegerMatrix.from_rows([[2, 0], [0, 4]])
    assert exact_linalg.smith(A).invariant_factors == (2, 4)
    assert exact_linalg.smith(A).rank == 2


def test_solve_rational():
    A = IntegerMatrix.from_rows([[2, 0], [0, 3]])
    assert exact_linalg.solve_rational(A, (1, 1)) == (Fraction(1, 2), Fraction(1, 3))
    assert exact_linalg.solve_rational(IntegerMatrix.from_rows([[1], [1]]), (1, 2)) is None


def test_unimodular_inverse():
    A = IntegerMatrix.from_rows([[2, 1], [1, 1]])
    inverse = exact_linalg.unimodular_inverse(A)
    assert inverse.rows == ((1, -1), (-1, 2))
    assert A @ inverse == IntegerMatrix.identity(2)


@pytest.mark.parametrize("rows", [[[1, 2], [2, 4]], [[2, 0], [0, 1]]])
def test_unimodular_inverse_rejects(rows):
    with pytest.raises(ValueError):
        exact_linalg.unimodular_inverse(IntegerMatrix.from_rows(rows))


def test_in_rational_span():
    assert exact_linalg.in_rational_span([(1, 0, 1), (0, 1, 1)], (2, 3, 5))
    assert not exact_linalg.in_rational_span([(1, 0, 1)], (0, 1, 0))
    assert exact_linalg.in_rational_span([], (0, 0))


def test_integer_nullspace_is_saturated(rng):
    for _ in range(50):
        A = random_matrix(rng, max_rows=3, max_cols=4)
        basis = exact_linalg.integer_nullspace(A)
        assert len(basis) == A.ncols - exact_linalg.rank(A)
        for v in basis:
            assert not any(A.apply(v))
        for x in product(range(-2, 3), repeat=A.ncols):
            if any(A.apply(x)):
                continue
            if not basis:
                assert not any(x)
                continue
            assert exact_linalg.lattice_coordinates(basis, x) is not None


def test_integer_nullspace_of_scaled_row():
    basis = exact_linalg.integer_nullspace(IntegerMatrix.from_rows([[2, 2, -4]]))
    assert len(basis) == 2
    assert exact_linalg.lattice_coordinates(basis, (1, 1, 1)) is not None
    assert exact_linalg.lattice_coordinates(basis, (2, 0, 1)) is not None


def test_lattice_coordinates_rejects_fractional():
    assert exact_linalg.lattice_coordinates([(2, 0), (0, 1)], (1, 0)) is None
    assert exact_linalg.lattice_coordinates([(2, 0), (0, 1)], (4, 3)) == (2, 3)


@pytest.mark.parametrize(
    "rank, torsion, generators, expected",
    [
        (2, [], [(2, 0), (0, 1)], 2),
        (2, [], [(2, 0), (0, -2)], 4),
        (2, [], [(1, 0)], None),
        (1, [2], [(1, 0)], 2),
        (1, [2], [(1, 1)], 2),
        (1, [2], [(1, 0), (0, 1)], 1),
        (0, [], [], 1),
    ],
)
def test_subgroup_index(rank, torsion, generators, expected):
    assert exact_linalg.subgroup_index(rank, torsion, generators) == expected


def test_subgroup_index_rejects_wrong_length():
    with pytest.raises(ValueError):
        exact_linalg.subgroup_index(2, [], [(1, 0, 0)])
