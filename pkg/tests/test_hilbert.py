import pytest

import census
import hilbert
import q_theory
from exact_linalg import IntegerMatrix
from exceptions import ScaleLimit


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[1, -1]], [(1, 1)]),
        ([[2, -3]], [(3, 2)]),
        ([[1, 1, -2]], [(0, 2, 1), (1, 1, 1), (2, 0, 1)]),
        ([[1, 1]], []),
        ([[0, 0]], [(0, 1), (1, 0)]),
        ([[1, -1, 0], [0, 1, -1]], [(1, 1, 1)]),
    ],
)
def test_small_systems(rows, expected):
    solutions = hilbert.fundamental_solutions(IntegerMatrix.from_rows(rows))
    assert list(solutions) == expected


def test_empty_system_gives_orthant_generators():
    A = IntegerMatrix.from_rows([], ncols=3)
    assert list(hilbert.fundamental_solutions(A)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_scale_limit():
    with pytest.raises(ScaleLimit):
        hilbert.fundamental_solutions(IntegerMatrix.zeros(1, hilbert.MAX_COLUMNS + 1))
    with pytest.raises(ScaleLimit):
        hilbert.fundamental_solutions(IntegerMatrix.zeros(1, 3), max_columns=2)


def test_gieseking_fundamental_solutions(gieseking):
    system = q_theory.q_matching_system(gieseking)
    solutions = hilbert.fundamental_solutions(system.matrix)
    assert list(solutions) == [(0, 2, 1), (1, 1, 1), (2, 0, 1)]
    expected = {census.from_reading("gieseking", v) for v in census.GIESEKING_GENERATORS.values()}
    assert set(solutions) == expected


def test_figure8_fundamental_solutions(figure8_system):
    solutions = hilbert.fundamental_solutions(figure8_system.matrix)
    assert len(solutions) == 20
    for vector in census.FIGURE8_REPRESENTATIVES.values():
        assert census.from_reading("figure8", vector) in solutions
    for q in solutions:
        x1, x2, x3, y1, y2, y3 = census.to_reading("figure8", q)
        assert x1 + y1 == 1
        assert x2 + x3 + y2 + y3 == 2


def test_figure8_representatives_generate_under_symmetry(figure8_system):
    symmetries = census.figure8_quad_symmetries()
    assert len(symmetries) == 4
    orbit = {
        census.from_reading("figure8", census.apply_position_map(g, v))
        for g in symmetries
        for v in census.FIGURE8_REPRESENTATIVES.values()
    }
    solutions = hilbert.fundamental_solutions(figure8_system.matrix)
    assert orbit == set(solutions)


def test_symmetries_preserve_the_system(figure8_system):
    for g in census.figure8_quad_symmetries():
        for row in figure8_system.matrix.rows:
            moved = census.apply_position_map(g, census.to_reading("figure8", row))
            assert moved in ((-2, 1, 1, -2, 1, 1), (2, -1, -1, 2, -1, -1))


def test_verify_hilbert_figure8(figure8_system):
    solutions = hilbert.fundamental_solutions(figure8_system.matrix)
    assert hilbert.verify_hilbert(figure8_system.matrix, solutions, 4)


def test_verify_hilbert_rejects_bad_claims():
    A = IntegerMatrix.from_rows([[1, 1, -2]])
    good = [(0, 2, 1), (1, 1, 1), (2, 0, 1)]
    assert hilbert.verify_hilbert(A, good, 3)
    assert not hilbert.verify_hilbert(A, good[:2], 3)
    assert not hilbert.verify_hilbert(A, good + [(1, 0, 0)], 3)
    assert not hilbert.verify_hilbert(A, good + [(2, 2, 2)], 3)


def test_verify_hilbert_gieseking(gieseking):
    system = q_theory.q_matching_system(gieseking)
    solutions = hilbert.fundamental_solutions(system.matrix)
    assert hilbert.verify_hilbert(system.matrix, solutions, 6)
    assert not hilbert.verify_hilbert(system.matrix, [(0, 2, 1), (2, 0, 1)], 6)


def test_random_systems_pass_brute_force(rng):
    for _ in range(15):
        A = IntegerMatrix.from_rows(rng.integers(-2, 3, size=(2, 6)).tolist())
        solutions = hilbert.fundamental_solutions(A)
        assert hilbert.verify_hilbert(A, solutions, 5)


def test_fundamental_set_container():
    found = hilbert.FundamentalSet(((0, 1), (1, 0)))
    assert len(found) == 2
    assert [0, 1] in found
    assert (1, 1) not in found
