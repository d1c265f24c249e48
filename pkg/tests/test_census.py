import pytest

import census
import triangulation


def test_builtins_load():
    for name in census.BUILTINS:
        tri = census.load_builtin(name)
        assert isinstance(tri, triangulation.Triangulation)
        assert (census.DATA_DIR / census.BUILTINS[name]).exists()


def test_unknown_builtin():
    with pytest.raises(KeyError, match="figure8"):
        census.load_builtin("trefoil")


@pytest.mark.parametrize("name", sorted(census.READING_ORDER))
def test_reading_order_round_trip(name):
    n = len(census.READING_ORDER[name])
    vector = tuple(range(10, 10 + n))
    assert census.to_reading(name, census.from_reading(name, vector)) == vector
    assert census.from_reading(name, census.to_reading(name, vector)) == vector


def test_gieseking_reading_order():
    assert census.from_reading("gieseking", (1, 2, 0)) == (2, 0, 1)
    assert census.to_reading("gieseking", (0, 2, 1)) == (1, 0, 2)


def test_symmetry_group():
    group = census.figure8_quad_symmetries()
    assert group == [
        (0, 1, 2, 3, 4, 5),
        (0, 2, 1, 3, 5, 4),
        (3, 4, 5, 0, 1, 2),
        (3, 5, 4, 0, 2, 1),
    ]
    for g in group:
        for h in group:
            assert tuple(h[g[i]] for i in range(6)) in group


def test_symmetry_group_excludes_single_swaps():
    group = census.figure8_quad_symmetries()
    assert (0, 2, 1, 3, 4, 5) not in group
    assert (0, 1, 2, 3, 5, 4) not in group


def test_symmetries_come_from_automorphisms(figure8):
    for automorphism in triangulation.automorphisms(figure8):
        tet_map = [automorphism[t][0] for t in range(figure8.num_tetrahedra)]
        vertex_maps = [automorphism[t][1] for t in range(figure8.num_tetrahedra)]
        assert triangulation.relabel(figure8, tet_map, vertex_maps) == figure8


def test_apply_position_map():
    assert census.apply_position_map((1, 0, 2), (5, 6, 7)) == (6, 5, 7)


def test_reference_index_covers_builtins():
    assert set(census.REFERENCE_INDEX) == set(census.BUILTINS)
