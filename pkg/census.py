"""
Builtin triangulations and the coordinate data attached to them.
"""

import logging
from pathlib import Path

import q_theory
import triangulation

logger = logging.getLogger(__name__)

# Configuration
DATA_DIR = Path(__file__).resolve().parent / "data"
BUILTINS = {
    "figure8": "figure8.tri",
    "gieseking": "gieseking.tri",
}

# Machine quad column feeding each reading position
# (x1, x2, x3, y1, y2, y3) resp. (x1, x2, x3): the distinguished quad, whose
# primitive Q-matching coefficient is -2, comes first in each tetrahedron.
READING_ORDER = {
    "figure8": (0, 1, 2, 3, 4, 5),
    "gieseking": (2, 0, 1),
}

# Worked solutions in reading order.
FIGURE8_REPRESENTATIVES = {
    "s1": (1, 0, 0, 0, 0, 2),
    "s2": (1, 2, 0, 0, 0, 0),
    "s3": (1, 1, 1, 0, 0, 0),
    "s4": (1, 1, 0, 0, 1, 0),
    "s5": (1, 1, 0, 0, 0, 1),
    "s6": (1, 0, 0, 0, 1, 1),
}
GIESEKING_GENERATORS = {
    "t1": (1, 1, 1),
    "t2": (1, 2, 0),
    "t3": (1, 0, 2),
}

# Index of the boundary image as stated alongside the worked examples.
REFERENCE_INDEX = {
    "figure8": 2,
    "gieseking": 4,
}


def load_builtin(name):
    """Loads one of the builtin triangulations by name."""
    try:
        filename = BUILTINS[name]
    except KeyError:
        raise KeyError(
            f"unknown builtin '{name}'; choose from {', '.join(sorted(BUILTINS))}"
        ) from None
    tri = triangulation.load(DATA_DIR / filename)
    logger.debug("loaded builtin %s", name)
    return tri


def from_reading(name, vector):
    """Machine quad vector from a vector written in reading order."""
    order = READING_ORDER[name]
    machine = [0] * len(order)
    for position, column in enumerate(order):
        machine[column] = vector[position]
    return tuple(machine)


def to_reading(name, vector):
    """Reading order from a machine quad vector."""
    return tuple(vector[column] for column in READING_ORDER[name])


def figure8_quad_symmetries():
    """
    Quad relabelings induced by the combinatorial automorphisms of the
    figure-8 triangulation, as permutations of reading positions (image
    position per position).

    Automorphisms differing by a relabeling that fixes every quad give the
    same map; the figure-8 has four distinct maps.
    """
    order = READING_ORDER["figure8"]
    position = {column: i for i, column in enumerate(order)}
    group = set()
    for automorphism in triangulation.automorphisms(load_builtin("figure8")):
        columns = q_theory.quad_permutation(automorphism)
        group.add(tuple(position[columns[column]] for column in order))
    return sorted(group)


def apply_position_map(mapping, vector):
    """Move entry i of vector to position mapping[i]."""
    result = [0] * len(vector)
    for i, value in enumerate(vector):
        result[mapping[i]] = value
    return tuple(result)
