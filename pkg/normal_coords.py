"""
Standard normal coordinates: the 7k-dimensional compatibility system, the
edge functionals and the canonical basis of tetrahedral and edge solutions.

A NormalVector is a plain tuple of integers of length 7k laid out per
tetrahedron as (tri0, tri1, tri2, tri3, quad0, quad1, quad2); triangle v cuts
off vertex v and quad q separates EDGE_VERTICES[q] from EDGE_VERTICES[5 - q].
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import exact_linalg
import triangulation
from exact_linalg import IntegerMatrix, RationalVector
from exceptions import BasisDefect, IndexOutOfRange, NotASolution
from triangulation import EDGE_VERTICES

logger = logging.getLogger(__name__)

COORDS_PER_TET = 7


def triangle_column(t, v):
    return COORDS_PER_TET * t + v


def quad_column(t, q):
    return COORDS_PER_TET * t + 4 + q


def quad_of_edge(a, b):
    """The quad type separating edge ab from its opposite edge."""
    e = triangulation.edge_index(a, b)
    return min(e, 5 - e)


def quad_corner_slots(q):
    """The four edge slots a quad of type q has corners on."""
    return tuple(e for e in range(6) if e not in (q, 5 - q))


def triangle_corner_slots(v):
    return tuple(triangulation.edge_index(v, w) for w in range(4) if w != v)


@dataclass(frozen=True)
class CompatibilitySystem:
    """
    6k x 7k matching matrix; row_labels[r] = ((t, f), v) names the glued face
    pair by its lesser side and the normal arc by the vertex it cuts off.
    """

    matrix: IntegerMatrix
    row_labels: tuple

    @property
    def nullity(self):
        return self.matrix.ncols - exact_linalg.rank(self.matrix)


def compatibility_system(tri):
    """One row per glued face pair and normal arc type in that face."""
    k = tri.num_tetrahedra
    rows = []
    labels = []
    for (t, f), (target, _), p in tri.face_pairs():
        for v in range(4):
            if v == f:
                continue
            row = [0] * (COORDS_PER_TET * k)
            row[triangle_column(t, v)] += 1
            row[quad_column(t, quad_of_edge(v, f))] += 1
            row[triangle_column(target, p(v))] -= 1
            row[quad_column(target, quad_of_edge(p(v), p(f)))] -= 1
            rows.append(row)
            labels.append(((t, f), v))
    matrix = IntegerMatrix.from_rows(rows, ncols=COORDS_PER_TET * k)
    logger.debug("compatibility system %dx%d", matrix.nrows, matrix.ncols)
    return CompatibilitySystem(matrix, tuple(labels))


def dim_V(tri):
    return compatibility_system(tri).nullity


def is_normal_solution(tri, vector):
    """True iff vector satisfies every compatibility equation."""
    _check_length(tri, vector)
    return all(x == 0 for x in compatibility_system(tri).matrix.apply(vector))


def _check_length(tri, vector):
    expected = COORDS_PER_TET * tri.num_tetrahedra
    if len(vector) != expected:
        raise ValueError(f"normal vector has length {len(vector)}, expected {expected}")


def _check_tet(tri, t):
    if not 0 <= t < tri.num_tetrahedra:
        raise IndexOutOfRange(
            f"tetrahedron {t} out of range (k={tri.num_tetrahedra})"
        )


def _check_edge(tri, i):
    e = len(triangulation.edge_classes(tri))
    if not 0 <= i < e:
        raise IndexOutOfRange(f"edge {i} out of range (e={e})")


def _edge_counts(tri, i, t, slots):
    classes = triangulation.edge_class_of(tri)
    return sum(1 for e in slots if classes[(t, e)] == i)


def edge_functional(tri, i):
    """
    phi_i: each disk type maps to (its vertices on edge i) / (degree of edge i).

    A vertex on a tetrahedron edge slot counts once for every slot glued to
    edge i, so self-identified tetrahedra contribute with multiplicity.
    """
    _check_edge(tri, i)
    degree = triangulation.edge_classes(tri)[i].degree
    values = []
    for t in range(tri.num_tetrahedra):
        for v in range(4):
            values.append(Fraction(_edge_counts(tri, i, t, triangle_corner_slots(v)), degree))
        for q in range(3):
            values.append(Fraction(_edge_counts(tri, i, t, quad_corner_slots(q)), degree))
    return RationalVector(tuple(values))


def tetra_solution(tri, t):
    """alpha_t: -1 on the four triangles and +1 on the three quads of t."""
    _check_tet(tri, t)
    vector = [0] * (COORDS_PER_TET * tri.num_tetrahedra)
    for v in range(4):
        vector[triangle_column(t, v)] = -1
    for q in range(3):
        vector[quad_column(t, q)] = 1
    return tuple(vector)


def edge_solution(tri, i):
    """
    beta_i: -n on every triangle type with n vertices on edge i, and +1 on
    the quad separating each incident edge slot from its opposite slot.
    """
    _check_edge(tri, i)
    vector = [0] * (COORDS_PER_TET * tri.num_tetrahedra)
    for t in range(tri.num_tetrahedra):
        for v in range(4):
            n = _edge_counts(tri, i, t, triangle_corner_slots(v))
            vector[triangle_column(t, v)] = -n
    for incidence in triangulation.edge_classes(tri)[i].incidences:
        a, b = EDGE_VERTICES[incidence.edge]
        vector[quad_column(incidence.tet, quad_of_edge(a, b))] += 1
    return tuple(vector)


def vertex_link_vector(tri, cusp):
    """The vertex-linking surface of one cusp: every link triangle once."""
    links = triangulation.cusps(tri)
    if not 0 <= cusp < len(links):
        raise IndexOutOfRange(f"cusp {cusp} out of range (c={len(links)})")
    vector = [0] * (COORDS_PER_TET * tri.num_tetrahedra)
    for t, v in links[cusp].triangles:
        vector[triangle_column(t, v)] = 1
    return tuple(vector)


def q_project(vector):
    """The 3k quad coordinates of a 7k normal vector, tetrahedron-major."""
    if len(vector) % COORDS_PER_TET:
        raise ValueError(f"length {len(vector)} is not a multiple of {COORDS_PER_TET}")
    k = len(vector) // COORDS_PER_TET
    return tuple(vector[quad_column(t, q)] for t in range(k) for q in range(3))


def pairing_matrix(tri):
    """Table of phi_i(beta_j); equals -2 times the identity."""
    e = len(triangulation.edge_classes(tri))
    functionals = [edge_functional(tri, i) for i in range(e)]
    betas = [edge_solution(tri, j) for j in range(e)]
    return tuple(tuple(phi.dot(beta) for beta in betas) for phi in functionals)


def canonical_basis(tri):
    """
    The k tetrahedral solutions followed by the e edge solutions.

    Raises BasisDefect unless they are independent solutions whose number
    equals the nullity of the compatibility system.
    """
    triangulation.check_ideal(tri)
    system = compatibility_system(tri)
    alphas = [tetra_solution(tri, t) for t in range(tri.num_tetrahedra)]
    betas = [edge_solution(tri, i) for i in range(len(triangulation.edge_classes(tri)))]
    basis = alphas + betas
    for index, vector in enumerate(basis):
        residual = system.matrix.apply(vector)
        if any(residual):
            row = next(r for r, x in enumerate(residual) if x)
            raise BasisDefect(
                f"basis vector {index} violates compatibility equation {row} "
                f"{system.row_labels[row]}"
            )
    stacked = IntegerMatrix.from_rows(basis, ncols=system.matrix.ncols)
    independent = exact_linalg.rank(stacked)
    nullity = system.nullity
    if independent != len(basis) or len(basis) != nullity:
        raise BasisDefect(
            f"{len(basis)} basis vectors of rank {independent} for a solution "
            f"space of dimension {nullity}"
        )
    logger.info("canonical basis: %d tetrahedral + %d edge solutions", len(alphas), len(betas))
    return basis


def require_normal_solution(tri, vector):
    """Raise NotASolution naming the first violated compatibility equation."""
    _check_length(tri, vector)
    residual = compatibility_system(tri).matrix.apply(vector)
    for row, x in enumerate(residual):
        if x:
            raise NotASolution(f"compatibility equation {row} is violated", equation=row)
