"""
Quadrilateral coordinates: corner signs, the Q-matching system, the
dimension of its solution space and the lift to the orientable double cover.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import exact_linalg
import normal_coords
import triangulation
from exact_linalg import IntegerMatrix
from exceptions import DimensionMismatch, NotASolution
from normal_coords import quad_corner_slots, quad_of_edge
from triangulation import EDGE_VERTICES, permutation_sign

logger = logging.getLogger(__name__)

QUADS_PER_TET = 3


@dataclass(frozen=True)
class CornerSign:
    """At one edge incidence: the quad carrying + and the quad carrying -."""

    tet: int
    edge: int
    plus: int
    minus: int


@dataclass(frozen=True)
class CornerSigns:
    """
    Per edge class, the signed quad corners at each of its incidences.
    `source` is "orientation" or "edge_walk".
    """

    edges: tuple
    source: str

    def sign_of(self, edge_class, tet, quad):
        """Sum of the signs quad `quad` of `tet` carries at this edge class."""
        total = 0
        for corner in self.edges[edge_class]:
            if corner.tet != tet:
                continue
            if corner.plus == quad:
                total += 1
            if corner.minus == quad:
                total -= 1
        return total

    def negated(self):
        return CornerSigns(
            tuple(
                tuple(CornerSign(c.tet, c.edge, c.minus, c.plus) for c in corners)
                for corners in self.edges
            ),
            self.source,
        )


def _oriented_corner(t, edge, o):
    a, b = EDGE_VERTICES[edge]
    c, d = (v for v in range(4) if v not in (a, b))
    if permutation_sign((a, b, c, d)) == -1:
        c, d = d, c
    plus, minus = quad_of_edge(a, c), quad_of_edge(a, d)
    if o == -1:
        plus, minus = minus, plus
    return CornerSign(t, edge, plus, minus)


def edge_walk_signs(tri):
    """
    Signs transported along each edge walk: at the embedding (v0, v1, v2, v3)
    the quad pairing v0 with v2 is + and the quad pairing v0 with v3 is -.
    Consistent around every edge; no consistency between edges is implied.
    """
    edges = []
    for cls in triangulation.edge_classes(tri):
        corners = []
        for incidence in cls.incidences:
            v0, _, v2, v3 = incidence.vertices
            corners.append(
                CornerSign(incidence.tet, incidence.edge, quad_of_edge(v0, v2), quad_of_edge(v0, v3))
            )
        edges.append(tuple(corners))
    return CornerSigns(tuple(edges), "edge_walk")


def corner_signs(tri, orientation=None):
    """
    Corner signs from a tetrahedron orientation when one exists: at edge
    {a, b} with (a, b, c, d) an even ordering, the quad pairing a with c
    carries +o_t and the quad pairing a with d carries -o_t. Non-orientable
    triangulations fall back to edge_walk_signs.
    """
    if orientation is None:
        orientation = triangulation.orientation(tri)
    if orientation is None:
        return edge_walk_signs(tri)
    edges = []
    for cls in triangulation.edge_classes(tri):
        corners = tuple(
            _oriented_corner(inc.tet, inc.edge, orientation[inc.tet])
            for inc in cls.incidences
        )
        edges.append(corners)
    return CornerSigns(tuple(edges), "orientation")


def q_column(t, q):
    return QUADS_PER_TET * t + q


@dataclass(frozen=True)
class QMatchingSystem:
    matrix: IntegerMatrix
    signs: CornerSigns

    @property
    def rank(self):
        return exact_linalg.rank(self.matrix)

    @property
    def nullity(self):
        return self.matrix.ncols - self.rank

    def violated_equation(self, q):
        """Index of the first equation q violates, or None."""
        if len(q) != self.matrix.ncols:
            raise ValueError(
                f"Q-vector has length {len(q)}, expected {self.matrix.ncols}"
            )
        for row, value in enumerate(self.matrix.apply(q)):
            if value:
                return row
        return None


def q_matching_system(tri, signs=None):
    """One row per edge class: the signed count of quad corners on that edge."""
    if signs is None:
        signs = corner_signs(tri)
    k = tri.num_tetrahedra
    rows = []
    for corners in signs.edges:
        row = [0] * (QUADS_PER_TET * k)
        for corner in corners:
            row[q_column(corner.tet, corner.plus)] += 1
            row[q_column(corner.tet, corner.minus)] -= 1
        rows.append(row)
    matrix = IntegerMatrix.from_rows(rows, ncols=QUADS_PER_TET * k)
    logger.debug("Q-matching system %dx%d from %s signs", matrix.nrows, matrix.ncols, signs.source)
    return QMatchingSystem(matrix, signs)


def require_solution(tri, q, system=None):
    if system is None:
        system = q_matching_system(tri)
    row = system.violated_equation(q)
    if row is not None:
        raise NotASolution(f"Q-matching equation {row} is violated by {tuple(q)}", equation=row)


def torus_cusp_count(tri):
    return sum(1 for link in triangulation.cusps(tri) if link.kind == "torus")


def dim_W(tri):
    """
    Dimension of the Q-matching solution space, checked against 2k + c_T
    (c_T torus cusps; a Klein bottle cusp adds no dimension).
    """
    triangulation.check_ideal(tri)
    system = q_matching_system(tri)
    k = tri.num_tetrahedra
    c_torus = torus_cusp_count(tri)
    nullity = system.nullity
    if nullity != 2 * k + c_torus or system.rank != k - c_torus:
        raise DimensionMismatch(
            f"Q-matching nullity {nullity} (rank {system.rank}) but 2k + c = "
            f"{2 * k + c_torus} for k={k} with {c_torus} torus cusps"
        )
    logger.info("dim W = %d", nullity)
    return nullity


def compact_classes(tri):
    """Q-projections of the canonical basis; they span the compact classes."""
    return [normal_coords.q_project(v) for v in normal_coords.canonical_basis(tri)]


def is_compact_class(tri, q):
    """True iff q is the Q-projection of a solution of the compatibility system."""
    require_solution(tri, q)
    return exact_linalg.in_rational_span(compact_classes(tri), q)


def quad_permutation(isomorphism):
    """
    Column map of quad coordinates induced by an isomorphism
    t -> (t', vertex relabeling): column[q_column(t, q)] is the image column.
    """
    columns = [0] * (QUADS_PER_TET * len(isomorphism))
    for t, (image, pi) in isomorphism.items():
        for quad in range(QUADS_PER_TET):
            a, b = EDGE_VERTICES[quad]
            columns[q_column(t, quad)] = q_column(image, quad_of_edge(pi(a), pi(b)))
    return tuple(columns)


def lift_to_cover(tri, cover, q):
    """Copy each quad coordinate onto both lifts of its tetrahedron."""
    require_solution(tri, q)
    lifted = []
    for cover_tet in range(cover.cover.num_tetrahedra):
        t = cover.projection[cover_tet]
        lifted.extend(q[q_column(t, quad)] for quad in range(QUADS_PER_TET))
    return tuple(lifted)


def euler_characteristic(tri, q):
    """
    Euler characteristic carried by the quads of q: each corner on an edge of
    degree d contributes 1/d, each quad -1.
    """
    if len(q) != QUADS_PER_TET * tri.num_tetrahedra:
        raise ValueError(f"Q-vector has length {len(q)}")
    classes = triangulation.edge_class_of(tri)
    degrees = [cls.degree for cls in triangulation.edge_classes(tri)]
    total = Fraction(0)
    for t in range(tri.num_tetrahedra):
        for quad in range(QUADS_PER_TET):
            m = q[q_column(t, quad)]
            if not m:
                continue
            corners = sum(Fraction(1, degrees[classes[(t, e)]]) for e in quad_corner_slots(quad))
            total += m * (corners - 1)
    return total
