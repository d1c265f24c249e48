"""
The boundary map: oriented quad boundary arcs as 1-cycles on the cusp
cross-sections, their homology classes and the index of the image.

Each cusp is triangulated by its link triangles (t, v). An edge of the cusp
complex is a pair of glued link sides, represented by the lesser side and
oriented from its lower corner label to its higher one. Homology is read
off the Smith form of the 2-boundaries written in a basis of the 1-cycles,
so classes are expressed in a basis that depends on the complex; only
basis-free quantities (vanishing, gcd, index) are meaningful across runs
with different gluing tables.
"""

import logging
from dataclasses import dataclass
from functools import cache
from math import gcd

import exact_linalg
import q_theory
import triangulation
from exact_linalg import IntegerMatrix
from exceptions import IndexOutOfRange, MathematicalAssertionError, NotACycle
from triangulation import EDGE_VERTICES, edge_index

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CuspComplex:
    cusp: int
    kind: str
    triangles: tuple
    vertices: tuple
    edges: tuple
    side_edge: dict
    d1: IntegerMatrix
    d2: IntegerMatrix
    cycles: tuple
    smith: exact_linalg.SmithDecomposition

    @property
    def euler_characteristic(self):
        return len(self.vertices) - len(self.edges) + len(self.triangles)

    def diagonal_orders(self):
        """Smith order of each cycle coordinate: 1 trivial, 0 free, d > 1 torsion."""
        diagonal = self.smith.diagonal
        return [diagonal[i] if i < len(diagonal) else 0 for i in range(len(self.cycles))]

    @property
    def free_rank(self):
        return sum(1 for d in self.diagonal_orders() if d == 0)

    @property
    def torsion(self):
        return tuple(d for d in self.diagonal_orders() if d > 1)

    def describe_h1(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def generator_cycles(self):
        """One cycle per free generator of H1, in class-coordinate order."""
        inverse = exact_linalg.unimodular_inverse(self.smith.U)
        generators = []
        for i, d in enumerate(self.diagonal_orders()):
            if d != 0:
                continue
            y = inverse.column(i)
            generators.append(
                tuple(
                    sum(c * z[e] for c, z in zip(y, self.cycles))
                    for e in range(len(self.edges))
                )
            )
        return generators


@dataclass(frozen=True)
class BoundaryChain:
    cusp: int
    coefficients: tuple

    def is_zero(self):
        return not any(self.coefficients)


@dataclass(frozen=True)
class HomologyClass:
    """Free coordinates and torsion residues in the Smith basis of one cusp."""

    free: tuple
    torsion: tuple
    torsion_orders: tuple

    def is_zero(self):
        return not any(self.free) and not any(self.torsion)

    @property
    def gcd(self):
        value = 0
        for x in self.free:
            value = gcd(value, x)
        return value

    def __add__(self, other):
        return HomologyClass(
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple((a + b) % d for a, b, d in zip(self.torsion, other.torsion, self.torsion_orders)),
            self.torsion_orders,
        )

    def scaled(self, n):
        return HomologyClass(
            tuple(n * a for a in self.free),
            tuple((n * a) % d for a, d in zip(self.torsion, self.torsion_orders)),
            self.torsion_orders,
        )

    def __str__(self):
        parts = [str(x) for x in self.free]
        parts += [f"{r} mod {d}" for r, d in zip(self.torsion, self.torsion_orders)]
        return "(" + ", ".join(parts) + ")"


@cache
def cusp_complex(tri, cusp):
    links = triangulation.cusps(tri)
    if not 0 <= cusp < len(links):
        raise IndexOutOfRange(f"cusp {cusp} out of range (c={len(links)})")
    link = links[cusp]
    corner_index = {corner: i for i, group in enumerate(link.corners) for corner in group}

    sides = sorted((t, v, f) for t, v in link.triangles for f in range(4) if f != v)
    edges = []
    side_edge = {}
    for side in sides:
        if side in side_edge:
            continue
        partner, p = triangulation.link_side_partner(tri, *side)
        w1, w2 = triangulation.link_side_corners(side[1], side[2])
        side_edge[side] = (len(edges), 1)
        side_edge[partner] = (len(edges), 1 if p(w1) < p(w2) else -1)
        edges.append(side)

    d1_rows = [[0] * len(edges) for _ in link.corners]
    for e, (t, v, f) in enumerate(edges):
        w1, w2 = triangulation.link_side_corners(v, f)
        d1_rows[corner_index[(t, v, w2)]][e] += 1
        d1_rows[corner_index[(t, v, w1)]][e] -= 1
    d2_rows = [[0] * len(link.triangles) for _ in edges]
    for j, (t, v) in enumerate(link.triangles):
        for f in range(4):
            if f == v:
                continue
            e, r = side_edge[(t, v, f)]
            d2_rows[e][j] += triangulation.link_side_sign(v, f) * r
    d1 = IntegerMatrix.from_rows(d1_rows, ncols=len(edges))
    d2 = IntegerMatrix.from_rows(d2_rows, ncols=len(link.triangles))
    if not (d1 @ d2).is_zero():
        raise MathematicalAssertionError(f"d1 d2 != 0 on cusp {cusp}")

    cycles = tuple(exact_linalg.integer_nullspace(d1))
    columns = []
    for boundary in d2.columns():
        coordinates = exact_linalg.lattice_coordinates(cycles, boundary)
        if coordinates is None:
            raise NotACycle(f"a triangle boundary on cusp {cusp} is not an integral cycle")
        columns.append(coordinates)
    relations = IntegerMatrix.from_columns(columns, nrows=len(cycles))
    complex_ = CuspComplex(
        cusp,
        link.kind,
        link.triangles,
        link.corners,
        tuple(edges),
        side_edge,
        d1,
        d2,
        cycles,
        exact_linalg.smith(relations),
    )
    logger.debug(
        "cusp %d: V=%d E=%d F=%d, H1 = %s",
        cusp, len(link.corners), len(edges), len(link.triangles), complex_.describe_h1(),
    )
    return complex_


def _sign_table(signs):
    table = {}
    for corners in signs.edges:
        for corner in corners:
            table[(corner.tet, corner.edge)] = (corner.plus, corner.minus)
    return table


def _corner_sign(table, t, a, b, quad):
    plus, minus = table[(t, edge_index(a, b))]
    if quad == plus:
        return 1
    if quad == minus:
        return -1
    return 0


def direct_boundary_chain(tri, q, signs):
    """
    Sum of the quad boundary arcs of q, each running from its + corner to its
    - corner, as one chain per cusp. Raises NotACycle if an arc joins two
    corners of equal sign or the sum is not a cycle.
    """
    table = _sign_table(signs)
    cusp_of = triangulation.cusp_of(tri)
    complexes = [cusp_complex(tri, c) for c in range(len(triangulation.cusps(tri)))]
    chains = [[0] * len(cc.edges) for cc in complexes]
    for t in range(tri.num_tetrahedra):
        for quad in range(q_theory.QUADS_PER_TET):
            m = q[q_theory.q_column(t, quad)]
            if not m:
                continue
            partner = {}
            for a, b in (EDGE_VERTICES[quad], EDGE_VERTICES[5 - quad]):
                partner[a], partner[b] = b, a
            for f in range(4):
                # the arc in face f cuts off the vertex paired with f
                v = partner[f]
                w1, w2 = triangulation.link_side_corners(v, f)
                s1 = _corner_sign(table, t, v, w1, quad)
                s2 = _corner_sign(table, t, v, w2, quad)
                if s1 == s2 or 0 in (s1, s2):
                    raise NotACycle(
                        f"quad {quad} of tetrahedron {t} has equally signed corners "
                        f"on edges {v}{w1} and {v}{w2}; its arc in face {f} has no direction"
                    )
                cusp = cusp_of[(t, v)]
                e, r = complexes[cusp].side_edge[(t, v, f)]
                chains[cusp][e] += m * s1 * r
    result = []
    for cc, coefficients in zip(complexes, chains):
        if any(cc.d1.apply(coefficients)):
            raise NotACycle(f"boundary chain on cusp {cc.cusp} is not a cycle")
        result.append(BoundaryChain(cc.cusp, tuple(coefficients)))
    return result


def boundary_chain(tri, q):
    """Boundary chains of a Q-matching solution under the default corner signs."""
    system = q_theory.q_matching_system(tri)
    q_theory.require_solution(tri, q, system)
    return direct_boundary_chain(tri, q, system.signs)


def homology_class(cc, chain):
    coefficients = chain.coefficients
    if any(cc.d1.apply(coefficients)):
        raise NotACycle(f"chain on cusp {cc.cusp} is not a cycle")
    y = exact_linalg.lattice_coordinates(cc.cycles, coefficients)
    if y is None:
        raise NotACycle(f"chain on cusp {cc.cusp} is not an integral cycle")
    u = cc.smith.U.apply(y) if cc.cycles else ()
    free = []
    torsion = []
    orders = []
    for value, d in zip(u, cc.diagonal_orders()):
        if d == 1:
            continue
        if d == 0:
            free.append(value)
        else:
            torsion.append(value % d)
            orders.append(d)
    return HomologyClass(tuple(free), tuple(torsion), tuple(orders))


def boundary_map(tri, q):
    """
    Per-cusp boundary classes of a Q-matching solution.

    Non-orientable input is lifted to the orientable double cover and the
    classes returned are those of the cover's cusps. The direct route is not
    tried there: on a Klein bottle cusp the transported corner signs leave
    some arc of every quad undirected, so direct_boundary_chain raises
    NotACycle for any nonzero q on the Gieseking manifold.
    """
    if triangulation.orientation(tri) is None:
        cover = triangulation.double_cover(tri)
        lifted = q_theory.lift_to_cover(tri, cover, q)
        return boundary_map(cover.cover, lifted)
    chains = boundary_chain(tri, q)
    return [homology_class(cusp_complex(tri, ch.cusp), ch) for ch in chains]


def flatten(classes):
    """Free coordinates of all cusps followed by all torsion residues."""
    free = [x for cls in classes for x in cls.free]
    torsion = [x for cls in classes for x in cls.torsion]
    return tuple(free + torsion)


def cover_action(cover):
    """Matrix of the sheet swap on the free part of H1 of the cover's cusps."""
    tri = cover.cover
    count = len(triangulation.cusps(tri))
    complexes = [cusp_complex(tri, c) for c in range(count)]
    cusp_of = triangulation.cusp_of(tri)
    columns = []
    for cc in complexes:
        for cycle in cc.generator_cycles():
            images = [[0] * len(other.edges) for other in complexes]
            for e, a in enumerate(cycle):
                if not a:
                    continue
                t, v, f = cc.edges[e]
                target = (cover.sigma[t], v, f)
                cusp = cusp_of[(target[0], v)]
                index, r = complexes[cusp].side_edge[target]
                images[cusp][index] += a * r
            classes = [
                homology_class(other, BoundaryChain(other.cusp, tuple(chain)))
                for other, chain in zip(complexes, images)
            ]
            columns.append(tuple(x for cls in classes for x in cls.free))
    size = len(columns)
    return IntegerMatrix.from_columns(columns, nrows=size)


def image_index(tri):
    """
    Index of the image of the integer Q-matching solutions in the boundary
    homology, or None if infinite.

    For orientable input the ambient group is the direct sum of H1 of the
    cusps. For non-orientable input it is the sublattice of H1 of the cover's
    cusps negated by the sheet swap, not H1 of the Klein bottles themselves.
    """
    system = q_theory.q_matching_system(tri)
    generators = exact_linalg.integer_nullspace(system.matrix)
    if triangulation.orientation(tri) is not None:
        images = [boundary_map(tri, g) for g in generators]
        complexes = [cusp_complex(tri, c) for c in range(len(triangulation.cusps(tri)))]
        rank = sum(cc.free_rank for cc in complexes)
        torsion = [d for cc in complexes for d in cc.torsion]
        index = exact_linalg.subgroup_index(rank, torsion, [flatten(c) for c in images])
    else:
        action = cover_action(triangulation.double_cover(tri))
        anti_invariant = exact_linalg.integer_nullspace(
            action + IntegerMatrix.identity(action.nrows)
        )
        coordinates = []
        for g in generators:
            image = flatten(boundary_map(tri, g))
            found = exact_linalg.lattice_coordinates(anti_invariant, image)
            if found is None:
                raise MathematicalAssertionError(
                    f"boundary class {image} is not negated by the sheet swap"
                )
            coordinates.append(found)
        index = exact_linalg.subgroup_index(len(anti_invariant), [], coordinates)
    logger.info("image index %s", "infinite" if index is None else index)
    return index
