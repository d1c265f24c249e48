"""
Ideal triangulations: gluing tables, edge classes, cusp links, orientation,
the orientable double cover and combinatorial isomorphism.

Conventions: face f of a tetrahedron is the face opposite vertex f, and a
gluing permutation acts on vertex labels 0..3, so face f of tetrahedron t is
glued to face p(f) of the target. The six edge slots of a tetrahedron are
numbered as in EDGE_VERTICES; edge slot e is opposite edge slot 5 - e.
"""

import logging
import re
from collections import deque
from dataclasses import dataclass
from functools import cache
from itertools import permutations
from pathlib import Path

from exceptions import (
    AlreadyOrientable,
    ClosedTriangulationError,
    InvalidTriangulation,
    NonCuspedLink,
    TriangulationParseError,
)

logger = logging.getLogger(__name__)

EDGE_VERTICES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX = {pair: e for e, pair in enumerate(EDGE_VERTICES)}
EDGE_INDEX.update({(b, a): e for (a, b), e in list(EDGE_INDEX.items())})


def edge_index(a, b):
    return EDGE_INDEX[(a, b)]


@dataclass(frozen=True)
class Perm4:
    """A permutation of the vertex labels {0, 1, 2, 3}; images[v] is the image of v."""

    images: tuple

    def __post_init__(self):
        if sorted(self.images) != [0, 1, 2, 3]:
            raise ValueError(f"{self.images} is not a permutation of 0..3")

    @classmethod
    def from_string(cls, text):
        if len(text) != 4 or not text.isdigit():
            raise ValueError(f"'{text}' is not a 4-character permutation")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def identity(cls):
        return cls((0, 1, 2, 3))

    def __call__(self, v):
        return self.images[v]

    def __str__(self):
        return "".join(str(v) for v in self.images)

    def inverse(self):
        inv = [0] * 4
        for v, w in enumerate(self.images):
            inv[w] = v
        return Perm4(tuple(inv))

    def compose(self, other):
        """self after other: v -> self(other(v))."""
        return Perm4(tuple(self.images[other.images[v]] for v in range(4)))

    @property
    def sign(self):
        inversions = sum(
            1
            for i in range(4)
            for j in range(i + 1, 4)
            if self.images[i] > self.images[j]
        )
        return -1 if inversions % 2 else 1

    @property
    def parity(self):
        return "even" if self.sign == 1 else "odd"


def permutation_sign(sequence):
    """Sign of a sequence of distinct integers relative to its sorted order."""
    inversions = sum(
        1
        for i in range(len(sequence))
        for j in range(i + 1, len(sequence))
        if sequence[i] > sequence[j]
    )
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class Triangulation:
    """
    k tetrahedra with face gluings; gluings[t][f] = (target tetrahedron, Perm4).

    Instances are validated on construction: every face is glued, the gluing
    is involutive and no face is glued to itself.
    """

    num_tetrahedra: int
    gluings: tuple

    def __post_init__(self):
        _validate_gluings(self.num_tetrahedra, self.gluings)

    @classmethod
    def from_gluings(cls, gluings):
        """Build from a list of per-tetrahedron lists of (target, perm string or Perm4)."""
        table = []
        for faces in gluings:
            row = []
            for entry in faces:
                if entry is None:
                    row.append(None)
                    continue
                target, perm = entry
                if isinstance(perm, str):
                    perm = Perm4.from_string(perm)
                row.append((int(target), perm))
            table.append(tuple(row))
        return cls(len(table), tuple(table))

    def gluing(self, t, f):
        return self.gluings[t][f]

    def face_pairs(self):
        """Each glued face pair once, as ((t, f), (t', f'), p), in (t, f) order."""
        pairs = []
        for t in range(self.num_tetrahedra):
            for f in range(4):
                target, p = self.gluings[t][f]
                if (t, f) < (target, p(f)):
                    pairs.append(((t, f), (target, p(f)), p))
        return pairs

    def to_text(self):
        """Serialise in the line format read by parse()."""
        lines = [f"tetrahedra: {self.num_tetrahedra}"]
        for t, faces in enumerate(self.gluings):
            entries = " | ".join(f"{target} {perm}" for target, perm in faces)
            lines.append(f"{t}: {entries}")
        return "\n".join(lines) + "\n"


def _validate_gluings(k, gluings):
    if k <= 0:
        raise InvalidTriangulation("a triangulation needs at least one tetrahedron")
    if len(gluings) != k or any(len(faces) != 4 for faces in gluings):
        raise InvalidTriangulation("every tetrahedron needs exactly four face entries")
    for t in range(k):
        for f in range(4):
            entry = gluings[t][f]
            if entry is None:
                raise InvalidTriangulation(
                    f"face {f} of tetrahedron {t} is unglued; only cusped "
                    f"triangulations without real boundary are supported"
                )
            target, p = entry
            if not 0 <= target < k:
                raise InvalidTriangulation(
                    f"face {f} of tetrahedron {t} is glued to missing tetrahedron {target}"
                )
            if (target, p(f)) == (t, f):
                raise InvalidTriangulation(f"face {f} of tetrahedron {t} is glued to itself")
            back = gluings[target][p(f)]
            if back is None or back[0] != t or back[1] != p.inverse():
                raise InvalidTriangulation(
                    f"gluing of face {f} of tetrahedron {t} is not involutive: "
                    f"face {p(f)} of tetrahedron {target} does not glue back by {p.inverse()}"
                )


_HEADER = re.compile(r"^tetrahedra\s*:\s*(\d+)$")
_ROW = re.compile(r"^(\d+)\s*:\s*(.*)$")


def parse(text):
    """Parse the triangulation file format into a validated Triangulation."""
    k = None
    rows = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        if k is None:
            match = _HEADER.match(line)
            if not match:
                raise TriangulationParseError("expected 'tetrahedra: <k>'", number)
            k = int(match.group(1))
            continue
        match = _ROW.match(line)
        if not match:
            raise TriangulationParseError(f"cannot read gluing row '{line}'", number)
        t = int(match.group(1))
        if t >= k:
            raise TriangulationParseError(f"tetrahedron {t} out of range for k={k}", number)
        if t in rows:
            raise TriangulationParseError(f"tetrahedron {t} listed twice", number)
        entries = [e.split() for e in match.group(2).split("|")]
        if len(entries) != 4:
            raise TriangulationParseError(
                f"expected 4 face entries, found {len(entries)}", number
            )
        faces = []
        for tokens in entries:
            if tokens == ["-"]:
                faces.append(None)
                continue
            if len(tokens) != 2 or not tokens[0].isdigit():
                raise TriangulationParseError(
                    f"face entry '{' '.join(tokens)}' is not '<tet> <perm>'", number
                )
            try:
                faces.append((int(tokens[0]), Perm4.from_string(tokens[1])))
            except ValueError as error:
                raise TriangulationParseError(str(error), number) from error
        rows[t] = tuple(faces)
    if k is None:
        raise TriangulationParseError("empty triangulation file", 1)
    missing = [t for t in range(k) if t not in rows]
    if missing:
        raise TriangulationParseError(f"no gluing row for tetrahedra {missing}")
    tri = Triangulation(k, tuple(rows[t] for t in range(k)))
    logger.debug("parsed triangulation with %d tetrahedra", k)
    return tri


def load(path):
    """Read and parse a triangulation file."""
    text = Path(path).read_text(encoding="utf-8")
    return parse(text)


@dataclass(frozen=True)
class EdgeIncidence:
    """One tetrahedron edge slot in an edge class, with the walk embedding."""

    tet: int
    edge: int
    vertices: tuple
    forward: bool

    @property
    def pair(self):
        return EDGE_VERTICES[self.edge]


@dataclass(frozen=True)
class EdgeClass:
    index: int
    incidences: tuple

    @property
    def degree(self):
        return len(self.incidences)


@cache
def edge_classes(tri):
    """
    Edge classes with their cyclic incidence order.

    Starting from the least unvisited slot (t, {a, b}) with embedding
    (a, b, c, d), a < b and c < d, the walk leaves through the face opposite
    d and enters the neighbour with embedding (p(a), p(b), p(d), p(c)).
    """
    visited = set()
    classes = []
    for t in range(tri.num_tetrahedra):
        for e, (a, b) in enumerate(EDGE_VERTICES):
            if (t, e) in visited:
                continue
            c, d = (v for v in range(4) if v not in (a, b))
            embedding = (t, (a, b, c, d))
            incidences = []
            seen = {}
            while True:
                tet, (va, vb, vc, vd) = embedding
                slot = (tet, edge_index(va, vb))
                if slot in seen:
                    if seen[slot] != (va, vb):
                        raise InvalidTriangulation(
                            f"edge {EDGE_VERTICES[slot[1]]} of tetrahedron {tet} "
                            f"is identified with itself in reverse"
                        )
                    break
                seen[slot] = (va, vb)
                incidences.append(
                    EdgeIncidence(tet, slot[1], (va, vb, vc, vd), va < vb)
                )
                target, p = tri.gluing(tet, vd)
                embedding = (target, (p(va), p(vb), p(vd), p(vc)))
            visited.update(seen)
            classes.append(EdgeClass(len(classes), tuple(incidences)))
    logger.debug("found %d edge classes, degrees %s", len(classes), [c.degree for c in classes])
    return tuple(classes)


@cache
def edge_class_of(tri):
    """Map (tet, edge slot) -> edge class index."""
    return {
        (inc.tet, inc.edge): cls.index
        for cls in edge_classes(tri)
        for inc in cls.incidences
    }


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx

    def groups(self):
        groups = {}
        for x in sorted(self.parent):
            groups.setdefault(self.find(x), []).append(x)
        return sorted(groups.values())


def link_side_partner(tri, t, v, f):
    """The link side glued to side (t, v, f), and the gluing permutation used."""
    target, p = tri.gluing(t, f)
    return (target, p(v), p(f)), p


def link_side_corners(v, f):
    """The two corner labels (sorted) of the side of link triangle v lying in face f."""
    return tuple(w for w in range(4) if w not in (v, f))


def link_side_sign(v, f):
    """+1 or -1: the sign of side f in the boundary of link triangle v."""
    others = [w for w in range(4) if w != v]
    return -1 if others.index(f) % 2 else 1


@dataclass(frozen=True)
class CuspLink:
    index: int
    triangles: tuple
    corners: tuple
    kind: str
    euler_characteristic: int

    @property
    def num_triangles(self):
        return len(self.triangles)


@cache
def link_corner_classes(tri):
    """Orbits of link corners (t, v, w): the end of edge vw at vertex v."""
    corners = [(t, v, w) for t in range(tri.num_tetrahedra) for v in range(4) for w in range(4) if w != v]
    uf = _UnionFind(corners)
    for t, v, w in corners:
        for f in range(4):
            if f in (v, w):
                continue
            target, p = tri.gluing(t, f)
            uf.union((t, v, w), (target, p(v), p(w)))
    return tuple(tuple(g) for g in uf.groups())


def _link_orientable(tri, triangles):
    """Two-colour the link triangles; the surface is orientable iff no conflict."""
    members = set(triangles)
    sign = {triangles[0]: 1}
    queue = deque([triangles[0]])
    while queue:
        t, v = queue.popleft()
        for f in range(4):
            if f == v:
                continue
            (t2, v2, f2), p = link_side_partner(tri, t, v, f)
            w1, w2 = link_side_corners(v, f)
            flip = 1 if p(w1) < p(w2) else -1
            required = -sign[(t, v)] * link_side_sign(v, f) * link_side_sign(v2, f2) * flip
            if (t2, v2) not in members:
                raise InvalidTriangulation("link triangle glued outside its cusp")
            if (t2, v2) in sign:
                if sign[(t2, v2)] != required:
                    return False
            else:
                sign[(t2, v2)] = required
                queue.append((t2, v2))
    return True


def _vertex_link_groups(tri):
    slots = [(t, v) for t in range(tri.num_tetrahedra) for v in range(4)]
    uf = _UnionFind(slots)
    for t, v in slots:
        for f in range(4):
            if f == v:
                continue
            target, p = tri.gluing(t, f)
            uf.union((t, v), (target, p(v)))
    return uf.groups()


@cache
def cusps(tri):
    """
    One CuspLink per ideal vertex, classified as torus or Klein bottle.

    Raises NonCuspedLink if some vertex link has nonzero Euler characteristic,
    and ClosedTriangulationError for the closed one-vertex case.
    """
    corner_classes = link_corner_classes(tri)
    links = []
    bad = []
    for triangles in _vertex_link_groups(tri):
        triangles = tuple(triangles)
        members = set(triangles)
        corners = tuple(
            group for group in corner_classes if (group[0][0], group[0][1]) in members
        )
        faces = len(triangles)
        chi = len(corners) - (3 * faces) // 2 + faces
        if chi != 0:
            bad.append((triangles[0], chi))
            continue
        kind = "torus" if _link_orientable(tri, triangles) else "klein_bottle"
        links.append(CuspLink(len(links), triangles, corners, kind, chi))
    if bad:
        vertex_count = len(bad) + len(links)
        if vertex_count == 1 and bad[0][1] == 2:
            raise ClosedTriangulationError(
                "closed one-vertex triangulation (e = k + 1): the vertex link is a "
                "sphere; only ideal triangulations with torus or Klein bottle cusps "
                "are supported"
            )
        details = ", ".join(f"vertex {v} of tetrahedron {t} has link chi={chi}" for (t, v), chi in bad)
        raise NonCuspedLink(f"not an ideal triangulation with torus/Klein bottle cusps: {details}")
    return tuple(links)


@cache
def cusp_of(tri):
    """Map (tet, vertex) -> cusp index."""
    return {slot: link.index for link in cusps(tri) for slot in link.triangles}


def check_ideal(tri):
    """Validate the cusp links and the count e = k; returns the cusps."""
    links = cusps(tri)
    e = len(edge_classes(tri))
    if e != tri.num_tetrahedra:
        raise InvalidTriangulation(
            f"{e} edge classes for {tri.num_tetrahedra} tetrahedra; an ideal "
            f"triangulation with torus/Klein bottle cusps has e = k"
        )
    return links


@cache
def orientation(tri):
    """
    A +-1 orientation per tetrahedron making every gluing orientation
    compatible (o_t * o_t' * sign(p) = -1), or None if non-orientable.
    """
    signs = [0] * tri.num_tetrahedra
    for start in range(tri.num_tetrahedra):
        if signs[start]:
            continue
        signs[start] = 1
        queue = deque([start])
        while queue:
            t = queue.popleft()
            for f in range(4):
                target, p = tri.gluing(t, f)
                required = -signs[t] * p.sign
                if signs[target] == 0:
                    signs[target] = required
                    queue.append(target)
                elif signs[target] != required:
                    return None
    return tuple(signs)


def dual_components(tri):
    """Number of connected components of the face-adjacency graph."""
    seen = set()
    components = 0
    for start in range(tri.num_tetrahedra):
        if start in seen:
            continue
        components += 1
        seen.add(start)
        queue = deque([start])
        while queue:
            t = queue.popleft()
            for f in range(4):
                target, _ = tri.gluing(t, f)
                if target not in seen:
                    seen.add(target)
                    queue.append(target)
    return components


@dataclass(frozen=True)
class DoubleCover:
    """
    The orientation double cover. Cover tetrahedron t + s*k is sheet s over
    base tetrahedron t with the same vertex labels; the cover is oriented by
    (-1)**s and sigma swaps the sheets.
    """

    base: Triangulation
    cover: Triangulation
    sigma: tuple
    projection: tuple

    def sheet(self, cover_tet):
        return cover_tet // self.base.num_tetrahedra

    def lift(self, t, s):
        return t + s * self.base.num_tetrahedra


def orientation_cover(tri):
    """The sheet-swapping double cover, connected iff tri is non-orientable."""
    k = tri.num_tetrahedra
    table = []
    for s in (0, 1):
        for t in range(k):
            row = []
            for f in range(4):
                target, p = tri.gluing(t, f)
                target_sheet = s if p.sign == -1 else 1 - s
                row.append((target + target_sheet * k, p))
            table.append(tuple(row))
    cover = Triangulation(2 * k, tuple(table))
    sigma = tuple((t + k) % (2 * k) for t in range(2 * k))
    projection = tuple(t % k for t in range(2 * k))
    return DoubleCover(tri, cover, sigma, projection)


@cache
def double_cover(tri):
    """Orientable double cover of a non-orientable triangulation."""
    if orientation(tri) is not None:
        raise AlreadyOrientable("the triangulation is already orientable")
    result = orientation_cover(tri)
    logger.debug("built double cover with %d tetrahedra", result.cover.num_tetrahedra)
    return result


def _extend_isomorphism(a, b, start_image, start_perm):
    images = {0: (start_image, start_perm)}
    queue = deque([0])
    while queue:
        t = queue.popleft()
        t_image, pi = images[t]
        for f in range(4):
            u, p = a.gluing(t, f)
            u_image, q = b.gluing(t_image, pi(f))
            required = q.compose(pi).compose(p.inverse())
            if u in images:
                if images[u] != (u_image, required):
                    return None
            else:
                images[u] = (u_image, required)
                queue.append(u)
    if len(images) != a.num_tetrahedra:
        return None
    if len({image for image, _ in images.values()}) != b.num_tetrahedra:
        return None
    return images


def _require_connected(tri):
    components = dual_components(tri)
    if components != 1:
        raise InvalidTriangulation(
            f"isomorphism search needs a connected triangulation, got {components} components"
        )


def find_isomorphism(a, b):
    """
    A tetrahedron map t -> (t', vertex relabeling), or None.

    Raises InvalidTriangulation if a is disconnected.
    """
    _require_connected(a)
    if a.num_tetrahedra != b.num_tetrahedra:
        return None
    for start in range(b.num_tetrahedra):
        for images in permutations(range(4)):
            found = _extend_isomorphism(a, b, start, Perm4(images))
            if found is not None:
                return found
    return None


def isomorphic(a, b):
    """True iff a and b are combinatorially isomorphic."""
    return find_isomorphism(a, b) is not None


def automorphisms(tri):
    """Every combinatorial automorphism, one per image of tetrahedron 0."""
    _require_connected(tri)
    found = []
    for start in range(tri.num_tetrahedra):
        for images in permutations(range(4)):
            extended = _extend_isomorphism(tri, tri, start, Perm4(images))
            if extended is not None:
                found.append(extended)
    logger.debug("found %d automorphisms", len(found))
    return found


def relabel(tri, tet_map, vertex_maps):
    """
    Renumber tetrahedra by tet_map[t] and vertices of tetrahedron t by
    vertex_maps[t] (a Perm4); the result is isomorphic to tri.
    """
    k = tri.num_tetrahedra
    table = [[None] * 4 for _ in range(k)]
    for t in range(k):
        pi = vertex_maps[t]
        for f in range(4):
            u, p = tri.gluing(t, f)
            table[tet_map[t]][pi(f)] = (
                tet_map[u],
                vertex_maps[u].compose(p).compose(pi.inverse()),
            )
    return Triangulation(k, tuple(tuple(row) for row in table))
