"""
Report documents for the command line and main.py.

Every command builds an OutputDocument: named sections, each with scalar
fields and an optional pandas table. The same document renders as text
(tables printed with DataFrame.to_string) or as JSON, in which every
integer is written as a decimal string.
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import pandas as pd

import boundary
import census
import hilbert
import normal_coords
import q_theory
import triangulation
from exceptions import IndexOutOfRange

logger = logging.getLogger(__name__)


@dataclass
class Section:
    name: str
    fields: dict = field(default_factory=dict)
    table: pd.DataFrame | None = None


@dataclass
class OutputDocument:
    command: str
    source: str
    sections: list = field(default_factory=list)

    def add(self, name, fields=None, table=None):
        section = Section(name, dict(fields or {}), table)
        self.sections.append(section)
        return section

    def section(self, name):
        return next(s for s in self.sections if s.name == name)


# Rendering

def _format_vector(values):
    return "(" + ", ".join(str(x) for x in values) + ")"


def _text_value(value):
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    if isinstance(value, (tuple, list)):
        return _format_vector(value)
    return str(value)


def _text_cell(value):
    if hasattr(value, "item"):
        value = value.item()
    if isinstance(value, (bool, tuple, list)) or value is None:
        return _text_value(value)
    return value


def _encode(value):
    """JSON value with integers and fractions as strings."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, (tuple, list)):
        return [_encode(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _encode(v) for k, v in value.items()}
    if hasattr(value, "item"):
        return _encode(value.item())
    return str(value)


def _encode_table(df):
    return {
        "index": [str(i) for i in df.index],
        "columns": [str(c) for c in df.columns],
        "rows": [[_encode(v) for v in row] for row in df.itertuples(index=False, name=None)],
    }


def to_text(document):
    lines = [f"=== {document.command}: {document.source} ==="]
    for section in document.sections:
        lines.append("")
        lines.append(f"--- {section.name} ---")
        for key, value in section.fields.items():
            lines.append(f"{key}: {_text_value(value)}")
        if section.table is not None:
            if section.table.empty:
                lines.append("(empty)")
            else:
                shown = section.table.map(_text_cell)
                lines.append(shown.to_string())
    return "\n".join(lines) + "\n"


def to_json(document):
    payload = {
        "command": document.command,
        "source": document.source,
        "sections": [
            {
                "name": s.name,
                "fields": _encode(s.fields),
                "table": None if s.table is None else _encode_table(s.table),
            }
            for s in document.sections
        ],
    }
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def render(document, fmt):
    logger.debug("rendering %s document as %s", document.command, fmt)
    if fmt == "json":
        return to_json(document)
    if fmt == "text":
        return to_text(document)
    raise ValueError(f"unknown output format '{fmt}'")


# Column labels

def normal_labels(tri):
    labels = []
    for t in range(tri.num_tetrahedra):
        labels += [f"t{t}.tri{v}" for v in range(4)]
        labels += [f"t{t}.quad{q}" for q in range(3)]
    return labels


def quad_labels(tri):
    return [f"t{t}.q{q}" for t in range(tri.num_tetrahedra) for q in range(q_theory.QUADS_PER_TET)]


def _matrix_frame(matrix, index, columns):
    return pd.DataFrame(matrix.to_array(), index=index, columns=columns)


def class_gcd(classes):
    """gcd of the free coordinates over all cusps; 0 for a torsion or zero class."""
    value = 0
    for cls in classes:
        value = gcd(value, cls.gcd)
    return value


def _describe_classes(classes):
    return "; ".join(str(cls) for cls in classes)


# Documents

def info_document(tri, source):
    """Counts, edge degrees, cusps with their H1, orientability, dim V and dim W."""
    links = triangulation.check_ideal(tri)
    edges = triangulation.edge_classes(tri)
    orientable = triangulation.orientation(tri) is not None
    document = OutputDocument("info", source)
    document.add(
        "triangulation",
        {
            "tetrahedra": tri.num_tetrahedra,
            "edges": len(edges),
            "edge degrees": tuple(cls.degree for cls in edges),
            "cusps": len(links),
            "orientable": orientable,
            "dim V": normal_coords.dim_V(tri),
            "dim W": q_theory.dim_W(tri),
        },
    )
    rows = []
    for link in links:
        cc = boundary.cusp_complex(tri, link.index)
        rows.append(
            {
                "kind": link.kind,
                "triangles": link.num_triangles,
                "euler characteristic": cc.euler_characteristic,
                "H1": cc.describe_h1(),
            }
        )
    document.add("cusps", table=pd.DataFrame(rows, index=[f"cusp{c.index}" for c in links]))
    return document


def basis_document(tri, source):
    """The canonical basis and its pairings with the edge functionals."""
    basis = normal_coords.canonical_basis(tri)
    k = tri.num_tetrahedra
    e = len(basis) - k
    names = [f"alpha{t}" for t in range(k)] + [f"beta{i}" for i in range(e)]
    document = OutputDocument("basis", source)
    document.add(
        "canonical basis",
        {"tetrahedral solutions": k, "edge solutions": e, "dim V": len(basis)},
        pd.DataFrame(list(basis), index=names, columns=normal_labels(tri)),
    )
    functionals = [normal_coords.edge_functional(tri, i) for i in range(e)]
    pairing = normal_coords.pairing_matrix(tri)
    document.add(
        "phi(beta)",
        table=pd.DataFrame(
            [list(row) for row in pairing],
            index=[f"phi{i}" for i in range(e)],
            columns=[f"beta{j}" for j in range(e)],
        ),
    )
    document.add(
        "phi(alpha)",
        table=pd.DataFrame(
            [[phi.dot(basis[t]) for t in range(k)] for phi in functionals],
            index=[f"phi{i}" for i in range(e)],
            columns=[f"alpha{t}" for t in range(k)],
        ),
    )
    return document


def qmatch_document(tri, source):
    """The Q-matching matrix with its rank, nullity and row-sum check."""
    system = q_theory.q_matching_system(tri)
    dimension = q_theory.dim_W(tri)
    document = OutputDocument("qmatch", source)
    document.add(
        "Q-matching system",
        {
            "corner signs": system.signs.source,
            "rank": system.rank,
            "nullity": system.nullity,
            "dim W": dimension,
            "torus cusps": q_theory.torus_cusp_count(tri),
            "row sum": system.matrix.row_sum(),
            "row sum zero": not any(system.matrix.row_sum()),
        },
        _matrix_frame(
            system.matrix,
            [f"edge{i}" for i in range(system.matrix.nrows)],
            quad_labels(tri),
        ),
    )
    return document


def _solution_row(tri, q, builtin):
    classes = boundary.boundary_map(tri, q)
    row = {"solution": tuple(q)}
    if builtin is not None:
        row["reading order"] = census.to_reading(builtin, q)
    row["compact"] = q_theory.is_compact_class(tri, q)
    row["boundary"] = _describe_classes(classes)
    row["gcd"] = class_gcd(classes)
    row["chi"] = q_theory.euler_characteristic(tri, q)
    return row


def enumerate_document(tri, source, max_columns=None, builtin=None):
    """Fundamental solutions with compactness, boundary classes and chi."""
    triangulation.check_ideal(tri)
    system = q_theory.q_matching_system(tri)
    solutions = hilbert.fundamental_solutions(system.matrix, max_columns=max_columns)
    rows = [_solution_row(tri, q, builtin) for q in solutions]
    table = pd.DataFrame(rows, index=[f"f{i}" for i in range(len(rows))])
    document = OutputDocument("enumerate", source)
    document.add(
        "fundamental solutions",
        {
            "count": len(solutions),
            "compact": sum(1 for row in rows if row["compact"]),
            "boundary route": "orientable" if triangulation.orientation(tri) is not None else "double cover",
        },
        table,
    )
    return document


def boundary_document(tri, source, vector=None, cusp=None, index=False, builtin=None):
    """
    Per-cusp boundary classes of one Q-matching solution and, on request,
    the image index. For non-orientable input the cusps are those of the
    orientable double cover.
    """
    triangulation.check_ideal(tri)
    document = OutputDocument("boundary", source)
    if vector is not None:
        q = tuple(vector)
        classes = boundary.boundary_map(tri, q)
        if cusp is not None:
            if not 0 <= cusp < len(classes):
                raise IndexOutOfRange(
                    f"cusp {cusp} out of range (c={len(classes)})"
                )
            selected = [(cusp, classes[cusp])]
        else:
            selected = list(enumerate(classes))
        rows = [
            {
                "class": str(cls),
                "free": cls.free,
                "torsion": cls.torsion,
                "gcd": cls.gcd,
                "zero": cls.is_zero(),
            }
            for _, cls in selected
        ]
        document.add(
            "boundary classes",
            {
                "solution": q,
                "compact": q_theory.is_compact_class(tri, q),
                "gcd": class_gcd(classes),
                "chi": q_theory.euler_characteristic(tri, q),
                "cusps": "double cover" if triangulation.orientation(tri) is None else "base",
            },
            pd.DataFrame(rows, index=[f"cusp{c}" for c, _ in selected]),
        )
    if index:
        value = boundary.image_index(tri)
        fields = {"index": "infinite" if value is None else value}
        if builtin is not None:
            fields["reference index"] = census.REFERENCE_INDEX[builtin]
        document.add("image index", fields)
    return document
