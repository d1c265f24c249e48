"""
Exact integer and rational linear algebra.

Everything here works on Python integers and fractions.Fraction; there is no
floating point. Pivoting is deterministic (first nonzero in row-major order,
or the smallest absolute value for the Smith form) so that bases and printed
reports are reproducible.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import prod

import numpy as np

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntegerMatrix:
    """An immutable rows x cols matrix of arbitrary-precision integers."""

    nrows: int
    ncols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.nrows or any(
            len(row) != self.ncols for row in self.entries
        ):
            raise ValueError("entry count must equal rows x cols")

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, columns, nrows=None):
        columns = [tuple(int(x) for x in col) for col in columns]
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        rows = [tuple(col[i] for col in columns) for i in range(nrows)]
        return cls(nrows, len(columns), tuple(rows))

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(nrows, ncols, tuple((0,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, n):
        return cls(
            n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        )

    @property
    def rows(self):
        return self.entries

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self):
        return IntegerMatrix.from_columns(self.entries, nrows=self.ncols)

    def apply(self, vector):
        """Matrix-vector product."""
        if len(vector) != self.ncols:
            raise ValueError(
                f"vector of length {len(vector)} does not fit {self.ncols} columns"
            )
        return tuple(sum(a * x for a, x in zip(row, vector)) for row in self.entries)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("inner dimensions differ")
        cols = other.columns()
        rows = [
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
            for row in self.entries
        ]
        return IntegerMatrix(self.nrows, other.ncols, tuple(rows))

    def __add__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shapes differ")
        return IntegerMatrix(
            self.nrows,
            self.ncols,
            tuple(
                tuple(a + b for a, b in zip(r, s))
                for r, s in zip(self.entries, other.entries)
            ),
        )

    def stack(self, other):
        """Rows of self followed by rows of other."""
        if self.ncols != other.ncols:
            raise ValueError("column counts differ")
        return IntegerMatrix(
            self.nrows + other.nrows, self.ncols, self.entries + other.entries
        )

    def row_sum(self):
        return tuple(sum(col) for col in zip(*self.entries)) if self.nrows else (
            (0,) * self.ncols
        )

    def is_zero(self):
        return all(x == 0 for row in self.entries for x in row)

    def to_array(self):
        """Object-dtype numpy array; keeps the integers exact."""
        array = np.empty((self.nrows, self.ncols), dtype=object)
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                array[i, j] = x
        return array


@dataclass(frozen=True)
class RationalVector:
    """A vector of reduced fractions."""

    entries: tuple

    @classmethod
    def of(cls, values):
        return cls(tuple(Fraction(v) for v in values))

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def dot(self, vector):
        return sum((a * b for a, b in zip(self.entries, vector)), Fraction(0))


@dataclass(frozen=True)
class SmithDecomposition:
    """U * A * V = S with U, V unimodular and S diagonal, s1 | s2 | ..."""

    U: IntegerMatrix
    S: IntegerMatrix
    V: IntegerMatrix

    @property
    def diagonal(self):
        n = min(self.S.nrows, self.S.ncols)
        return tuple(self.S.entries[i][i] for i in range(n))

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self):
        """Nonzero diagonal entries greater than one (the torsion orders)."""
        return tuple(d for d in self.diagonal if d > 1)


def rank(A):
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    M = [list(row) for row in A.rows]
    m, n = A.nrows, A.ncols
    r = 0
    previous = 1
    for c in range(n):
        if r == m:
            break
        pivot = next((i for i in range(r, m) if M[i][c] != 0), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                M[i][j] = (M[r][c] * M[i][j] - M[i][c] * M[r][j]) // previous
            M[i][c] = 0
        previous = M[r][c]
        r += 1
    return r


def determinant(A):
    """Determinant of a square matrix, fraction-free."""
    if A.nrows != A.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = A.nrows
    if n == 0:
        return 1
    M = [list(row) for row in A.rows]
    sign = 1
    previous = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]) // previous
        previous = M[k][k]
    return sign * M[n - 1][n - 1]


def _rref(rows, ncols):
    """Reduced row echelon form over the rationals; returns (rows, pivot columns)."""
    R = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(R):
            break
        pivot = next((i for i in range(r, len(R)) if R[i][c] != 0), None)
        if pivot is None:
            continue
        R[r], R[pivot] = R[pivot], R[r]
        lead = R[r][c]
        R[r] = [x / lead for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c] != 0:
                factor = R[i][c]
                R[i] = [a - factor * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R[:r], pivots


def solve_rational(A, b):
    """One rational solution of Ax = b, or None if the system is inconsistent."""
    augmented = [list(row) + [bi] for row, bi in zip(A.rows, b)]
    R, pivots = _rref(augmented, A.ncols + 1)
    if A.ncols in pivots:
        return None
    x = [Fraction(0)] * A.ncols
    for row, p in zip(R, pivots):
        x[p] = row[A.ncols]
    return tuple(x)


def unimodular_inverse(A):
    """Integer inverse of a square matrix with determinant +-1."""
    n = A.nrows
    if n != A.ncols:
        raise ValueError("inverse of a non-square matrix")
    augmented = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A.rows)]
    R, pivots = _rref(augmented, 2 * n)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ValueError("matrix is singular")
    inverse = [row[n:] for row in R[:n]]
    if any(x.denominator != 1 for row in inverse for x in row):
        raise ValueError("matrix is not unimodular")
    return IntegerMatrix.from_rows(inverse, ncols=n)


def in_rational_span(vectors, v):
    """True iff v is a rational linear combination of the given vectors."""
    if not vectors:
        return all(x == 0 for x in v)
    return solve_rational(IntegerMatrix.from_columns(vectors, nrows=len(v)), v) is not None


def smith(A):
    """Smith normal form with transforms: U * A * V = S."""
    m, n = A.nrows, A.ncols
    S = [list(row) for row in A.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (S, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(target, source, factor):
        S[target] = [a + factor * b for a, b in zip(S[target], S[source])]
        U[target] = [a + factor * b for a, b in zip(U[target], U[source])]

    def add_col(target, source, factor):
        for M in (S, V):
            for row in M:
                row[target] += factor * row[source]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] != 0 and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        p = S[t][t]
        for i in range(t + 1, m):
            if S[i][t] != 0:
                add_row(i, t, -(S[i][t] // p))
        for j in range(t + 1, n):
            if S[t][j] != 0:
                add_col(j, t, -(S[t][j] // p))
        if any(S[i][t] != 0 for i in range(t + 1, m)) or any(
            S[t][j] != 0 for j in range(t + 1, n)
        ):
            continue
        offender = next(
            (
                i
                for i in range(t + 1, m)
                for j in range(t + 1, n)
                if S[i][j] % p != 0
            ),
            None,
        )
        if offender is not None:
            add_row(t, offender, 1)
            continue
        t += 1

    decomposition = SmithDecomposition(
        IntegerMatrix.from_rows(U, ncols=m),
        IntegerMatrix.from_rows(S, ncols=n),
        IntegerMatrix.from_rows(V, ncols=n),
    )
    logger.debug("smith %dx%d -> diagonal %s", m, n, decomposition.diagonal)
    return decomposition


def integer_nullspace(A):
    """
    Basis of the lattice {x in Z^n : Ax = 0}.

    With U*A*V = S, x is a kernel vector iff the first rank(A) coordinates of
    V^-1 x vanish, so the trailing columns of V form a saturated basis. The
    basis is then normalised so its first nonzero entries are positive.
    """
    decomposition = smith(A)
    r = decomposition.rank
    basis = []
    for j in range(r, A.ncols):
        v = decomposition.V.column(j)
        lead = next((x for x in v if x != 0), 0)
        if lead < 0:
            v = tuple(-x for x in v)
        basis.append(v)
    return basis


def lattice_coordinates(basis, v):
    """Integer coordinates of v with respect to a lattice basis (columns), or None."""
    solution = solve_rational(IntegerMatrix.from_columns(basis, nrows=len(v)), v)
    if solution is None or any(x.denominator != 1 for x in solution):
        return None
    return tuple(int(x) for x in solution)


def subgroup_index(ambient_rank, ambient_torsion, generators):
    """
    Index of the subgroup generated by `generators` in Z^r + (+) Z/d_i.

    Returns a positive integer, or None when the index is infinite.
    """
    torsion = [d for d in ambient_torsion if d != 1]
    n = ambient_rank + len(torsion)
    relations = []
    for i, d in enumerate(torsion):
        row = [0] * n
        row[ambient_rank + i] = d
        relations.append(row)
    for g in generators:
        if len(g) != n:
            raise ValueError(f"generator {tuple(g)} does not have {n} coordinates")
        relations.append(list(g))
    if n == 0:
        return 1
    if not relations:
        return None
    decomposition = smith(IntegerMatrix.from_rows(relations, ncols=n))
    if decomposition.rank < n:
        return None
    return prod(abs(d) for d in decomposition.diagonal if d != 0)
