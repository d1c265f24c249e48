"""
Fundamental solutions: the Hilbert basis of {x >= 0 integral : Ax = 0}.

The basis is built one row at a time. The Hilbert basis H of the first i
rows generates every later solution, so adding row a reduces to the single
equation sum_j (a . h_j) y_j = 0 in y >= 0, solved by Contejean-Devie
completion; the images sum_j y_j h_j are then filtered down to the minimal
ones.
"""

import logging
from dataclasses import dataclass
from functools import cache
from itertools import product

import numpy as np

from exceptions import ScaleLimit

logger = logging.getLogger(__name__)

# Configuration
MAX_COLUMNS = 30


@dataclass(frozen=True)
class FundamentalSet:
    """Nonzero non-negative solutions in lexicographic order."""

    solutions: tuple

    def __len__(self):
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    def __contains__(self, vector):
        return tuple(vector) in self.solutions


def _dominates(y, x):
    return all(a >= b for a, b in zip(y, x))


def _single_equation_basis(coefficients):
    """
    Minimal y >= 0 with coefficients . y = 0, by breadth-first completion:
    a frontier vector y with c.y != 0 is extended by e_j only when c_j pulls
    c.y back towards zero, and extensions dominating a known solution are
    pruned.
    """
    n = len(coefficients)
    found = []
    frontier = {tuple(int(i == j) for i in range(n)) for j in range(n)}
    while frontier:
        layer = sorted(frontier)
        frontier = set()
        pending = []
        for y in layer:
            value = sum(c * x for c, x in zip(coefficients, y))
            if value == 0:
                if not any(_dominates(y, b) for b in found):
                    found.append(y)
            else:
                pending.append((y, value))
        for y, value in pending:
            for j, c in enumerate(coefficients):
                if c * value >= 0:
                    continue
                extended = y[:j] + (y[j] + 1,) + y[j + 1:]
                if not any(_dominates(extended, b) for b in found):
                    frontier.add(extended)
    return found


def _minimal(vectors):
    distinct = sorted(set(vectors))
    return [
        g for g in distinct
        if not any(h != g and _dominates(g, h) for h in distinct)
    ]


def fundamental_solutions(A, max_columns=None):
    """
    The complete Hilbert basis of the non-negative integer kernel of A.

    Raises ScaleLimit when A has more than max_columns columns
    (MAX_COLUMNS by default).
    """
    limit = MAX_COLUMNS if max_columns is None else max_columns
    n = A.ncols
    if n > limit:
        raise ScaleLimit(f"{n} columns exceed the enumeration limit of {limit}")
    basis = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    for number, row in enumerate(A.rows):
        coefficients = [sum(a * x for a, x in zip(row, h)) for h in basis]
        if not any(coefficients):
            continue
        combinations = _single_equation_basis(coefficients)
        images = [
            tuple(sum(y_j * h[i] for y_j, h in zip(y, basis)) for i in range(n))
            for y in combinations
        ]
        basis = _minimal(images)
        logger.debug("after row %d: %d fundamental solutions", number, len(basis))
    result = FundamentalSet(tuple(sorted(basis)))
    logger.info("found %d fundamental solutions in %d columns", len(result), n)
    return result


def _box_solutions(A, bound):
    """All non-negative solutions with every entry at most bound, as an int array."""
    n = A.ncols
    grid = np.indices((bound + 1,) * n).reshape(n, -1).T
    if A.nrows == 0:
        return grid
    matrix = np.array(A.rows, dtype=np.int64)
    return grid[np.all(grid @ matrix.T == 0, axis=1)]


def verify_hilbert(A, solutions, bound):
    """
    Brute-force check of a claimed Hilbert basis on the box [0, bound]^n:
    every element is a nonzero irreducible solution and every solution in
    the box is a non-negative integer combination of the elements.
    """
    elements = [tuple(int(x) for x in s) for s in solutions]
    for s in elements:
        if not any(s) or any(x < 0 for x in s) or any(A.apply(s)):
            logger.warning("%s is not a nonzero non-negative solution", s)
            return False
        smaller = (
            u for u in product(*(range(x + 1) for x in s))
            if any(u) and u != s and not any(A.apply(u))
        )
        if next(smaller, None) is not None:
            logger.warning("%s decomposes", s)
            return False

    @cache
    def representable(x):
        if not any(x):
            return True
        return any(
            _dominates(x, s) and representable(tuple(a - b for a, b in zip(x, s)))
            for s in elements
        )

    for x in _box_solutions(A, bound):
        x = tuple(int(v) for v in x)
        if not representable(x):
            logger.warning("%s is not generated", x)
            return False
    return True
