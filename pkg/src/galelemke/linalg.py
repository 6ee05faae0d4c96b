"""Exact linear algebra over rationals via fraction-free (Bareiss) elimination.

Singular systems are a normal negative outcome here, not an error: callers
probing support combinations or constraint subsets simply get ``None``.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm


def _integer_augmented(matrix, rhs):
    """Row-scale [matrix | rhs] to integers; scaling rows keeps solutions."""
    rows = []
    for i, row in enumerate(matrix):
        entries = list(row)
        entries.append(rhs[i])
        scale = lcm(*(e.denominator for e in entries)) if entries else 1
        if scale == 1:
            rows.append([e.numerator for e in entries])
        else:
            rows.append([int(e * scale) for e in entries])
    return rows


def solve_square(matrix, rhs) -> list[Fraction] | None:
    """Solve the square system ``matrix @ x = rhs`` exactly.

    Returns the solution as Fractions, or None if the matrix is singular.
    """
    n = len(matrix)
    if n == 0:
        return []
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("solve_square needs an n>=0 square matrix and matching rhs")
    aug = _integer_augmented(matrix, rhs)
    prev = 1
    for k in range(n):
        pivot_row = next((r for r in range(k, n) if aug[r][k] != 0), None)
        if pivot_row is None:
            return None
        if pivot_row != k:
            aug[k], aug[pivot_row] = aug[pivot_row], aug[k]
        pk = aug[k][k]
        for i in range(k + 1, n):
            rik = aug[i][k]
            row_i, row_k = aug[i], aug[k]
            for j in range(k + 1, n + 1):
                row_i[j] = (row_i[j] * pk - rik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    x: list[Fraction] = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(aug[i][n])
        for j in range(i + 1, n):
            acc -= aug[i][j] * x[j]
        x[i] = acc / aug[i][i]
    return x


def invert(matrix) -> list[list[Fraction]] | None:
    """Exact inverse of a square matrix, or None if singular."""
    n = len(matrix)
    columns = []
    for k in range(n):
        unit = [Fraction(1) if i == k else Fraction(0) for i in range(n)]
        col = solve_square(matrix, unit)
        if col is None:
            return None
        columns.append(col)
    return [[columns[j][i] for j in range(n)] for i in range(n)]


def dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))
