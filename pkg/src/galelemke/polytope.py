"""Exhaustive exact vertex enumeration for small inequality-defined polytopes.

Brute force over square subsystems of binding constraints.  Intended as an
oracle and for nondegeneracy checks; cost grows as C(#constraints, dim).
The inner loops run on integers: rows are pre-scaled and candidate points
are compared through a common denominator.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import lcm

from .linalg import dot, solve_square

ONE = Fraction(1)
ZERO = Fraction(0)


def _scaled_rows(rows, rhs):
    """Clear denominators per row: (integer row, integer rhs) pairs."""
    out = []
    for row, b in zip(rows, rhs):
        entries = list(row) + [b]
        scale = lcm(*(e.denominator for e in entries))
        if scale == 1:
            out.append(([e.numerator for e in row], b.numerator))
        else:
            out.append(([int(e * scale) for e in row], int(b * scale)))
    return out


def _scaled_point(point):
    """(integer coordinates, common denominator) of a rational point."""
    denom = lcm(*(v.denominator for v in point)) if point else 1
    return [int(v * denom) for v in point], denom


def vertices_nonneg_form(rows, dim):
    """Vertices of ``{z >= 0, R z <= 1}`` where ``rows`` lists the rows of R.

    Yields ``(point, tight_coords, tight_rows)`` with 1-based index sets of
    the binding constraints (``z_i = 0`` and ``(R z)_j = 1`` respectively).
    Every vertex is reported once; the tight sets cover all constraints that
    bind there, so a degenerate vertex reports more than ``dim`` of them.
    """
    nrows = len(rows)
    int_rows = _scaled_rows(rows, [ONE] * nrows)
    seen: set[tuple] = set()
    for k in range(0, dim + 1):
        for free in itertools.combinations(range(dim), k):
            columns = [
                ([row[c] for c in free], b) for row, b in int_rows
            ]
            for tight in itertools.combinations(range(nrows), k):
                sol = solve_square(
                    [columns[r][0] for r in tight], [columns[r][1] for r in tight]
                )
                if sol is None:
                    continue
                if any(v < 0 for v in sol):
                    continue
                point = [ZERO] * dim
                for c, v in zip(free, sol):
                    point[c] = v
                key = tuple(point)
                if key in seen:
                    continue
                scaled, denom = _scaled_point(point)
                feasible = True
                tight_rows = set()
                for j, (row, b) in enumerate(int_rows):
                    value = sum(c * z for c, z in zip(row, scaled))
                    bound = b * denom
                    if value > bound:
                        feasible = False
                        break
                    if value == bound:
                        tight_rows.add(j + 1)
                if not feasible:
                    continue
                seen.add(key)
                tight_coords = frozenset(i + 1 for i in range(dim) if point[i] == 0)
                yield tuple(point), tight_coords, frozenset(tight_rows)


def vertices_general_form(rows, rhs):
    """Vertices of ``{x : rows @ x <= rhs}``.

    Yields ``(point, tight_rows)`` with the 1-based set of binding rows.
    """
    nrows = len(rows)
    dim = len(rows[0])
    seen: set[tuple] = set()
    for subset in itertools.combinations(range(nrows), dim):
        sub = [rows[r] for r in subset]
        sol = solve_square(sub, [rhs[r] for r in subset])
        if sol is None:
            continue
        key = tuple(sol)
        if key in seen:
            continue
        feasible = True
        tight = set()
        for j, row in enumerate(rows):
            value = dot(row, sol)
            if value > rhs[j]:
                feasible = False
                break
            if value == rhs[j]:
                tight.add(j + 1)
        if not feasible:
            continue
        seen.add(key)
        yield key, frozenset(tight)
