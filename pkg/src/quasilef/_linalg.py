"""Exact rational linear algebra: row reduction and cone feasibility.

Everything here works over :class:`fractions.Fraction`; no floating point.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = Sequence[Fraction | int]


def rref(rows: Sequence[Vector], ncols: int) -> list[tuple[int, list[Fraction]]]:
    """Reduced row echelon form.

    Returns the nonzero rows as ``(pivot_column, row)`` pairs, each row scaled
    so its pivot entry is 1 and every other row is zero in that column.
    """
    work = [[Fraction(x) for x in r] for r in rows]
    pivots: list[tuple[int, list[Fraction]]] = []
    row_index = 0
    for col in range(ncols):
        pick = next((i for i in range(row_index, len(work)) if work[i][col] != 0), None)
        if pick is None:
            continue
        work[row_index], work[pick] = work[pick], work[row_index]
        lead = work[row_index][col]
        work[row_index] = [x / lead for x in work[row_index]]
        for i in range(len(work)):
            if i != row_index and work[i][col] != 0:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[row_index])]
        row_index += 1
        if row_index == len(work):
            break
    for i in range(row_index):
        col = next(j for j, x in enumerate(work[i]) if x != 0)
        pivots.append((col, work[i]))
    return pivots


def rank(vectors: Sequence[Vector]) -> int:
    if not vectors:
        return 0
    return len(rref(vectors, len(vectors[0])))


def determinant(matrix: Sequence[Vector]) -> Fraction:
    """Determinant of a square matrix by fraction-exact elimination."""
    m = [[Fraction(x) for x in row] for row in matrix]
    size = len(m)
    det = Fraction(1)
    for col in range(size):
        pick = next((i for i in range(col, size) if m[i][col] != 0), None)
        if pick is None:
            return Fraction(0)
        if pick != col:
            m[col], m[pick] = m[pick], m[col]
            det = -det
        det *= m[col][col]
        for i in range(col + 1, size):
            f = m[i][col] / m[col][col]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return det


def solve_square(matrix: Sequence[Vector], rhs: Vector) -> list[Fraction]:
    """Solve ``matrix @ x = rhs`` for an invertible square matrix."""
    size = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    reduced = rref(aug, size + 1)
    if len(reduced) != size or any(col != i for i, (col, _) in enumerate(reduced)):
        raise ZeroDivisionError("singular matrix")
    return [row[size] for _, row in reduced]


def cone_contains(generators: Sequence[Vector], target: Vector) -> bool:
    """Decide whether ``target`` is a nonnegative combination of ``generators``.

    Phase I of the simplex method on ``sum_i a_i g_i = target, a >= 0``, with
    Bland's rule so the pivoting terminates.  All arithmetic is exact.
    """
    dim = len(target)
    if not generators:
        return all(x == 0 for x in target)
    m = len(generators)
    # rows: one equation per coordinate, columns a_1..a_m, s_1..s_dim, rhs
    tableau: list[list[Fraction]] = []
    for r in range(dim):
        sign = -1 if target[r] < 0 else 1
        row = [Fraction(sign * g[r]) for g in generators]
        row += [Fraction(1) if j == r else Fraction(0) for j in range(dim)]
        row.append(Fraction(sign * target[r]))
        tableau.append(row)
    basis = [m + r for r in range(dim)]
    width = m + dim
    cost = [Fraction(0)] * m + [Fraction(1)] * dim

    while True:
        reduced = []
        for j in range(width):
            cb = sum((cost[basis[r]] * tableau[r][j] for r in range(dim)), Fraction(0))
            reduced.append(cost[j] - cb)
        entering = next((j for j in range(width) if reduced[j] < 0), None)
        if entering is None:
            break
        leave = None
        best = None
        for r in range(dim):
            a = tableau[r][entering]
            if a > 0:
                ratio = tableau[r][width] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave is None:
            # unbounded below cannot happen for a phase I objective bounded by 0
            break
        pivot = tableau[leave][entering]
        tableau[leave] = [x / pivot for x in tableau[leave]]
        for r in range(dim):
            if r != leave and tableau[r][entering] != 0:
                f = tableau[r][entering]
                tableau[r] = [a - f * b for a, b in zip(tableau[r], tableau[leave])]
        basis[leave] = entering

    objective = sum((cost[basis[r]] * tableau[r][width] for r in range(dim)), Fraction(0))
    return objective == 0
