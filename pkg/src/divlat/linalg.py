"""Small exact linear algebra over Fraction.

Only what the engine needs: determinants and linear solves of tiny
symmetric systems. Everything stays in arbitrary-precision rationals.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination with pivoting."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    a = [list(map(Fraction, row)) for row in rows]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            sign = -sign
        pivot = a[col][col]
        result *= pivot
        for r in range(col + 1, n):
            if a[r][col] == 0:
                continue
            factor = a[r][col] / pivot
            for c in range(col, n):
                a[r][c] -= factor * a[col][c]
    return sign * result


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """Solve A x = b exactly. Returns None when A is singular."""
    n = len(rows)
    if any(len(row) != n for row in rows) or len(rhs) != n:
        raise ValueError("solve expects a square system")
    a = [list(map(Fraction, rows[i])) + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot_row is None:
            return None
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
        pivot = a[col][col]
        for r in range(n):
            if r == col or a[r][col] == 0:
                continue
            factor = a[r][col] / pivot
            for c in range(col, n + 1):
                a[r][c] -= factor * a[col][c]
    return [a[i][n] / a[i][i] for i in range(n)]
