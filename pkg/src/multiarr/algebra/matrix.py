"""Determinants of square matrices over a polynomial ring."""

from __future__ import annotations

from typing import Sequence

from .division import divide_exact
from .poly import Poly


def det_bareiss(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Fraction-free (Bareiss) elimination; every division is exact in the ring."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        raise ValueError("empty matrix")
    m = [list(row) for row in matrix]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return m[0][0].ring.zero()
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * pivot - m[i][k] * m[k][j]
                m[i][j] = num if prev is None else divide_exact(num, prev)
        prev = pivot
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def det_cofactor(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Laplace expansion along the first row; a slow independent cross-check."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    total = matrix[0][0].ring.zero()
    for j in range(n):
        if not matrix[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = matrix[0][j] * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total
