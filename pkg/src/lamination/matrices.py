"""Exact integer matrices as tuples of row tuples.

Products of incidence matrices grow like powers of the Perron value, so all
arithmetic stays in Python integers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(v) for v in row) for row in rows)


def identity(r: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def matvec(a: Matrix, v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def determinant(a: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def pattern(a: Matrix) -> tuple[tuple[bool, ...], ...]:
    return tuple(tuple(v != 0 for v in row) for row in a)


def bool_matmul(a, b):
    cols = tuple(zip(*b))
    return tuple(tuple(any(x and y for x, y in zip(row, col)) for col in cols) for row in a)


def is_positive(a) -> bool:
    return all(v for row in a for v in row)


def is_primitive(a: Matrix) -> bool:
    """Some power of ``a`` is strictly positive.

    By Wielandt's bound it suffices to look at powers up to ``(r - 1)**2 + 1``.
    """
    r = len(a)
    p = pattern(a)
    power = p
    for _ in range((r - 1) ** 2 + 1):
        if all(all(row) for row in power):
            return True
        power = bool_matmul(power, p)
    return False


def is_permutation_matrix(a: Matrix) -> bool:
    return all(sorted(row) == [0] * (len(row) - 1) + [1] for row in a) and all(
        sorted(col) == [0] * (len(col) - 1) + [1] for col in zip(*a)
    )


def column(a: Matrix, j: int) -> tuple[int, ...]:
    return tuple(row[j] for row in a)


def hilbert_distance(x: Sequence[int], y: Sequence[int]) -> float:
    """Hilbert projective distance between two nonnegative vectors.

    Infinite unless both vectors are strictly positive. The ratio is formed
    exactly and only ``ratio - 1`` is rounded, so tiny distances keep full
    relative precision.
    """
    if any(v <= 0 for v in x) or any(v <= 0 for v in y):
        return math.inf
    ratios = [Fraction(a, b) for a, b in zip(x, y)]
    excess = max(ratios) / min(ratios) - 1
    return math.log1p(float(excess))
