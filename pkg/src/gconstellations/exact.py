"""Exact rational arithmetic and small dense linear algebra.

Everything in this package runs on `fractions.Fraction`; no floating point
appears anywhere. Matrices are plain sequences of row sequences, kept small
(n x n for the ambient dimension n), so classical Gaussian elimination is
entirely adequate.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence, Union

Rational = Fraction
RationalLike = Union[int, str, Fraction]


class SingularMatrixError(ArithmeticError):
    """An inverse was requested for a matrix with determinant zero."""


def rat(value: RationalLike) -> Fraction:
    """Coerce an int, an exact string like '5/8' or a Fraction to Fraction."""
    return Fraction(value)


def frac(q: RationalLike) -> Fraction:
    """Fractional part of q, always in [0, 1); q - frac(q) is an integer."""
    q = Fraction(q)
    # Python's % on the numerator is already the positive remainder
    return Fraction(q.numerator % q.denominator, q.denominator)


def dot(u: Sequence[RationalLike], v: Sequence[RationalLike]) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    total = Fraction(0)
    for a, b in zip(u, v):
        total += Fraction(a) * Fraction(b)
    return total


def _to_rows(matrix: Sequence[Sequence[RationalLike]]) -> list[list[Fraction]]:
    rows = [[Fraction(x) for x in row] for row in matrix]
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise ValueError("matrix must be square and non-empty")
    return rows


def det(matrix: Sequence[Sequence[RationalLike]]) -> Fraction:
    """Exact determinant by Gaussian elimination."""
    rows = _to_rows(matrix)
    n = len(rows)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            sign = -sign
        pv = rows[col][col]
        result *= pv
        for r in range(col + 1, n):
            if rows[r][col]:
                factor = rows[r][col] / pv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return sign * result


def invert(matrix: Sequence[Sequence[RationalLike]]) -> list[list[Fraction]]:
    """Exact inverse via Gauss-Jordan; raises SingularMatrixError if det = 0."""
    rows = _to_rows(matrix)
    n = len(rows)
    aug = [row + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [a / pv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def mat_mul(a: Sequence[Sequence[RationalLike]],
            b: Sequence[Sequence[RationalLike]]) -> list[list[Fraction]]:
    bt = list(zip(*b))
    return [[dot(row, col) for col in bt] for row in a]


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix.

    Returns only the nonzero rows: pivots positive, strictly to the right as
    the row index grows, and entries above each pivot reduced into [0, pivot).
    The output rows generate the same integer row lattice as the input.
    """
    m = [[int(x) for x in row] for row in rows]
    if not m:
        return []
    ncols = len(m[0])
    if any(len(row) != ncols for row in m):
        raise ValueError("ragged matrix")
    r = 0
    for c in range(ncols):
        # gcd-reduce column c below row r until one nonzero entry remains
        while True:
            live = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not live:
                break
            i0 = min(live, key=lambda i: abs(m[i][c]))
            m[r], m[i0] = m[i0], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c] != 0:
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    if m[i][c] != 0:
                        done = False
            if done:
                break
        if r < len(m) and m[r][c] != 0:
            if m[r][c] < 0:
                m[r] = [-a for a in m[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
            r += 1
            if r == len(m):
                break
    return [row for row in m if any(row)]


def rational_lcm(values: Sequence[Fraction]) -> Fraction:
    """Smallest positive generator of the intersection of the groups v_j * Z.

    For nonzero rationals v_j = p_j/q_j in lowest terms this is
    lcm(p_j)/gcd(q_j); zeros are not allowed.
    """
    if not values or any(v == 0 for v in values):
        raise ValueError("rational_lcm needs nonzero values")
    nums = [abs(Fraction(v).numerator) for v in values]
    dens = [Fraction(v).denominator for v in values]
    return Fraction(lcm(*nums), gcd(*dens))
