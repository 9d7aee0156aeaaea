"""Fraction-free (Bareiss) determinants over exact rings.

Works for any entries supporting +, -, * and an exact division: ints,
Fractions, and :class:`~graphpoly.polynomial.Poly` (via ``divide_exact``).
"""

from __future__ import annotations

from fractions import Fraction

from .polynomial import Poly, divide_exact


def _exact_div(a, b):
    if isinstance(a, Poly) or isinstance(b, Poly):
        return divide_exact(Poly._coerce(a), Poly._coerce(b))
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{a} not divisible by {b}")
        return q
    return a / b


def bareiss_det(matrix, one=1):
    """Determinant of a square matrix given as a list of rows.

    Each step divides by the previous pivot, which is exact by Sylvester's
    identity, so integer and polynomial entries never leave their ring.
    """
    n = len(matrix)
    if n == 0:
        return one
    a = [list(row) for row in matrix]
    sign = 1
    prev = one
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return 0 * one
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = _exact_div(a[i][j] * pivot - a[i][k] * a[k][j], prev)
            a[i][k] = 0 * one
        prev = pivot
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def fraction_det(matrix) -> Fraction:
    """Exact determinant of a rational matrix: clear denominators, then Bareiss over Z."""
    from math import lcm

    rows = [[Fraction(x) for x in row] for row in matrix]
    n = len(rows)
    scale = Fraction(1)
    int_rows = []
    for row in rows:
        m = lcm(*(x.denominator for x in row)) if row else 1
        scale /= m
        int_rows.append([int(x * m) for x in row])
    return bareiss_det(int_rows) * scale if n else Fraction(1)
