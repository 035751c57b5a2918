"""Fraction-free (Bareiss) elimination over the integers."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence


def rank(rows: Sequence[Sequence[int | Fraction]]) -> int:
    """Rank of an integer or rational matrix, exactly.

    Rational input is cleared of denominators row by row first, so every
    intermediate entry stays an integer.
    """
    m = [_integral_row(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    prev = 1
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][col]
        for i in range(r + 1, len(m)):
            a = m[i][col]
            # exact by Sylvester's identity
            m[i] = [(p * m[i][j] - a * m[r][j]) // prev for j in range(ncols)]
        prev = p
        r += 1
        if r == len(m):
            break
    return r


def _integral_row(row) -> list[int]:
    row = [Fraction(x) for x in row]
    den = lcm(*(x.denominator for x in row))
    return [int(x * den) for x in row]


def nullity(rows: Sequence[Sequence[int | Fraction]], ncols: int) -> int:
    return ncols - rank(rows)
