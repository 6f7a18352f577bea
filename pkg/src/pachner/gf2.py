"""Rank of binary matrices, rows stored as Python integers."""

from __future__ import annotations


def rank(rows: list[int]) -> int:
    """GF(2) rank of a matrix given as a list of row bitmasks.

    Uses the usual xor basis: each stored pivot has a distinct leading bit.
    """
    pivots: dict[int, int] = {}
    r = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            pivot = pivots.get(top)
            if pivot is None:
                pivots[top] = row
                r += 1
                break
            row ^= pivot
    return r
