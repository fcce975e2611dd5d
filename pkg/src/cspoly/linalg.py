"""Small exact dense linear algebra over scalars (Fraction or KRational)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class SingularMatrix(ArithmeticError):
    pass


def _eliminate(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """Row-reduce in place to reduced echelon form; return (rows, pivot columns)."""
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        inv = Fraction(1, p) if isinstance(p, int) else 1 / p
        rows[r] = [x * inv if x else x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(A: Sequence[Sequence]) -> int:
    if not A:
        return 0
    rows = [list(r) for r in A]
    return len(_eliminate(rows, len(rows[0]))[1])


def solve(A: Sequence[Sequence], b: Sequence) -> list:
    """Solve the square system A x = b exactly."""
    n = len(A)
    rows = [list(A[i]) + [b[i]] for i in range(n)]
    rows, piv = _eliminate(rows, n)
    if len(piv) < n or piv != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [rows[i][n] for i in range(n)]


def transpose(A: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*A)] if A else []
