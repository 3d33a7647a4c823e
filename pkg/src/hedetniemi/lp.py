"""Dense-tableau primal simplex over :class:`fractions.Fraction`.

Only the packing form is needed: maximize ``c.y`` subject to ``A y <= b``,
``y >= 0`` with ``b >= 0``, so the slack basis is feasible from the start and
no phase one is required. Pivoting follows Bland's rule (lowest-index
entering column, lowest-index leaving basic variable on ratio ties), which
rules out cycling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class Unbounded(ArithmeticError):
    pass


@dataclass
class PackingSolution:
    value: Fraction
    primal: list[Fraction]  # y, one entry per column of A
    dual: list[Fraction]  # multipliers, one entry per row of A
    pivots: int


def solve_packing(A: Sequence[Sequence[int | Fraction]], b: Sequence[int | Fraction],
                  c: Sequence[int | Fraction], max_pivots: int | None = None) -> PackingSolution:
    m = len(A)
    n = len(c)
    if any(len(row) != n for row in A):
        raise ValueError("constraint rows must all have len(c) entries")
    if len(b) != m:
        raise ValueError("len(b) must equal the number of rows")
    if any(Fraction(x) < 0 for x in b):
        raise ValueError("packing form requires b >= 0")

    width = n + m
    # each row: coefficients over y then slacks, followed by the rhs
    rows = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]] + [Fraction(0)] * m + [Fraction(b[i])]
        row[n + i] = Fraction(1)
        rows.append(row)
    # objective row holds z_j - c_j; optimal once nothing is negative
    obj = [-Fraction(x) for x in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = list(range(n, n + m))

    pivots = 0
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rows[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise Unbounded(f"column {enter} is unbounded")
        _pivot(rows, obj, leave, enter)
        basis[leave] = enter
        pivots += 1
        if max_pivots is not None and pivots > max_pivots:
            raise RuntimeError("pivot limit exceeded")

    primal = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            primal[var] = rows[i][-1]
    dual = [obj[n + i] for i in range(m)]
    return PackingSolution(obj[-1], primal, dual, pivots)


def _pivot(rows: list[list[Fraction]], obj: list[Fraction], r: int, col: int) -> None:
    prow = rows[r]
    p = prow[col]
    if p != 1:
        prow[:] = [x / p for x in prow]
    nz = [j for j, x in enumerate(prow) if x]
    for i, row in enumerate(rows):
        if i != r:
            f = row[col]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
    f = obj[col]
    if f:
        for j in nz:
            obj[j] -= f * prow[j]
