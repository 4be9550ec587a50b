"""Exact rational simplex for packing LPs.

Every linear program in this package has the shape

    maximize  c.x   subject to  A x <= b,  x >= 0,  with b >= 0,

so the origin is feasible and a single phase suffices. Bland's rule
guarantees termination under degeneracy.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)


class Unbounded(ArithmeticError):
    """The objective is unbounded on the feasible region."""


def maximize(c: Sequence[Fraction], A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]):
    """Solve the packing LP exactly.

    Returns ``(value, x)`` with ``x`` an optimal vertex (tuple of Fractions).
    Raises :class:`Unbounded` when no finite optimum exists.
    """
    n = len(c)
    m = len(A)
    if any(bi < 0 for bi in b):
        raise ValueError("right-hand side must be nonnegative")
    # rows: coefficients over n structural + m slack columns, then rhs
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]] + [ZERO] * m + [Fraction(b[i])]
        row[n + i] = Fraction(1)
        rows.append(row)
    # objective row stores reduced costs -c (we pivot while any entry < 0)
    obj = [-Fraction(v) for v in c] + [ZERO] * m + [ZERO]
    basis = [n + i for i in range(m)]
    width = n + m

    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        leave = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rows[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise Unbounded("objective unbounded")
        prow = rows[leave]
        piv = prow[enter]
        if piv != 1:
            prow = [v / piv for v in prow]
            rows[leave] = prow
        nz = [j for j, v in enumerate(prow) if v]
        for i in range(m):
            if i != leave:
                f = rows[i][enter]
                if f:
                    r = rows[i]
                    for j in nz:
                        r[j] -= f * prow[j]
        f = obj[enter]
        if f:
            for j in nz:
                obj[j] -= f * prow[j]
        basis[leave] = enter

    x = [ZERO] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = rows[i][-1]
    return obj[-1], tuple(x)
