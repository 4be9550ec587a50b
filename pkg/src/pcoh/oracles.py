"""Brute-force reference computations used by the verification suites.

None of these go through double description or facet lists: the closure
oracle works on a rational grid, vertex enumeration solves every square
subsystem, and norms are exact LPs over the raw generators.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import lcm
from typing import Sequence

from .lp import maximize
from .rng import grid_values

ZERO = Fraction(0)
ONE = Fraction(1)


# ------------------------------------------------------- grid closure oracle


def _dominates(s, p) -> bool:
    return all(a >= b for a, b in zip(s, p))


def _pair_hull_covers(s1, s2, p) -> bool:
    """Is there ``lam`` in [0,1] with ``lam*s1 + (1-lam)*s2 >= p``?"""
    lo, hi = ZERO, ONE
    for a, b, c in zip(s1, s2, p):
        k, r = a - b, c - b
        if k == 0:
            if r > 0:
                return False
        elif k > 0:
            lo = max(lo, Fraction(r, k))
        else:
            hi = min(hi, Fraction(r, k))
        if lo > hi:
            return False
    return True


def _triple_hull_covers(s1, s2, s3, p) -> bool:
    """Feasibility of ``l1*s1 + l2*s2 + (1-l1-l2)*s3 >= p`` on the 2-simplex.

    The feasible set is a bounded polygon, so it is nonempty iff some
    intersection of two boundary lines is feasible.
    """
    cons = [(-1, 0, 0), (0, -1, 0), (1, 1, 1)]  # a*l1 + b*l2 <= c
    for a, b, c, x in zip(s1, s2, s3, p):
        cons.append((c - a, c - b, c - x))
    for (a1, b1, c1), (a2, b2, c2) in combinations(cons, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        l1 = Fraction(c1 * b2 - c2 * b1, det)
        l2 = Fraction(a1 * c2 - a2 * c1, det)
        if all(a * l1 + b * l2 <= c for a, b, c in cons):
            return True
    return False


def _det(M: list[list[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    M = [list(r) for r in M]
    n = len(M)
    sign, prev = 1, 1
    for c in range(n - 1):
        if M[c][c] == 0:
            p = next((i for i in range(c + 1, n) if M[i][c]), None)
            if p is None:
                return 0
            M[c], M[p] = M[p], M[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                M[i][j] = (M[i][j] * M[c][c] - M[i][c] * M[c][j]) // prev
        prev = M[c][c]
    return sign * M[n - 1][n - 1] if n else 1


def _k_hull_covers(pts, p) -> bool:
    """Feasibility of ``sum_i l_i s_i >= p`` over the simplex, any ``k``.

    Eliminates the last weight and enumerates vertices of the resulting
    bounded polytope in ``k - 1`` variables by integer Cramer's rule.
    Integer input only.
    """
    k = len(pts)
    last = pts[-1]
    n = k - 1
    cons = [([-1 if j == i else 0 for j in range(n)], 0) for i in range(n)]
    cons.append(([1] * n, 1))
    for j, x in enumerate(p):
        cons.append(([last[j] - s[j] for s in pts[:-1]], last[j] - x))
    for sub in combinations(range(len(cons)), n):
        A = [cons[i][0] for i in sub]
        b = [cons[i][1] for i in sub]
        det = _det(A)
        if det == 0:
            continue
        num = []
        for c in range(n):
            Ac = [row[:c] + [bi] + row[c + 1 :] for row, bi in zip(A, b)]
            num.append(_det(Ac))
        if det < 0:
            det, num = -det, [-x for x in num]
        # lam = num / det with det > 0
        if all(sum(a * x for a, x in zip(row, num)) <= c * det for row, c in cons):
            return True
    return False


def _covered(p, pts, max_k: int) -> bool:
    """``p`` lies below a convex combination of at most ``max_k`` of ``pts``."""
    if any(_dominates(s, p) for s in pts):
        return True
    if max_k >= 2:
        for s1, s2 in combinations(pts, 2):
            if _pair_hull_covers(s1, s2, p):
                return True
    if max_k >= 3:
        for s1, s2, s3 in combinations(pts, 3):
            if _reach(p, (s1, s2, s3)) and _triple_hull_covers(s1, s2, s3, p):
                return True
    for k in range(4, max_k + 1):
        for sub in combinations(pts, k):
            if _reach(p, sub) and _k_hull_covers(sub, p):
                return True
    return False


def _reach(p, pts) -> bool:
    # a convex combination never exceeds the coordinatewise max
    return all(max(s[j] for s in pts) >= x for j, x in enumerate(p))


def _maximal(points) -> list:
    pts = sorted(set(points), reverse=True)
    out = []
    for p in pts:
        if not any(_dominates(o, p) for o in out):
            out.append(p)
    return out


def _frontier(S: set, grid: list, step: dict) -> list:
    """Grid points outside ``S`` all of whose one-step-down neighbours are in ``S``.

    Any grid point of the hull missing from a down-closed ``S`` has a
    minimal such point, and minimal ones are of this form.
    """
    out = []
    for p in grid:
        if p in S:
            continue
        if all(p[:j] + (step[p[j]],) + p[j + 1 :] in S for j in range(len(p)) if p[j]):
            out.append(p)
    return out


def grid_closure(generators: Sequence[Sequence], grid_den: int = 4) -> set:
    """Grid points in the convex, down- and chain-closed hull of ``generators``.

    Works in integers scaled by ``lcm(1..grid_den)``. The first round adds
    every grid point dominated by a convex combination of at most ``d``
    of the generators and 0; that is already complete, because pushing a
    dominating point upward until it leaves the hull lands on a face
    spanned by ``d`` points. Later rounds close under down-sets and
    pairwise convex combinations of maximal points until nothing changes.
    Chains on a finite grid are eventually constant, so chain closure adds
    nothing. Returns the member points as Fraction tuples.
    """
    d = len(generators[0]) if generators else 0
    L = lcm(*range(1, grid_den + 1))
    vals = [int(v * L) for v in grid_values(grid_den)]
    step = {v: u for u, v in zip(vals, vals[1:])}
    grid = list(product(vals, repeat=d))
    base = {tuple(0 for _ in range(d))}
    for g in generators:
        gi = tuple(int(Fraction(x) * L) for x in g)
        if any(Fraction(x) * L != v for x, v in zip(g, gi)):
            raise ValueError("generators must lie on the grid")
        base.add(gi)
    M = _maximal(base) + [tuple(0 for _ in range(d))]
    S = {p for p in grid if _covered(p, M, d)} | base
    while True:
        M = _maximal(S)
        new = {p for p in _frontier(S, grid, step) if _covered(p, M, 2)}
        if not new:
            break
        S |= new
    return {tuple(Fraction(x, L) for x in p) for p in S}


# --------------------------------------------------- subset vertex oracle


def _solve(A: list[list[Fraction]], b: list[Fraction]):
    """Unique solution of a square system, or None when singular."""
    n = len(A)
    M = [list(r) + [v] for r, v in zip(A, b)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return None
        M[c], M[p] = M[p], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                k = M[i][c]
                M[i] = [x - k * y for x, y in zip(M[i], M[c])]
    return tuple(M[i][n] for i in range(n))


def vertices_by_subsets(rows: Sequence[Sequence], d: int) -> list[tuple]:
    """Vertices of ``{u >= 0 : <u, w> <= 1 for w in rows}`` by brute force.

    Every choice of ``d`` tight constraints among the rows and the
    coordinate hyperplanes is solved exactly and kept when feasible.
    """
    cons = [([Fraction(x) for x in w], ONE) for w in rows]
    cons += [([ONE if j == i else ZERO for j in range(d)], ZERO) for i in range(d)]
    out = set()
    for sub in combinations(range(len(cons)), d):
        sol = _solve([cons[i][0] for i in sub], [cons[i][1] for i in sub])
        if sol is None or any(x < 0 for x in sol):
            continue
        if all(sum(a * x for a, x in zip(w, sol)) <= 1 for w, _ in cons[: len(rows)]):
            out.add(sol)
    return sorted(out)


def maximal_points(points) -> list[tuple]:
    """Points not dominated coordinatewise by another point (zero dropped)."""
    pts = [tuple(p) for p in points if any(p)]
    return sorted(p for p in set(pts) if not any(o != p and _dominates(o, p) for o in pts))


# ----------------------------------------------------------- norm oracles


def lp_norm(x: Sequence, generators: Sequence[Sequence]) -> Fraction:
    """``max <x, y>`` over ``y >= 0`` with ``<g, y> <= 1`` for each generator."""
    value, _ = maximize(list(x), [list(g) for g in generators], [ONE] * len(generators))
    return value


def lp_morph_norm(entries: dict, dom_web, cod_web, dom_gens, cod_gens) -> Fraction:
    """``max`` over raw domain generators ``u`` of the LP norm of ``t.u``."""
    ci = {b: i for i, b in enumerate(cod_web)}
    best = ZERO
    for u in dom_gens:
        v = [ZERO] * len(cod_web)
        for j, a in enumerate(dom_web):
            if u[j]:
                for b in cod_web:
                    t = entries.get((a, b))
                    if t:
                        v[ci[b]] += t * u[j]
        best = max(best, lp_norm(v, cod_gens))
    return best
