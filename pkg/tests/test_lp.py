from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from pcoh.lp import Unbounded, maximize

from conftest import grid, positive_grid


def test_small_known_optimum():
    # max x + y with x + 2y <= 4, 3x + y <= 6: optimum at (8/5, 6/5)
    value, x = maximize([1, 1], [[1, 2], [3, 1]], [4, 6])
    assert value == Fraction(14, 5)
    assert x == (Fraction(8, 5), Fraction(6, 5))


def test_unbounded():
    with pytest.raises(Unbounded):
        maximize([1, 1], [[1, 0]], [1])


def test_negative_rhs_rejected():
    with pytest.raises(ValueError):
        maximize([1], [[1]], [-1])


def test_degenerate_problem_terminates():
    # many constraints tight at the origin; Bland's rule must not cycle
    A = [[1, -1, 0], [1, 0, -1], [0, 1, -1], [1, 1, 1]]
    value, _ = maximize([1, 1, 1], A, [0, 0, 0, 3])
    assert value == 3


@st.composite
def packing_lps(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, 5))
    c = draw(st.lists(grid, min_size=n, max_size=n))
    A = draw(st.lists(st.lists(grid, min_size=n, max_size=n), min_size=m, max_size=m))
    # one all-positive row keeps the region bounded
    A.append(draw(st.lists(positive_grid, min_size=n, max_size=n)))
    b = draw(st.lists(positive_grid, min_size=m + 1, max_size=m + 1))
    return c, A, b


@given(packing_lps())
def test_matches_floating_point_solver(lp):
    c, A, b = lp
    value, x = maximize(c, A, b)
    assert all(v >= 0 for v in x)
    assert all(sum(a * v for a, v in zip(row, x)) <= bi for row, bi in zip(A, b))
    assert sum(ci * v for ci, v in zip(c, x)) == value
    ref = linprog([-float(v) for v in c], A_ub=[[float(a) for a in r] for r in A], b_ub=[float(v) for v in b],
                  bounds=[(0, None)] * len(c), method="highs")
    assert ref.status == 0
    assert abs(float(value) + ref.fun) < 1e-7
