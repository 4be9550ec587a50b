"""
Power series as stable functions
================================

Stable functions on the unit interval are power series with nonnegative
coefficients. They compose through the exponential, and total
monotonicity separates them from concave maps such as the square root.
"""

from fractions import Fraction

from pcoh import elem, one
from pcoh.bang import StableFn, kleisli_compose, promote, total_monotonicity_check
from pcoh.rational import Bag, fmt
from pcoh.suites import sqrt_counterexample

I = one()


def series(*coeffs):
    return StableFn.from_entries(I, len(coeffs) - 1, I, {(Bag(["*"] * k), "*"): c for k, c in enumerate(coeffs)})


def show(v):
    return " ".join(fmt(Fraction(x)) for x in v)


x = elem(I, [Fraction(1, 2)])
print("promotion of 1/2 to degree 3:", show(promote(x, 3).vec))

# f(x) = (x + x^2)/2 and g(y) = (1 + y^2)/2
f = series(0, Fraction(1, 2), Fraction(1, 2))
g = series(Fraction(1, 2), 0, Fraction(1, 2))
h = kleisli_compose(f, g)
print("coefficients of g o f:", show(h.matrix[(Bag(["*"] * k), "*")] for k in range(h.degree + 1)))
print("h(1/2) =", show(h(x).vec), " g(f(1/2)) =", show(g(f(x)).vec))

# x -> x^2 passes the alternating-sum test on a pair of quarters
sq = series(0, 0, 1)
quarter = (Fraction(1, 4),)
print("square passes:", bool(total_monotonicity_check(lambda v: sq(elem(I, v)).vec, [(quarter, quarter)])))

# the square root fails on the same pair: 2 sqrt(1/4) > sqrt(0) + sqrt(1/2)
res = sqrt_counterexample()
print("sqrt passes:", res.ok, " witness:", [show(v) for v in res.witness])
