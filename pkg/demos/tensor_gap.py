"""
Pure tensors do not fill the tensor ball
========================================

Take two copies of the two-point product space and tensor them. The ball
of the result is the whole unit cube, yet the off-diagonal point
e12 + e21 is not a convex combination of pure tensors.
"""

from fractions import Fraction

from pcoh import elem, one
from pcoh.category import is_clinfty, with_product
from pcoh.pcs import sub
from pcoh.rational import dot, fmt, label_str
from pcoh.tensor import pure_tensor, tensor


def show(v):
    return " ".join(fmt(Fraction(x)) for x in v)


W = with_product([one(), one()])
T = tensor(W, W)
print("web:", " ".join(label_str(a) for a in T.web))
print("ball generators:", [show(g) for g in T.ball.vrep], "full cube:", is_clinfty(T))

# the off-diagonal point has norm 1
target = (0, 1, 1, 0)
print("norm of e12+e21:", fmt(T.norm(target)))

# it is reachable by subtracting two pure tensors from a third
e1, e2 = elem(W, [1, 0]), elem(W, [0, 1])
d = sub(sub(pure_tensor(e1 + e2, e1 + e2, T), pure_tensor(e1, e1, T)), pure_tensor(e2, e2, T))
print("(e1+e2)(x)(e1+e2) - e1(x)e1 - e2(x)e2 =", show(d.vec))

# <w, u(x)v> = (u1 - u2)(v2 - v1) stays <= 1 on the box but w reaches 2
# at the target, so no convex combination of pure tensors hits it
w = (-1, 1, 1, -1)
grid = [Fraction(i, 4) for i in range(5)]
sup = max((u1 - u2) * (v2 - v1) for u1 in grid for u2 in grid for v1 in grid for v2 in grid)
print("sup over pure tensors:", fmt(sup), "value at target:", fmt(dot(w, target)))
