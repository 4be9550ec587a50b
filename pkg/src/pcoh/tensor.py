"""Tensor product of PCSs with currying and the monoidal isos.

``X (x) Y`` has the product web; its ball is the polar of the ball of
``X -o Y^perp``, which by construction is generated by the pure tensors
``u (x) v`` of ball generators. :func:`tensor_by_closure` builds the same
space from that generating set directly; the two constructions must agree.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from . import polytope as pt
from .category import MorphMatrix, compose, identity, limpl
from .pcs import ConeElem, Pcs, biorth_closure, one
from .rational import InputError, WebMismatch, label_str, q

ZERO = Fraction(0)


def tensor(X: Pcs, Y: Pcs) -> Pcs:
    web = tuple((a, b) for a in X.web for b in Y.web)

    def build():
        return pt.polar(limpl(X, Y.dual()).ball)

    T = Pcs(web, build=build, name=f"({X.name or '?'} (x) {Y.name or '?'})")
    T.factors = (X, Y)
    return T


def tensor_by_closure(X: Pcs, Y: Pcs) -> Pcs:
    """Biorthogonal closure of the pure tensors of ball generators."""
    web = tuple((a, b) for a in X.web for b in Y.web)
    gens = [tuple(x * y for x in u for y in v) for u in X.ball.vrep for v in Y.ball.vrep]
    T = biorth_closure(web, gens)
    T.factors = (X, Y)
    return T


def pure_tensor(x: ConeElem, y: ConeElem, T: Pcs | None = None) -> ConeElem:
    """``(x (x) y)_(a,b) = x_a y_b``."""
    if T is None:
        T = tensor(x.cone, y.cone)
    vec = tuple(a * b for a in x.vec for b in y.vec)
    return ConeElem(T, vec)


def tensor_map(f: MorphMatrix, g: MorphMatrix, dom: Pcs | None = None, cod: Pcs | None = None) -> MorphMatrix:
    """``f (x) g``, entry ``((a,a'),(b,b')) = f[a,b] g[a',b']``."""
    dom = dom or tensor(f.dom, g.dom)
    cod = cod or tensor(f.cod, g.cod)
    out = {}
    for (a, b), v in f.entries.items():
        for (a2, b2), w in g.entries.items():
            out[((a, a2), (b, b2))] = v * w
    return MorphMatrix(dom, cod, out)


# ----------------------------------------------------------------- bilinear


class BilinMap:
    """A bilinear map given by ``coeffs[((a, b), c)]``.

    ``f(x, y)_c = sum_{a,b} coeffs[(a,b),c] x_a y_b``.
    """

    def __init__(self, dom1: Pcs, dom2: Pcs, cod: Pcs, coeffs: Mapping, *, check: bool = False):
        self.dom1, self.dom2, self.cod = dom1, dom2, cod
        i1, i2, ic = dom1.index(), dom2.index(), cod.index()
        clean = {}
        for ((a, b), c), v in coeffs.items():
            v = q(v)
            if v < 0:
                raise InputError("coefficients must be nonnegative")
            if a not in i1 or b not in i2 or c not in ic:
                raise WebMismatch(f"coefficient {label_str(((a, b), c))} outside the webs")
            if v:
                clean[((a, b), c)] = v
        self.coeffs = clean
        if check and not self.maps_balls():
            raise ValueError("bilinear map does not send ball x ball into the ball")

    def __call__(self, x: ConeElem, y: ConeElem) -> ConeElem:
        return ConeElem(self.cod, self.act(x.vec, y.vec))

    def act(self, u, v) -> tuple:
        i1, i2, ic = self.dom1.index(), self.dom2.index(), self.cod.index()
        out = [ZERO] * len(self.cod.web)
        for ((a, b), c), w in self.coeffs.items():
            out[ic[c]] += w * u[i1[a]] * v[i2[b]]
        return tuple(out)

    def maps_balls(self) -> bool:
        """Bilinearity makes generator pairs sufficient."""
        H = self.cod.ball.hrep
        for u in self.dom1.ball.vrep:
            for v in self.dom2.ball.vrep:
                r = self.act(u, v)
                if any(sum(a * b for a, b in zip(r, w)) > 1 for w in H):
                    return False
        return True


def linofbilin(f: BilinMap, T: Pcs | None = None) -> MorphMatrix:
    """The unique linear ``h`` on ``dom1 (x) dom2`` with ``h(x (x) y) = f(x, y)``."""
    T = T or tensor(f.dom1, f.dom2)
    return MorphMatrix(T, f.cod, dict(f.coeffs))


def bilin_of_lin(h: MorphMatrix) -> BilinMap:
    X, Y = h.dom.factors
    return BilinMap(X, Y, h.cod, dict(h.entries))


def tensor_bilin(X: Pcs, Y: Pcs) -> BilinMap:
    """The universal bilinear map ``(x, y) -> x (x) y``."""
    T = tensor(X, Y)
    return BilinMap(X, Y, T, {((a, b), (a, b)): 1 for a in X.web for b in Y.web})


# ------------------------------------------------------------------ closure


def limpl_obj(Y: Pcs, Z: Pcs) -> Pcs:
    L = limpl(Y, Z)
    L.factors = (Y, Z)
    return L


def curry(t: MorphMatrix, L: Pcs | None = None) -> MorphMatrix:
    """``X (x) Y -> Z`` to ``X -> (Y -o Z)`` by reindexing."""
    X, Y = t.dom.factors
    L = L or limpl_obj(Y, t.cod)
    return MorphMatrix(X, L, {(a, (b, c)): v for ((a, b), c), v in t.entries.items()})


def uncurry(s: MorphMatrix, T: Pcs | None = None) -> MorphMatrix:
    Y, Z = s.cod.factors
    T = T or tensor(s.dom, Y)
    return MorphMatrix(T, Z, {((a, b), c): v for (a, (b, c)), v in s.entries.items()})


def eval_morphism(X: Pcs, Y: Pcs, L: Pcs | None = None) -> MorphMatrix:
    """Evaluation ``(X -o Y) (x) X -> Y``."""
    L = L or limpl_obj(X, Y)
    T = tensor(L, X)
    return MorphMatrix(T, Y, {(((a, b), a), b): 1 for a in X.web for b in Y.web})


# ---------------------------------------------------------- structural isos


def associator(X: Pcs, Y: Pcs, Z: Pcs, dom: Pcs | None = None, cod: Pcs | None = None) -> MorphMatrix:
    """``(X (x) Y) (x) Z -> X (x) (Y (x) Z)``."""
    dom = dom or tensor(tensor(X, Y), Z)
    cod = cod or tensor(X, tensor(Y, Z))
    return MorphMatrix(dom, cod, {(((a, b), c), (a, (b, c))): 1 for a in X.web for b in Y.web for c in Z.web})


def symmetry(X: Pcs, Y: Pcs, dom: Pcs | None = None, cod: Pcs | None = None) -> MorphMatrix:
    dom = dom or tensor(X, Y)
    cod = cod or tensor(Y, X)
    return MorphMatrix(dom, cod, {((a, b), (b, a)): 1 for a in X.web for b in Y.web})


def left_unitor(X: Pcs, unit: Pcs | None = None) -> MorphMatrix:
    """``1 (x) X -> X``."""
    unit = unit or one()
    (star,) = unit.web
    return MorphMatrix(tensor(unit, X), X, {((star, a), a): 1 for a in X.web})


def right_unitor(X: Pcs, unit: Pcs | None = None) -> MorphMatrix:
    """``X (x) 1 -> X``."""
    unit = unit or one()
    (star,) = unit.web
    return MorphMatrix(tensor(X, unit), X, {((a, star), a): 1 for a in X.web})


def inverse_iso(t: MorphMatrix) -> MorphMatrix:
    """Inverse of a permutation matrix (its transpose)."""
    for (a, b), v in t.entries.items():
        if v != 1:
            raise ValueError("not a permutation matrix")
    if len(t.entries) != len(t.dom.web) or len(t.entries) != len(t.cod.web):
        raise ValueError("not a permutation matrix")
    return t.transpose()


# ------------------------------------------------------- coherence diagrams


def pentagon(W: Pcs, X: Pcs, Y: Pcs, Z: Pcs) -> tuple[MorphMatrix, MorphMatrix]:
    """Both legs ``((W X) Y) Z -> W (X (Y Z))`` of Mac Lane's pentagon."""
    WX, XY = tensor(W, X), tensor(X, Y)
    lhs = compose(associator(WX, Y, Z), associator(W, X, tensor(Y, Z)))
    rhs = compose(
        compose(tensor_map(associator(W, X, Y), identity(Z)), associator(W, XY, Z)),
        tensor_map(identity(W), associator(X, Y, Z)),
    )
    return lhs, rhs


def triangle(X: Pcs, Y: Pcs) -> tuple[MorphMatrix, MorphMatrix]:
    """``(X 1) Y -> X Y`` via the associator or via the right unitor."""
    I = one()
    lhs = compose(associator(X, I, Y), tensor_map(identity(X), left_unitor(Y, I)))
    rhs = tensor_map(right_unitor(X, I), identity(Y))
    return lhs, rhs


def hexagon(X: Pcs, Y: Pcs, Z: Pcs) -> tuple[MorphMatrix, MorphMatrix]:
    """``(X Y) Z -> Y (Z X)`` both ways round the hexagon."""
    YZ = tensor(Y, Z)
    lhs = compose(compose(associator(X, Y, Z), symmetry(X, YZ)), associator(Y, Z, X))
    rhs = compose(
        compose(tensor_map(symmetry(X, Y), identity(Z)), associator(Y, X, Z)),
        tensor_map(identity(Y), symmetry(X, Z)),
    )
    return lhs, rhs


def symmetry_involution(X: Pcs, Y: Pcs) -> tuple[MorphMatrix, MorphMatrix]:
    return compose(symmetry(X, Y), symmetry(Y, X)), identity(tensor(X, Y))


def naturality_associator(f: MorphMatrix, g: MorphMatrix, h: MorphMatrix):
    lhs = compose(tensor_map(tensor_map(f, g), h), associator(f.cod, g.cod, h.cod))
    rhs = compose(associator(f.dom, g.dom, h.dom), tensor_map(f, tensor_map(g, h)))
    return lhs, rhs


def naturality_symmetry(f: MorphMatrix, g: MorphMatrix):
    lhs = compose(tensor_map(f, g), symmetry(f.cod, g.cod))
    rhs = compose(symmetry(f.dom, g.dom), tensor_map(g, f))
    return lhs, rhs


def naturality_left_unitor(f: MorphMatrix):
    I = one()
    lhs = compose(tensor_map(identity(I), f), left_unitor(f.cod, I))
    rhs = compose(left_unitor(f.dom, I), f)
    return lhs, rhs


def naturality_right_unitor(f: MorphMatrix):
    I = one()
    lhs = compose(tensor_map(f, identity(I)), right_unitor(f.cod, I))
    rhs = compose(right_unitor(f.dom, I), f)
    return lhs, rhs


def functoriality(f: MorphMatrix, g: MorphMatrix, f2: MorphMatrix, g2: MorphMatrix):
    """``(f2 o f) (x) (g2 o g) = (f2 (x) g2) o (f (x) g)``."""
    lhs = tensor_map(compose(f, f2), compose(g, g2))
    rhs = compose(tensor_map(f, g), tensor_map(f2, g2))
    return lhs, rhs


def beta_law(t: MorphMatrix) -> tuple[MorphMatrix, MorphMatrix]:
    """``eval o (curry(t) (x) id) = t`` for ``t : X (x) Y -> Z``."""
    X, Y = t.dom.factors
    c = curry(t)
    lhs = compose(tensor_map(c, identity(Y)), eval_morphism(Y, t.cod, c.cod))
    return lhs, t
