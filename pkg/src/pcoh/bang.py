"""Degree-truncated exponential on PCSs and stable functions.

The web of ``!_D X`` is the set of multisets over the web of ``X`` of size
at most ``D``. Promotion uses plain monomials, with no multinomial factor:

    (x^!)_m = prod_a x_a ** m(a).

Every other coefficient formula (functorial action, digging, Seely) is
derived from that convention. The ball of ``!_D X`` is the biorthogonal of
all promotions, an infinite family, so it is not computed exactly:
membership of dual vectors is refuted one-sidedly by grid search
(:func:`refute_dual`) and an inner polytope approximation is available
(:meth:`BangPcs.inner_ball`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Callable, Sequence

from . import polytope as pt
from .category import MorphMatrix, compose, compose_all, limpl, with_product
from .pcs import ConeElem, NotInBall, Pcs, one, top
from .polytope import Polytope
from .rational import Bag, WebMismatch, dot, q
from .rng import grid_values

ZERO = Fraction(0)
ONE = Fraction(1)


class TruncationError(ValueError):
    """The requested truncation degree cannot hold the exact result."""


class InexactBall(NotImplementedError):
    """The exact ball of a truncated exponential is not computed."""


def multisets(web: Sequence, max_size: int) -> tuple:
    out = []
    for k in range(max_size + 1):
        out.extend(Bag(c) for c in combinations_with_replacement(web, k))
    return tuple(out)


class BangPcs(Pcs):
    """``!_D X``: multisets of size at most ``degree`` over ``base``."""

    def __init__(self, base: Pcs, degree: int):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        self.base = base
        self.degree = degree
        super().__init__(multisets(base.web, degree), build=self._no_ball,
                         name=f"!{degree}{base.name or '?'}", truncation=degree)

    def _no_ball(self):
        raise InexactBall("the ball of a truncated exponential is only approximated; "
                          "use inner_ball() or refute_dual()")

    def norm(self, vec):
        raise InexactBall("exact norms in a truncated exponential are not available")

    def in_carrier(self, vec) -> bool:
        return len(vec) == len(self.web) and all(x >= 0 for x in vec)

    def inner_ball(self, grid_den: int = 4) -> Polytope:
        """Down-convex hull of promotions of maximal grid points of the base ball."""
        pts = _maximal_grid_points(self.base, grid_den)
        return Polytope(self.web, vrep=[_promote_vec(self.base.web, u, self.web) for u in pts])


def bang(X: Pcs, degree: int) -> BangPcs:
    return BangPcs(X, degree)


def _bag_monomial(base_index: dict, u: Sequence[Fraction], m: Bag) -> Fraction:
    out = ONE
    for a in m:
        out *= u[base_index[a]]
        if not out:
            break
    return out


def _promote_vec(base_web, u, web) -> tuple:
    idx = {a: i for i, a in enumerate(base_web)}
    return tuple(_bag_monomial(idx, u, m) for m in web)


def promote(x: ConeElem, degree: int, B: BangPcs | None = None, *, check: bool = True) -> ConeElem:
    """``x^!`` truncated at ``degree``."""
    X = x.cone
    if check and x.norm() > 1:
        raise NotInBall(f"promotion needs norm <= 1, got {x.norm()}")
    if B is None:
        B = BangPcs(X, degree)
    elif B.base.web != X.web or B.degree != degree:
        raise WebMismatch("target exponential does not match")
    return ConeElem(B, _promote_vec(X.web, x.vec, B.web))


# ------------------------------------------------------- polynomial helpers


def _poly_mul(p: dict, r: dict, max_deg: int | None = None) -> dict:
    out: dict = {}
    for m1, c1 in p.items():
        for m2, c2 in r.items():
            if max_deg is not None and len(m1) + len(m2) > max_deg:
                continue
            m = m1 + m2
            out[m] = out.get(m, ZERO) + c1 * c2
    return out


def _poly_pow(p: dict, k: int, max_deg: int | None = None) -> dict:
    out = {Bag(): ONE}
    for _ in range(k):
        out = _poly_mul(out, p, max_deg)
    return out


# ------------------------------------------------------- comonad structure


def dereliction(X: Pcs, degree: int = 1) -> MorphMatrix:
    if degree < 1:
        raise TruncationError("dereliction needs degree >= 1")
    return MorphMatrix(BangPcs(X, degree), X, {(Bag((a,)), a): 1 for a in X.web})


def digging(X: Pcs, inner: int, outer: int, dom: BangPcs | None = None) -> MorphMatrix:
    """``!_{inner*outer} X -> !_outer !_inner X``, entry 1 at ``(sum M, M)``.

    Because ``(x^!)_[] = 1`` and ``(x^!)^!_M = x^(sum M)``, this is exact
    on promotions whenever the domain degree is at least ``inner*outer``.
    """
    need = inner * outer
    if dom is None:
        dom = BangPcs(X, need)
    elif dom.degree < need:
        raise TruncationError(f"digging into !{outer}!{inner} needs domain degree >= {need}")
    cod = BangPcs(BangPcs(X, inner), outer)
    out = {}
    for M in cod.web:
        s = Bag()
        for m in M:
            s = s + m
        out[(s, M)] = 1
    return MorphMatrix(dom, cod, out)


def bang_functor(f: MorphMatrix, degree: int) -> MorphMatrix:
    """``!f`` characterized by ``(!f).x^! = (f.x)^!``.

    Entry ``(m, p)`` is the coefficient of ``x^m`` in
    ``prod_b (sum_a f[a,b] x_a) ** p(b)``.
    """
    dom = BangPcs(f.dom, degree)
    cod = BangPcs(f.cod, degree)
    cols: dict = {}
    for (a, b), v in f.entries.items():
        cols.setdefault(b, {})[Bag((a,))] = v
    out = {}
    for p in cod.web:
        poly = {Bag(): ONE}
        for b in p:
            poly = _poly_mul(poly, cols.get(b, {}))
            if not poly:
                break
        for m, c in poly.items():
            if c:
                out[(m, p)] = c
    return MorphMatrix(dom, cod, out)


# ------------------------------------------------------------------- Seely


def seely0(degree: int = 1) -> MorphMatrix:
    """``1 -> !T``, sending 1 to the promotion of 0 (the Dirac at ``[]``)."""
    return MorphMatrix(one(), BangPcs(top(), degree), {("*", Bag()): 1})


def seely0_inverse(degree: int = 1) -> MorphMatrix:
    return seely0(degree).transpose()


class GradedTensor(Pcs):
    """Pairs ``(m, n)`` of ``!_D P (x) !_D Q`` with ``|m| + |n| <= D``."""

    def __init__(self, P: Pcs, Q: Pcs, degree: int):
        self.factors = (BangPcs(P, degree), BangPcs(Q, degree))
        self.degree = degree
        web = tuple((m, n) for m in self.factors[0].web for n in self.factors[1].web if len(m) + len(n) <= degree)
        super().__init__(web, build=self._no_ball, name=f"(!{P.name or '?'} (x) !{Q.name or '?'})<={degree}")

    def _no_ball(self):
        raise InexactBall("graded tensor of exponentials has no exact ball")

    def restrict(self, z: ConeElem) -> ConeElem:
        """Restrict an element of the full tensor to the graded web."""
        full = {a: x for a, x in zip(z.cone.web, z.vec)}
        return ConeElem(self, tuple(full[w] for w in self.web))


def seely2(P: Pcs, Q: Pcs, degree: int) -> MorphMatrix:
    """``!P (x) !Q -> !(P & Q)`` on total degree at most ``degree``.

    The multiset pair ``(m, n)`` goes to the tagged union of ``m`` and
    ``n``; this is a bijection of webs, so the inverse is the transpose.
    """
    dom = GradedTensor(P, Q, degree)
    W = with_product([P, Q])
    cod = BangPcs(W, degree)
    out = {}
    for (m, n) in dom.web:
        tagged = Bag([("0", a) for a in m] + [("1", b) for b in n])
        out[((m, n), tagged)] = 1
    t = MorphMatrix(dom, cod, out)
    if len(out) != len(cod.web):
        raise TruncationError("Seely map is not onto the truncated web")
    return t


def seely2_inverse(P: Pcs, Q: Pcs, degree: int) -> MorphMatrix:
    return seely2(P, Q, degree).transpose()


# ----------------------------------------------------------- stable maps


class StableFn:
    """A power series ``dom -> cod`` given by a matrix ``!_D dom -> cod``."""

    def __init__(self, matrix: MorphMatrix):
        if not isinstance(matrix.dom, BangPcs):
            raise TypeError("a stable function's matrix must start at an exponential")
        self.matrix = matrix

    @classmethod
    def from_entries(cls, dom: Pcs, degree: int, cod: Pcs, entries) -> "StableFn":
        return cls(MorphMatrix(BangPcs(dom, degree), cod, entries))

    @property
    def dom(self) -> Pcs:
        return self.matrix.dom.base

    @property
    def cod(self) -> Pcs:
        return self.matrix.cod

    @property
    def degree(self) -> int:
        return self.matrix.dom.degree

    def effective_degree(self) -> int:
        return max((len(m) for (m, _) in self.matrix.entries), default=0)

    def __call__(self, x: ConeElem) -> ConeElem:
        return eval_stable(self, x)

    def __eq__(self, other):
        if not isinstance(other, StableFn):
            return NotImplemented
        return self.dom.web == other.dom.web and self.cod.web == other.cod.web and self.matrix.entries == other.matrix.entries

    def __repr__(self):
        return f"StableFn(deg<={self.degree}, nnz={len(self.matrix.entries)})"


def eval_stable(f: StableFn, x: ConeElem, *, check: bool = True) -> ConeElem:
    """``f(x)_b = sum_m f[m, b] x^m``."""
    if x.cone.web != f.dom.web:
        raise WebMismatch("argument is not in the domain")
    if check and x.norm() > 1:
        raise NotInBall("stable functions are evaluated on the unit ball")
    B = f.matrix.dom
    return ConeElem(f.cod, f.matrix.act(_promote_vec(x.cone.web, x.vec, B.web)))


def restrict_degree(t: MorphMatrix, degree: int, *, exact: bool = True) -> MorphMatrix:
    """Re-home a matrix out of ``!_D X`` onto ``!_degree X``."""
    B = t.dom
    newdom = BangPcs(B.base, degree)
    keep = {}
    for (m, b), v in t.entries.items():
        if len(m) <= degree:
            keep[(m, b)] = v
        elif exact:
            raise TruncationError(f"coefficient at degree {len(m)} exceeds truncation {degree}")
    return MorphMatrix(newdom, t.cod, keep)


def kleisli_compose(f: StableFn, g: StableFn, degree: int | None = None, *, exact: bool = True) -> StableFn:
    """Matrix of ``g o f`` computed as ``g . !f . digging``.

    The composite has degree at most ``deg f * deg g``; asking for less
    raises :class:`TruncationError` when ``exact`` and a dropped
    coefficient is nonzero.
    """
    if f.cod.web != g.dom.web:
        raise WebMismatch("codomain of f differs from domain of g")
    Df, Dg = f.degree, g.degree
    bf = bang_functor(f.matrix, Dg)
    dig = digging(f.dom, Df, Dg)
    h = compose_all(dig, bf, MorphMatrix(bf.cod, g.cod, g.matrix.entries))
    full = Df * Dg
    target = full if degree is None else degree
    if target == full:
        return StableFn(h)
    if target > full:
        return StableFn(MorphMatrix(BangPcs(f.dom, target), g.cod, h.entries))
    return StableFn(restrict_degree(h, target, exact=exact))


def kleisli_identity(X: Pcs) -> StableFn:
    return StableFn(dereliction(X, 1))


def stable_of_linear(t: MorphMatrix) -> StableFn:
    """A linear map seen as a degree-1 stable function."""
    return StableFn(compose(dereliction(t.dom, 1), t))


# ------------------------------------------------------ total monotonicity


@dataclass
class MonotonicityResult:
    ok: bool
    checked: int
    witness: tuple | None = None
    odd: tuple | None = None
    even: tuple | None = None

    def __bool__(self):
        return self.ok


def _as_values(v) -> tuple:
    if isinstance(v, ConeElem):
        return v.vec
    if isinstance(v, (tuple, list)):
        return tuple(v)
    return (v,)


def total_monotonicity_check(f: Callable, tuples, *, ball: Callable | None = None, leq: Callable | None = None) -> MonotonicityResult:
    """Check ``sum_{I odd} f(sum_I x) <= sum_{I even} f(sum_I x)`` per tuple.

    ``I`` is odd when ``n - |I|`` is odd. ``f`` maps vectors (tuples of
    rationals) to a scalar, tuple or :class:`ConeElem`; values need only
    support ``+`` and the comparison ``leq`` (default ``<=``), so exact
    algebraic values work too. ``ball`` is a membership predicate used to
    reject tuples whose sum escapes the ball.
    """
    le = leq or (lambda a, b: a <= b)
    checked = 0
    cache: dict = {}

    def fv(v):
        if v not in cache:
            cache[v] = _as_values(f(v))
        return cache[v]

    for xs in tuples:
        vecs = [tuple(x.vec) if isinstance(x, ConeElem) else tuple(q(c) for c in x) for x in xs]
        n = len(vecs)
        d = len(vecs[0]) if vecs else 0
        total = tuple(sum(col, ZERO) for col in zip(*vecs)) if vecs else ()
        if ball is not None and not ball(total):
            raise NotInBall(f"tuple sum {total} escapes the ball")
        odd = even = None
        for mask in range(1 << n):
            k = bin(mask).count("1")
            s = tuple(sum((vecs[i][j] for i in range(n) if mask >> i & 1), ZERO) for j in range(d))
            val = fv(s)
            if (n - k) % 2:
                odd = val if odd is None else tuple(a + b for a, b in zip(odd, val))
            else:
                even = val if even is None else tuple(a + b for a, b in zip(even, val))
        checked += 1
        if odd is not None and not all(le(a, b) for a, b in zip(odd, even)):
            return MonotonicityResult(False, checked, tuple(vecs), odd, even)
    return MonotonicityResult(True, checked)


def grid_tuples(X: Pcs, n: int, grid_den: int = 4):
    """All ``n``-tuples of grid points of the ball of ``X`` whose sum stays in it."""
    pts = ball_grid_points(X, grid_den)

    def rec(prefix, acc):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for p in pts:
            s = tuple(a + b for a, b in zip(acc, p))
            if X.contains(s):
                yield from rec(prefix + [p], s)

    yield from rec([], tuple(ZERO for _ in X.web))


def ball_grid_points(X: Pcs, grid_den: int) -> list:
    sups = [pt.coordinate_sup(X.ball, a) for a in range(len(X.web))]
    axes = [grid_values(grid_den, ZERO, s) for s in sups]
    return [p for p in product(*axes) if X.contains(p)]


def _maximal_grid_points(X: Pcs, grid_den: int) -> list:
    pts = ball_grid_points(X, grid_den)
    return [p for p in pts if not any(o != p and all(a <= b for a, b in zip(p, o)) for o in pts)]


# --------------------------------------------------- one-sided membership


@dataclass
class DualRefutation:
    refuted: bool
    witness: tuple | None
    value: Fraction
    grid_den: int

    def __str__(self):
        if self.refuted:
            return f"refuted by u={self.witness} with value {self.value}"
        return f"not refuted at grid {self.grid_den} (max value {self.value})"


def refute_dual(w: Sequence, B: BangPcs, grid_den: int = 4) -> DualRefutation:
    """Search the base ball on a rational grid for ``u`` with ``<w, u^!> > 1``.

    A found ``u`` certifies that ``w`` is not in the dual ball of ``B``;
    otherwise the answer is only "not refuted at this grid".
    """
    w = tuple(q(x) for x in w)
    if len(w) != len(B.web):
        raise WebMismatch("functional does not match the exponential's web")
    best, arg = ZERO, None
    for u in _maximal_grid_points(B.base, grid_den) if all(x >= 0 for x in w) else ball_grid_points(B.base, grid_den):
        val = dot(w, _promote_vec(B.base.web, u, B.web))
        if arg is None or val > best:
            best, arg = val, u
    return DualRefutation(best > 1, arg if best > 1 else None, best, grid_den)


def stable_violation(f: StableFn, grid_den: int = 4):
    """A grid point of the domain ball mapped outside the codomain ball, or None."""
    for u in ball_grid_points(f.dom, grid_den):
        v = f.matrix.act(_promote_vec(f.dom.web, u, f.matrix.dom.web))
        if not f.cod.contains(v):
            return u
    return None


# ----------------------------------------------- linear/stable exchange


def stable_hom(Q: Pcs, R: Pcs, degree: int) -> Pcs:
    """Web of ``Q => R`` truncated at ``degree``: pairs ``(m, c)``."""
    B = BangPcs(Q, degree)
    web = tuple((m, c) for m in B.web for c in R.web)
    S = Pcs(web, build=B._no_ball, name=f"({Q.name or '?'} => {R.name or '?'})")
    S.factors = (B, R)
    return S


def stab_lin_exchange(f: MorphMatrix) -> StableFn:
    """``P -> (Q => R)`` linear to ``Q => (P -o R)`` stable, by reindexing."""
    P = f.dom
    B, R = f.cod.factors
    L = limpl(P, R)
    L.factors = (P, R)
    out = {(m, (a, c)): v for (a, (m, c)), v in f.entries.items()}
    return StableFn(MorphMatrix(B, L, out))


def stab_lin_exchange_inverse(g: StableFn) -> MorphMatrix:
    P, R = g.cod.factors
    S = stable_hom(g.dom, R, g.degree)
    out = {(a, (m, c)): v for (m, (a, c)), v in g.matrix.entries.items()}
    return MorphMatrix(P, S, out)
