"""Probabilistic coherence spaces and the cones they induce.

A :class:`Pcs` pairs a finite web with its unit ball, a downward-closed
polytope. Balls of compound spaces (tensors, function spaces) are built
lazily: many structural checks only need the web.

Cone elements (:class:`ConeElem`) are nonnegative rational vectors tagged
with the cone they live in. Any object exposing ``web``, ``norm(vec)`` and
``in_carrier(vec)`` can serve as a cone; besides PCSs this package uses
product and equalizer cones (see :mod:`pcoh.limits`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from . import polytope as pt
from .polytope import Polytope
from .rational import InputError, WebMismatch, dot, label_str, q

ZERO = Fraction(0)


class PartialSubtraction(ArithmeticError):
    """``sub(y, x)`` was requested but ``x <= y`` fails."""


class UnboundedSum(ArithmeticError):
    """A family's partial sums exceed the declared norm bound."""


class NotInBall(ValueError):
    """An element was required to lie in the unit ball and does not."""


class Pcs:
    """A probabilistic coherence space over a finite web.

    ``ball`` may be given directly or through ``build``, a zero-argument
    callable evaluated on first access. ``truncation`` records the finite
    prefix size when the space stands for a truncated infinite one.
    """

    def __init__(self, web: Sequence, ball: Polytope | None = None, *, build: Callable[[], Polytope] | None = None,
                 name: str | None = None, truncation: int | None = None):
        self.web = tuple(web)
        if len(set(self.web)) != len(self.web):
            raise InputError("duplicate web labels")
        if ball is None and build is None:
            raise InputError("a PCS needs a ball or a ball builder")
        if ball is not None and ball.web != self.web:
            raise WebMismatch("ball web differs from PCS web")
        self._ball = ball
        self._build = build
        self.name = name
        self.truncation = truncation
        self._index = None

    @property
    def ball(self) -> Polytope:
        """Canonical unit ball (both representations populated)."""
        if self._ball is None:
            b = self._build()
            if b.web != self.web:
                raise WebMismatch("built ball has the wrong web")
            self._ball = b
        c = pt.convert(self._ball)
        pt._require_positive(c.vrep, c.dim, c.web)
        self._ball = c
        return c

    @property
    def ball_known(self) -> bool:
        return self._ball is not None

    def index(self) -> dict:
        if self._index is None:
            self._index = {a: i for i, a in enumerate(self.web)}
        return self._index

    def __len__(self):
        return len(self.web)

    def __repr__(self):
        return f"Pcs({self.name or ''}{'' if self.name else list(map(label_str, self.web))})"

    def _facets(self) -> Polytope:
        # built balls are valid by construction, and any H-rep of one,
        # redundant or not, gives the same gauge; skip conversion
        if self._build is None:
            return self.ball
        if self._ball is None:
            b = self._build()
            if b.web != self.web:
                raise WebMismatch("built ball has the wrong web")
            self._ball = b
        if self._ball.hrep is not None:
            return self._ball
        return self.ball

    # cone protocol
    def norm(self, vec: Sequence[Fraction]) -> Fraction:
        return pt.gauge(vec, self._facets())

    def in_carrier(self, vec: Sequence[Fraction]) -> bool:
        return len(vec) == len(self.web) and all(x >= 0 for x in vec)

    def contains(self, vec: Sequence[Fraction]) -> bool:
        return pt.member(vec, self._facets())

    def dual(self) -> "Pcs":
        """The orthogonal space, whose ball is the polar of this one."""
        return Pcs(self.web, build=lambda: pt.polar(self.ball), name=f"({self.name})^perp" if self.name else None)

    def same_as(self, other: "Pcs") -> bool:
        return self.web == other.web and self.ball == other.ball


# ------------------------------------------------------------- built-ins


def one() -> Pcs:
    return Pcs(("*",), Polytope(("*",), hrep=[[1]], vrep=[[1]]), name="1")


def top() -> Pcs:
    """The terminal space: empty web, ball ``{0}``."""
    return Pcs((), Polytope((), hrep=(), vrep=()), name="T")


def snat(n: int) -> Pcs:
    """Subprobability distributions on ``{0..n-1}`` (simplex ball)."""
    web = tuple(str(i) for i in range(n))
    return Pcs(web, pt.simplex(web), name=f"Nat<{n}", truncation=n)


def snat_dual(n: int) -> Pcs:
    """Families bounded by 1 on ``{0..n-1}`` (hypercube ball)."""
    web = tuple(str(i) for i in range(n))
    return Pcs(web, pt.hypercube(web), name=f"Nat<{n}^perp", truncation=n)


def biorth_closure(web: Sequence, generators: Iterable[Sequence]) -> Pcs:
    """PCS whose ball is the biorthogonal of ``generators``.

    Computed as ``polar(polar(G))``; for a finite ``G`` this is the
    downward-closed convex hull.
    """
    web = tuple(web)
    G = Polytope(web, vrep=list(generators))
    return Pcs(web, pt.polar(pt.polar(G)))


# --------------------------------------------------------------- elements


@dataclass(frozen=True)
class ConeElem:
    cone: object
    vec: tuple

    def __post_init__(self):
        if len(self.vec) != len(self.cone.web):
            raise WebMismatch(f"vector length {len(self.vec)} vs web size {len(self.cone.web)}")

    def __getitem__(self, label) -> Fraction:
        return self.vec[_index(self.cone)[label]]

    def sparse(self) -> dict:
        return {a: x for a, x in zip(self.cone.web, self.vec) if x}

    def __add__(self, other: "ConeElem") -> "ConeElem":
        _same_cone(self, other)
        return ConeElem(self.cone, tuple(a + b for a, b in zip(self.vec, other.vec)))

    def scale(self, s) -> "ConeElem":
        s = q(s)
        if s < 0:
            raise ValueError("cone scalars are nonnegative")
        return ConeElem(self.cone, tuple(s * a for a in self.vec))

    __rmul__ = scale

    def norm(self) -> Fraction:
        return self.cone.norm(self.vec)

    def __repr__(self):
        body = ", ".join(f"{label_str(a)}: {x}" for a, x in self.sparse().items())
        return f"ConeElem({{{body}}})"


def _index(cone) -> dict:
    idx = getattr(cone, "index", None)
    if callable(idx):
        return idx()
    return {a: i for i, a in enumerate(cone.web)}


def _same_cone(x: ConeElem, y: ConeElem):
    if x.cone is not y.cone and x.cone.web != y.cone.web:
        raise WebMismatch("elements live in different cones")


def elem(cone, values) -> ConeElem:
    """Build an element from a sequence in web order or a sparse mapping."""
    if isinstance(values, Mapping):
        idx = _index(cone)
        vec = [ZERO] * len(cone.web)
        for a, x in values.items():
            if a not in idx:
                raise WebMismatch(f"label {label_str(a)} not in web")
            vec[idx[a]] = q(x)
        vec = tuple(vec)
    else:
        vec = tuple(q(x) for x in values)
    if any(x < 0 for x in vec):
        raise InputError("cone elements are nonnegative")
    if not cone.in_carrier(vec):
        raise InputError("vector is not in the cone's carrier")
    return ConeElem(cone, vec)


def zero(cone) -> ConeElem:
    return ConeElem(cone, tuple(ZERO for _ in cone.web))


def norm(x: ConeElem) -> Fraction:
    return x.norm()


def leq(x: ConeElem, y: ConeElem) -> bool:
    """Algebraic order: ``y - x`` exists in the cone."""
    _same_cone(x, y)
    if not all(a <= b for a, b in zip(x.vec, y.vec)):
        return False
    diff = tuple(b - a for a, b in zip(x.vec, y.vec))
    return x.cone.in_carrier(diff)


def sub(y: ConeElem, x: ConeElem) -> ConeElem:
    """The unique ``z`` with ``x + z = y``; partial."""
    if not leq(x, y):
        raise PartialSubtraction("subtraction undefined: x is not below y")
    return ConeElem(y.cone, tuple(b - a for a, b in zip(x.vec, y.vec)))


def sum_family(xs: Sequence[ConeElem], bound=1) -> ConeElem:
    """Sum of a finite family whose partial sums are norm-bounded by ``bound``.

    In a cone every partial sum is below the total, so checking the total
    suffices.
    """
    if not xs:
        raise ValueError("empty family has no cone to sum in")
    total = xs[0]
    for x in xs[1:]:
        total = total + x
    if total.norm() > q(bound):
        raise UnboundedSum(f"partial sums reach norm {total.norm()} > {q(bound)}")
    return total


@dataclass(frozen=True)
class GeometricChain:
    """The chain ``x_n = limit - ratio**n * gap`` (``n >= 0``).

    Monotone when ``gap >= 0`` and ``0 <= ratio < 1``; its lub is ``limit``.
    This is the exact form in which infinite chains are handed to
    :func:`lub_chain`.
    """

    limit: ConeElem
    gap: ConeElem
    ratio: Fraction

    def term(self, n: int) -> ConeElem:
        r = q(self.ratio) ** n
        return sub(self.limit, self.gap.scale(r))


def lub_chain(chain) -> ConeElem:
    """Least upper bound of a monotone chain.

    Accepts a finite list (the lub is its coordinatewise max, i.e. its last
    element) or a :class:`GeometricChain`.
    """
    if isinstance(chain, GeometricChain):
        r = q(chain.ratio)
        if not (0 <= r < 1):
            raise ValueError("ratio must lie in [0, 1)")
        if not leq(chain.gap, chain.limit):
            raise ValueError("first term would be negative")
        return chain.limit
    chain = list(chain)
    if not chain:
        raise ValueError("empty chain")
    for a, b in zip(chain, chain[1:]):
        if not leq(a, b):
            raise ValueError("chain is not monotone")
    top_ = tuple(max(col) for col in zip(*(c.vec for c in chain)))
    return ConeElem(chain[0].cone, top_)


def separated_witness(x: ConeElem, y: ConeElem):
    """A functional in the dual unit ball telling ``x`` and ``y`` apart.

    Uses the first coordinate where they differ, scaled into the dual ball
    by that coordinate's supremum; falls back to the dual vertices.
    """
    _same_cone(x, y)
    if x.vec == y.vec:
        return None
    cone = x.cone
    if isinstance(cone, Pcs):
        a = next(i for i, (s, t) in enumerate(zip(x.vec, y.vec)) if s != t)
        sup = pt.coordinate_sup(cone.ball, a)
        return pt.basis(len(cone.web), a, 1 / sup)
    for w in dual_vertices(cone):
        if dot(x.vec, w) != dot(y.vec, w):
            return w
    return None


def dual_vertices(cone) -> list:
    dv = getattr(cone, "dual_vertices", None)
    if callable(dv):
        return dv()
    return list(cone.ball.hrep)


# ------------------------------------------------- closure characterization


@dataclass
class ClosureCheck:
    ok: bool
    kind: str | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def closure_characterization_check(sample: Sequence[Sequence], P, *, chain_length: int = 8) -> ClosureCheck:
    """Check convexity, down-closure and chain-closure on ``sample``.

    ``P`` is a :class:`Pcs` or any membership predicate on vectors. Checks
    pairwise midpoints and 1:3 mixtures, every coordinate-zeroing and
    halving of sample points, and the lubs of the chains ``x - 2**-n x``
    and ``x + (1 - 2**-n)(y - x)`` for comparable ``x <= y``. Returns a
    failing :class:`ClosureCheck` carrying the first witness found.
    """
    contains = P.contains if isinstance(P, Pcs) else P
    pts = [tuple(q(v) for v in s) for s in sample]
    for s in pts:
        if not contains(s):
            return ClosureCheck(False, "sample", s)
    half = Fraction(1, 2)
    for i, s in enumerate(pts):
        for t in pts[i + 1 :]:
            for lam in (half, Fraction(1, 4), Fraction(3, 4)):
                m = tuple(lam * a + (1 - lam) * b for a, b in zip(s, t))
                if not contains(m):
                    return ClosureCheck(False, "convex", m)
    for s in pts:
        d = len(s)
        for mask in range(1 << d):
            z = tuple(ZERO if mask >> a & 1 else s[a] for a in range(d))
            h = tuple(s[a] * half if mask >> a & 1 else s[a] for a in range(d))
            for v in (z, h):
                if not contains(v):
                    return ClosureCheck(False, "down", v)
    for s in pts:
        for t in pts + [tuple(ZERO for _ in s)]:
            if all(a <= b for a, b in zip(t, s)):
                terms = [tuple(a + (1 - Fraction(1, 2**n)) * (b - a) for a, b in zip(t, s)) for n in range(chain_length)]
                for v in terms:
                    if not contains(v):
                        return ClosureCheck(False, "chain", v)
                if not contains(s):
                    return ClosureCheck(False, "chain", s)
    return ClosureCheck(True)


# -------------------------------------------------------------- file format


def format_pcs(X: Pcs) -> str:
    head = f"pcs {X.name}" if X.name else "pcs"
    return head + "\n" + pt.format_polytope(X.ball)


def parse_pcs(text: str) -> Pcs:
    lines = text.splitlines()
    body_start = 0
    name = None
    for i, line in enumerate(lines):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        if s == "pcs" or s.startswith("pcs "):
            name = s[3:].strip() or None
            body_start = i + 1
            break
        raise InputError("PCS file must start with a 'pcs' header")
    else:
        raise InputError("empty PCS file")
    ball = pt.parse_polytope("\n".join(lines[body_start:]))
    return Pcs(ball.web, ball, name=name)
