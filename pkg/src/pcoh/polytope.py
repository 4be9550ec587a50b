"""Exact convex geometry of downward-closed rational polytopes.

A :class:`Polytope` lives in the nonnegative orthant over a finite web and
is always downward closed. It carries one or both of

* an H-representation: nonnegative functionals ``w``, denoting
  ``{u >= 0 : <u, w> <= 1 for all w}``;
* a V-representation: nonnegative generators ``g``, denoting the
  coordinatewise down-set of ``conv(G u {0})``.

The two are exchanged by polarity: the H-rows of ``P`` are the generators
of ``polar(P)`` and vice versa. Conversion is an integer double
description method; redundancy is removed with exact LPs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import lp
from .rational import InputError, WebMismatch, dot, fmt, label_str, parse_labels, q

Vec = tuple  # tuple[Fraction, ...] in web order


class DegenerateCoordinate(ValueError):
    """Some coordinate has supremum 0 or infinity over the polytope."""


class Inconsistent(ValueError):
    """The two supplied representations denote different sets."""


def _vec(v, d: int) -> Vec:
    out = tuple(q(x) for x in v)
    if len(out) != d:
        raise WebMismatch(f"vector of length {len(out)} on a web of size {d}")
    if any(x < 0 for x in out):
        raise InputError("vectors must be nonnegative")
    return out


def _clean(rows: Iterable, d: int) -> tuple:
    seen = set()
    out = []
    for r in rows:
        v = _vec(r, d)
        if any(v) and v not in seen:
            seen.add(v)
            out.append(v)
    return tuple(sorted(out))


class Polytope:
    """Downward-closed polytope over ``web``; see the module docstring."""

    __slots__ = ("web", "hrep", "vrep", "_canon", "_index")

    def __init__(self, web: Sequence, hrep=None, vrep=None):
        self.web = tuple(web)
        if len(set(self.web)) != len(self.web):
            raise InputError("duplicate web labels")
        if hrep is None and vrep is None:
            raise InputError("a polytope needs an H- or a V-representation")
        d = len(self.web)
        self.hrep = None if hrep is None else _clean(hrep, d)
        self.vrep = None if vrep is None else _clean(vrep, d)
        self._canon = None
        self._index = None

    @property
    def dim(self) -> int:
        return len(self.web)

    def index(self) -> dict:
        if self._index is None:
            self._index = {a: i for i, a in enumerate(self.web)}
        return self._index

    def canonical(self) -> "Polytope":
        return convert(self)

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        if self.web != other.web:
            return False
        a, b = convert(self), convert(other)
        return a.vrep == b.vrep and a.hrep == b.hrep

    def __hash__(self):
        c = convert(self)
        return hash((self.web, c.vrep))

    def __repr__(self):
        parts = [f"web={list(map(label_str, self.web))}"]
        if self.hrep is not None:
            parts.append(f"H={len(self.hrep)}")
        if self.vrep is not None:
            parts.append(f"V={len(self.vrep)}")
        return f"Polytope({', '.join(parts)})"

    def facet_count(self) -> int:
        """Facets including the ``d`` nonnegativity facets ``u_a >= 0``."""
        return len(convert(self).hrep) + self.dim


def _check_web(u: Sequence, P: Polytope) -> Vec:
    return _vec(u, P.dim)


# ---------------------------------------------------------------- DD method


def _int_row(w: Vec) -> tuple[list[int], int]:
    den = 1
    for x in w:
        den = den * x.denominator // gcd(den, x.denominator)
    return [int(x * den) for x in w], den


def _primitive(r: list[int]) -> tuple:
    g = 0
    for x in r:
        g = gcd(g, x)
    if g > 1:
        r = [x // g for x in r]
    return tuple(r)


def packing_vertices(rows: Sequence[Vec], d: int) -> list[Vec]:
    """All vertices of ``{x >= 0 : <w, x> <= 1 for w in rows}``.

    Double description on the homogenized cone ``{(x, t) : x >= 0,
    t - <w, x> >= 0}``. Raises :class:`DegenerateCoordinate` when the
    region is unbounded.
    """
    if d == 0:
        return [()]
    rows = [r for r in rows if any(r)]
    if not rows:
        raise DegenerateCoordinate("no constraint bounds any coordinate")
    cons = []
    for w in rows:
        W, L = _int_row(w)
        cons.append([-x for x in W] + [L])
    W1 = [-x for x in cons[0][:d]]
    L1 = cons[0][d]
    rays: list[tuple] = []
    zs: list[int] = []
    for a in range(d):
        r = [0] * (d + 1)
        r[a] = L1
        r[d] = W1[a]
        rays.append(_primitive(r))
        zs.append((((1 << d) - 1) & ~(1 << a)) | (1 << d))
    rays.append(tuple([0] * d + [1]))
    zs.append((1 << d) - 1)

    for k in range(1, len(cons)):
        h = cons[k]
        bit = 1 << (d + k)
        vals = [sum(hi * ri for hi, ri in zip(h, r) if ri) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            zs = [z | bit if vals[i] == 0 else z for i, z in enumerate(zs)]
            continue
        new_rays, new_zs = [], []
        for i, v in enumerate(vals):
            if v >= 0:
                new_rays.append(rays[i])
                new_zs.append(zs[i] | bit if v == 0 else zs[i])
        for p in pos:
            for n in neg:
                common = zs[p] & zs[n]
                if bin(common).count("1") < d - 1:
                    continue
                adjacent = True
                for r, z in enumerate(zs):
                    if r != p and r != n and z & common == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                sp, sn = vals[p], -vals[n]
                r = [sp * a + sn * b for a, b in zip(rays[n], rays[p])]
                new_rays.append(_primitive(r))
                new_zs.append(common | bit)
        rays, zs = new_rays, new_zs

    out = set()
    for r in rays:
        t = r[d]
        if t == 0:
            raise DegenerateCoordinate("polytope is unbounded")
        out.add(tuple(Fraction(x, t) for x in r[:d]))
    return sorted(out)


# ------------------------------------------------------------ LP utilities


def gauge_by_lp(u: Vec, gens: Sequence[Vec]) -> Fraction | None:
    """``max <u, y>`` over ``{y >= 0 : <g, y> <= 1}``; None when unbounded.

    By polarity this is the gauge of ``u`` with respect to the
    down-convex hull of ``gens``: ``u`` lies in that hull iff the value
    is at most 1.
    """
    if not any(u):
        return Fraction(0)
    try:
        val, _ = lp.maximize(u, gens, [Fraction(1)] * len(gens))
    except lp.Unbounded:
        return None
    return val


def _argmax_by_lp(u: Vec, gens: Sequence[Vec]):
    try:
        return lp.maximize(u, gens, [Fraction(1)] * len(gens))
    except lp.Unbounded:
        return None, None


def in_down_hull(u: Vec, gens: Sequence[Vec]) -> bool:
    g = gauge_by_lp(u, gens)
    return g is not None and g <= 1


def _dominated(a: Vec, b: Vec) -> bool:
    return all(x <= y for x, y in zip(a, b))


def irredundant(points: Sequence[Vec]) -> tuple:
    """Minimal generating set of the down-convex hull of ``points``.

    Drops zero and dominated points, then
    certifies each survivor by LP against the rest. Sorted output.
    """
    pts = sorted({p for p in points if any(p)})
    keep = [p for p in pts if not any(o != p and _dominated(p, o) for o in pts)]
    out = []
    for i, p in enumerate(keep):
        others = keep[:i] + keep[i + 1 :]
        if not others or not in_down_hull(p, others):
            out.append(p)
    return tuple(out)


# ---------------------------------------------------------- public surface


def convert(P: Polytope) -> Polytope:
    """Both representations, canonical and lexicographically sorted."""
    if P._canon is not None:
        return P._canon
    d = P.dim
    if d == 0:
        c = Polytope((), hrep=(), vrep=())
    elif P.hrep is None:
        V = irredundant(P.vrep)
        _require_positive(V, d, P.web)
        H = irredundant(packing_vertices(V, d))
        c = Polytope(P.web, hrep=H, vrep=V)
    else:
        H = irredundant(P.hrep)
        V = irredundant(packing_vertices(H, d))
        if P.vrep is not None and irredundant(P.vrep) != V:
            raise Inconsistent("H- and V-representations denote different sets")
        c = Polytope(P.web, hrep=H, vrep=V)
    c._canon = c
    P._canon = c
    return c


def _require_positive(V, d, web):
    for a in range(d):
        if all(g[a] == 0 for g in V):
            raise DegenerateCoordinate(f"coordinate {label_str(web[a])} is identically 0")


def member(u: Sequence, P: Polytope) -> bool:
    u = _check_web(u, P)
    if P.hrep is not None:
        return all(dot(u, w) <= 1 for w in P.hrep)
    return in_down_hull(u, P.vrep)


def polar(P: Polytope) -> Polytope:
    """``{u' >= 0 : <u, u'> <= 1 for all u in P}``."""
    c = convert(P)
    _require_positive(c.vrep, c.dim, c.web)
    out = Polytope(c.web, hrep=c.vrep, vrep=c.hrep)
    out._canon = out
    return out


def support(P: Polytope, w: Sequence) -> Fraction:
    """``max{<u, w> : u in P}``."""
    w = _check_web(w, P)
    if P.vrep is not None:
        return max((dot(g, w) for g in P.vrep), default=Fraction(0))
    try:
        val, _ = lp.maximize(w, P.hrep, [Fraction(1)] * len(P.hrep))
    except lp.Unbounded as exc:
        raise DegenerateCoordinate("support is unbounded") from exc
    return val


def gauge(u: Sequence, P: Polytope) -> Fraction:
    """Minkowski gauge of ``u``: ``sup{<u, u'> : u' in polar(P)}``."""
    u = _check_web(u, P)
    if P.hrep is not None:
        return max((dot(u, w) for w in P.hrep), default=Fraction(0))
    val = gauge_by_lp(u, P.vrep)
    if val is None:
        raise DegenerateCoordinate("gauge is unbounded")
    return val


def separate(v: Sequence, P: Polytope):
    """A functional ``u'`` in ``polar(P)`` with ``<v, u'> > 1``, or None.

    The functional maximizes ``<v, .>`` over ``polar(P)``; when ``v``
    lies outside ``P`` this value exceeds 1 by polarity.
    """
    v = _check_web(v, P)
    gens = convert(P).vrep
    val, y = _argmax_by_lp(v, gens)
    if val is None:
        raise DegenerateCoordinate("polar is unbounded")
    if val <= 1:
        return None
    return y


def coordinate_sup(P: Polytope, a: int) -> Fraction:
    return max((g[a] for g in convert(P).vrep), default=Fraction(0))


def simplex(web: Sequence) -> Polytope:
    web = tuple(web)
    return Polytope(web, hrep=[[1] * len(web)])


def hypercube(web: Sequence) -> Polytope:
    web = tuple(web)
    return Polytope(web, vrep=[[1] * len(web)])


def basis(d: int, i: int, scale=Fraction(1)) -> Vec:
    return tuple(Fraction(scale) if j == i else Fraction(0) for j in range(d))


# ------------------------------------------------------------- text format


def format_polytope(P: Polytope) -> str:
    lines = ["web: " + " ".join(label_str(a) for a in P.web)]
    for tag, rows in (("H", P.hrep), ("V", P.vrep)):
        if rows is not None:
            if not rows:
                lines.append(f"{tag}:")
            for r in rows:
                lines.append(f"{tag}: " + " ".join(fmt(x) for x in r))
    return "\n".join(lines) + "\n"


def parse_polytope(text: str) -> Polytope:
    web = None
    H: list | None = None
    V: list | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tag, sep, rest = line.partition(":")
        if not sep:
            raise InputError(f"line {lineno}: expected 'tag: ...'")
        tag = tag.strip()
        if tag == "web":
            if web is not None:
                raise InputError(f"line {lineno}: duplicate web header")
            web = parse_labels(rest)
        elif tag in ("H", "V"):
            if web is None:
                raise InputError(f"line {lineno}: rows before web header")
            toks = rest.split()
            bucket = H if tag == "H" else V
            if bucket is None:
                bucket = []
                if tag == "H":
                    H = bucket
                else:
                    V = bucket
            if toks:
                if len(toks) != len(web):
                    raise InputError(f"line {lineno}: expected {len(web)} entries, got {len(toks)}")
                bucket.append([q(t) for t in toks])
        else:
            raise InputError(f"line {lineno}: unknown tag {tag!r}")
    if web is None:
        raise InputError("missing web header")
    return Polytope(web, hrep=H, vrep=V)
