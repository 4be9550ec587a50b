"""Finite products and equalizers of realized cones, and the stream type.

Any object with ``web``, ``norm(vec)`` and ``in_carrier(vec)`` counts as a
cone here, so products and equalizers nest freely and accept PCS cones,
measure cones and each other.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .category import MorphMatrix, compose, identity
from .pcs import ConeElem, Pcs
from .polytope import Polytope
from .rational import Seq, WebMismatch

ZERO = Fraction(0)
ONE = Fraction(1)


class SizeBoundExceeded(ValueError):
    pass


class ProductCone:
    """Cartesian product: tagged web, componentwise order, max norm."""

    def __init__(self, factors: Sequence):
        self.factors = tuple(factors)
        self.web = tuple((str(i), a) for i, X in enumerate(self.factors) for a in X.web)
        self._slices = []
        off = 0
        for X in self.factors:
            self._slices.append(slice(off, off + len(X.web)))
            off += len(X.web)
        self._index = None

    def index(self) -> dict:
        if self._index is None:
            self._index = {a: i for i, a in enumerate(self.web)}
        return self._index

    def component(self, vec, i: int) -> tuple:
        return tuple(vec[self._slices[i]])

    def norm(self, vec) -> Fraction:
        return max((X.norm(self.component(vec, i)) for i, X in enumerate(self.factors)), default=ZERO)

    def in_carrier(self, vec) -> bool:
        return len(vec) == len(self.web) and all(X.in_carrier(self.component(vec, i)) for i, X in enumerate(self.factors))

    def contains(self, vec) -> bool:
        return self.in_carrier(vec) and self.norm(vec) <= 1

    def proj(self, i: int) -> MorphMatrix:
        X, tag = self.factors[i], str(i)
        return MorphMatrix(self, X, {((tag, a), a): 1 for a in X.web})

    def pair(self, fs: Sequence[MorphMatrix]) -> MorphMatrix:
        """The unique map whose ``i``-th projection is ``fs[i]``."""
        if len(fs) != len(self.factors):
            raise WebMismatch("one map per factor is required")
        Z = fs[0].dom
        out = {}
        for i, (f, X) in enumerate(zip(fs, self.factors)):
            if f.dom.web != Z.web or f.cod.web != X.web:
                raise WebMismatch(f"map {i} does not fit the product")
            for (c, a), v in f.entries.items():
                out[(c, (str(i), a))] = v
        return MorphMatrix(Z, self, out)

    def universal_check(self, fs: Sequence[MorphMatrix]) -> bool:
        """Projections of the pairing recover each map, and the pairing is
        the only such map (projections are jointly injective)."""
        h = self.pair(fs)
        if any(compose(h, self.proj(i)) != f for i, f in enumerate(fs)):
            return False
        rebuilt = {}
        for i in range(len(self.factors)):
            for (c, a), v in compose(h, self.proj(i)).entries.items():
                rebuilt[(c, (str(i), a))] = v
        return rebuilt == h.entries


class EqualizerCone:
    """``{x in ambient : f.x = g.x}`` with the ambient norm."""

    def __init__(self, f: MorphMatrix, g: MorphMatrix):
        if f.dom.web != g.dom.web or f.cod.web != g.cod.web:
            raise WebMismatch("equalizer needs a parallel pair")
        self.f, self.g = f, g
        self.ambient = f.dom
        self.web = self.ambient.web
        self._basis = None

    def index(self) -> dict:
        return self.ambient.index()

    def in_carrier(self, vec) -> bool:
        return self.ambient.in_carrier(vec) and self.f.act(vec) == self.g.act(vec)

    def norm(self, vec) -> Fraction:
        return self.ambient.norm(vec)

    def contains(self, vec) -> bool:
        return self.in_carrier(vec) and self.norm(vec) <= 1

    def elem(self, vec) -> ConeElem:
        vec = tuple(Fraction(v) for v in vec)
        if not self.in_carrier(vec):
            raise ValueError("vector does not equalize the pair")
        return ConeElem(self, vec)

    def inclusion(self) -> MorphMatrix:
        return MorphMatrix(self, self.ambient, {(a, a): 1 for a in self.web})

    def factor(self, h: MorphMatrix) -> MorphMatrix:
        """The map through the equalizer induced by ``h`` with ``f h = g h``."""
        if h.cod.web != self.web:
            raise WebMismatch("map does not land in the ambient cone")
        if compose(h, self.f) != compose(h, self.g):
            raise ValueError("map does not equalize the pair")
        return MorphMatrix(h.dom, self, h.entries)

    def basis(self) -> list[tuple]:
        """Basis of the linear solution space ``(f - g) x = 0``."""
        if self._basis is None:
            ci = {b: i for i, b in enumerate(self.f.cod.web)}
            A = [[ZERO] * len(self.web) for _ in ci]
            for j, a in enumerate(self.web):
                for b, v in self.f.rows().get(a, ()):
                    A[ci[b]][j] += v
                for b, v in self.g.rows().get(a, ()):
                    A[ci[b]][j] -= v
            self._basis = nullspace(A, len(self.web))
        return self._basis

    def dimension(self) -> int:
        return len(self.basis())


def equalizer(f: MorphMatrix, g: MorphMatrix) -> EqualizerCone:
    return EqualizerCone(f, g)


def nullspace(A: list[list[Fraction]], ncols: int) -> list[tuple]:
    """Exact reduced row echelon form, one basis vector per free column."""
    rows = [[Fraction(x) for x in r] for r in A if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                k = rows[i][c]
                rows[i] = [x - k * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        out.append(tuple(v))
    return out


# ---------------------------------------------------------------- streams


def sequences(n: int, d: int) -> tuple:
    out = [Seq()]
    layer = [Seq()]
    for _ in range(d):
        layer = [s.extend(str(k)) for s in layer for k in range(n)]
        out.extend(layer)
    return tuple(out)


def maximal_antichains(n: int, d: int, root: Seq = Seq()) -> list[frozenset]:
    """Maximal antichains of the prefix tree below ``root`` (depth <= d).

    Either the root alone, or a choice of a maximal antichain in every
    child subtree.
    """
    if len(root) == d:
        return [frozenset([root])]
    out = [frozenset([root])]
    combos = [frozenset()]
    for k in range(n):
        sub = maximal_antichains(n, d, root.extend(str(k)))
        combos = [c | s for c in combos for s in sub]
    out.extend(combos)
    return out


class StreamPcs(Pcs):
    """Sequences over ``n`` letters of length <= ``d`` with the antichain ball.

    Norms use the tree recursion ``best(b) = max(u_b, sum_k best(b.k))``
    rather than the facet list, whose size grows doubly exponentially.
    """

    def __init__(self, n: int, d: int, max_size: int | None = None):
        if n < 1 or d < 0:
            raise ValueError("need n >= 1 and d >= 0")
        if max_size is not None and n ** d > max_size:
            raise SizeBoundExceeded(f"{n}^{d} leaves exceed the bound {max_size}")
        self.n, self.depth = n, d
        web = sequences(n, d)
        super().__init__(web, build=self._build_ball, name=f"Stream({n},{d})", truncation=d)

    def _build_ball(self) -> Polytope:
        return Polytope(self.web, hrep=self.antichain_rows())

    def antichain_rows(self) -> list[tuple]:
        idx = self.index()
        rows = []
        for A in maximal_antichains(self.n, self.depth):
            r = [ZERO] * len(self.web)
            for s in A:
                r[idx[s]] = ONE
            rows.append(tuple(r))
        return rows

    def norm(self, vec) -> Fraction:
        idx = self.index()

        def best(b: Seq) -> Fraction:
            here = vec[idx[b]]
            if len(b) == self.depth:
                return here
            return max(here, sum((best(b.extend(str(k))) for k in range(self.n)), ZERO))

        return best(Seq())

    def contains(self, vec) -> bool:
        return self.in_carrier(vec) and self.norm(vec) <= 1


def stream_pcs(n: int, d: int, max_size: int | None = None) -> StreamPcs:
    return StreamPcs(n, d, max_size)


def stream_shift(S: StreamPcs) -> MorphMatrix:
    """``(s.u)_b = sum_k u_{b.k}`` inside the tree, identity on the leaves."""
    out = {}
    for b in S.web:
        if len(b) < S.depth:
            for k in range(S.n):
                out[(b.extend(str(k)), b)] = 1
        else:
            out[(b, b)] = 1
    return MorphMatrix(S, S, out)


def leaf_extension(S: StreamPcs, leaf_values: dict) -> tuple:
    """Rebuild interior coordinates from leaves by ``u_b = sum_k u_{b.k}``."""
    idx = S.index()
    vec = [ZERO] * len(S.web)
    for b in reversed(S.web):
        if len(b) == S.depth:
            vec[idx[b]] = Fraction(leaf_values.get(b, 0))
        else:
            vec[idx[b]] = sum((vec[idx[b.extend(str(k))]] for k in range(S.n)), ZERO)
    return tuple(vec)


def leaf_restriction(S: StreamPcs, vec) -> dict:
    idx = S.index()
    return {b: vec[idx[b]] for b in S.web if len(b) == S.depth}


def antichain_sup(S: StreamPcs, vec) -> Fraction:
    """Maximum of ``sum_{a in A} u_a`` over enumerated maximal antichains."""
    idx = S.index()
    return max(sum((vec[idx[s]] for s in A), ZERO) for A in maximal_antichains(S.n, S.depth))


def stream_equalizer_demo(n: int, d: int, *, measures: Sequence[dict] = (), max_size: int = 1000) -> dict:
    """Equalizer of the shift and the identity against leaf measures.

    Returns a report with the solution dimension and, for each given leaf
    measure (plus the uniform one and zero), the rebuilt element, its tree
    norm, its antichain supremum and its total mass.
    """
    S = StreamPcs(n, d, max_size)
    E = EqualizerCone(stream_shift(S), identity(S))
    leaves = [b for b in S.web if len(b) == d]
    uniform = {b: Fraction(1, len(leaves)) for b in leaves}
    cases = [uniform, {}] + [dict(m) for m in measures]
    rows = []
    ok = E.dimension() == n ** d
    for m in cases:
        u = leaf_extension(S, m)
        mass = sum(m.values(), ZERO)
        in_eq = E.in_carrier(u)
        nrm, sup = S.norm(u), antichain_sup(S, u)
        back = leaf_restriction(S, u) == {b: Fraction(m.get(b, 0)) for b in leaves}
        good = in_eq and back and nrm == sup == mass == u[0]
        ok = ok and good
        rows.append({"mass": mass, "root": u[0], "norm": nrm, "antichain_sup": sup,
                     "in_equalizer": in_eq, "round_trip": back, "ok": good})
    return {"n": n, "d": d, "web_size": len(S.web), "dimension": E.dimension(),
            "expected_dimension": n ** d, "cases": rows, "ok": ok}
