"""Morphisms of PCSs as sparse nonnegative matrices.

A matrix ``t`` from ``X`` to ``Y`` is indexed by pairs ``(a, b)`` with
``a`` in the web of ``X`` and ``b`` in the web of ``Y``; it acts by
``(t.u)_b = sum_a t[a, b] u_a``. It is a morphism when it maps the ball
of ``X`` into the ball of ``Y``, which is checked on the generators of
the domain ball against the facets of the codomain ball.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .pcs import ConeElem, Pcs
from .polytope import Polytope
from .rational import InputError, WebMismatch, dot, fmt, label_str, parse_label, q

ZERO = Fraction(0)


class NotAMorphism(ValueError):
    """A matrix fails to map the domain ball into the codomain ball."""


class MorphMatrix:
    __slots__ = ("dom", "cod", "entries", "_rows")

    def __init__(self, dom, cod, entries: Mapping, *, check: bool = False):
        self.dom = dom
        self.cod = cod
        di, ci = _index(dom), _index(cod)
        clean = {}
        for (a, b), v in entries.items():
            v = q(v)
            if v < 0:
                raise InputError("matrix entries must be nonnegative")
            if a not in di or b not in ci:
                raise WebMismatch(f"entry ({label_str(a)}, {label_str(b)}) outside the webs")
            if v:
                clean[(a, b)] = v
        self.entries = clean
        self._rows = None
        if check:
            bad = morphism_violation(self)
            if bad is not None:
                raise NotAMorphism(f"generator {bad} is mapped outside the codomain ball")

    def rows(self) -> dict:
        if self._rows is None:
            r: dict = {}
            for (a, b), v in self.entries.items():
                r.setdefault(a, []).append((b, v))
            self._rows = r
        return self._rows

    def __getitem__(self, key) -> Fraction:
        return self.entries.get(key, ZERO)

    def __eq__(self, other):
        if not isinstance(other, MorphMatrix):
            return NotImplemented
        return self.dom.web == other.dom.web and self.cod.web == other.cod.web and self.entries == other.entries

    def __hash__(self):
        return hash((self.dom.web, self.cod.web, frozenset(self.entries.items())))

    def __repr__(self):
        return f"MorphMatrix({len(self.dom.web)}x{len(self.cod.web)}, nnz={len(self.entries)})"

    def scale(self, s) -> "MorphMatrix":
        s = q(s)
        return MorphMatrix(self.dom, self.cod, {k: s * v for k, v in self.entries.items()})

    def __add__(self, other: "MorphMatrix") -> "MorphMatrix":
        _parallel(self, other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, ZERO) + v
        return MorphMatrix(self.dom, self.cod, out)

    def transpose(self) -> "MorphMatrix":
        return MorphMatrix(self.cod, self.dom, {(b, a): v for (a, b), v in self.entries.items()})

    def act(self, vec: Sequence[Fraction]) -> tuple:
        """Apply to a raw vector in domain web order."""
        ci = _index(self.cod)
        out = [ZERO] * len(self.cod.web)
        rows = self.rows()
        for a, x in zip(self.dom.web, vec):
            if x:
                for b, v in rows.get(a, ()):
                    out[ci[b]] += v * x
        return tuple(out)


def _index(space) -> dict:
    idx = getattr(space, "index", None)
    if callable(idx):
        return idx()
    return {a: i for i, a in enumerate(space.web)}


def _parallel(s: MorphMatrix, t: MorphMatrix):
    if s.dom.web != t.dom.web or s.cod.web != t.cod.web:
        raise WebMismatch("matrices are not parallel")


def identity(X) -> MorphMatrix:
    return MorphMatrix(X, X, {(a, a): 1 for a in X.web})


def zero_map(X, Y) -> MorphMatrix:
    return MorphMatrix(X, Y, {})


def apply(t: MorphMatrix, x) -> ConeElem:
    if isinstance(x, ConeElem):
        if x.cone.web != t.dom.web:
            raise WebMismatch("element is not in the domain of the matrix")
        vec = x.vec
    else:
        vec = tuple(q(v) for v in x)
        if len(vec) != len(t.dom.web):
            raise WebMismatch("vector length differs from domain web")
    return ConeElem(t.cod, t.act(vec))


def compose(s: MorphMatrix, t: MorphMatrix) -> MorphMatrix:
    """``t o s``: first ``s``, then ``t``."""
    if s.cod.web != t.dom.web:
        raise WebMismatch("codomain of the first map differs from domain of the second")
    out: dict = {}
    trows = t.rows()
    for (a, b), v in s.entries.items():
        for c, w in trows.get(b, ()):
            k = (a, c)
            out[k] = out.get(k, ZERO) + v * w
    return MorphMatrix(s.dom, t.cod, out)


def compose_all(*maps: MorphMatrix) -> MorphMatrix:
    """Diagrammatic composite: ``compose_all(f, g, h) = h o g o f``."""
    out = maps[0]
    for m in maps[1:]:
        out = compose(out, m)
    return out


def morphism_violation(t: MorphMatrix):
    """First domain generator sent outside the codomain ball, else None."""
    H = t.cod.ball.hrep
    for u in t.dom.ball.vrep:
        v = t.act(u)
        if any(dot(v, w) > 1 for w in H):
            return u
    return None


def is_morphism(t: MorphMatrix) -> bool:
    return morphism_violation(t) is None


def flatten(t: MorphMatrix) -> tuple:
    """Entries as a vector over the web of ``dom -o cod``, in its order."""
    return tuple(t[(a, b)] for a in t.dom.web for b in t.cod.web)


def unflatten(X, Y, vec: Sequence) -> MorphMatrix:
    web = [(a, b) for a in X.web for b in Y.web]
    return MorphMatrix(X, Y, {k: v for k, v in zip(web, vec)})


def morph_norm(t: MorphMatrix) -> Fraction:
    """``max`` over domain generators ``u`` of ``norm(t.u)``."""
    H = t.cod.ball.hrep
    best = ZERO
    for u in t.dom.ball.vrep:
        v = t.act(u)
        for w in H:
            best = max(best, dot(v, w))
    return best


# ------------------------------------------------------------ connectives


def limpl(X: Pcs, Y: Pcs) -> Pcs:
    """Linear implication: matrices mapping the ball of X into that of Y.

    The ball's H-rows are the functionals ``t -> <t.u, w>`` for ``u`` a
    generator of ``X`` and ``w`` a facet of ``Y``, i.e. the vectors
    ``u (x) w`` on the product web.
    """
    web = tuple((a, b) for a in X.web for b in Y.web)

    def build():
        rows = [tuple(ua * wb for ua in u for wb in w) for u in X.ball.vrep for w in Y.ball.hrep]
        return Polytope(web, hrep=rows)

    return Pcs(web, build=build, name=f"({_nm(X)} -o {_nm(Y)})")


def _nm(X) -> str:
    return X.name or "?"


def with_product(Xs: Sequence[Pcs]) -> Pcs:
    """Cartesian product: tagged disjoint union of webs, componentwise ball."""
    Xs = list(Xs)
    web = tuple((str(i), a) for i, X in enumerate(Xs) for a in X.web)

    def build():
        rows = []
        offset = 0
        for X in Xs:
            n = len(X.web)
            for w in X.ball.hrep:
                row = [ZERO] * len(web)
                row[offset : offset + n] = w
                rows.append(row)
            offset += n
        return Polytope(web, hrep=rows)

    name = " & ".join(_nm(X) for X in Xs) if Xs else "T"
    out = Pcs(web, build=build, name=f"({name})")
    out.factors = tuple(Xs)
    return out


def proj(W: Pcs, i: int) -> MorphMatrix:
    Xi = W.factors[i]
    tag = str(i)
    return MorphMatrix(W, Xi, {((tag, a), a): 1 for a in Xi.web})


def tuple_map(fs: Sequence[MorphMatrix], W: Pcs | None = None) -> MorphMatrix:
    """The pairing ``<f_0, ..., f_n>`` into the product of the codomains."""
    fs = list(fs)
    if W is None:
        W = with_product([f.cod for f in fs])
    Z = fs[0].dom
    out = {}
    for i, f in enumerate(fs):
        if f.dom.web != Z.web:
            raise WebMismatch("tupled maps must share a domain")
        for (c, a), v in f.entries.items():
            out[(c, (str(i), a))] = v
    return MorphMatrix(Z, W, out)


def is_clinfty(X: Pcs) -> bool:
    """Whether the ball is the full hypercube ``{u : u_a <= 1}``."""
    return X.ball.vrep == (tuple(Fraction(1) for _ in X.web),)


# ------------------------------------------------------------- file format


def format_matrix(t: MorphMatrix, dom_path: str, cod_path: str) -> str:
    lines = [f"matrix {dom_path} {cod_path}"]
    di, ci = _index(t.dom), _index(t.cod)
    for (a, b) in sorted(t.entries, key=lambda k: (di[k[0]], ci[k[1]])):
        lines.append(f"{label_str(a)} {label_str(b)} {fmt(t.entries[(a, b)])}")
    return "\n".join(lines) + "\n"


def parse_matrix(text: str, load_pcs: Callable[[str], Pcs]) -> MorphMatrix:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InputError("empty matrix file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "matrix":
        raise InputError("matrix file must start with 'matrix DOM.pcs COD.pcs'")
    X, Y = load_pcs(head[1]), load_pcs(head[2])
    entries = {}
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != 3:
            raise InputError(f"bad matrix row: {ln!r}")
        a, b = parse_label(toks[0]), parse_label(toks[1])
        entries[(a, b)] = entries.get((a, b), ZERO) + q(toks[2])
    return MorphMatrix(X, Y, entries)
