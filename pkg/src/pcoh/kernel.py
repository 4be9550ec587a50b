"""Finite discrete measurable spaces, measure cones and substochastic kernels.

On a finite discrete space every subset is measurable, so a measure is a
nonnegative vector, a kernel is a row-substochastic matrix and the
measure cone is the PCS with the simplex as ball (norm = total mass).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import polytope as pt
from .category import MorphMatrix
from .pcs import ConeElem, Pcs
from .rational import InputError, WebMismatch, _split_top, fmt, label_str, parse_label, q

ZERO = Fraction(0)


class NotSubstochastic(ValueError):
    pass


@dataclass(frozen=True)
class DiscreteSpace:
    points: tuple

    def __post_init__(self):
        if not self.points:
            raise InputError("a discrete space needs at least one point")
        if len(set(self.points)) != len(self.points):
            raise InputError("duplicate points")

    def __len__(self):
        return len(self.points)


def space(points: Iterable) -> DiscreteSpace:
    return DiscreteSpace(tuple(points))


_cones: dict = {}


def measure_cone(X: DiscreteSpace) -> Pcs:
    """Measures on ``X``; the ball is the subprobability simplex."""
    if X not in _cones:
        _cones[X] = Pcs(X.points, pt.simplex(X.points), name=f"Meas{{{','.join(map(label_str, X.points))}}}")
    return _cones[X]


def measure(X: DiscreteSpace, weights: Mapping | Sequence) -> ConeElem:
    M = measure_cone(X)
    if isinstance(weights, Mapping):
        idx = M.index()
        vec = [ZERO] * len(X)
        for a, v in weights.items():
            if a not in idx:
                raise WebMismatch(f"{label_str(a)} is not a point of the space")
            vec[idx[a]] = q(v)
    else:
        vec = [q(v) for v in weights]
    if len(vec) != len(X) or any(v < 0 for v in vec):
        raise InputError("a measure is a nonnegative vector over the points")
    return ConeElem(M, tuple(vec))


def dirac(X: DiscreteSpace, r) -> ConeElem:
    return measure(X, {r: 1})


def mass(mu: ConeElem) -> Fraction:
    return sum(mu.vec, ZERO)


class Kernel:
    """``K(r, V) = sum_{y in V} rows[r][y]`` with every row of mass <= 1."""

    def __init__(self, dom: DiscreteSpace, cod: DiscreteSpace, rows: Mapping):
        self.dom, self.cod = dom, cod
        cod_pts = set(cod.points)
        clean = {}
        for r, row in rows.items():
            if r not in set(dom.points):
                raise WebMismatch(f"{label_str(r)} is not a point of the domain")
            out = {}
            for y, v in row.items():
                v = q(v)
                if y not in cod_pts:
                    raise WebMismatch(f"{label_str(y)} is not a point of the codomain")
                if v < 0:
                    raise InputError("kernel entries must be nonnegative")
                if v:
                    out[y] = v
            if sum(out.values(), ZERO) > 1:
                raise NotSubstochastic(f"row {label_str(r)} has mass {fmt(sum(out.values(), ZERO))} > 1")
            if out:
                clean[r] = out
        self.rows = clean

    def __call__(self, r, V: Iterable) -> Fraction:
        row = self.rows.get(r, {})
        return sum((row.get(y, ZERO) for y in set(V)), ZERO)

    def __eq__(self, other):
        if not isinstance(other, Kernel):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.rows == other.rows

    def __repr__(self):
        return f"Kernel({len(self.dom)}->{len(self.cod)}, nnz={sum(map(len, self.rows.values()))})"


def identity_kernel(X: DiscreteSpace) -> Kernel:
    return Kernel(X, X, {r: {r: 1} for r in X.points})


def kernel_compose(K: Kernel, L: Kernel) -> Kernel:
    """First ``K`` then ``L``: ``(L.K)(r, {z}) = sum_y K(r,{y}) L(y,{z})``."""
    if K.cod != L.dom:
        raise WebMismatch("codomain of the first kernel differs from domain of the second")
    rows = {}
    for r, row in K.rows.items():
        out: dict = {}
        for y, v in row.items():
            for z, w in L.rows.get(y, {}).items():
                out[z] = out.get(z, ZERO) + v * w
        rows[r] = out
    return Kernel(K.dom, L.cod, rows)


def lin_of_kern(K: Kernel) -> MorphMatrix:
    """The linear map ``mu -> (V -> sum_r K(r, V) mu{r})`` as a matrix."""
    entries = {(r, y): v for r, row in K.rows.items() for y, v in row.items()}
    return MorphMatrix(measure_cone(K.dom), measure_cone(K.cod), entries)


def kern_of_lin(t: MorphMatrix) -> Kernel:
    """``K(r, V) = (t . delta_r)(V)``; rejects maps with a row of mass > 1."""
    dom, cod = DiscreteSpace(tuple(t.dom.web)), DiscreteSpace(tuple(t.cod.web))
    rows: dict = {}
    for (r, y), v in t.entries.items():
        rows.setdefault(r, {})[y] = v
    return Kernel(dom, cod, rows)


def push(K: Kernel, mu: ConeElem) -> ConeElem:
    return ConeElem(measure_cone(K.cod), lin_of_kern(K).act(mu.vec))


@dataclass(frozen=True)
class MeasTest:
    """Evaluation of measures at the subset ``U``."""

    space: DiscreteSpace
    subset: frozenset

    def __post_init__(self):
        if not self.subset <= set(self.space.points):
            raise WebMismatch("test subset is not contained in the space")


def meas_test(X: DiscreteSpace, U: Iterable) -> MeasTest:
    return MeasTest(X, frozenset(U))


def test_eval(l: MeasTest, mu: ConeElem) -> Fraction:
    if tuple(mu.cone.web) != l.space.points:
        raise WebMismatch("measure lives on another space")
    return sum((v for a, v in zip(l.space.points, mu.vec) if a in l.subset), ZERO)


def path_check(rows: Mapping, dom: DiscreteSpace, cod: DiscreteSpace) -> bool:
    """Whether a raw row family is a measurable path into ``cod``.

    Measurability is automatic on discrete spaces, so this checks that each
    entry is a nonnegative rational on a codomain point and that every test
    value ``gamma(r)(U)`` stays at most 1, which reduces to the full set.
    """
    pts = set(cod.points)
    for r in dom.points:
        row = rows.get(r, {})
        if any(y not in pts for y in row):
            return False
        vals = [q(v) for v in row.values()]
        if any(v < 0 for v in vals) or sum(vals, ZERO) > 1:
            return False
    return True


# ------------------------------------------------------------ file format


def format_kernel(K: Kernel) -> str:
    lines = [f"kernel {','.join(map(label_str, K.dom.points))} {','.join(map(label_str, K.cod.points))}"]
    for r in K.dom.points:
        for y in K.cod.points:
            v = K.rows.get(r, {}).get(y)
            if v:
                lines.append(f"{label_str(r)} {label_str(y)} {fmt(v)}")
    return "\n".join(lines) + "\n"


def parse_kernel(text: str) -> Kernel:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InputError("empty kernel file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "kernel":
        raise InputError("kernel file must start with 'kernel DOM COD' (comma-separated points)")
    dom = DiscreteSpace(tuple(parse_label(p) for p in _split_top(head[1])))
    cod = DiscreteSpace(tuple(parse_label(p) for p in _split_top(head[2])))
    rows: dict = {}
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != 3:
            raise InputError(f"bad kernel row: {ln!r}")
        r, y = parse_label(toks[0]), parse_label(toks[1])
        rows.setdefault(r, {})
        rows[r][y] = rows[r].get(y, ZERO) + q(toks[2])
    return Kernel(dom, cod, rows)
