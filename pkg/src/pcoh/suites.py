"""Seeded verification suites with deterministic text reports.

Each suite builds its instances from a :class:`~pcoh.rng.SplitMix64`
stream, runs exact checks and returns a :class:`SuiteReport`. Rendering
excludes wall time so that reports are byte-identical across runs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import polytope as pt
from .bang import (
    BangPcs, GradedTensor, StableFn, bang_functor, dereliction, digging, grid_tuples,
    kleisli_compose, promote, seely0, seely2, seely2_inverse, total_monotonicity_check,
)
from .category import (
    MorphMatrix, apply, compose, flatten, identity, is_clinfty, morph_norm, with_product,
)
from .kernel import (
    Kernel, identity_kernel, kern_of_lin, kernel_compose, lin_of_kern, mass, meas_test,
    measure, space, test_eval,
)
from .lp import maximize
from .limits import nullspace, stream_equalizer_demo
from .oracles import grid_closure, lp_morph_norm, lp_norm
from .pcs import Pcs, biorth_closure, elem, one, snat, sub, top, zero
from .polytope import Polytope
from .rational import Bag, fmt
from .rng import SplitMix64, grid_values
from .tensor import (
    BilinMap, beta_law, curry, eval_morphism, functoriality, hexagon, linofbilin,
    naturality_associator, naturality_left_unitor, naturality_right_unitor,
    naturality_symmetry, pentagon, pure_tensor, symmetry_involution, tensor,
    tensor_by_closure, triangle, uncurry,
)

ZERO = Fraction(0)
ONE = Fraction(1)
LETTERS = "abcdefgh"


@dataclass
class _Tally:
    passed: int = 0
    failed: int = 0
    witnesses: list = field(default_factory=list)


class SuiteReport:
    def __init__(self, name: str, **params):
        self.name = name
        self.params = params
        self.checks: dict[str, _Tally] = {}
        self.elapsed = 0.0

    def add(self, check: str, ok: bool, witness: str = "") -> bool:
        t = self.checks.setdefault(check, _Tally())
        if ok:
            t.passed += 1
        else:
            t.failed += 1
            if len(t.witnesses) < 5:
                t.witnesses.append(witness)
        return ok

    @property
    def ok(self) -> bool:
        return all(t.failed == 0 for t in self.checks.values())

    def render(self) -> str:
        lines = [f"suite {self.name}"]
        lines += [f"param {k}={v}" for k, v in sorted(self.params.items())]
        for check, t in self.checks.items():
            status = "PASS" if not t.failed else "FAIL"
            lines.append(f"{status} {check} {t.passed}/{t.passed + t.failed}")
            lines += [f"  witness: {w}" for w in t.witnesses]
        total = sum(t.passed + t.failed for t in self.checks.values())
        good = sum(t.passed for t in self.checks.values())
        lines.append(f"summary {'PASS' if self.ok else 'FAIL'} {good}/{total}")
        return "\n".join(lines) + "\n"


def _vec(v) -> str:
    return "(" + ",".join(fmt(x) for x in v) + ")"


# ------------------------------------------------------- random instances


def random_generators(rng: SplitMix64, d: int, max_gens: int = 3, grid_den: int = 4) -> list[tuple]:
    """Grid generators with every coordinate positive somewhere."""
    vals = grid_values(grid_den)
    while True:
        gens = [tuple(rng.choice(vals) for _ in range(d)) for _ in range(rng.between(1, max_gens))]
        if all(any(g[i] > 0 for g in gens) for i in range(d)):
            return gens


def random_pcs(rng: SplitMix64, d: int, max_gens: int = 3, grid_den: int = 4, prefix: str = "") -> Pcs:
    gens = random_generators(rng, d, max_gens, grid_den)
    X = biorth_closure(tuple(prefix + LETTERS[i] for i in range(d)), gens)
    X.generators = gens
    X.name = f"R{d}"
    return X


def random_matrix(rng: SplitMix64, X, Y, grid_den: int = 4, density: int = 2) -> MorphMatrix:
    vals = grid_values(grid_den)
    out = {}
    for a in X.web:
        for b in Y.web:
            if rng.below(density) == 0:
                out[(a, b)] = rng.choice(vals)
    return MorphMatrix(X, Y, out)


def random_morphism(rng: SplitMix64, X: Pcs, Y: Pcs, grid_den: int = 4) -> MorphMatrix:
    t = random_matrix(rng, X, Y, grid_den)
    m = morph_norm(t)
    return t.scale(1 / m) if m > 1 else t


def _size(rng: SplitMix64, max_dim: int) -> int:
    return rng.between(1, max_dim)


# ------------------------------------------------- pure tensor gap


def suite_pure_tensor_gap() -> SuiteReport:
    rep = SuiteReport("pure-tensor-gap")
    I = one()
    W = with_product([I, I])
    T = tensor(W, W)
    cube = Polytope(T.web, vrep=[[1, 1, 1, 1]])
    rep.add("(i) ball is the full 4-cube", T.ball == cube and is_clinfty(T), f"V={T.ball.vrep}")
    rep.add("(i) closure of pure tensors gives the same ball", tensor_by_closure(W, W).same_as(T))

    e1, e2 = elem(W, [1, 0]), elem(W, [0, 1])
    target = (ZERO, ONE, ONE, ZERO)
    rep.add("(ii) e12+e21 lies in the ball", pt.member(target, T.ball))
    rep.add("(ii) norm of e12+e21 is 1", T.norm(target) == 1, fmt(T.norm(target)))
    rep.add("support of the cube at e12+e21 is 2", pt.support(T.ball, target) == 2)

    s = pure_tensor(e1 + e2, e1 + e2, T)
    d = sub(sub(s, pure_tensor(e1, e1, T)), pure_tensor(e2, e2, T))
    rep.add("(iii) iterated difference equals e12+e21", d.vec == target, _vec(d.vec))

    # a signed functional; u(x)v -> <w, u(x)v> is bilinear, so its sup over
    # the box is attained at the 16 vertex pairs
    w = (-ONE, ONE, ONE, -ONE)
    corners = list(product((ZERO, ONE), repeat=2))
    sup = max(sum(a * b for a, b in zip(w, (u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1])))
              for u in corners for v in corners)
    val = sum(a * b for a, b in zip(w, target))
    rep.add("(iv) certificate: sup over pure tensors is 1", sup == 1, fmt(sup))
    rep.add("(iv) certificate: value at e12+e21 is 2", val == 2, fmt(val))

    ok, detail = _pure_tensor_sample_separation(target)
    rep.add("(iv) LP separation on a pure-tensor sample", ok, detail)
    return rep


def _pure_tensor_sample_separation(target, steps=(ZERO, Fraction(1, 2), ONE)):
    """Bounded signed functional maximizing ``<w, target>`` on the sample.

    Variables are ``w = wp - wm`` with ``0 <= wp, wm <= 1``. An optimum
    above 1 certifies that ``target`` is outside the convex hull of the
    sampled pure tensors.
    """
    pts = list(product(steps, repeat=2))
    sample = {(u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]) for u in pts for v in pts}
    A, b = [], []
    for g in sample:
        A.append(list(g) + [-x for x in g])
        b.append(ONE)
    for i in range(8):
        A.append([ONE if j == i else ZERO for j in range(8)])
        b.append(ONE)
    c = list(target) + [-x for x in target]
    value, x = maximize(c, A, b)
    w = tuple(x[i] - x[i + 4] for i in range(4))
    worst = max(sum(a * b for a, b in zip(w, g)) for g in sample)
    return value > 1 and worst <= 1, f"w={_vec(w)} value={fmt(value)} sample-sup={fmt(worst)}"


# -------------------------------------------------- closure oracle


def suite_closure_oracle(seed: int = 0, instances: int = 200, max_dim: int = 3, grid_den: int = 4) -> SuiteReport:
    rep = SuiteReport("closure-oracle", seed=seed, instances=instances, max_dim=max_dim, grid_den=grid_den)
    rng = SplitMix64(seed)
    vals = grid_values(grid_den)
    for i in range(instances):
        d = 1 + i % max_dim
        gens = random_generators(rng, d, 4, grid_den)
        X = biorth_closure(tuple(LETTERS[:d]), gens)
        S = grid_closure(gens, grid_den)
        bad = next((p for p in product(vals, repeat=d) if (p in S) != X.contains(p)), None)
        rep.add("closure agrees with grid oracle", bad is None,
                f"instance {i} gens={[_vec(g) for g in gens]} point={_vec(bad) if bad else ''}")
        rep.add("closure is a biorthogonal fixed point", pt.polar(pt.polar(X.ball)) == X.ball, f"instance {i}")
    return rep


# -------------------------------------------------------------- coherence


def suite_coherence(seed: int = 0, instances: int = 100, max_dim: int = 3) -> SuiteReport:
    rep = SuiteReport("coherence", seed=seed, instances=instances, max_dim=max_dim)
    rng = SplitMix64(seed)
    for i in range(instances):
        W, X, Y, Z = (random_pcs(rng, _size(rng, max_dim)) for _ in range(4))
        tag = f"instance {i} webs={len(W.web)},{len(X.web)},{len(Y.web)},{len(Z.web)}"
        for name, (lhs, rhs) in (
            ("pentagon", pentagon(W, X, Y, Z)),
            ("triangle", triangle(X, Y)),
            ("hexagon", hexagon(X, Y, Z)),
            ("symmetry involution", symmetry_involution(X, Y)),
        ):
            rep.add(name, lhs == rhs, tag)
        f = random_morphism(rng, W, X)
        g = random_morphism(rng, Y, Z)
        h = random_morphism(rng, X, Y)
        f2 = random_morphism(rng, X, W)
        g2 = random_morphism(rng, Z, Y)
        for name, (lhs, rhs) in (
            ("naturality of associator", naturality_associator(f, g, h)),
            ("naturality of symmetry", naturality_symmetry(f, g)),
            ("naturality of left unitor", naturality_left_unitor(f)),
            ("naturality of right unitor", naturality_right_unitor(g)),
            ("functoriality of tensor", functoriality(f, g, f2, g2)),
        ):
            rep.add(name, lhs == rhs, tag)
    return rep


# ---------------------------------------------------- universal properties


def _ball_points(X: Pcs) -> list[tuple]:
    """Generators plus each coordinate axis scaled to its supremum."""
    d = len(X.web)
    return list(X.ball.vrep) + [pt.basis(d, a, pt.coordinate_sup(X.ball, a)) for a in range(d)]


def _pure_points(X: Pcs, Y: Pcs) -> list[tuple]:
    return [tuple(a * b for a in u for b in v) for u in _ball_points(X) for v in _ball_points(Y)]


def suite_universal(seed: int = 0, instances: int = 100, max_dim: int = 3) -> SuiteReport:
    rep = SuiteReport("universal", seed=seed, instances=instances, max_dim=max_dim)
    rng = SplitMix64(seed)
    vals = grid_values(4)
    for i in range(instances):
        X, Y, Z = (random_pcs(rng, _size(rng, max_dim)) for _ in range(3))
        tag = f"instance {i} webs={len(X.web)},{len(Y.web)},{len(Z.web)}"
        coeffs = {}
        for a in X.web:
            for b in Y.web:
                for c in Z.web:
                    if rng.below(3) == 0:
                        coeffs[((a, b), c)] = rng.choice(vals)
        f = BilinMap(X, Y, Z, coeffs)
        T = tensor(X, Y)
        h = linofbilin(f, T)
        ok = all(h.act(tuple(a * b for a in u for b in v)) == f.act(u, v)
                 for u in X.ball.vrep for v in Y.ball.vrep)
        rep.add("linofbilin factors f through pure tensors", ok, tag)
        # uniqueness: pure tensors of ball points span, so agreeing on them forces equality
        pure = _pure_points(X, Y)
        span = len(nullspace([list(r) for r in pure], len(T.web))) == 0
        rep.add("pure tensors of ball points span (uniqueness)", span, tag)
        key = ((rng.choice(X.web), rng.choice(Y.web)), rng.choice(Z.web))
        bumped = dict(h.entries)
        bumped[key] = bumped.get(key, ZERO) + Fraction(1, 4)
        h2 = MorphMatrix(T, Z, bumped)
        rep.add("a perturbed factor disagrees on some pure tensor",
                any(h2.act(p) != h.act(p) for p in pure), tag)

        t = random_matrix(rng, T, Z)
        lhs, rhs = beta_law(t)
        rep.add("beta law", lhs == rhs, tag)
        rep.add("uncurry . curry = id", uncurry(curry(t), T) == t, tag)
        s = curry(t)
        rep.add("curry . uncurry = id", curry(uncurry(s), s.cod) == s, tag)

        g = random_matrix(rng, X, Y)
        x = elem(X, rng.choice(X.ball.vrep))
        ev = eval_morphism(X, Y)
        lhs = apply(ev, tuple(a * b for a in flatten(g) for b in x.vec))
        rep.add("eval(f (x) x) = apply(f, x)", lhs.vec == apply(g, x).vec, tag)
    return rep


# ------------------------------------------------------------ exponential


def _exp_bases(rng: SplitMix64) -> list[Pcs]:
    I = one()
    return [I, with_product([I, I]), snat(2), random_pcs(rng, 2, prefix="p"), random_pcs(rng, 1, prefix="q")]


def _sample_points(X: Pcs) -> list[tuple]:
    pts = list(X.ball.vrep)
    pts += [tuple(v / 2 for v in g) for g in X.ball.vrep]
    pts.append(tuple(ZERO for _ in X.web))
    return pts


def _graded_vec(G: GradedTensor, x, y, D: int) -> tuple:
    px, py = promote(x, D), promote(y, D)
    return tuple(px[m] * py[n] for m, n in G.web)


def suite_exponential(seed: int = 0, max_degree: int = 4) -> SuiteReport:
    rep = SuiteReport("exponential", seed=seed, max_degree=max_degree)
    rng = SplitMix64(seed)
    bases = _exp_bases(rng)
    for X in bases:
        pts = [elem(X, p) for p in _sample_points(X)]
        Y = random_pcs(rng, rng.between(1, 2), prefix="y")
        f = random_morphism(rng, X, Y)
        for D in range(1, max_degree + 1):
            tag = f"base={X.name} D={D}"
            der = dereliction(X, D)
            rep.add("der . x^! = x", all(apply(der, promote(x, D)).vec == x.vec for x in pts), tag)
            bf = bang_functor(f, D)
            rep.add("(!f) . x^! = (f.x)^!", all(apply(bf, promote(x, D)).vec == promote(apply(f, x), D).vec
                                              for x in pts), tag)
            rep.add("!id = id", bang_functor(identity(X), D) == identity(BangPcs(X, D)), tag)
            for inner in range(1, D + 1):
                if D % inner:
                    continue
                outer = D // inner
                dg = digging(X, inner, outer)
                ok = all(apply(dg, promote(x, D)).vec == promote(promote(x, inner), outer, check=False).vec for x in pts)
                rep.add("digg . x^! = (x^!)^!", ok, f"{tag} inner={inner} outer={outer}")
                lhs = compose(bang_functor(f, D), digging(Y, inner, outer))
                rhs = compose(dg, bang_functor(bang_functor(f, inner), outer))
                rep.add("naturality of digging", lhs == rhs, f"{tag} inner={inner} outer={outer}")
            B = BangPcs(X, D)
            counit_l = compose(digging(X, D, 1), dereliction(B, 1))
            counit_r = compose(digging(X, 1, D), bang_functor(dereliction(X, 1), D))
            rep.add("comonad counit laws", counit_l == identity(B) and counit_r == identity(B), tag)
            for a, b, c in ((a, b, c) for a in range(1, D + 1) for b in range(1, D + 1) for c in range(1, D + 1)
                            if a * b * c == D):
                r1 = compose(digging(X, a * b, c), bang_functor(digging(X, a, b), c))
                r2 = compose(digging(X, a, b * c), digging(BangPcs(X, a), b, c))
                rep.add("comonad coassociativity", r1 == r2, f"{tag} split={a},{b},{c}")
    for D in range(1, max_degree + 1):
        rep.add("Seely0 sends 1 to 0^!", apply(seely0(D), [1]).vec == promote(zero(top()), D).vec, f"D={D}")
    small = bases[:4]
    for P in small:
        for Q in small[:3]:
            for D in range(1, max_degree + 1):
                tag = f"P={P.name} Q={Q.name} D={D}"
                s, si = seely2(P, Q, D), seely2_inverse(P, Q, D)
                rep.add("Seely2 round trips", compose(s, si) == identity(s.dom) and compose(si, s) == identity(s.cod), tag)
                W = s.cod.base
                ok = True
                for x in _sample_points(P):
                    for y in _sample_points(Q):
                        xy = elem(W, tuple(x) + tuple(y))
                        v = _graded_vec(s.dom, elem(P, x), elem(Q, y), D)
                        if apply(s, v).vec != promote(xy, D).vec or apply(si, promote(xy, D)).vec != v:
                            ok = False
                rep.add("Seely2 maps x^! (x) y^! to (x,y)^!", ok, tag)
    I = one()
    sq = StableFn.from_entries(I, 2, I, {(Bag(("*", "*")), "*"): 1})
    x4 = StableFn.from_entries(I, 4, I, {(Bag(("*",) * 4), "*"): 1})
    rep.add("Kleisli x^2 . x^2 = x^4 at D=4", kleisli_compose(sq, sq) == x4)
    return rep


# -------------------------------------------------------------- stability


def random_stable(rng: SplitMix64, X: Pcs, D: int, grid_den: int = 4) -> StableFn:
    """Power series with nonnegative coefficients summing to at most 1."""
    B = BangPcs(X, D)
    vals = grid_values(grid_den)
    coeffs = {m: rng.choice(vals) for m in B.web if rng.below(2) == 0}
    total = sum(coeffs.values(), ZERO)
    if total > 1:
        coeffs = {m: v / total for m, v in coeffs.items()}
    return StableFn.from_entries(X, D, one(), {(m, "*"): v for m, v in coeffs.items()})


def _sorted_tuples(X: Pcs, n: int, grid_den: int):
    """Grid tuples up to reordering (the alternating sums are symmetric)."""
    seen = set()
    for t in grid_tuples(X, n, grid_den):
        k = tuple(sorted(t))
        if k not in seen:
            seen.add(k)
            yield k


def sqrt_counterexample():
    """``sqrt`` on ``[0,1]`` with exact algebraic comparisons."""
    import sympy

    def f(v):
        return (sympy.sqrt(sympy.Rational(v[0].numerator, v[0].denominator)),)

    def leq(a, b):
        return bool(sympy.simplify(b - a) >= 0)

    return total_monotonicity_check(f, [((Fraction(1, 4),), (Fraction(1, 4),))], leq=leq)


def suite_stability(seed: int = 0, functions: int = 6, max_n: int = 3, grid_den: int = 4) -> SuiteReport:
    rep = SuiteReport("stability", seed=seed, functions=functions, max_n=max_n, grid_den=grid_den)
    rng = SplitMix64(seed)
    I = one()
    W = with_product([I, I])
    fns = [StableFn.from_entries(I, 2, I, {(Bag(("*", "*")), "*"): 1})]
    for k in range(functions):
        X = I if k % 2 == 0 else W
        fns.append(random_stable(rng, X, rng.between(1, 3), grid_den))
    tuples = {}
    for idx, f in enumerate(fns):
        X = f.dom
        for n in range(1, max_n + 1):
            key = (X.web, n)
            if key not in tuples:
                tuples[key] = list(_sorted_tuples(X, n, grid_den))

            def fv(v, f=f):
                return f.matrix.act(_promote(f, v))

            res = total_monotonicity_check(fv, tuples[key], ball=X.contains)
            rep.add("power series is totally monotone", res.ok,
                    f"function {idx} n={n} witness={res.witness}")
    res = sqrt_counterexample()
    rep.add("sqrt is rejected", not res.ok, "sqrt passed")
    rep.add("sqrt witness is (1/4,1/4)", res.witness == ((Fraction(1, 4),), (Fraction(1, 4),)), str(res.witness))
    return rep


def _promote(f: StableFn, v) -> tuple:
    B = f.matrix.dom
    idx = f.dom.index()
    out = []
    for m in B.web:
        p = ONE
        for a in m:
            p *= v[idx[a]]
        out.append(p)
    return tuple(out)


# ----------------------------------------------------------------- stream


def suite_stream(max_depth: int = 3, alphabets=(2, 3)) -> SuiteReport:
    rep = SuiteReport("stream", max_depth=max_depth, alphabets=",".join(map(str, alphabets)))
    for n in alphabets:
        for d in range(max_depth + 1):
            r = stream_equalizer_demo(n, d)
            tag = f"n={n} d={d} dim={r['dimension']}"
            rep.add("equalizer dimension is n^d", r["dimension"] == n ** d, tag)
            rep.add("leaf isomorphism preserves norms", all(c["ok"] for c in r["cases"]), tag)
    return rep


# ----------------------------------------------------------------- kernel


def random_kernel(rng: SplitMix64, X, Y, grid_den: int = 4) -> Kernel:
    vals = grid_values(grid_den)
    rows = {}
    for r in X.points:
        w = {y: rng.choice(vals) for y in Y.points if rng.below(2) == 0}
        total = sum(w.values(), ZERO)
        m = rng.choice(vals)
        if total:
            rows[r] = {y: v / total * m for y, v in w.items()}
    return Kernel(X, Y, rows)


def suite_kernel(seed: int = 0, instances: int = 100, max_size: int = 5) -> SuiteReport:
    rep = SuiteReport("kernel", seed=seed, instances=instances, max_size=max_size)
    rng = SplitMix64(seed)
    for i in range(instances):
        X, Y, Z = (space(f"{c}{k}" for k in range(rng.between(1, max_size))) for c in "xyz")
        K, L = random_kernel(rng, X, Y), random_kernel(rng, Y, Z)
        tag = f"instance {i} sizes={len(X)},{len(Y)},{len(Z)}"
        t = lin_of_kern(K)
        rep.add("kern_of_lin . lin_of_kern = id", kern_of_lin(t) == K, tag)
        rep.add("lin_of_kern . kern_of_lin = id", lin_of_kern(kern_of_lin(t)) == t, tag)
        rep.add("lin_of_kern preserves composition",
                lin_of_kern(kernel_compose(K, L)) == compose(lin_of_kern(K), lin_of_kern(L)), tag)
        rep.add("lin_of_kern preserves identity", lin_of_kern(identity_kernel(X)) == identity(t.dom), tag)
        mu = measure(X, [rng.choice(grid_values(4)) for _ in X.points])
        rep.add("norm = mass = test at the full set",
                mu.norm() == mass(mu) == test_eval(meas_test(X, X.points), mu), tag)
    return rep


# ------------------------------------------------------------ norm oracle


def suite_norm_oracle(seed: int = 0, instances: int = 100, max_dim: int = 3) -> SuiteReport:
    rep = SuiteReport("norm-oracle", seed=seed, instances=instances, max_dim=max_dim)
    rng = SplitMix64(seed)
    vals = grid_values(4)
    for i in range(instances):
        X = random_pcs(rng, _size(rng, max_dim), max_gens=4)
        Y = random_pcs(rng, _size(rng, max_dim), max_gens=4, prefix="y")
        x = tuple(rng.choice(vals) * rng.between(1, 3) for _ in X.web)
        a, b = X.norm(x), lp_norm(x, X.generators)
        rep.add("element norm equals LP oracle", a == b, f"instance {i} x={_vec(x)} norm={fmt(a)} lp={fmt(b)}")
        t = random_matrix(rng, X, Y)
        a = morph_norm(t)
        b = lp_morph_norm(t.entries, X.web, Y.web, X.generators, Y.generators)
        rep.add("morphism norm equals LP oracle", a == b, f"instance {i} norm={fmt(a)} lp={fmt(b)}")
    return rep


SUITES = {
    "pure-tensor-gap": suite_pure_tensor_gap,
    "closure-oracle": suite_closure_oracle,
    "coherence": suite_coherence,
    "universal": suite_universal,
    "exponential": suite_exponential,
    "stability": suite_stability,
    "stream": suite_stream,
    "kernel": suite_kernel,
    "norm-oracle": suite_norm_oracle,
}


def run_suite(name: str, **kwargs) -> SuiteReport:
    fn = SUITES[name]
    start = time.perf_counter()
    rep = fn(**kwargs)
    rep.elapsed = time.perf_counter() - start
    return rep
