from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, strategies as st

from pcoh import polytope as pt
from pcoh.bang import (
    BangPcs,
    GradedTensor,
    InexactBall,
    StableFn,
    TruncationError,
    bang,
    bang_functor,
    dereliction,
    digging,
    eval_stable,
    grid_tuples,
    kleisli_compose,
    kleisli_identity,
    multisets,
    promote,
    refute_dual,
    restrict_degree,
    seely0,
    seely0_inverse,
    seely2,
    seely2_inverse,
    stab_lin_exchange,
    stab_lin_exchange_inverse,
    stable_hom,
    stable_of_linear,
    stable_violation,
    total_monotonicity_check,
)
from pcoh.category import MorphMatrix, apply, compose, identity, with_product
from pcoh.pcs import NotInBall, elem, one, snat, top
from pcoh.rational import Bag
from pcoh.tensor import pure_tensor, tensor

from conftest import morphisms, spaces

STAR = "*"


def _bag(*items):
    return Bag(items)


def test_multisets_order():
    assert multisets(("a", "b"), 2) == (
        Bag(), _bag("a"), _bag("b"), _bag("a", "a"), _bag("a", "b"), _bag("b", "b"),
    )


def test_promotion_powers():
    x = elem(one(), [F(1, 2)])
    assert promote(x, 3).vec == (1, F(1, 2), F(1, 4), F(1, 8))


def test_promotion_of_zero_is_dirac_at_empty():
    x = elem(snat(2), [0, 0])
    assert promote(x, 2).vec == (1, 0, 0, 0, 0, 0)


def test_promotion_uses_plain_monomials():
    # no multinomial factor: the [a,b] coefficient is x_a * x_b
    W = with_product([one(), one()])
    x = elem(W, [F(1, 2), F(1, 3)])
    p = promote(x, 2)
    assert p[Bag([("0", STAR), ("1", STAR)])] == F(1, 6)


def test_promotion_needs_ball():
    with pytest.raises(NotInBall):
        promote(elem(snat(2), [1, 1]), 2)


def test_bang_ball_is_not_exact():
    B = bang(snat(2), 2)
    with pytest.raises(InexactBall):
        B.ball
    with pytest.raises(InexactBall):
        B.norm((0,) * len(B.web))


def test_inner_ball_contains_promotions():
    N = snat(2)
    B = bang(N, 2)
    inner = B.inner_ball(2)
    x = elem(N, [F(1, 2), F(1, 2)])
    assert pt.member(promote(x, 2, B).vec, inner)


def test_dereliction_of_promotion():
    x = elem(one(), [F(1, 2)])
    assert apply(dereliction(one(), 3), promote(x, 3)).vec == (F(1, 2),)
    with pytest.raises(TruncationError):
        dereliction(one(), 0)


def test_digging_coefficient():
    # (digg . x^!) at [[*],[*]] is x^2
    x = elem(one(), [F(1, 3)])
    dg = digging(one(), 1, 2)
    out = apply(dg, promote(x, 2))
    assert out[Bag([_bag(STAR), _bag(STAR)])] == F(1, 9)
    with pytest.raises(TruncationError):
        digging(one(), 2, 2, dom=BangPcs(one(), 3))


def test_bang_of_identity_is_identity():
    N = snat(2)
    assert bang_functor(identity(N), 3) == identity(BangPcs(N, 3))


def test_seely0():
    t = seely0(2)
    assert t.cod.web == (Bag(),)
    assert apply(t, [1]).vec == promote(elem(top(), []), 2).vec
    assert compose(t, seely0_inverse(2)) == identity(one())


def test_seely2_frozen_graded_vector():
    P, Q = one(), one()
    x, y = elem(P, [F(1, 2)]), elem(Q, [F(1, 3)])
    G = GradedTensor(P, Q, 2)
    z = G.restrict(pure_tensor(promote(x, 2), promote(y, 2), tensor(*G.factors)))
    # ordered (m, n) with m outer: x^|m| y^|n|
    assert z.vec == (1, F(1, 3), F(1, 9), F(1, 2), F(1, 6), F(1, 4))
    s = seely2(P, Q, 2)
    W = s.cod.base
    assert apply(s, z).vec == promote(elem(W, [F(1, 2), F(1, 3)]), 2, s.cod).vec


def test_seely2_round_trips():
    P, Q = snat(2), one()
    s, si = seely2(P, Q, 3), seely2_inverse(P, Q, 3)
    assert compose(s, si) == identity(s.dom)
    assert compose(si, s) == identity(s.cod)


def test_square_function():
    f = StableFn.from_entries(one(), 2, one(), {(_bag(STAR, STAR), STAR): 1})
    assert f(elem(one(), [F(1, 2)])).vec == (F(1, 4),)
    assert eval_stable(kleisli_identity(one()), elem(one(), [F(1, 3)])).vec == (F(1, 3),)


def test_kleisli_square_of_square_is_fourth_power():
    sq = StableFn.from_entries(one(), 2, one(), {(_bag(STAR, STAR), STAR): 1})
    h = kleisli_compose(sq, sq)
    assert h.degree == 4
    assert h.matrix.entries == {(_bag(STAR, STAR, STAR, STAR), STAR): 1}


def _coefficients(f: StableFn):
    return [f.matrix[(Bag([STAR] * k), STAR)] for k in range(f.degree + 1)]


def test_kleisli_composite_frozen_and_symbolic():
    f = StableFn.from_entries(one(), 2, one(), {(_bag(STAR), STAR): F(1, 2), (_bag(STAR, STAR), STAR): F(1, 2)})
    g = StableFn.from_entries(one(), 2, one(), {(Bag(), STAR): F(1, 2), (_bag(STAR, STAR), STAR): F(1, 2)})
    h = kleisli_compose(f, g)
    assert _coefficients(h) == [F(1, 2), 0, F(1, 8), F(1, 4), F(1, 8)]
    X = sympy.Symbol("X")
    expr = sympy.expand(sympy.Rational(1, 2) + sympy.Rational(1, 2) * ((X + X**2) / 2) ** 2)
    assert [F(str(c)) for c in sympy.Poly(expr, X).all_coeffs()[::-1]] == _coefficients(h)


def test_truncated_kleisli_composite():
    sq = StableFn.from_entries(one(), 2, one(), {(_bag(STAR, STAR), STAR): 1})
    with pytest.raises(TruncationError):
        kleisli_compose(sq, sq, degree=3)
    assert kleisli_compose(sq, sq, degree=3, exact=False).matrix.entries == {}
    assert kleisli_compose(sq, sq, degree=5).degree == 5


def test_restrict_degree():
    sq = StableFn.from_entries(one(), 4, one(), {(_bag(STAR, STAR), STAR): 1})
    assert restrict_degree(sq.matrix, 2).dom.degree == 2
    with pytest.raises(TruncationError):
        restrict_degree(sq.matrix, 1)


def test_total_monotonicity_of_a_square():
    sq = StableFn.from_entries(one(), 2, one(), {(_bag(STAR, STAR), STAR): 1})
    res = total_monotonicity_check(lambda v: sq.matrix.act(promote(elem(one(), v), 2, check=False).vec),
                                   grid_tuples(one(), 3, 4))
    assert res.ok
    assert res.checked > 0


def test_concave_function_rejected():
    # x -> x(2 - x) is concave: 2 f(1/4) = 7/8 > f(0) + f(1/2) = 3/4
    res = total_monotonicity_check(lambda v: (v[0] * (2 - v[0]),), [((F(1, 4),), (F(1, 4),))])
    assert not res.ok
    assert res.witness == ((F(1, 4),), (F(1, 4),))


def test_monotonicity_rejects_tuples_outside_ball():
    with pytest.raises(NotInBall):
        total_monotonicity_check(lambda v: v, [((1,), (1,))], ball=one().contains)


def test_refute_dual():
    B = bang(one(), 2)
    r = refute_dual((0, 0, 2), B, grid_den=2)
    assert r.refuted
    assert r.witness == (1,)
    assert str(r).startswith("refuted by")
    r = refute_dual((1, 0, 0), B)
    assert not r.refuted
    assert "not refuted at grid 4" in str(r)


def test_stable_violation():
    f = StableFn.from_entries(one(), 2, one(), {(Bag(), STAR): 1, (_bag(STAR), STAR): 1})
    assert stable_violation(f) is not None
    assert stable_violation(StableFn.from_entries(one(), 2, one(), {(_bag(STAR, STAR), STAR): 1})) is None


def test_stab_lin_exchange_round_trip():
    P, Q, R = snat(2), one(), snat(2)
    S = stable_hom(Q, R, 2)
    f = MorphMatrix(P, S, {("0", (_bag(STAR), "1")): F(1, 2), ("1", (Bag(), "0")): F(1, 3)})
    g = stab_lin_exchange(f)
    assert stab_lin_exchange_inverse(g) == f


@given(st.data(), st.integers(1, 4))
def test_comonad_laws_on_promotions(data, D):
    X = data.draw(spaces(d=st.integers(1, 2)))
    for g in X.ball.vrep:
        x = elem(X, g)
        p = promote(x, D)
        assert apply(dereliction(X, D), p) == x
        outer, inner = 2, D // 2 or 1
        big = promote(x, inner * outer)
        dg = apply(digging(X, inner, outer), big)
        assert dg.vec == promote(promote(x, inner), outer, check=False).vec


@given(st.data(), st.integers(1, 3))
def test_bang_functor_on_promotions(data, D):
    X, Y = data.draw(spaces(d=st.integers(1, 2), prefix="x")), data.draw(spaces(d=st.integers(1, 2), prefix="y"))
    f = data.draw(morphisms(X, Y))
    for g in X.ball.vrep:
        x = elem(X, g)
        assert apply(bang_functor(f, D), promote(x, D)).vec == promote(apply(f, x), D, check=False).vec


@given(st.data(), st.integers(1, 3))
def test_stable_of_linear_agrees_with_apply(data, D):
    X, Y = data.draw(spaces(d=st.integers(1, 2), prefix="x")), data.draw(spaces(d=st.integers(1, 2), prefix="y"))
    f = data.draw(morphisms(X, Y))
    s = stable_of_linear(f)
    for g in X.ball.vrep:
        assert s(elem(X, g)) == apply(f, g)


# coefficients sum to at most 1, so both functions map the ball into itself
@given(st.lists(st.sampled_from([0, F(1, 4), F(1, 3)]), min_size=3, max_size=3),
       st.lists(st.sampled_from([0, F(1, 4), F(1, 3)]), min_size=3, max_size=3),
       st.sampled_from([0, F(1, 4), F(1, 2), F(3, 4), 1]))
def test_kleisli_composite_evaluates_as_composition(cf, cg, x):
    I = one()
    f = StableFn.from_entries(I, 2, I, {(Bag([STAR] * k), STAR): c for k, c in enumerate(cf)})
    g = StableFn.from_entries(I, 2, I, {(Bag([STAR] * k), STAR): c for k, c in enumerate(cg)})
    h = kleisli_compose(f, g)
    v = elem(I, [x])
    assert h(v) == g(f(v))
