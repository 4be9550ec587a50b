from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from pcoh.category import compose, identity, morph_norm
from pcoh.kernel import (
    Kernel,
    NotSubstochastic,
    dirac,
    format_kernel,
    identity_kernel,
    kern_of_lin,
    kernel_compose,
    lin_of_kern,
    mass,
    meas_test,
    measure,
    measure_cone,
    parse_kernel,
    path_check,
    push,
    space,
)
from pcoh.kernel import test_eval as evaluate_test
from pcoh.rational import InputError, WebMismatch

X = space(["x", "y"])
Y = space(["p", "q", "r"])


def test_measure_cone_is_simplex():
    M = measure_cone(Y)
    assert M.norm((F(1, 2), F(1, 4), F(1, 8))) == F(7, 8)
    assert measure_cone(Y) is M


def test_measures_and_tests():
    mu = measure(Y, {"p": F(1, 2), "r": F(1, 4)})
    assert mass(mu) == F(3, 4)
    assert evaluate_test(meas_test(Y, ["p", "q"]), mu) == F(1, 2)
    assert dirac(Y, "q").vec == (0, 1, 0)
    with pytest.raises(WebMismatch):
        meas_test(Y, ["z"])
    with pytest.raises(WebMismatch):
        evaluate_test(meas_test(X, ["x"]), mu)
    with pytest.raises(InputError):
        measure(Y, [1, -1, 0])


def test_kernel_validation():
    with pytest.raises(NotSubstochastic):
        Kernel(X, Y, {"x": {"p": F(2, 3), "q": F(1, 2)}})
    with pytest.raises(WebMismatch):
        Kernel(X, Y, {"x": {"z": 1}})
    with pytest.raises(WebMismatch):
        Kernel(X, Y, {"w": {"p": 1}})


def test_kernel_evaluation_and_composition():
    K = Kernel(X, Y, {"x": {"p": F(1, 2), "q": F(1, 2)}, "y": {"r": F(1, 3)}})
    L = Kernel(Y, X, {"p": {"x": 1}, "q": {"y": F(1, 2)}, "r": {"x": F(1, 2), "y": F(1, 2)}})
    assert K("x", ["p", "r"]) == F(1, 2)
    KL = kernel_compose(K, L)
    assert KL.rows == {"x": {"x": F(1, 2), "y": F(1, 4)}, "y": {"x": F(1, 6), "y": F(1, 6)}}
    assert kernel_compose(identity_kernel(X), K) == K


def test_push_forward():
    K = Kernel(X, Y, {"x": {"p": F(1, 2), "q": F(1, 2)}, "y": {"r": F(1, 3)}})
    mu = measure(X, {"x": F(1, 2), "y": F(1, 2)})
    assert push(K, mu).vec == (F(1, 4), F(1, 4), F(1, 6))


def test_path_check():
    assert path_check({"x": {"p": F(1, 2)}}, X, Y)
    assert not path_check({"x": {"p": F(1, 2), "q": F(2, 3)}}, X, Y)
    assert not path_check({"x": {"z": F(1, 2)}}, X, Y)


def test_kernel_file_round_trip():
    K = Kernel(X, Y, {"x": {"p": F(1, 2), "q": F(1, 3)}, "y": {"r": 1}})
    assert parse_kernel(format_kernel(K)) == K
    with pytest.raises(InputError):
        parse_kernel("kernel x,y\n")


@st.composite
def kernels(draw, dom, cod):
    rows = {}
    for r in dom.points:
        raw = {y: draw(st.integers(0, 4)) for y in cod.points}
        total = draw(st.integers(max(1, sum(raw.values())), max(1, sum(raw.values())) + 3))
        rows[r] = {y: F(v, total) for y, v in raw.items()}
    return Kernel(dom, cod, rows)


sizes = st.integers(1, 5)


@st.composite
def kernel_chain(draw):
    a, b, c = (space([f"{tag}{i}" for i in range(draw(sizes))]) for tag in "abc")
    return draw(kernels(a, b)), draw(kernels(b, c))


@given(kernel_chain())
def test_round_trips(pair):
    K, _ = pair
    assert kern_of_lin(lin_of_kern(K)) == K
    t = lin_of_kern(K)
    assert lin_of_kern(kern_of_lin(t)) == t
    assert morph_norm(t) <= 1


@given(kernel_chain())
def test_lin_of_kern_is_functorial(pair):
    K, L = pair
    assert lin_of_kern(kernel_compose(K, L)) == compose(lin_of_kern(K), lin_of_kern(L))
    assert lin_of_kern(identity_kernel(K.dom)) == identity(measure_cone(K.dom))


@given(kernel_chain())
def test_push_is_linear_and_mass_decreasing(pair):
    K, _ = pair
    for r in K.dom.points:
        d = dirac(K.dom, r)
        assert mass(push(K, d)) == K(r, K.cod.points) <= 1
