from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from pcoh import polytope as pt
from pcoh.oracles import lp_norm, vertices_by_subsets
from pcoh.polytope import DegenerateCoordinate, Inconsistent, Polytope
from pcoh.rational import InputError, WebMismatch

from conftest import generator_sets, vectors

WEB3 = ("a", "b", "c")


def test_convert_frozen_vertices():
    # rows drawn with SplitMix64(11) on the denominator-3 grid; vertices
    # computed by solving every 3x3 subsystem (oracles.vertices_by_subsets)
    rows = [(F(2, 3), 1, 0), (2, F(4, 3), 1), (F(3, 2), 2, F(1, 2)), (F(1, 3), F(5, 3), F(1, 3))]
    P = pt.convert(Polytope(WEB3, hrep=rows))
    assert P.vrep == (
        (0, 0, 1), (0, F(3, 8), F(1, 2)), (0, F(1, 2), 0), (F(1, 3), F(1, 4), 0), (F(1, 2), 0, 0),
    )
    assert set(P.hrep) == {(F(3, 2), 2, F(1, 2)), (2, F(4, 3), 1)}


def test_simplex_and_cube_are_polar():
    S, C = pt.simplex(WEB3), pt.hypercube(WEB3)
    assert pt.polar(S) == C
    assert pt.polar(C) == S
    assert pt.convert(S).vrep == ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def test_membership_gauge_support():
    S = pt.simplex(WEB3)
    assert pt.member((F(1, 2), F(1, 4), F(1, 4)), S)
    assert not pt.member((F(1, 2), F(1, 2), F(1, 4)), S)
    assert pt.gauge((F(1, 2), F(1, 2), F(1, 4)), S) == F(5, 4)
    assert pt.support(S, (1, 3, 2)) == 3


def test_separate_returns_polar_witness():
    S = pt.simplex(WEB3)
    v = (F(1, 2), F(1, 2), F(1, 2))
    w = pt.separate(v, S)
    assert w is not None
    assert pt.member(w, pt.polar(S))
    assert sum(a * b for a, b in zip(v, w)) > 1
    assert pt.separate((F(1, 3),) * 3, S) is None


def test_degenerate_coordinate():
    P = Polytope(("a", "b"), vrep=[(1, 0)])
    with pytest.raises(DegenerateCoordinate):
        pt.polar(P)


def test_inconsistent_representations():
    with pytest.raises(Inconsistent):
        pt.convert(Polytope(("a", "b"), hrep=[(1, 1)], vrep=[(1, 1)]))


def test_web_checks():
    with pytest.raises(InputError):
        Polytope(("a", "a"), hrep=[(1, 1)])
    with pytest.raises(WebMismatch):
        pt.member((1, 2, 3), pt.simplex(("a", "b")))


def test_text_round_trip():
    P = pt.convert(Polytope(WEB3, vrep=[(1, F(1, 2), 0), (0, 1, 1)]))
    Q = pt.parse_polytope(pt.format_polytope(P))
    assert Q == P
    assert pt.parse_polytope("web: a b\nH: 1 1\n") == pt.simplex(("a", "b"))


def test_parse_errors():
    with pytest.raises(InputError):
        pt.parse_polytope("H: 1 1\n")
    with pytest.raises(InputError):
        pt.parse_polytope("web: a b\nH: 1\n")


def _web(d):
    return tuple("abc"[:d])


@given(generator_sets())
def test_vertices_agree_with_subset_enumeration(gens):
    d = len(gens[0])
    P = pt.convert(Polytope(_web(d), vrep=gens))
    # every canonical vertex is an oracle vertex of the H-description
    oracle = vertices_by_subsets(P.hrep, d)
    assert set(P.vrep) <= set(oracle)
    for v in oracle:
        assert pt.member(v, P)


@given(generator_sets())
def test_polar_is_an_involution(gens):
    d = len(gens[0])
    P = Polytope(_web(d), vrep=gens)
    assert pt.polar(pt.polar(P)) == P


@given(generator_sets(), st.data())
def test_gauge_agrees_with_lp(gens, data):
    d = len(gens[0])
    P = Polytope(_web(d), vrep=gens)
    u = data.draw(vectors(d))
    assert pt.gauge(u, P) == lp_norm(u, gens)
    assert pt.gauge(u, pt.convert(P)) == lp_norm(u, gens)


@given(generator_sets(), st.data())
def test_member_agrees_between_representations(gens, data):
    d = len(gens[0])
    P = Polytope(_web(d), vrep=gens)
    H = Polytope(_web(d), hrep=pt.convert(P).hrep)
    u = data.draw(vectors(d))
    assert pt.member(u, P) == pt.member(u, H)
