from fractions import Fraction as F
from itertools import combinations

import pytest
import sympy
from hypothesis import given, strategies as st

from pcoh.category import MorphMatrix, compose, identity
from pcoh.limits import (
    EqualizerCone,
    ProductCone,
    SizeBoundExceeded,
    StreamPcs,
    antichain_sup,
    equalizer,
    leaf_extension,
    leaf_restriction,
    maximal_antichains,
    nullspace,
    sequences,
    stream_equalizer_demo,
    stream_shift,
)
from pcoh.kernel import measure_cone, space
from pcoh.pcs import snat, snat_dual
from pcoh.rational import Seq, WebMismatch

from conftest import morphisms, spaces


def _brute_maximal_antichains(n, d):
    nodes = sequences(n, d)

    def comparable(a, b):
        return a.is_prefix_of(b) or b.is_prefix_of(a)

    anti = []
    for k in range(1, len(nodes) + 1):
        for c in combinations(nodes, k):
            if all(not comparable(a, b) for a, b in combinations(c, 2)):
                anti.append(frozenset(c))
    return {A for A in anti if all(any(comparable(x, a) for a in A) for x in nodes)}


def test_sequence_counts():
    assert len(sequences(2, 3)) == 15
    assert len(sequences(3, 3)) == 40
    assert sequences(2, 1) == (Seq(), Seq("0"), Seq("1"))


@pytest.mark.parametrize("n,d,count", [(2, 1, 2), (2, 2, 5), (2, 3, 26), (3, 2, 9), (3, 3, 730)])
def test_maximal_antichain_counts(n, d, count):
    # a(0) = 1, a(k) = 1 + a(k-1)**n
    assert len(maximal_antichains(n, d)) == count


@pytest.mark.parametrize("n,d", [(2, 2), (2, 3), (3, 2)])
def test_maximal_antichains_match_brute_force(n, d):
    assert set(maximal_antichains(n, d)) == _brute_maximal_antichains(n, d)


def test_stream_norm_matches_antichain_rows():
    S = StreamPcs(2, 2)
    rows = S.antichain_rows()
    u = tuple(F(k, 7) for k in range(len(S.web)))
    assert S.norm(u) == max(sum(a * b for a, b in zip(r, u)) for r in rows) == antichain_sup(S, u)
    assert S.ball.hrep is not None


def test_stream_size_bound():
    with pytest.raises(SizeBoundExceeded):
        StreamPcs(3, 7, max_size=1000)


@pytest.mark.parametrize("n,d", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)])
def test_stream_equalizer(n, d):
    rep = stream_equalizer_demo(n, d, measures=[{Seq(["0"] * d): F(1, 3)}])
    assert rep["dimension"] == n ** d
    assert rep["ok"]
    for case in rep["cases"]:
        assert case["norm"] == case["antichain_sup"] == case["mass"] == case["root"]


def test_leaf_extension_round_trip():
    S = StreamPcs(2, 2)
    leaves = {Seq("00"): F(1, 4), Seq("11"): F(1, 2)}
    u = leaf_extension(S, leaves)
    assert u[0] == F(3, 4)
    assert compose(identity(S), stream_shift(S)).act(u) == u
    back = leaf_restriction(S, u)
    assert back[Seq("00")] == F(1, 4) and back[Seq("01")] == 0


def test_product_cone():
    N, C = snat(2), snat_dual(2)
    P = ProductCone([N, C])
    assert P.norm((F(1, 2), F(1, 2), 1, F(1, 4))) == 1
    assert P.contains((F(1, 2), F(1, 2), 1, 1))
    assert not P.contains((1, 1, 0, 0))
    f = MorphMatrix(N, N, {("0", "1"): 1})
    g = MorphMatrix(N, C, {("1", "0"): F(1, 2)})
    assert P.universal_check([f, g])
    assert compose(P.pair([f, g]), P.proj(1)) == g


def test_product_of_mixed_cones():
    M = measure_cone(space(["p", "q"]))
    P = ProductCone([M, ProductCone([snat(1), M])])
    assert P.norm((F(1, 2), F(1, 4), F(1, 3), F(1, 2), F(1, 2))) == 1


def test_equalizer_factorization():
    N = snat(2)
    swap = MorphMatrix(N, N, {("0", "1"): 1, ("1", "0"): 1})
    E = equalizer(swap, identity(N))
    assert E.basis() == [(1, 1)]
    assert E.contains((F(1, 2), F(1, 2)))
    assert not E.in_carrier((F(1, 2), 0))
    h = MorphMatrix(snat(1), N, {("0", "0"): F(1, 3), ("0", "1"): F(1, 3)})
    k = E.factor(h)
    assert compose(k, E.inclusion()) == h
    with pytest.raises(ValueError):
        E.factor(MorphMatrix(snat(1), N, {("0", "0"): 1}))
    with pytest.raises(WebMismatch):
        EqualizerCone(swap, identity(snat(3)))


@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_nullspace_matches_sympy(rows, cols, data):
    A = [[data.draw(st.sampled_from([-1, 0, F(1, 2), 1, 2])) for _ in range(cols)] for _ in range(rows)]
    basis = nullspace(A, cols)
    ref = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, F) else x for x in r] for r in A]).nullspace()
    assert len(basis) == len(ref)
    for v in basis:
        assert all(sum(a * x for a, x in zip(r, v)) == 0 for r in A)


@given(st.data())
def test_equalizer_of_parallel_pair(data):
    X, Y = data.draw(spaces(prefix="x")), data.draw(spaces(prefix="y"))
    f, g = data.draw(morphisms(X, Y)), data.draw(morphisms(X, Y))
    E = equalizer(f, g)
    for v in E.basis():
        assert f.act(v) == g.act(v)
    assert E.dimension() >= len(X.web) - len(Y.web)
