from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pcoh.rational import Bag, InputError, Seq, fmt, label_str, parse_label, q
from pcoh.rng import SplitMix64, grid_values


def test_q_accepts_strings_and_ints():
    assert q("3/4") == Fraction(3, 4)
    assert q(2) == Fraction(2)
    assert q(" -1/2 ") == Fraction(-1, 2)


def test_q_rejects_floats_and_garbage():
    with pytest.raises(TypeError):
        q(0.5)
    with pytest.raises(InputError):
        q("half")
    with pytest.raises(InputError):
        q("1/0")


def test_fmt():
    assert fmt(Fraction(4, 2)) == "2"
    assert fmt(Fraction(-3, 6)) == "-1/2"


def test_bag_is_order_free():
    assert Bag(["b", "a", "a"]) == Bag(["a", "b", "a"])
    assert Bag(["a"]) + Bag(["b", "a"]) == Bag(["a", "a", "b"])
    assert Bag(["a", "b", "a"]).counts() == {"a": 2, "b": 1}


def test_seq_prefix():
    s = Seq(["0", "1"])
    assert Seq().is_prefix_of(s)
    assert Seq(["0"]).is_prefix_of(s)
    assert not Seq(["1"]).is_prefix_of(s)
    assert s.extend("0") == Seq(["0", "1", "0"])


@pytest.mark.parametrize("text,label", [
    ("a", "a"),
    ("(a,b)", ("a", "b")),
    ("[a,b,a]", Bag(["a", "a", "b"])),
    ("[]", Bag()),
    (".0.1", Seq(["0", "1"])),
    (".", Seq()),
    ("((0,a),[b])", (("0", "a"), Bag(["b"]))),
])
def test_parse_label(text, label):
    assert parse_label(text) == label


@pytest.mark.parametrize("bad", ["", "(a,b", "[a", "a b", "a,b"])
def test_parse_label_rejects(bad):
    with pytest.raises(InputError):
        parse_label(bad)


atoms = st.sampled_from(["a", "b", "c", "0", "1", "*"])
labels = st.recursive(
    atoms,
    lambda inner: st.lists(inner, min_size=2, max_size=2).map(tuple)
    | st.lists(inner, max_size=3).map(Bag),
    max_leaves=6,
)


@given(labels)
def test_label_round_trip(label):
    assert parse_label(label_str(label)) == label


@given(st.lists(st.sampled_from(["0", "1", "2"]), max_size=4))
def test_seq_round_trip(items):
    assert parse_label(label_str(Seq(items))) == Seq(items)


def test_splitmix_reference_stream():
    # published SplitMix64 outputs for seed 1234567
    r = SplitMix64(1234567)
    assert [r.next_u64() for _ in range(3)] == [
        6457827717110365317, 3203168211198807973, 9817491932198370423,
    ]


def test_splitmix_is_deterministic_and_forks():
    a, b = SplitMix64(7), SplitMix64(7)
    assert [a.below(10) for _ in range(20)] == [b.below(10) for _ in range(20)]
    c = SplitMix64(7).fork()
    assert [c.next_u64() for _ in range(3)] != [SplitMix64(7).next_u64() for _ in range(3)]


def test_grid_values():
    assert grid_values(2) == [Fraction(0), Fraction(1, 2), Fraction(1)]
    assert len(grid_values(4)) == len({Fraction(n, d) for d in range(1, 5) for n in range(d + 1)})
