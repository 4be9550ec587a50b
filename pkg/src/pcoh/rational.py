"""Rational parsing/formatting and structured web labels.

Web labels are hashable Python values:

* atoms are plain strings (``"a"``, ``"*"``, ``"0"``),
* pairs are 2-tuples of labels, written ``(a,b)``,
* multisets are :class:`Bag` instances, written ``[a,a,b]``,
* finite sequences are :class:`Seq` instances, written ``.a.b.c``
  (the empty sequence is ``.``).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class InputError(ValueError):
    """Malformed textual input (files, vectors, labels)."""


class WebMismatch(ValueError):
    """Two objects that must share a web do not."""


def q(x) -> Fraction:
    """Coerce ints, strings like ``"3/4"`` and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {x!r}") from exc
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a Fraction or a 'p/q' string")
    return Fraction(x)


def fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


class Bag(tuple):
    """A finite multiset of labels, stored as a sorted tuple."""

    __slots__ = ()

    def __new__(cls, items: Iterable = ()):
        return super().__new__(cls, sorted(items, key=label_key))

    def __repr__(self):
        return "Bag(" + label_str(self) + ")"

    def __add__(self, other):
        return Bag(tuple(self) + tuple(other))

    def counts(self) -> dict:
        out: dict = {}
        for a in self:
            out[a] = out.get(a, 0) + 1
        return out


class Seq(tuple):
    """A finite sequence label (element of a prefix tree)."""

    __slots__ = ()

    def __new__(cls, items: Iterable = ()):
        return super().__new__(cls, items)

    def __repr__(self):
        return "Seq(" + label_str(self) + ")"

    def extend(self, k) -> "Seq":
        return Seq(tuple(self) + (k,))

    def is_prefix_of(self, other: "Seq") -> bool:
        return len(self) <= len(other) and tuple(other[: len(self)]) == tuple(self)


def label_key(label):
    """Total order on labels: atoms < pairs < bags < seqs, then recursively."""
    if isinstance(label, Seq):
        return (3, len(label), tuple(label_key(x) for x in label))
    if isinstance(label, Bag):
        return (2, len(label), tuple(label_key(x) for x in label))
    if isinstance(label, tuple):
        return (1, tuple(label_key(x) for x in label))
    return (0, str(label))


def label_str(label) -> str:
    if isinstance(label, Seq):
        return "." + ".".join(label_str(x) for x in label) if label else "."
    if isinstance(label, Bag):
        return "[" + ",".join(label_str(x) for x in label) + "]"
    if isinstance(label, tuple):
        return "(" + ",".join(label_str(x) for x in label) + ")"
    return str(label)


def _split_top(s: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise InputError(f"unbalanced label: {s!r}")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise InputError(f"unbalanced label: {s!r}")
    parts.append("".join(cur))
    return parts


def parse_label(s: str):
    s = s.strip()
    if not s:
        raise InputError("empty label")
    if s.startswith("("):
        if not s.endswith(")"):
            raise InputError(f"bad pair label: {s!r}")
        return tuple(parse_label(p) for p in _split_top(s[1:-1]))
    if s.startswith("["):
        if not s.endswith("]"):
            raise InputError(f"bad multiset label: {s!r}")
        inner = s[1:-1]
        return Bag(parse_label(p) for p in _split_top(inner)) if inner else Bag()
    if s.startswith("."):
        return Seq(s[1:].split(".")) if len(s) > 1 else Seq()
    if any(ch in s for ch in "()[],. \t"):
        raise InputError(f"bad atom label: {s!r}")
    return s


def parse_labels(s: str) -> tuple:
    return tuple(parse_label(tok) for tok in s.split())
