"""SplitMix64 generator for reproducible instance generation.

Kept in-repo so that seeded suites produce the same instances on every
platform and Python version.
"""

from __future__ import annotations

from fractions import Fraction

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def between(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def rational(self, max_den: int = 4, lo: Fraction = Fraction(0), hi: Fraction = Fraction(1)) -> Fraction:
        """A rational in ``[lo, hi]`` with denominator at most ``max_den``."""
        pool = grid_values(max_den, lo, hi)
        return self.choice(pool)

    def shuffle(self, items: list) -> list:
        items = list(items)
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items

    def fork(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())


def grid_values(max_den: int, lo: Fraction = Fraction(0), hi: Fraction = Fraction(1)) -> list[Fraction]:
    """Sorted rationals in ``[lo, hi]`` whose reduced denominator is <= max_den."""
    vals = set()
    for d in range(1, max_den + 1):
        k0 = -(-lo.numerator * d // lo.denominator)
        k = k0
        while Fraction(k, d) <= hi:
            vals.add(Fraction(k, d))
            k += 1
    return sorted(vals)
