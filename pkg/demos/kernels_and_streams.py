"""
Kernels and the stream equalizer
================================

On a finite discrete space a substochastic kernel is a row-substochastic
matrix, and composing kernels is multiplying the matching linear maps.
Streams over a finite alphabet carry a ball bounded by sums over maximal
antichains; fixing the shift map recovers leaf measures.
"""

from fractions import Fraction

from pcoh.category import compose
from pcoh.kernel import Kernel, kernel_compose, lin_of_kern, measure, push, space
from pcoh.limits import stream_equalizer_demo
from pcoh.rational import Seq, fmt


def show(v):
    return " ".join(fmt(Fraction(x)) for x in v)


coin = space(["heads", "tails"])
K = Kernel(coin, coin, {"heads": {"heads": Fraction(1, 2), "tails": Fraction(1, 2)},
                        "tails": {"tails": Fraction(2, 3)}})
mu = measure(coin, {"heads": 1})
print("one step:", show(push(K, mu).vec))
print("two steps:", show(push(kernel_compose(K, K), mu).vec))
print("matrices agree:", lin_of_kern(kernel_compose(K, K)) == compose(lin_of_kern(K), lin_of_kern(K)))

# the report always covers the uniform and zero measures; add one more
for n, d in ((2, 3), (3, 3)):
    rep = stream_equalizer_demo(n, d, measures=[{Seq("0" * d): Fraction(1, 3)}])
    print(f"alphabet {n}, depth {d}: web {rep['web_size']}, equalizer dimension {rep['dimension']}")
    for case in rep["cases"]:
        print(f"  mass {fmt(case['mass'])}  tree norm {fmt(case['norm'])}  antichain sup {fmt(case['antichain_sup'])}")
