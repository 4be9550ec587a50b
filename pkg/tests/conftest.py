from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

GRID = [Fraction(n, d) for d in (1, 2, 3, 4) for n in range(0, d + 1)]
grid = st.sampled_from(sorted(set(GRID)))
positive_grid = st.sampled_from(sorted({g for g in GRID if g > 0}))


def vectors(d, elements=grid):
    return st.lists(elements, min_size=d, max_size=d).map(tuple)


@st.composite
def generator_sets(draw, d=None, max_gens=3):
    """Grid generators in which every coordinate is positive somewhere."""
    if d is None:
        d = st.integers(1, 3)
    if not isinstance(d, int):
        d = draw(d)
    gens = draw(st.lists(vectors(d), min_size=1, max_size=max_gens))
    for a in range(d):
        if all(g[a] == 0 for g in gens):
            i = draw(st.integers(0, len(gens) - 1))
            g = list(gens[i])
            g[a] = draw(positive_grid)
            gens[i] = tuple(g)
    return gens


@st.composite
def spaces(draw, d=None, prefix=""):
    from pcoh.pcs import biorth_closure

    gens = draw(generator_sets(d))
    web = tuple(f"{prefix}{c}" for c in "abc"[: len(gens[0])])
    X = biorth_closure(web, gens)
    X.generators = gens
    return X


@st.composite
def morphisms(draw, X, Y):
    """A nonzero matrix rescaled so that its norm is exactly 1 (or 0 when empty)."""
    from pcoh.category import MorphMatrix, morph_norm

    entries = {(a, b): draw(grid) for a in X.web for b in Y.web}
    t = MorphMatrix(X, Y, entries)
    n = morph_norm(t)
    return t.scale(1 / n) if n else t
