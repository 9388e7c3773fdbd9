from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from polyglue.construct import rho
from polyglue.core import GroundSet, RankVector, popcount

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

fractions = st.fractions(min_value=0, max_value=4, max_denominator=6)


@st.composite
def polymatroids(draw, ground="abc", max_terms=4):
    """Nonnegative combinations of rho_A and uniform matroids, so always polymatroids."""
    g = ground if isinstance(ground, GroundSet) else GroundSet.of(ground)
    f = RankVector.zero(g)
    for _ in range(draw(st.integers(0, max_terms))):
        A = draw(st.integers(1, g.full))
        w = draw(fractions)
        if draw(st.booleans()):
            f = f + rho(g, A).scale(w)
        else:
            k = draw(st.integers(1, popcount(A)))
            f = f + RankVector.from_function(g, lambda m, A=A, k=k: min(k, popcount(m & A))).scale(w)
    return f


@st.composite
def rank_vectors(draw, ground="abc"):
    """Arbitrary small rational vectors; about half of them are polymatroids."""
    g = ground if isinstance(ground, GroundSet) else GroundSet.of(ground)
    if draw(st.booleans()):
        f = draw(polymatroids(g))
        m = draw(st.integers(1, g.full))
        d = draw(st.fractions(min_value=-1, max_value=1, max_denominator=3))
        vals = list(f.values)
        vals[m - 1] += d
        return RankVector(g, tuple(vals))
    vals = tuple(draw(st.lists(st.integers(0, 4), min_size=g.dim, max_size=g.dim)))
    return RankVector(g, tuple(Fraction(v) for v in vals))


@pytest.fixture
def abc():
    return GroundSet.of("abc")


@pytest.fixture(scope="session")
def amalgam3_projection():
    """Rays, candidates and facets of the abcxy projection, computed once."""
    from polyglue.cone import gamma_facets
    from polyglue.polyproj import project
    from polyglue.reproduce import dropped_between
    from polyglue.theorems import AMALGAM3_GROUND

    g = AMALGAM3_GROUND
    return project(gamma_facets(g), dropped_between(g, g.bit("x"), g.bit("y")))
