from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from polyglue.construct import (
    ConstructionError,
    ExcessFunction,
    NaturalCoords,
    SubspaceArrangement,
    excess_conditions,
    excess_copy,
    excess_of,
    excess_pointed,
    excess_uniform,
    extend_by_excess,
    invert,
    modular_decomposition,
    natural_coords,
    rank_from_natural,
    rank_from_subspaces,
    rho,
    subtract_rho,
    subtract_rho_conditions,
    subtract_rho_unchecked,
    tighten,
    tighten_all,
    tighten_set,
)
from polyglue.core import GroundSet, RankVector, classify, cond, info_expr, is_polymatroid, restrict
from polyglue.theorems import build_ex1, ex1_arrangements, uniform46

from conftest import polymatroids


class TestRho:
    def test_values(self, abc):
        r = rho(abc, "a")
        assert [r[s] for s in ("a", "b", "c", "ab", "bc", "abc")] == [1, 0, 0, 1, 0, 1]

    def test_matroid(self, abc):
        assert classify(rho(abc, "bc")).matroid

    def test_full(self, abc):
        assert set(rho(abc, abc.full).values) == {1}

    def test_empty(self, abc):
        with pytest.raises(ConstructionError):
            rho(abc, 0)


class TestSubtract:
    def test_singleton_condition(self):
        f = uniform46()
        # only (a|bc) is checked for a singleton, and it is 0
        assert subtract_rho_conditions(f, "a", 1) == ["lambda=1 > f(a|bc)=0"]
        assert subtract_rho(f, "a", 0) == f

    def test_pair(self, abc):
        f = uniform46()
        g = subtract_rho(f, "ab", 2)
        assert is_polymatroid(g)[0]
        assert g["a"] == 2 and g["c"] == 4

    def test_refuses(self):
        with pytest.raises(ConstructionError, match="f\\(a,b\\|c\\)"):
            subtract_rho(uniform46(), "ab", 3)

    @given(polymatroids("abcd"), st.integers(1, 15), st.fractions(0, 2, max_denominator=4))
    def test_sufficient(self, f, A, lam):
        if not subtract_rho_conditions(f, A, lam):
            assert is_polymatroid(subtract_rho_unchecked(f, A, lam))[0]


class TestTighten:
    def test_ex1_fy(self):
        _, fy, _ = build_ex1()
        y = fy.ground.bit("y")
        assert cond(fy, y, fy.ground.full ^ y) == 1
        assert tighten(fy, "y") == fy - rho(fy.ground, "y")

    @given(polymatroids("abcd"))
    def test_idempotent(self, f):
        t = tighten(f, "a")
        assert tighten(t, "a") == t

    @given(polymatroids("abcd"))
    def test_commutes(self, f):
        assert tighten(tighten(f, "a"), "c") == tighten(tighten(f, "c"), "a")

    @given(polymatroids("abcd"))
    def test_tight_all(self, f):
        t = tighten_all(f)
        assert classify(t).tight
        assert is_polymatroid(t)[0]

    def test_set_accepts_strings(self):
        f = uniform46() + rho(GroundSet.of("abc"), "a")
        assert tighten_set(f, "a") == uniform46()


class TestDecomposition:
    def test_modular_input(self, abc):
        f = RankVector.from_function(abc, lambda m: 2 * bin(m).count("1"))
        t, m = modular_decomposition(f)
        assert t == RankVector.zero(abc) and m == f

    def test_tight_input(self):
        t, m = modular_decomposition(uniform46())
        assert t == uniform46() and not any(m.values)

    @given(polymatroids("abcd"))
    def test_recompose(self, f):
        t, m = modular_decomposition(f)
        assert t + m == f
        assert classify(t).tight and classify(m).modular


class TestExcess:
    def test_ex1_excess_functions(self):
        f = uniform46()
        ex = excess_uniform(f, 1, 2)
        assert ex.values[0] == 3 and set(ex.values[1:]) == {1}
        ey = excess_pointed(f, "c", 1, 2)
        assert [ey.values[m] for m in range(8)] == [3, 1, 1, 1, 3, 1, 1, 1]

    def test_uniform_lowers_pair_info(self):
        f = uniform46()
        fx = extend_by_excess(f, "x", excess_uniform(f, 0, 2))
        assert info_expr(fx, "a", "b", "x") == info_expr(f, "a", "b") - 2

    def test_pointed_valid(self):
        f = uniform46()
        assert not excess_conditions(f, excess_pointed(f, "c", 0, 2))

    def test_constant_always_valid(self):
        f = uniform46()
        assert not excess_conditions(f, excess_uniform(f, 5, 0))

    def test_zero_excess(self):
        f = uniform46()
        e = ExcessFunction(f.ground, (Fraction(0),) * 8)
        fx = extend_by_excess(f, "x", e)
        assert restrict(fx, "abc") == f
        assert fx["x"] == 0 and fx["abx"] == f["ab"]

    def test_negative_parameters(self):
        with pytest.raises(ConstructionError):
            excess_uniform(uniform46(), -1, 0)

    def test_invalid_reports_conditions(self):
        f = uniform46()
        with pytest.raises(ConstructionError, match="3: e\\(a,b"):
            extend_by_excess(f, "x", excess_uniform(f, 0, 3))

    def test_excess_of_round_trip(self):
        f = uniform46()
        e = excess_pointed(f, "c", 1, 2)
        assert excess_of(extend_by_excess(f, "y", e), "y") == e

    @given(polymatroids("abc"), st.integers(0, 7))
    def test_copy_valid(self, f, B):
        assert not excess_conditions(f, excess_copy(f, B))

    def test_mapping_constructor(self):
        g = GroundSet.of("ab")
        e = ExcessFunction.from_mapping(g, {"{}": 2, "a": 1, "b": 1, "ab": 0})
        assert e.values == (2, 1, 1, 0)


class TestNatural:
    def test_printed_rows(self):
        eye = [[int(i == j) for j in range(15)] for i in range(15)]
        cols = [rank_from_natural(row) for row in eye]
        got = {s: tuple(c[s] for c in cols) for s in ("a", "b", "ab")}
        assert got["a"] == (2, 1, 1, 1, 0, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0)
        assert got["b"] == (2, 1, 1, 0, 1, 0, 1, 0, 1, 1, 1, 0, 1, 0, 0)
        assert got["ab"] == (3, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 1, 1, 0, 0)

    def test_zero(self):
        assert rank_from_natural([0] * 15) == RankVector.zero(GroundSet.of("a b x1 x2"))

    @given(st.lists(st.fractions(-3, 3, max_denominator=5), min_size=15, max_size=15))
    def test_round_trip(self, v):
        assert natural_coords(rank_from_natural(v)).values == tuple(v)

    @given(st.lists(st.fractions(0, 3, max_denominator=5), min_size=15, max_size=15))
    def test_orthant_gives_polymatroids(self, v):
        assert is_polymatroid(rank_from_natural(v))[0]

    def test_length(self):
        with pytest.raises(ValueError):
            NaturalCoords((1, 2))

    def test_invert_singular(self):
        with pytest.raises(ValueError):
            invert([[1, 2], [2, 4]])


class TestSubspaces:
    def test_ex1(self):
        fx, fy, _ = build_ex1()
        sx, sy = ex1_arrangements()
        assert rank_from_subspaces(sx, fx.ground) == fx
        assert rank_from_subspaces(sy, fy.ground) == fy

    def test_parallel(self, abc):
        s = SubspaceArrangement(3, {lab: ((1, 2, 0),) for lab in "abc"})
        assert set(rank_from_subspaces(s, abc).values) == {1}

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            SubspaceArrangement(2, {"a": ((1, 2, 3),)})

    @given(st.lists(st.lists(st.integers(-1, 1), min_size=3, max_size=3), min_size=0, max_size=6))
    def test_always_polymatroid(self, vecs):
        gens = {lab: tuple(tuple(v) for v in vecs[i::3]) for i, lab in enumerate("abc")}
        assert is_polymatroid(rank_from_subspaces(SubspaceArrangement(3, gens), GroundSet.of("abc")))[0]
