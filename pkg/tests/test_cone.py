import pytest
from hypothesis import given

from polyglue.cone import facet_count, gamma_facets, restricted_rows
from polyglue.construct import rho
from polyglue.core import GroundSet, RankVector, popcount
from polyglue.theorems import STICKY21_GROUND, AMALGAM3_GROUND, table1_check, table3_check
from polyglue.reproduce import dropped_between

from conftest import polymatroids


class TestGamma:
    def test_two(self):
        fm = gamma_facets(GroundSet.of("ab"))
        assert set(fm.tags) == {"(a,b)", "(a|b)", "(b|a)"}

    @pytest.mark.parametrize("n,rows", [(3, 9), (5, 85)])
    def test_counts(self, n, rows):
        assert len(gamma_facets(GroundSet(tuple("abcdef"[:n])))) == rows

    def test_formula(self):
        for n in range(2, 7):
            g = GroundSet(tuple("abcdef"[:n]))
            assert len(gamma_facets(g)) == facet_count(n)

    def test_row_support(self):
        fm = gamma_facets(GroundSet.of("abcde"))
        assert {sum(1 for c in r.coeffs if c) for r in fm.rows} == {2, 3, 4}

    def test_too_small(self):
        with pytest.raises(ValueError):
            gamma_facets(GroundSet.of("a"))

    @given(polymatroids("abcd"))
    def test_valid(self, f):
        assert all(r.evaluate(f) >= 0 for r in gamma_facets(f.ground).rows)

    def test_each_row_tight_somewhere(self):
        g = GroundSet.of("abcd")
        extremes = [rho(g, A) for A in g.nonempty()]
        extremes += [RankVector.from_function(g, lambda m, k=k: min(k, popcount(m))) for k in range(1, 4)]
        for r in gamma_facets(g).rows:
            assert any(r.evaluate(f) == 0 for f in extremes)

    def test_text_export(self):
        text = gamma_facets(GroundSet.of("ab")).to_text()
        assert "(a,b): 1 1 -1" in text


class TestRestricted:
    def test_amalgam3_rows_with_full_matrix(self):
        g = AMALGAM3_GROUND
        rr = restricted_rows(gamma_facets(g), dropped_between(g, g.bit("x"), g.bit("y")))
        assert len(rr.columns) == 8
        # the complete facet matrix gives 30; see the notes on the published count
        assert len(rr.rows) == 30
        assert len(rr.zero_rows) + sum(len(b) for b in rr.backrefs) == 85

    def test_sticky21_rows(self):
        g = STICKY21_GROUND
        rr = restricted_rows(gamma_facets(g), dropped_between(g, g.mask(["x1", "x2"]), g.bit("y")))
        assert len(rr.columns) == 12
        assert len(rr.rows) == 48

    def test_two_line_rows(self):
        g = AMALGAM3_GROUND
        rr = restricted_rows(gamma_facets(g), dropped_between(g, g.bit("x"), g.bit("y")))
        i = rr.find("(x|abcy)")
        assert set(rr.tags(i)) == {"(x|abcy)", "(y|abcx)"}

    def test_all_dropped(self):
        g = GroundSet.of("abc")
        fm = gamma_facets(g)
        rr = restricted_rows(fm, list(g.nonempty()))
        assert len(rr.rows) == len(fm) and not rr.zero_rows

    def test_tables(self):
        g = AMALGAM3_GROUND
        assert table1_check(restricted_rows(gamma_facets(g), dropped_between(g, g.bit("x"), g.bit("y")))) == []
        h = STICKY21_GROUND
        rr = restricted_rows(gamma_facets(h), dropped_between(h, h.mask(["x1", "x2"]), h.bit("y")))
        assert table3_check(rr) == []

    def test_nothing_dropped(self):
        with pytest.raises(ValueError):
            restricted_rows(gamma_facets(GroundSet.of("ab")), [])
