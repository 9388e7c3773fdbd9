import random
from fractions import Fraction

import pytest

from polyglue.construct import ConstructionError, rho, tighten_all
from polyglue.core import GroundSet, RankVector, info_expr, ingleton
from polyglue.glue import ExtensionPair, has_adhesive, has_amalgam, verify
from polyglue.sampling import Component, random_pair, random_polymatroid
from polyglue.theorems import (
    amalgam3_roles,
    build_ex1,
    build_nonsticky1,
    build_nonsticky2,
    check_shape,
    family_5var,
    family_adhesive3,
    family_amalgam3,
    family_sticky21,
    ingleton_identities,
    is_sticky_sufficient,
    shannon_certificate,
    sticky2_characterization,
    tightened_pair,
    uniform46,
    verify_shannon,
)

ABC = GroundSet.of("abc")
AB = GroundSet.of("ab")


def two(a, b, ab):
    return RankVector.from_mapping(AB, {"a": a, "b": b, "ab": ab})


@pytest.fixture(scope="module")
def ex1_pair():
    fx, fy, _ = build_ex1()
    return ExtensionPair.of(fx, fy)


class TestFamilies:
    def test_sizes(self):
        # computed inventory of distinct instances after deduplication
        assert (len(family_amalgam3()), len(family_adhesive3()), len(family_sticky21())) == (72, 36, 5)

    def test_ex1_satisfies_amalgam_family(self, ex1_pair):
        assert family_amalgam3().holds(ex1_pair)

    def test_ex1_violates_adhesive_family(self, ex1_pair):
        viol = family_adhesive3().violations(ex1_pair)
        assert viol and min(v for _, v in viol) == -2

    def test_nonsticky1_top_line(self):
        f = uniform46()
        p = build_nonsticky1(f)
        vals = family_amalgam3().evaluate(amalgam3_roles(p))
        # t - u on the left against t = (a,b) on the right, with t = u = 2
        assert min(vals) == -2

    def test_zero_pair(self):
        p = ExtensionPair(ABC, RankVector.zero("abcx"), RankVector.zero("abcy"))
        assert set(family_amalgam3().evaluate(p)) == {0}

    def test_shape_check(self):
        p = ExtensionPair(AB, RankVector.zero("abx"), RankVector.zero("aby"))
        with pytest.raises(ValueError, match="shape"):
            check_shape(p, 3, 1, 1)
        with pytest.raises(ValueError):
            family_adhesive3().evaluate(p)

    def test_adhesive_feasible_pairs_satisfy_adhesive_family(self):
        rng = random.Random(4)
        for _ in range(40):
            p = random_pair(ABC, ["x"], ["y"], rng)
            if has_adhesive(p).feasible:
                assert family_adhesive3().holds(p)

    def test_text_export(self):
        text = family_sticky21().to_text()
        assert text.startswith("# sticky21") and len(text.splitlines()) == 6


class TestShannon:
    def test_amalgam_instances_are_shannon(self):
        for lf in family_amalgam3().instances:
            cert = shannon_certificate(lf)
            assert cert is not None and verify_shannon(lf, cert)

    def test_sticky21_instances_are_shannon(self):
        for lf in family_sticky21().instances:
            cert = shannon_certificate(lf)
            assert cert is not None and verify_shannon(lf, cert)

    def test_adhesive_instances_are_not(self):
        assert shannon_certificate(family_adhesive3().instances[0]) is None

    def test_tampered(self):
        lf = family_amalgam3().instances[0]
        cert = shannon_certificate(lf)
        assert not verify_shannon(lf, cert[1:])


class TestFiveVariable:
    def test_modular(self):
        f = RankVector.from_function("abcxy", lambda m: 3 * bin(m).count("1"))
        assert all(v >= 0 for _, v in family_5var(f))

    def test_adhesive_witnesses(self):
        rng = random.Random(6)
        n = 0
        for _ in range(30):
            p = random_pair(ABC, ["x"], ["y"], rng)
            c = has_adhesive(p)
            if c.feasible:
                n += 1
                assert all(v >= 0 for _, v in family_5var(c.witness))
        assert n

    def test_ex1(self, ex1_pair):
        assert min(v for _, v in family_5var(ex1_pair)) == -2

    def test_bad_assignment(self):
        f = RankVector.zero("abcxy")
        with pytest.raises(ValueError):
            family_5var(f, "aabcx")
        with pytest.raises(ValueError):
            family_5var(f, "abcxz")


class TestExamples:
    def test_ex1_values(self):
        fx, fy, fxy = build_ex1()
        assert (fx["x"], fx["ax"], fx["abcx"]) == (3, 5, 7)
        assert (fy["cy"], fy["ay"]) == (7, 5)
        assert (fxy["xy"], fxy["abcxy"]) == (5, 7)

    def test_ex1_tightened_pair(self, ex1_pair):
        tp = tightened_pair(ex1_pair)
        c = has_amalgam(tp)
        assert not c.feasible and verify(tp, c)

    def test_nonsticky1(self):
        p = build_nonsticky1(uniform46())
        assert info_expr(p.fX, "a", "b", "x") == 0
        assert info_expr(p.fY, "c", "y") == 0
        assert not has_amalgam(p).feasible

    def test_nonsticky1_hypotheses(self):
        with pytest.raises(ConstructionError):
            build_nonsticky1(rho(ABC, "abc"))  # (a,b|c) = 0

    def test_nonsticky1_order_hypotheses_are_needed(self):
        f = rho(ABC, "ab").scale(2) + rho(ABC, "abc") + rho(ABC, "a") + rho(ABC, "b") + rho(ABC, "c")
        assert info_expr(f, "a", "b") > info_expr(f, "a", "c")
        with pytest.raises(ConstructionError, match="<="):
            build_nonsticky1(f)
        # dropping them makes the uniform excess itself invalid
        with pytest.raises(ConstructionError, match="invalid excess"):
            build_nonsticky1(f, check_order=False)


class TestSticky:
    def test_sufficient_examples(self):
        u13 = RankVector.from_function(ABC, lambda m: 1)
        assert is_sticky_sufficient(u13)
        assert not is_sticky_sufficient(uniform46())

    def test_sufficient_gives_amalgams(self):
        rng = random.Random(9)
        bases = []
        while len(bases) < 5:
            f = random_polymatroid(ABC, rng)
            t = tighten_all(f)
            if is_sticky_sufficient(t):
                bases.append(t)
        for f in bases + [RankVector.from_function(ABC, lambda m: 1)]:
            for _ in range(20):
                p = random_pair(ABC, ["x"], ["y"], rng, comps=[Component(f, Fraction(1))])
                assert has_amalgam(p).feasible

    def test_characterization(self):
        assert sticky2_characterization(two(1, 1, 1))
        assert sticky2_characterization(two(1, 1, 2))
        assert not sticky2_characterization(two(2, 2, 3))

    def test_nonsticky2(self):
        f = two(2, 2, 3)
        p = build_nonsticky2(f, Fraction(1, 2))
        assert p.fX["a"] == f["a"] and p.fX["b"] == f["b"] and p.fX["ab"] == f["ab"]
        assert ingleton(p.fX, "a", "b", "x1", "x2") == Fraction(-1, 2)
        c = has_amalgam(p)
        assert not c.feasible and verify(p, c)
        assert min(family_sticky21().evaluate(p)) == Fraction(-1, 2)

    def test_nonsticky2_default_eps(self):
        p = build_nonsticky2(two(2, 2, 3))
        assert ingleton(p.fX, "a", "b", "x1", "x2") == Fraction(-1, 2)

    @pytest.mark.parametrize("f,eps", [(two(1, 1, 2), None), (two(2, 2, 3), 2), (two(2, 2, 3), 0)])
    def test_nonsticky2_hypotheses(self, f, eps):
        with pytest.raises(ConstructionError):
            build_nonsticky2(f, eps)

    def test_ingleton_fX_means_family_holds(self):
        rng = random.Random(10)
        for _ in range(30):
            p = random_pair(AB, ["x1", "x2"], ["y"], rng)
            g = p.fX.ground
            ings = [ingleton(p.fX, *q) for q in (("a", "b", "x1", "x2"), ("a", "x1", "b", "x2"), ("a", "x2", "b", "x1"))]
            if min(ings) >= 0:
                assert family_sticky21().holds(p)
            assert g.size == 4


class TestIdentities:
    def test_corrected_hold(self):
        for name, lhs, rhs in ingleton_identities(corrected=True):
            assert lhs == rhs, name

    def test_printed_third_fails(self):
        ids = ingleton_identities(corrected=False)
        assert [lhs == rhs for _, lhs, rhs in ids] == [True, True, False, True]
