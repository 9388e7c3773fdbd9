from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from polyglue.construct import excess_pointed
from polyglue.core import GroundSet, RankVector
from polyglue.io import (
    ParseError,
    format_excess,
    format_polymatroid,
    parse_excess,
    parse_polymatroid,
    parse_value,
    read_polymatroid,
    write_polymatroid,
)
from polyglue.theorems import build_ex1, uniform46


@given(st.lists(st.fractions(-10, 10, max_denominator=1000), min_size=7, max_size=7))
def test_round_trip(vals):
    f = RankVector(GroundSet.of("abc"), tuple(vals))
    assert parse_polymatroid(format_polymatroid(f)) == f


def test_multichar_labels():
    f = RankVector.from_function(GroundSet.of("a x1 x2"), lambda m: bin(m).count("1"))
    text = format_polymatroid(f)
    assert "a.x1.x2 = 3" in text
    assert parse_polymatroid(text) == f


def test_layout():
    text = format_polymatroid(uniform46(), header="base")
    assert text.splitlines()[:3] == ["# base", "ground a b c", "a = 4"]


def test_comments_and_blank_lines():
    text = "# c\nground a b\n\na = 1  # one\nb = 1/2\nab = 3/2\n"
    f = parse_polymatroid(text)
    assert f["b"] == Fraction(1, 2)


@pytest.mark.parametrize(
    "text,line,msg",
    [
        ("ground a b\na = 1\nb = 1\n", None, "missing subsets: ab"),
        ("ground a b\na = 1\na = 2\nb = 1\nab = 1\n", 3, "twice"),
        ("ground a b\na = 1.5\nb = 1\nab = 1\n", 2, "rational"),
        ("ground a b\na = x\n", 2, "rational"),
        ("ground a b\nq = 1\n", 2, "q"),
        ("a = 1\n", 1, "ground"),
        ("ground a b\na 1\n", 2, "subset"),
        ("ground a b\n{} = 0\n", 2, "empty"),
        ("", None, "empty"),
    ],
)
def test_errors(text, line, msg):
    with pytest.raises(ParseError, match=msg) as err:
        parse_polymatroid(text)
    assert err.value.line == line


def test_parse_value():
    assert parse_value(" -3/6 ") == Fraction(-1, 2)
    with pytest.raises(ParseError):
        parse_value("1/0")


def test_files(tmp_path):
    _, _, fxy = build_ex1()
    path = tmp_path / "f.txt"
    write_polymatroid(path, fxy)
    assert read_polymatroid(path) == fxy


class TestExcess:
    base = GroundSet.of("abc")

    def test_round_trip(self):
        e = excess_pointed(uniform46(), "c", 1, 2)
        assert parse_excess(format_excess(e), self.base) == e

    def test_default(self):
        e = parse_excess("{} = 3\nc = 3\n* = 1\n", self.base)
        assert e == excess_pointed(uniform46(), "c", 1, 2)

    def test_missing(self):
        with pytest.raises(ParseError, match="missing"):
            parse_excess("{} = 3\n", self.base)

    def test_wrong_ground(self):
        with pytest.raises(ParseError, match="does not match"):
            parse_excess("ground a b\n* = 0\n", self.base)
