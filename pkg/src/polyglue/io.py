"""Plain-text formats for rank vectors and excess functions.

A polymatroid file starts with ``ground <label> ...`` followed by one
``<subset> = <value>`` line per nonempty subset.  Values are integers or
``p/q``; ``#`` starts a comment.  Subsets list their labels in ground order,
joined by ``.`` when some label is longer than one character.
"""

from __future__ import annotations

from fractions import Fraction

from .core import GroundSet, GroundSetError, RankVector
from .construct import ExcessFunction


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def format_value(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_value(text: str, line: int | None = None) -> Fraction:
    text = text.strip()
    try:
        if "." in text or "e" in text.lower():
            raise ValueError
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}", line) from None


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _ground_line(no: int, line: str) -> GroundSet:
    parts = line.split()
    if parts[0] != "ground" or len(parts) < 2:
        raise ParseError("expected 'ground <label> ...'", no)
    try:
        return GroundSet(tuple(parts[1:]))
    except GroundSetError as exc:
        raise ParseError(str(exc), no) from None


def _assignments(ground: GroundSet, items, allow_empty: bool) -> dict[int, Fraction]:
    vals: dict[int, Fraction] = {}
    for no, line in items:
        if "=" not in line:
            raise ParseError("expected '<subset> = <value>'", no)
        key, val = line.split("=", 1)
        try:
            m = ground.parse(key)
        except GroundSetError as exc:
            raise ParseError(str(exc), no) from None
        if m == 0 and not allow_empty:
            raise ParseError("the empty set has no stored value", no)
        if m in vals:
            raise ParseError(f"subset {ground.format(m)} given twice", no)
        vals[m] = parse_value(val, no)
    return vals


def parse_polymatroid(text: str) -> RankVector:
    items = list(_lines(text))
    if not items:
        raise ParseError("empty file")
    ground = _ground_line(*items[0])
    vals = _assignments(ground, items[1:], allow_empty=False)
    missing = [ground.format(m) for m in ground.nonempty() if m not in vals]
    if missing:
        raise ParseError(f"missing subsets: {' '.join(missing)}")
    return RankVector(ground, tuple(vals[m] for m in ground.nonempty()))


def format_polymatroid(f: RankVector, header: str | None = None) -> str:
    out = []
    if header:
        out.extend("# " + h for h in header.splitlines())
    out.append(f"ground {f.ground}")
    for m, v in f.items():
        out.append(f"{f.ground.format(m)} = {format_value(v)}")
    return "\n".join(out) + "\n"


def read_polymatroid(path) -> RankVector:
    with open(path, encoding="utf-8") as fh:
        return parse_polymatroid(fh.read())


def write_polymatroid(path, f: RankVector, header: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_polymatroid(f, header))


def parse_excess(text: str, ground: GroundSet) -> ExcessFunction:
    """Excess file: ``<subset> = <value>`` for every subset of the base, ``{}`` for the empty one.

    A trailing ``* = <value>`` line supplies the value of all subsets not listed.
    """
    items = list(_lines(text))
    if items and items[0][1].split()[0] == "ground":
        given = _ground_line(*items[0])
        if given != ground:
            raise ParseError(f"excess ground {given} does not match {ground}", items[0][0])
        items = items[1:]
    default = None
    rest = []
    for no, line in items:
        if line.replace(" ", "").startswith("*="):
            default = parse_value(line.split("=", 1)[1], no)
        else:
            rest.append((no, line))
    vals = _assignments(ground, rest, allow_empty=True)
    out = []
    for m in range(ground.full + 1):
        if m in vals:
            out.append(vals[m])
        elif default is not None:
            out.append(default)
        else:
            raise ParseError(f"missing excess value for {ground.format(m)}")
    return ExcessFunction(ground, tuple(out))


def format_excess(e: ExcessFunction) -> str:
    lines = [f"ground {e.ground}"]
    for m in range(e.ground.full + 1):
        lines.append(f"{e.ground.format(m)} = {format_value(e[m])}")
    return "\n".join(lines) + "\n"
