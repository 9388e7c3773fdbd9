"""Command line: ``polyglue check|tighten|extend|amalgam|project|reproduce``.

Every command prints a report of ``key: value`` lines.  Exit status is 0 on
success or a feasible answer, 1 on an infeasible answer or a failed check,
and 2 on bad input.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from .cone import gamma_facets
from .construct import (
    ConstructionError,
    ExcessFunction,
    excess_copy,
    excess_pointed,
    excess_uniform,
    excess_conditions,
    extend_by_excess_unchecked,
    tighten_set,
)
from .core import GroundSet, GroundSetError, classify, is_polymatroid
from .glue import ExtensionPair, PairError, has_adhesive, has_amalgam, verify
from .io import ParseError, format_polymatroid, parse_excess, parse_value, read_polymatroid
from .polyproj import functionals_to_text, project
from .reproduce import TARGETS, without_tags

EXIT_OK, EXIT_NO, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Report:
    def __init__(self, argv):
        self.lines: list[tuple[str, str]] = [("command", " ".join(argv))]
        self.t0 = time.perf_counter()
        self.body = ""

    def __setitem__(self, key, value):
        self.lines.append((key, str(value)))

    def emit(self, stream=None):
        stream = stream or sys.stdout
        for k, v in self.lines:
            stream.write(f"{k}: {v}\n")
        stream.write(f"wall_time: {time.perf_counter() - self.t0:.3f}s\n")
        if self.body:
            stream.write("\n" + self.body)


def _deliver(rep: Report, path, text):
    """Write ``text`` to ``path``, or attach it to the report when no path is given."""
    rep["output"] = path or "-"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        rep.body = text


def _flag(v: bool) -> str:
    return "true" if v else "false"


def cmd_check(args, rep: Report) -> int:
    f = read_polymatroid(args.file)
    ok, bad = is_polymatroid(f)
    rep["ground"] = f.ground
    rep["polymatroid"] = _flag(ok)
    if ok:
        c = classify(f)
        rep["integer"] = _flag(c.integer)
        rep["matroid"] = _flag(c.matroid)
        rep["modular"] = _flag(c.modular)
        rep["tight"] = _flag(c.tight)
        rep["tight_at"] = " ".join(lab for lab, v in c.tight_at.items() if v) or "-"
    else:
        rep["violated"] = len(bad)
        for tag, row in bad:
            rep[f"violated {tag}"] = row.evaluate(f)
    return EXIT_OK if ok else EXIT_NO


def cmd_tighten(args, rep: Report) -> int:
    f = read_polymatroid(args.file)
    m = f.ground.parse(args.elements.replace(",", "."))
    g = tighten_set(f, m)
    rep["tightened"] = f.ground.format(m)
    _deliver(rep, args.out, format_polymatroid(g))
    return EXIT_OK


def parse_excess_spec(spec: str, f) -> ExcessFunction:
    """``uniform:U,T`` | ``pointed:C,U,T`` | ``copy:B`` | ``zero`` | path of an excess file."""
    kind, _, rest = spec.partition(":")
    args = [a.strip() for a in rest.split(",")] if rest else []
    try:
        if kind == "zero" and not args:
            return ExcessFunction(f.ground, (Fraction(0),) * (f.ground.full + 1))
        if kind == "uniform" and len(args) == 2:
            return excess_uniform(f, parse_value(args[0]), parse_value(args[1]))
        if kind == "pointed" and len(args) == 3:
            return excess_pointed(f, args[0], parse_value(args[1]), parse_value(args[2]))
        if kind == "copy" and len(args) == 1:
            return excess_copy(f, args[0])
    except ParseError as exc:
        raise UsageError(f"bad excess spec {spec!r}: {exc}") from None
    try:
        with open(spec, encoding="utf-8") as fh:
            return parse_excess(fh.read(), f.ground)
    except FileNotFoundError:
        raise UsageError(
            f"excess spec {spec!r} is neither uniform:U,T, pointed:C,U,T, copy:B, zero nor an existing file"
        ) from None


def cmd_extend(args, rep: Report) -> int:
    f = read_polymatroid(args.file)
    e = parse_excess_spec(args.excess, f)
    bad = excess_conditions(f, e)
    rep["new_element"] = args.label
    rep["valid"] = _flag(not bad)
    if bad:
        for b in bad:
            rep["violated"] = b
        return EXIT_NO
    g = extend_by_excess_unchecked(f, args.label, e)
    _deliver(rep, args.out, format_polymatroid(g))
    return EXIT_OK


def cmd_amalgam(args, rep: Report) -> int:
    fX, fY = read_polymatroid(args.file_x), read_polymatroid(args.file_y)
    p = ExtensionPair.of(fX, fY)
    cert = has_adhesive(p) if args.adhesive else has_amalgam(p)
    v = verify(p, cert)
    rep["question"] = "adhesive" if args.adhesive else "amalgam"
    rep["base"] = p.base
    rep["ground"] = p.ground
    rep["status"] = "FEASIBLE" if cert.feasible else "INFEASIBLE"
    rep["certificate_verified"] = _flag(v.ok)
    _deliver(rep, args.out, cert.to_text())
    if not v.ok:  # pragma: no cover - would be an engine bug
        rep["error"] = v.reason
        return EXIT_NO
    return EXIT_OK if cert.feasible else EXIT_NO


def cmd_project(args, rep: Report) -> int:
    g = GroundSet.of(args.ground)
    sides = [g.parse(s.replace(",", ".")) for s in args.side] if args.side else [g.full]
    kept = [m for m in g.nonempty() if any(m & ~s == 0 for s in sides)]
    dropped = [m for m in g.nonempty() if m not in set(kept)]
    fm = gamma_facets(g)
    if args.omit:
        unknown = [t for t in args.omit if t not in fm.tags]
        if unknown:
            raise UsageError(f"unknown facet tags: {' '.join(unknown)}")
        fm = without_tags(fm, args.omit)
    rep["ground"] = g
    rep["kept"] = len(kept)
    rep["dropped"] = len(dropped)
    if args.omit:
        rep["omitted"] = " ".join(args.omit)
    if not dropped:
        rep["rows"] = 0
        rep["rays"] = 0
        rep["facets"] = len(fm)
        if args.out:
            _deliver(rep, args.out, functionals_to_text(fm.rows))
        return EXIT_OK
    proj = project(fm, dropped, threads=args.threads, filter_facets=not args.no_filter)
    rep["rows"] = len(proj.restricted.rows)
    rep["rays"] = len(proj.rays)
    rep["candidates"] = len(proj.candidates)
    if not args.no_filter:
        rep["facets"] = len(proj.report.facets)
        funcs = [c.functional for c in proj.report.facets]
    else:
        funcs = [c.functional for c in proj.candidates]
    if args.out:
        _deliver(rep, args.out, functionals_to_text(funcs))
    return EXIT_OK


def cmd_reproduce(args, rep: Report) -> int:
    fn = TARGETS[args.target]
    kw = {"threads": args.threads} if args.target in ("amalgam3", "sticky21") else {}
    out = fn(**kw)
    rep["target"] = args.target
    for c in out.checks:
        rep[c.name] = ("ok" if c.ok else "MISMATCH") + (f" ({c.detail})" if c.detail else "")
    for k, v in out.info.items():
        rep[f"info {k}"] = v
    rep["status"] = "ok" if out.ok else "MISMATCH"
    return EXIT_OK if out.ok else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polyglue", description="Exact polymatroid amalgams and cone projections.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="test the polymatroid axioms")
    p.add_argument("file")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("tighten", help="tighten at the given elements")
    p.add_argument("file")
    p.add_argument("elements", help="subset, e.g. ab or x1,x2")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_tighten)

    p = sub.add_parser("extend", help="one-point extension by an excess function")
    p.add_argument("file")
    p.add_argument("label", help="name of the new element")
    p.add_argument("excess", help="uniform:U,T | pointed:C,U,T | copy:B | zero | excess file")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_extend)

    p = sub.add_parser("amalgam", help="decide amalgam (or adhesive extension) existence")
    p.add_argument("file_x")
    p.add_argument("file_y")
    p.add_argument("--adhesive", action="store_true")
    p.add_argument("--out", help="certificate file")
    p.set_defaults(fn=cmd_amalgam)

    p = sub.add_parser("project", help="facets of a coordinate projection of the polymatroid cone")
    p.add_argument("ground")
    p.add_argument("--side", action="append", help="keep all subsets of this set (repeatable)")
    p.add_argument("--omit", action="append", help="leave this facet row out (repeatable)")
    p.add_argument("--no-filter", action="store_true", help="stop after the candidate list")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", help="facet file")
    p.set_defaults(fn=cmd_project)

    p = sub.add_parser("reproduce", help="run a reproduction target")
    p.add_argument("target", choices=sorted(TARGETS))
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(fn=cmd_reproduce)
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    rep = Report(["polyglue"] + argv)
    try:
        code = args.fn(args, rep)
    except (ParseError, GroundSetError, PairError, UsageError, ConstructionError, OSError, ValueError) as exc:
        rep["status"] = "ERROR"
        rep["error"] = str(exc).replace("\n", " | ")
        rep.emit(sys.stderr)
        return EXIT_USAGE
    rep.emit()
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
