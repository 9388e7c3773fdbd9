"""Amalgams and adhesive extensions of two extensions of a common polymatroid.

The merged pair fixes every coordinate inside ``MX`` or ``MY``; the others
(subsets meeting both ``X`` and ``Y``) are unknowns.  An amalgam exists iff
the elemental inequalities on ``MXY`` admit values for the unknowns, and an
adhesive extension iff they do together with ``f(X,Y|M) = 0``.  Both
questions are one exact LP whose answer always comes with a certificate
that :func:`verify` can recheck without the solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .cone import gamma_facets
from .core import (
    GroundSet,
    GroundSetError,
    LinFunctional,
    RankVector,
    is_polymatroid,
    mi_functional,
    restrict,
)
from .io import ParseError, format_polymatroid, format_value, parse_polymatroid, parse_value
from .lp import solve_inequalities


class PairError(ValueError):
    """The two polymatroids do not form an extension pair."""

    def __init__(self, message: str, diff: tuple = ()):
        self.diff = list(diff)
        if diff:
            message += "\n" + "\n".join(f"  {s}: {a} != {b}" for s, a, b in diff)
        super().__init__(message)


@dataclass(frozen=True)
class ExtensionPair:
    """``fX`` on ``M u X`` and ``fY`` on ``M u Y`` agreeing on ``M``.

    The merged ground set lists ``M`` in ``fX`` order, then ``X``, then ``Y``.
    """

    base: GroundSet
    fX: RankVector
    fY: RankVector

    def __post_init__(self):
        mb = set(self.base.labels)
        gx, gy = self.fX.ground, self.fY.ground
        if not mb <= set(gx.labels) or not mb <= set(gy.labels):
            raise PairError(f"base {self.base} is not contained in both {gx} and {gy}")
        if set(self.x_labels) & set(self.y_labels):
            raise PairError(f"extension sets overlap: {sorted(set(self.x_labels) & set(self.y_labels))}")
        fm_x = restrict(self.fX, gx.mask(self.base.labels)).reorder(self.base)
        fm_y = restrict(self.fY, gy.mask(self.base.labels)).reorder(self.base)
        diff = tuple(
            (self.base.format(m), a, b) for (m, a), (_, b) in zip(fm_x.items(), fm_y.items()) if a != b
        )
        if diff:
            raise PairError("restrictions to the base differ", diff)

    @classmethod
    def of(cls, fX: RankVector, fY: RankVector) -> ExtensionPair:
        """Pair with the base taken as the common labels, in ``fX`` order."""
        common = tuple(lab for lab in fX.ground.labels if lab in fY.ground.labels)
        if not common:
            raise PairError("the two ground sets share no element")
        return cls(GroundSet(common), fX, fY)

    @property
    def x_labels(self) -> tuple[str, ...]:
        return tuple(lab for lab in self.fX.ground.labels if lab not in self.base.labels)

    @property
    def y_labels(self) -> tuple[str, ...]:
        return tuple(lab for lab in self.fY.ground.labels if lab not in self.base.labels)

    @property
    def ground(self) -> GroundSet:
        return GroundSet(self.base.labels + self.x_labels + self.y_labels)

    def masks(self) -> tuple[int, int, int]:
        """``(M, X, Y)`` as masks over the merged ground set."""
        g = self.ground
        return g.mask(self.base.labels), g.mask(self.x_labels), g.mask(self.y_labels)

    def scale(self, lam) -> ExtensionPair:
        return ExtensionPair(self.base, self.fX.scale(lam), self.fY.scale(lam))


@dataclass(frozen=True)
class MergedVector:
    ground: GroundSet
    known: Mapping[int, Fraction]
    unknown: tuple[int, ...]

    def value(self, mask: int) -> Fraction:
        return Fraction(0) if mask == 0 else self.known[mask]


def merge(p: ExtensionPair) -> MergedVector:
    g = p.ground
    M, X, Y = p.masks()
    known: dict[int, Fraction] = {}
    unknown = []
    for m in g.nonempty():
        if m & X and m & Y:
            unknown.append(m)
        elif m & Y:
            known[m] = p.fY[g.embed(p.fY.ground, m)]
        else:
            known[m] = p.fX[g.embed(p.fX.ground, m)]
    return MergedVector(g, known, tuple(unknown))


MODULAR_SUFFIX = "=0"


def modular_tag(p: ExtensionPair) -> str:
    g = p.ground
    M, X, Y = p.masks()
    return f"({g.format(X)},{g.format(Y)}|{g.format(M) if M else ''})".replace("|)", ")") + MODULAR_SUFFIX


def modular_functional(p: ExtensionPair) -> LinFunctional:
    M, X, Y = p.masks()
    return mi_functional(p.ground, X, Y, M)


@dataclass(frozen=True)
class Certificate:
    """Answer of :func:`has_amalgam` / :func:`has_adhesive`.

    Feasible: ``witness`` is a polymatroid on the merged ground set extending
    both inputs.  Infeasible: ``multipliers`` maps elemental-inequality tags
    to nonnegative coefficients (and, for the adhesive question, the
    modular-hyperplane tag to a coefficient of either sign); the combination
    has no unknown coordinate and is negative on the merged pair.
    """

    feasible: bool
    adhesive: bool
    ground: GroundSet
    witness: RankVector | None = None
    multipliers: tuple[tuple[str, Fraction], ...] = ()

    def combination(self, p: ExtensionPair) -> LinFunctional:
        """The inequality ``sum c_i row_i >= 0`` certified valid on every amalgam."""
        fm = gamma_facets(self.ground)
        acc = [Fraction(0)] * self.ground.dim
        mod = modular_functional(p) if self.adhesive else None
        for tag, c in self.multipliers:
            row = mod if tag.endswith(MODULAR_SUFFIX) else fm.row(tag)
            for m, v in row.terms():
                acc[m - 1] += c * v
        return LinFunctional(self.ground, tuple(acc))

    def to_text(self) -> str:
        head = [f"status: {'feasible' if self.feasible else 'infeasible'}", f"adhesive: {str(self.adhesive).lower()}"]
        if self.feasible:
            return "\n".join(head) + "\n" + format_polymatroid(self.witness)
        body = [f"ground {self.ground}"] + [f"{t}: {format_value(c)}" for t, c in self.multipliers]
        return "\n".join(head + body) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Certificate:
        lines = [ln for ln in text.splitlines()]
        fields = {}
        rest_start = 0
        for i, ln in enumerate(lines):
            s = ln.split("#", 1)[0].strip()
            if not s:
                continue
            key = s.split(":", 1)[0].strip()
            if key in ("status", "adhesive"):
                fields[key] = s.split(":", 1)[1].strip()
                rest_start = i + 1
            else:
                break
        if fields.get("status") not in ("feasible", "infeasible") or fields.get("adhesive") not in ("true", "false"):
            raise ParseError("certificate needs 'status:' and 'adhesive:' header lines")
        adhesive = fields["adhesive"] == "true"
        body = "\n".join(lines[rest_start:])
        if fields["status"] == "feasible":
            w = parse_polymatroid(body)
            return cls(True, adhesive, w.ground, witness=w)
        ground, mult = None, []
        for no, ln in enumerate(lines[rest_start:], rest_start + 1):
            s = ln.split("#", 1)[0].strip()
            if not s:
                continue
            if ground is None:
                parts = s.split()
                if parts[0] != "ground":
                    raise ParseError("expected 'ground <label> ...'", no)
                ground = GroundSet(tuple(parts[1:]))
                continue
            tag, _, val = s.rpartition(":")
            if not tag:
                raise ParseError("expected '<tag>: <coefficient>'", no)
            mult.append((tag.strip(), parse_value(val, no)))
        if ground is None:
            raise ParseError("missing ground line")
        return cls(False, adhesive, ground, multipliers=tuple(mult))


def _check_inputs(p: ExtensionPair):
    for name, f in (("fX", p.fX), ("fY", p.fY)):
        ok, bad = is_polymatroid(f)
        if not ok:
            raise PairError(f"{name} is not a polymatroid; violated: {', '.join(t for t, _ in bad[:8])}")


def _solve(p: ExtensionPair, adhesive: bool) -> Certificate:
    _check_inputs(p)
    mv = merge(p)
    g = mv.ground
    M, X, Y = p.masks()
    fm = gamma_facets(g) if g.size >= 2 else None
    use_mod = adhesive and X and Y
    if not mv.unknown:
        values = tuple(mv.known[m] for m in g.nonempty())
        return Certificate(True, adhesive, g, witness=RankVector(g, values))
    col = {m: k for k, m in enumerate(mv.unknown)}
    rows, rhs, tags = [], [], []
    entries = list(zip(fm.tags, fm.rows))
    if use_mod:
        entries.append((modular_tag(p), -modular_functional(p)))
    for tag, row in entries:
        a, k = {}, Fraction(0)
        for m, c in row.terms():
            if m in col:
                a[col[m]] = c
            else:
                k += c * mv.known[m]
        if not a:
            continue  # lies inside MX or MY: holds because the inputs are polymatroids
        rows.append(a)
        rhs.append(-k)
        tags.append(tag)
    res = solve_inequalities(rows, rhs, len(mv.unknown))
    if res.feasible:
        full = dict(mv.known)
        for m, k in col.items():
            full[m] = res.point[k]
        return Certificate(True, adhesive, g, witness=RankVector(g, tuple(full[m] for m in g.nonempty())))
    mult = []
    for tag, z in zip(tags, res.multipliers):
        if z:
            mult.append((tag, -z if tag.endswith(MODULAR_SUFFIX) else z))
    return Certificate(False, adhesive, g, multipliers=tuple(mult))


def has_amalgam(p: ExtensionPair) -> Certificate:
    return _solve(p, adhesive=False)


def has_adhesive(p: ExtensionPair) -> Certificate:
    return _solve(p, adhesive=True)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def verify(p: ExtensionPair, c: Certificate, adhesive: bool | None = None) -> Verdict:
    """Recheck a certificate from scratch (no LP involved)."""
    adhesive = c.adhesive if adhesive is None else adhesive
    if adhesive != c.adhesive:
        return Verdict(False, "certificate answers the other question")
    g = p.ground
    if sorted(c.ground.labels) != sorted(g.labels):
        return Verdict(False, f"certificate ground {c.ground} does not match {g}")
    mv = merge(p)
    M, X, Y = p.masks()
    if c.feasible:
        if c.witness is None:
            return Verdict(False, "feasible certificate without witness")
        try:
            w = c.witness.reorder(g)
        except GroundSetError as exc:
            return Verdict(False, str(exc))
        for m, v in mv.known.items():
            if w[m] != v:
                return Verdict(False, f"witness differs from the inputs at {g.format(m)}: {w[m]} != {v}")
        ok, bad = is_polymatroid(w)
        if not ok:
            return Verdict(False, f"witness violates {bad[0][0]}")
        if adhesive and X and Y and modular_functional(p).evaluate(w) != 0:
            return Verdict(False, "witness has f(X,Y|M) != 0")
        return Verdict(True, "witness extends both inputs and is a polymatroid")
    if c.ground != g:
        return Verdict(False, f"certificate ground {c.ground} is not the merged ground {g}")
    fm = gamma_facets(g)
    acc = [Fraction(0)] * g.dim
    mod_tag = modular_tag(p)
    for tag, coef in c.multipliers:
        if tag.endswith(MODULAR_SUFFIX):
            if not adhesive or tag != mod_tag:
                return Verdict(False, f"unexpected equality row {tag}")
            row = modular_functional(p)
        else:
            if coef < 0:
                return Verdict(False, f"negative multiplier {coef} on {tag}")
            try:
                row = fm.row(tag)
            except ValueError:
                return Verdict(False, f"unknown inequality tag {tag}")
        for m, v in row.terms():
            acc[m - 1] += coef * v
    total = Fraction(0)
    for m in g.nonempty():
        coef = acc[m - 1]
        if not coef:
            continue
        if m not in mv.known:
            return Verdict(False, f"combination does not vanish on unknown coordinate {g.format(m)}")
        total += coef * mv.known[m]
    if total >= 0:
        return Verdict(False, f"combination evaluates to {total} >= 0 on the inputs")
    return Verdict(True, f"combination evaluates to {total} < 0 on the inputs")

