"""Named inequality families, example constructions and stickiness tests.

Families live on the merged ground of an extension pair and only use
coordinates known from one of the two sides.  Each family is generated from
its template by the full symmetry orbit and deduplicated; nothing assumes
how many distinct instances survive.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .cone import gamma_facets
from .construct import (
    ConstructionError,
    NaturalCoords,
    SubspaceArrangement,
    excess_pointed,
    excess_uniform,
    extend_by_excess,
    rank_from_natural,
    tighten_set,
)
from .core import (
    GroundSet,
    LinFunctional,
    RankVector,
    as_fraction,
    cond,
    cond_functional,
    info_expr,
    ingleton_functional,
    is_polymatroid,
    mi_functional,
    normalize_integer,
)
from .glue import ExtensionPair, merge
from .lp import solve_standard


@dataclass(frozen=True)
class InequalityFamily:
    """Instances ``<c, f> >= 0`` over the merged coordinates of ``ground``."""

    name: str
    ground: GroundSet
    instances: tuple[LinFunctional, ...]
    labels: tuple[str, ...]

    def __len__(self):
        return len(self.instances)

    def evaluate(self, p: ExtensionPair | RankVector) -> list[Fraction]:
        """Values of all instances on a pair (or on one polymatroid on the full ground)."""
        if isinstance(p, RankVector):
            f = p.reorder(self.ground)
            return [lf.evaluate(f) for lf in self.instances]
        mv = merge(p)
        if sorted(mv.ground.labels) != sorted(self.ground.labels):
            raise ValueError(f"family {self.name} lives on {self.ground}, pair on {mv.ground}")
        look = {self.ground.mask(mv.ground.members(m)): v for m, v in mv.known.items()}
        return [sum((c * look[m] for m, c in lf.terms()), Fraction(0)) for lf in self.instances]

    def violations(self, p) -> list[tuple[str, Fraction]]:
        return [(lab, v) for lab, v in zip(self.labels, self.evaluate(p)) if v < 0]

    def holds(self, p) -> bool:
        return not self.violations(p)

    def keys(self) -> set[tuple[int, ...]]:
        return {tuple(normalize_integer(lf.coeffs)) for lf in self.instances}

    def to_text(self) -> str:
        out = [f"# {self.name} on {self.ground}: {len(self)} instances"]
        for lab, lf in zip(self.labels, self.instances):
            out.append(" ".join(str(c) for c in lf.int_coeffs()) + f"   # {lab} >= 0")
        return "\n".join(out) + "\n"


def _dedup_family(name: str, ground: GroundSet, items) -> InequalityFamily:
    seen: dict[tuple[int, ...], tuple[LinFunctional, str]] = {}
    for lf, lab in items:
        key = tuple(normalize_integer(lf.coeffs))
        if any(key) and key not in seen:
            seen[key] = (LinFunctional(ground, key), lab)
    vals = list(seen.values())
    return InequalityFamily(name, ground, tuple(v[0] for v in vals), tuple(v[1] for v in vals))


AMALGAM3_GROUND = GroundSet.of("abcxy")


def _amalgam3_items(with_top: bool):
    g = AMALGAM3_GROUND
    mi = lambda *a: mi_functional(g, *a)  # noqa: E731
    for perm in itertools.permutations("abc"):
        a, b, c = (g.bit(z) for z in perm)
        for xs, ys in (("x", "y"), ("y", "x")):
            x, y = g.bit(xs), g.bit(ys)
            two = [((mi(b, x, a | c), f"({perm[1]},{xs}|{perm[0]}{perm[2]})"), (mi(b, y, a | c), f"({perm[1]},{ys}|{perm[0]}{perm[2]})")),
                   ((mi(c, x, a | b), f"({perm[2]},{xs}|{perm[0]}{perm[1]})"), (mi(c, y, a | b), f"({perm[2]},{ys}|{perm[0]}{perm[1]})"))]
            if with_top:
                two.append(((cond_functional(g, x, a | b | c).scale(2), f"2({xs}|abc)"),
                            (cond_functional(g, y, a | b | c).scale(2), f"2({ys}|abc)")))
            head = mi(a, x, c) + mi(a, b, x) + mi(a, b, y) + mi(c, y) - mi(a, b)
            lab0 = f"({perm[0]},{xs}|{perm[2]})+({perm[0]},{perm[1]}|{xs})+({perm[0]},{perm[1]}|{ys})+({perm[2]},{ys})"
            for choice in itertools.product((0, 1), repeat=len(two)):
                lf, lab = head, lab0
                for opt, k in zip(two, choice):
                    lf = lf + opt[k][0]
                    lab += "+" + opt[k][1]
                yield lf, lab + f"-({perm[0]},{perm[1]})"


@lru_cache(maxsize=None)
def family_amalgam3() -> InequalityFamily:
    """Amalgam conditions for one-point extensions ``abcx``, ``abcy`` of a base on ``abc``."""
    return _dedup_family("amalgam3", AMALGAM3_GROUND, _amalgam3_items(True))


@lru_cache(maxsize=None)
def family_adhesive3() -> InequalityFamily:
    """Adhesivity conditions: the amalgam family with the ``2(x|abc)`` term dropped."""
    return _dedup_family("adhesive3", AMALGAM3_GROUND, _amalgam3_items(False))


def check_shape(p: ExtensionPair, base: int, xs: int, ys: int):
    if (p.base.size, len(p.x_labels), len(p.y_labels)) != (base, xs, ys):
        raise ValueError(
            f"pair has shape {p.base.size}+{len(p.x_labels)}+{len(p.y_labels)}, expected {base}+{xs}+{ys}"
        )


def amalgam3_roles(p: ExtensionPair) -> ExtensionPair:
    """Rename a 3+1+1 pair to the labels ``a, b, c, x, y`` the families use."""
    check_shape(p, 3, 1, 1)
    mapping = dict(zip(p.base.labels + p.x_labels + p.y_labels, "abcxy"))
    fX, fY = p.fX.relabel(mapping), p.fY.relabel(mapping)
    return ExtensionPair(GroundSet.of("abc"), fX, fY)


FIVE_ROLES = ("a", "b", "c", "x", "y")


def family_5var(f: RankVector | ExtensionPair, assignment: Mapping[str, str] | Sequence[str] | None = None) -> list[tuple[str, Fraction]]:
    """Values of the four two-line choices of the five-variable expressions.

    ``assignment`` maps the roles ``a, b, c, x, y`` to labels of ``f``
    (a sequence is read in that role order).  Values are reported, not
    judged: general polymatroids may make them negative.
    """
    if assignment is None:
        assignment = dict(zip(FIVE_ROLES, FIVE_ROLES))
    elif not isinstance(assignment, Mapping):
        assignment = dict(zip(FIVE_ROLES, assignment))
    if sorted(assignment) != sorted(FIVE_ROLES) or len(set(assignment.values())) != 5:
        raise ValueError(f"assignment must give five distinct labels for roles {FIVE_ROLES}")
    if isinstance(f, ExtensionPair):
        mv = merge(f)
        g = mv.ground
        lookup = lambda m: mv.value(m)  # noqa: E731
    else:
        ok, _ = is_polymatroid(f)
        if not ok:
            raise ValueError("family_5var needs a polymatroid")
        g = f.ground
        lookup = f.__getitem__
    try:
        a, b, c, x, y = (g.bit(assignment[r]) for r in FIVE_ROLES)
    except Exception as exc:
        raise ValueError(f"bad assignment: {exc}") from None

    def val(lf):
        return sum((v * lookup(m) for m, v in lf.terms()), Fraction(0))

    mi = lambda *s: mi_functional(g, *s)  # noqa: E731
    head = mi(a, x, c) + mi(a, b, x) + mi(a, b, y) + mi(c, y) - mi(a, b)
    out = []
    for bx, cx in itertools.product((x, y), repeat=2):
        lf = head + mi(b, bx, a | c) + mi(c, cx, a | b)
        lab = f"(b,{'x' if bx == x else 'y'}|ac)+(c,{'x' if cx == x else 'y'}|ab)"
        out.append((lab, val(lf)))
    return out


STICKY21_GROUND = GroundSet.of("a", "b", "x1", "x2", "y")


@lru_cache(maxsize=None)
def family_sticky21() -> InequalityFamily:
    """Amalgam conditions for ``f_X`` on ``abx1x2`` and ``f_y`` on ``aby``."""
    g = STICKY21_GROUND
    y = g.bit("y")

    def items():
        for pa, px in itertools.product((("a", "b"), ("b", "a")), (("x1", "x2"), ("x2", "x1"))):
            a, b = (g.bit(s) for s in pa)
            x1, x2 = (g.bit(s) for s in px)
            tail = mi_functional(g, y, a, b) + mi_functional(g, y, b, a) + mi_functional(g, a, b, y)
            tail = tail + cond_functional(g, y, a | b).scale(3)
            for lf, lab in (
                (ingleton_functional(g, a, b, x1, x2), f"[{pa[0]},{pa[1]},{px[0]},{px[1]}]"),
                (ingleton_functional(g, a, x1, b, x2), f"[{pa[0]},{px[0]},{pa[1]},{px[1]}]"),
            ):
                yield lf + tail, lab + "+(y,a|b)+(y,b|a)+(a,b|y)+3(y|ab)"

    return _dedup_family("sticky21", g, items())


# ---------------------------------------------------------------------------
# which projection facets see both sides

def mixed(lf: LinFunctional, X: int, Y: int) -> bool:
    """True when the functional has coordinates beyond ``M`` on both sides."""
    sx = sy = False
    for m, _ in lf.terms():
        sx |= bool(m & X)
        sy |= bool(m & Y)
    return sx and sy


def mixed_keys(funcs, X: int, Y: int) -> set[tuple[int, ...]]:
    return {tuple(normalize_integer(f.coeffs)) for f in funcs if mixed(f, X, Y)}


# ---------------------------------------------------------------------------
# certificates of validity on a single polymatroid

ShannonCertificate = tuple[tuple[str, Fraction], ...]


def shannon_certificate(lf: LinFunctional) -> ShannonCertificate | None:
    """Nonnegative multipliers of elemental inequalities summing to ``lf``, if any."""
    fm = gamma_facets(lf.ground)
    cols = [{m - 1: c for m, c in row.terms()} for row in fm.rows]
    res = solve_standard(cols, list(lf.coeffs), lf.ground.dim)
    if not res.feasible:
        return None
    return tuple((fm.tags[k], v) for k, v in sorted(res.x.items()))


def verify_shannon(lf: LinFunctional, cert: ShannonCertificate) -> bool:
    fm = gamma_facets(lf.ground)
    acc = [Fraction(0)] * lf.ground.dim
    for tag, v in cert:
        if v < 0:
            return False
        for m, c in fm.row(tag).terms():
            acc[m - 1] += v * c
    return tuple(acc) == lf.coeffs


# ---------------------------------------------------------------------------
# the worked example with an amalgam but no adhesive extension

EX1_TABLE = {
    # A: (f(A), f(Ax), f(Ay), f(Axy)), A running over subsets of abc
    "": (0, 3, 3, 5),
    "a": (4, 5, 5, 6), "b": (4, 5, 5, 6), "c": (4, 5, 7, 7),
    "ab": (6, 7, 7, 7), "ac": (6, 7, 7, 7), "bc": (6, 7, 7, 7),
    "abc": (6, 7, 7, 7),
}


def uniform46() -> RankVector:
    return RankVector.from_function(GroundSet.of("abc"), lambda m: 4 if m in (1, 2, 4) else 6)


def build_ex1() -> tuple[RankVector, RankVector, RankVector]:
    """``(f_x, f_y, f_xy)``: excess extensions of the 4/6 uniform base and the tabulated amalgam."""
    f = uniform46()
    fx = extend_by_excess(f, "x", excess_uniform(f, 1, 2))
    fy = extend_by_excess(f, "y", excess_pointed(f, "c", 1, 2))
    g = AMALGAM3_GROUND
    vals = {}
    for A, row in EX1_TABLE.items():
        for suffix, v in zip(("", "x", "y", "xy"), row):
            if A + suffix:
                vals[A + suffix] = v
    return fx, fy, RankVector.from_mapping(g, vals)


def ex1_arrangements() -> tuple[SubspaceArrangement, SubspaceArrangement]:
    """Representations of ``f_x`` and ``f_y`` over ``Q^7`` with basis s1 s2 u1 u2 v1 v2 r."""
    e = [tuple(int(i == j) for j in range(7)) for i in range(7)]
    s1, s2, u1, u2, v1, v2, r = e
    add = lambda p, q: tuple(x + y for x, y in zip(p, q))  # noqa: E731
    common = {"a": (s1, s2, u1, u2), "b": (s1, s2, v1, v2)}
    sx = SubspaceArrangement(7, {**common, "c": (s1, s2, add(u1, v1), add(u2, v2)), "x": (s1, s2, r)})
    sy = SubspaceArrangement(7, {**common, "c": (u1, u2, v1, v2), "y": (s1, s2, r)})
    return sx, sy


# ---------------------------------------------------------------------------
# one-point extensions of a three-element base

def _abc(f: RankVector) -> tuple[int, int, int]:
    if f.ground.size != 3:
        raise ValueError(f"expected a polymatroid on three elements, got {f.ground}")
    return 1, 2, 4


def build_nonsticky1(f: RankVector, check_order: bool = True, x: str = "x", y: str = "y") -> ExtensionPair:
    """Two extensions of ``f`` on ``abc`` (roles in ground order) with no amalgam.

    Needs ``(a,b) > 0`` and ``(a,b|c) > 0``; with ``check_order`` also
    ``(a,b) <= (a,c)`` and ``(a,b) <= (b,c)``, which is what makes the
    uniform excess with ``t = (a,b)`` valid.
    """
    a, b, c = _abc(f)
    t = info_expr(f, a, b)
    u = min(t, info_expr(f, a, b, c))
    if t <= 0 or u <= 0:
        raise ConstructionError(f"needs (a,b) > 0 and (a,b|c) > 0, got {t} and {info_expr(f, a, b, c)}")
    if check_order and not (t <= info_expr(f, a, c) and t <= info_expr(f, b, c)):
        raise ConstructionError("needs (a,b) <= (a,c) and (a,b) <= (b,c)")
    fx = extend_by_excess(f, x, excess_uniform(f, 0, t))
    fy = extend_by_excess(f, y, excess_pointed(f, f.ground.labels[2], 0, u))
    return ExtensionPair(f.ground, fx, fy)


def is_sticky_sufficient(f: RankVector) -> bool:
    a, b, c = _abc(f)
    g = f.ground
    if any(cond(f, i, g.full ^ i) != 0 for i in (a, b, c)):
        return False
    return any(info_expr(f, i, j, k) == 0 for i, j, k in ((a, b, c), (a, c, b), (b, c, a)))


# ---------------------------------------------------------------------------
# two-element bases and two-element extensions

def _ab(f: RankVector) -> tuple[int, int]:
    if f.ground.size != 2:
        raise ValueError(f"expected a polymatroid on two elements, got {f.ground}")
    return 1, 2


def sticky2_characterization(f: RankVector) -> bool:
    a, b = _ab(f)
    return info_expr(f, a, b) == 0 or cond(f, a, b) == 0 or cond(f, b, a) == 0


def nonsticky2_fX(f: RankVector, eps=None, labels: Sequence[str] = ("x1", "x2")) -> RankVector:
    a, b = _ab(f)
    mab, ca, cb = info_expr(f, a, b), cond(f, a, b), cond(f, b, a)
    if min(mab, ca, cb) <= 0:
        raise ConstructionError(f"needs (a,b), (a|b), (b|a) > 0, got {mab}, {ca}, {cb}")
    eps = min(mab, ca, cb) / 2 if eps is None else as_fraction(eps)
    if not 0 < eps <= min(mab, ca, cb):
        raise ConstructionError(f"epsilon must lie in (0, {min(mab, ca, cb)}], got {eps}")
    v = [Fraction(0)] * 15
    v[0], v[7], v[8], v[9] = eps, ca - eps, cb - eps, mab - eps
    return rank_from_natural(NaturalCoords(tuple(v)), f.ground.labels + tuple(labels))


def build_nonsticky2(f: RankVector, eps=None, x: Sequence[str] = ("x1", "x2"), y: str = "y") -> ExtensionPair:
    """``f_X`` on ``abx1x2`` with a negative Ingleton value and ``f_y`` absorbing ``(a,b)``."""
    fX = nonsticky2_fX(f, eps, x)
    a, b = _ab(f)
    fy = extend_by_excess(f, y, excess_uniform(f, 0, info_expr(f, a, b)))
    return ExtensionPair(f.ground, fX, fy)


def _ingleton_identities(g: GroundSet, corrected: bool):
    a, b, x1, x2 = (g.bit(s) for s in ("a", "b", "x1", "x2"))
    mi = lambda *s: mi_functional(g, *s)  # noqa: E731
    ing = lambda *s: ingleton_functional(g, *s)  # noqa: E731
    ab = cond_functional(g, a, b)
    third = mi(a, x2, x1) if corrected else None
    return [
        ("[a,b,x1,x2]", ing(a, b, x1, x2) + ab,
         mi(a, x1, b) + mi(a, x2, b) + mi(x1, x2, a) + cond_functional(g, a, x1 | x2)),
        ("[a,x1,b,x2]", ing(a, x1, b, x2) + ab,
         mi(a, x1, b) + mi(b, x2, a) + mi(a, x2, x1) + cond_functional(g, a, b | x2)),
        ("[b,x1,a,x2]", ing(b, x1, a, x2) + ab,
         mi(a, x1, b) + mi(a, x2, b) + (third if third is not None else LinFunctional.zero(g))
         + mi(b, x1, a | x2) + cond_functional(g, a, b | x1 | x2)),
        ("[x1,x2,a,b]", ing(x1, x2, a, b) + ab,
         mi(a, x1, b) + mi(a, x2, x1) + mi(a, b, x2) + mi(x1, x2, a | b) + cond_functional(g, a, b | x1 | x2)),
    ]


def ingleton_identities(corrected: bool = True) -> list[tuple[str, LinFunctional, LinFunctional]]:
    """``Ingleton + (a|b) = sum of conditional terms`` for four Ingleton instances.

    The third identity as usually printed contains the malformed term
    ``(a,x1|x1)``; ``corrected=True`` substitutes ``(a,x2|x1)``, the unique
    elemental term that makes it hold, and ``corrected=False`` omits the term.
    """
    g = GroundSet.of("a", "b", "x1", "x2")
    return _ingleton_identities(g, corrected)


# ---------------------------------------------------------------------------
# lifting an amalgam of tightened extensions

def modular_part(f: RankVector, labels: Sequence[str]) -> dict[str, Fraction]:
    """``f - f tightened on labels = sum lam_x rho_x``; returns the ``lam_x``."""
    diff = f - tighten_set(f, labels)
    return {lab: diff[lab] for lab in labels}


def lift_amalgam(p: ExtensionPair, g: RankVector) -> RankVector:
    """Turn an amalgam of the tightened pair into one of ``p``."""
    lam = {**modular_part(p.fX, p.x_labels), **modular_part(p.fY, p.y_labels)}
    gr = g.ground
    bits_ = {gr.bit(lab): v for lab, v in lam.items()}
    return RankVector.from_function(gr, lambda m: g[m] + sum((v for b, v in bits_.items() if m & b), Fraction(0)))


def tightened_pair(p: ExtensionPair) -> ExtensionPair:
    return ExtensionPair(p.base, tighten_set(p.fX, p.x_labels), tighten_set(p.fY, p.y_labels))



# ---------------------------------------------------------------------------
# tabulated restricted rows and the distinguished rays

def elemental(g: GroundSet, i: str, j: str | None = None, K: Sequence[str] = ()) -> str:
    """Tag of ``(i,j|K)`` (or ``(i|K)`` when ``j`` is None) over ``g``."""
    from .core import elemental_tag

    return elemental_tag(g, g.bit(i), g.bit(j) if j else 0, g.mask(list(K)))


# columns xy axy bxy cxy abxy acxy bcxy abcxy; tags as (label, optional alternative)
TABLE1 = (
    ((-1, 0, 0, 0, 0, 0, 0, 0), ("x", "y", ""), None),
    ((1, 0, 0, -1, 0, 0, 0, 0), ("c", "x", "y"), ("c", "y", "x")),
    ((-1, 1, 1, 0, -1, 0, 0, 0), ("a", "b", "xy"), None),
    ((0, -1, 0, 0, 0, 0, 0, 0), ("x", "y", "a"), None),
    ((0, 0, -1, 0, 0, 0, 0, 0), ("x", "y", "b"), None),
    ((0, 0, 0, 1, 0, -1, 0, 0), ("a", "x", "cy"), ("a", "y", "cx")),
    ((0, 0, 0, 0, 1, 0, 0, -1), ("c", "x", "aby"), ("c", "y", "abx")),
    ((0, 0, 0, 0, 0, 1, 0, -1), ("b", "x", "acy"), ("b", "y", "acx")),
    ((0, 0, 0, 0, 0, 0, 0, 1), ("x", None, "abcy"), ("y", None, "abcx")),
)
TABLE1_COLUMNS = ("xy", "axy", "bxy", "cxy", "abxy", "acxy", "bcxy", "abcxy")

# columns x1y x2y x1x2y | a.. | b.. | ab.. (each group: prefix + x1y, x2y, x1x2y)
TABLE3 = (
    ((1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0), [("a", "x1", ["y"]), ("a", "y", ["x1"])]),
    ((-1, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0), [("a", "b", ["x1", "y"])]),
    ((1, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0), [("x1", "x2", ["y"])]),
    ((0, -1, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0), [("a", "b", ["x2", "y"])]),
    ((0, 0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0), [("a", "y", ["x1", "x2"])]),
    ((0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0), [("x1", "y", ["a"])]),
    ((0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0), [("x2", "y", ["a"])]),
    ((0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1), [("b", "y", ["a", "x1", "x2"])]),
    ((0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0), [("x1", "y", ["b"])]),
    ((0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0), [("x2", "y", ["b"])]),
    ((0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, -1), [("x2", "y", ["a", "b", "x1"])]),
    ((0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1), [("x1", "y", ["a", "b", "x2"])]),
    ((0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1), [("y", None, ["a", "b", "x1", "x2"])]),
)
TABLE3_COLUMNS = tuple(
    p + s for p in ((), ("a",), ("b",), ("a", "b")) for s in (("x1", "y"), ("x2", "y"), ("x1", "x2", "y"))
)


def _t1_tag(spec) -> str:
    i, j, K = spec
    return elemental(AMALGAM3_GROUND, i, j, list(K))


def table1_check(rr) -> list[str]:
    """Mismatches between the tabulated rows and the computed restrictions (empty when all agree)."""
    g = rr.facets.ground
    cols = [g.mask(c) for c in TABLE1_COLUMNS]
    bad = []
    for row, main, alt in TABLE1:
        for spec in (main, alt):
            if spec is None:
                continue
            tag = _t1_tag(spec)
            r = rr.facets.row(tag)
            got = tuple(int(r[m]) for m in cols)
            if got != row:
                bad.append(f"{tag}: table {row}, computed {got}")
        if alt is not None and rr.find(_t1_tag(main)) != rr.find(_t1_tag(alt)):
            bad.append(f"{_t1_tag(main)} and {_t1_tag(alt)} restrict differently")
    return bad


def table3_check(rr) -> list[str]:
    g = rr.facets.ground
    cols = [g.mask(list(c)) for c in TABLE3_COLUMNS]
    bad = []
    for row, specs in TABLE3:
        tags = [elemental(g, i, j, K) for i, j, K in specs]
        for tag in tags:
            r = rr.facets.row(tag)
            got = tuple(int(r[m]) for m in cols)
            if got != row:
                bad.append(f"{tag}: table {row}, computed {got}")
    return bad


def amalgam3_spot_ray(rr) -> tuple[int, ...]:
    """Each tabulated row but the first and last once, the last one twice."""
    ray = [0] * len(rr.rows)
    for _, main, _ in TABLE1[1:-1]:
        ray[rr.find(_t1_tag(main))] += 1
    ray[rr.find(_t1_tag(TABLE1[-1][1]))] += 2
    return tuple(ray)


def sticky21_spot_ray(rr) -> tuple[int, ...]:
    """Each tabulated row but the first and last once, the last one three times."""
    g = rr.facets.ground
    ray = [0] * len(rr.rows)
    for _, specs in TABLE3[1:-1]:
        ray[rr.find(elemental(g, *specs[0]))] += 1
    ray[rr.find(elemental(g, *TABLE3[-1][1][0]))] += 3
    return tuple(ray)


def spot_combinations(rr, ray) -> list[tuple[dict[str, str], tuple]]:
    """Back-combinations of the spot ray, labelled by which alternative was used.

    The keys ``cxy`` and ``axcy`` say whether ``(c,x|y)`` / ``(a,x|cy)``
    (as opposed to ``(c,y|x)`` / ``(a,y|cx)``) occurs in the combination.
    """
    from .polyproj import ray_combinations

    fm = rr.facets
    t_cxy, t_cyx = _t1_tag(("c", "x", "y")), _t1_tag(("c", "y", "x"))
    t_axcy = _t1_tag(("a", "x", "cy"))
    out = []
    for combo in ray_combinations(ray, rr):
        tags = {fm.tags[k] for k, _ in combo}
        label = {"cxy": t_cxy in tags, "axcy": t_axcy in tags}
        assert (t_cxy in tags) != (t_cyx in tags)
        out.append((label, combo))
    return out
