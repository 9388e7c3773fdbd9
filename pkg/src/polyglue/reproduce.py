"""Reproduction checks for the published counts, tables and examples.

Each target returns a list of :class:`Check` records and a dict of
informational values; nothing here prints.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .cone import FacetMatrix, gamma_facets, restricted_rows
from .construct import rank_from_subspaces
from .core import GroundSet, RankVector, info_expr, ingleton, normalize_integer
from .glue import Certificate, ExtensionPair, has_adhesive, has_amalgam, verify
from .polyproj import (
    CombinationCone,
    _combine,
    _dedup,
    candidates,
    express,
    extreme_rays,
    facet_filter,
    is_extreme,
    ray_combinations,
    verify_expression,
    zero_row_candidates,
)
from . import theorems as th


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class Outcome:
    target: str
    checks: list[Check] = field(default_factory=list)
    info: dict = field(default_factory=dict)
    certificates: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append(Check(name, bool(ok), detail))

    def expect(self, name: str, got, want):
        self.add(name, got == want, f"got {got}, expected {want}")


def dropped_between(g: GroundSet, X: int, Y: int) -> list[int]:
    return [m for m in g.nonempty() if m & X and m & Y]


def without_tags(fm: FacetMatrix, tags) -> FacetMatrix:
    drop = set(tags)
    keep = [i for i, t in enumerate(fm.tags) if t not in drop]
    return FacetMatrix(fm.ground, tuple(fm.rows[i] for i in keep), tuple(fm.tags[i] for i in keep))


def _projection(g: GroundSet, X: int, Y: int, threads: int = 1, fm: FacetMatrix | None = None):
    fm = fm or gamma_facets(g)
    rr = restricted_rows(fm, dropped_between(g, X, Y))
    t0 = time.perf_counter()
    rays = extreme_rays(CombinationCone.from_restricted(rr), threads=threads)
    return rr, rays, time.perf_counter() - t0


def amalgam3(threads: int = 1, facets: bool = True) -> Outcome:
    out = Outcome("amalgam3")
    g = th.AMALGAM3_GROUND
    X, Y = g.bit("x"), g.bit("y")
    rr, rays, secs = _projection(g, X, Y, threads)
    out.info.update(rows=len(rr.rows), rays=len(rays), ray_seconds=round(secs, 3))
    out.expect("restricted rows", len(rr.rows), 27)
    out.expect("extreme rays", len(rays), 154)
    out.add("ray time under 10 s", secs < 10, f"{secs:.2f} s")
    base_mono = [th.elemental(g, i, None, [k for k in "abcxy" if k != i]) for i in "abc"]
    rr27, rays27, _ = _projection(g, X, Y, threads, without_tags(gamma_facets(g), base_mono))
    out.info.update(rows_without_base_monotonicity=len(rr27.rows), rays_without_base_monotonicity=len(rays27))
    out.add("every ray extreme", all(is_extreme(CombinationCone.from_restricted(rr), r) for r in rays))
    spot = th.amalgam3_spot_ray(rr)
    out.add("spot ray among the rays", spot in set(map(tuple, rays)))
    if not facets:
        return out
    cands = _dedup(zero_row_candidates(rr) + candidates(rays, rr))
    rep = facet_filter(cands)
    funcs = [c.functional for c in rep.facets]
    out.info.update(candidates=len(cands), facets=len(funcs), redundant=len(rep.redundant))
    mk = th.mixed_keys(funcs, X, Y)
    fam = th.family_amalgam3()
    out.info.update(mixed_facets=len(mk), family_instances=len(fam))
    out.add("mixed facets equal the family", mk == fam.keys(),
            f"{len(mk)} mixed facets, {len(fam)} instances, {len(mk ^ fam.keys())} differ")
    fkeys = {tuple(normalize_integer(f.coeffs)) for f in funcs}
    single = [f for f in funcs if not th.mixed(f, X, Y)]
    split = {"facet": 0, "redundant": 0, "sibling facets": 0, "bad certificate": 0}
    for label, combo in th.spot_combinations(rr, spot):
        lf = _combine(rr.facets, combo)
        key = tuple(normalize_integer(lf.coeffs))
        sibling = label["cxy"] or not label["axcy"]
        if key in fkeys:
            split["sibling facets" if sibling else "facet"] += 1
            continue
        combo_single = express(lf, single)
        if verify_expression(lf, single, combo_single):
            split["redundant"] += 1
        else:
            split["bad certificate"] += 1
    out.info["spot combinations"] = split
    out.expect("spot ray: displayed combinations are facets", split["facet"], 8)
    out.expect("spot ray: sibling combinations redundant", split["redundant"], 24)
    out.add("redundancy certificates verify", split["bad certificate"] == 0)
    return out


def sticky21(threads: int = 1, facets: bool = True) -> Outcome:
    out = Outcome("sticky21")
    g = th.STICKY21_GROUND
    X, Y = g.mask(["x1", "x2"]), g.bit("y")
    rr, rays, secs = _projection(g, X, Y, threads)
    out.info.update(rows=len(rr.rows), rays=len(rays), ray_seconds=round(secs, 3))
    out.expect("restricted rows", len(rr.rows), 48)
    out.expect("extreme rays", len(rays), 6938)
    out.add("ray time under 10 min", secs < 600, f"{secs:.2f} s")
    spot = th.sticky21_spot_ray(rr)
    out.add("spot ray among the rays", spot in set(map(tuple, rays)))
    fam = th.family_sticky21()
    combos = [_combine(rr.facets, c) for c in ray_combinations(spot, rr)]
    out.add("spot ray yields a family instance",
            any(tuple(normalize_integer(lf.coeffs)) in fam.keys() for lf in combos))
    if not facets:
        return out
    cands = _dedup(zero_row_candidates(rr) + candidates(rays, rr))
    rep = facet_filter(cands)
    funcs = [c.functional for c in rep.facets]
    mk = th.mixed_keys(funcs, X, Y)
    out.info.update(candidates=len(cands), facets=len(funcs), mixed_facets=len(mk), family_instances=len(fam))
    out.add("mixed facets equal the family", mk == fam.keys(),
            f"{len(mk)} mixed facets, {len(fam)} instances")
    return out


def _certify(out: Outcome, name: str, p: ExtensionPair, cert: Certificate, want: bool):
    out.certificates.append((p, cert))
    out.add(name, cert.feasible == want, "feasible" if cert.feasible else "infeasible")
    v = verify(p, cert)
    out.add(name + " (certificate verifies)", v.ok, v.reason)


def ex1() -> Outcome:
    out = Outcome("ex1")
    fx, fy, fxy = th.build_ex1()
    p = ExtensionPair.of(fx, fy)
    _certify(out, "amalgam exists", p, has_amalgam(p), True)
    _certify(out, "adhesive extension exists", p, has_adhesive(p), False)
    w = verify(p, Certificate(True, False, p.ground, witness=fxy))
    out.add("tabulated amalgam verifies", w.ok, w.reason)
    sx, sy = th.ex1_arrangements()
    out.add("subspaces give f_x", rank_from_subspaces(sx, fx.ground) == fx)
    out.add("subspaces give f_y", rank_from_subspaces(sy, fy.ground) == fy)
    tp = th.tightened_pair(p)
    _certify(out, "tightened pair has an amalgam", tp, has_amalgam(tp), False)
    out.add("amalgam family holds", th.family_amalgam3().holds(p))
    viol = th.family_adhesive3().violations(p)
    out.add("adhesive family violated with value -2", bool(viol) and min(v for _, v in viol) == -2,
            f"{len(viol)} violated instances")
    return out


def nonsticky1(f: RankVector | None = None) -> Outcome:
    out = Outcome("nonsticky1")
    f = f or th.uniform46()
    p = th.build_nonsticky1(f)
    g = p.fX.ground
    out.expect("f_x(a,b|x)", info_expr(p.fX, 1, 2, g.bit("x")), 0)
    gy = p.fY.ground
    out.expect("f_y(c,y)", info_expr(p.fY, 4, gy.bit("y")), 0)
    _certify(out, "amalgam exists", p, has_amalgam(p), False)
    out.add("amalgam family violated", not th.family_amalgam3().holds(th.amalgam3_roles(p)))
    return out


def nonsticky2(f: RankVector | None = None, eps=Fraction(1, 2)) -> Outcome:
    out = Outcome("nonsticky2")
    f = f or RankVector.from_mapping(GroundSet.of("ab"), {"a": 2, "b": 2, "ab": 3})
    out.add("base fails the 2-sticky characterization", not th.sticky2_characterization(f))
    p = th.build_nonsticky2(f, eps)
    out.expect("Ingleton value", ingleton(p.fX, "a", "b", "x1", "x2"), -Fraction(eps))
    out.expect("f_X(a)", p.fX["a"], f["a"])
    _certify(out, "amalgam exists", p, has_amalgam(p), False)
    out.add("sticky21 family violated", not th.family_sticky21().holds(p))
    return out


def table1() -> Outcome:
    out = Outcome("table1")
    g = th.AMALGAM3_GROUND
    rr = restricted_rows(gamma_facets(g), dropped_between(g, g.bit("x"), g.bit("y")))
    bad = th.table1_check(rr)
    out.add("tabulated rows match", not bad, "; ".join(bad))
    return out


def table3() -> Outcome:
    out = Outcome("table3")
    g = th.STICKY21_GROUND
    rr = restricted_rows(gamma_facets(g), dropped_between(g, g.mask(["x1", "x2"]), g.bit("y")))
    bad = th.table3_check(rr)
    out.add("tabulated rows match", not bad, "; ".join(bad))
    return out


TARGETS = {
    "amalgam3": amalgam3,
    "sticky21": sticky21,
    "ex1": ex1,
    "nonsticky1": nonsticky1,
    "nonsticky2": nonsticky2,
    "table1": table1,
    "table3": table3,
}
