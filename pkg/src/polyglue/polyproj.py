"""Facets of coordinate projections of the polymatroid cone.

A facet of the projection is a nonnegative combination of facet rows of the
full cone whose coefficients vanish on the dropped coordinates.  The
extreme combinations are the extreme rays of ``{y >= 0 : y^T B = 0}`` where
``B`` holds the facet rows restricted to the dropped columns; they are
enumerated by the double description method with exact integer rays.  Each
ray is mapped back to inequalities on the kept coordinates and the
irredundant ones are singled out with an exact LP.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cone import FacetMatrix, RestrictedRows
from .core import LinFunctional, normalize_integer
from .lp import solve_inequalities, solve_standard


@dataclass(frozen=True)
class CombinationCone:
    """The cone ``{y >= 0 : y^T B = 0}`` for an integer matrix ``B`` without zero rows."""

    B: tuple[tuple[int, ...], ...]
    tags: tuple = ()

    def __post_init__(self):
        B = tuple(tuple(int(x) for x in row) for row in self.B)
        if len({len(row) for row in B}) > 1:
            raise ValueError("ragged matrix")
        if B and B[0] and any(not any(row) for row in B):
            raise ValueError("combination cone rows must be nonzero")
        object.__setattr__(self, "B", B)

    @classmethod
    def from_restricted(cls, rr: RestrictedRows) -> CombinationCone:
        return cls(rr.rows, tuple(rr.tags(i) for i in range(len(rr.rows))))

    @property
    def nrows(self) -> int:
        return len(self.B)

    @property
    def ncols(self) -> int:
        return len(self.B[0]) if self.B else 0


@dataclass(frozen=True)
class RayList:
    rays: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.rays)

    def __iter__(self):
        return iter(self.rays)

    def to_text(self) -> str:
        return "".join(" ".join(str(v) for v in r) + "\n" for r in self.rays)

    @classmethod
    def from_text(cls, text: str) -> RayList:
        rays = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                rays.append(tuple(int(t) for t in line.split()))
        return cls(tuple(sorted(rays)))


def int_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals of an integer matrix (fraction-free elimination)."""
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return 0
    width = len(mat[0])
    r = 0
    for col in range(width):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r][col]
        prow = mat[r]
        for i in range(r + 1, len(mat)):
            q = mat[i][col]
            if q:
                row = mat[i]
                new = [p * a - q * b for a, b in zip(row, prow)]
                g = 0
                for v in new:
                    if v:
                        g = math.gcd(g, v)
                        if g == 1:
                            break
                if g > 1:
                    new = [v // g for v in new]
                mat[i] = new
        r += 1
        if r == len(mat):
            break
    return r


def _normalize(vec: list[int]) -> tuple[int, ...]:
    g = 0
    for v in vec:
        if v:
            g = math.gcd(g, v)
            if g == 1:
                break
    return tuple(v // g for v in vec) if g > 1 else tuple(vec)


def _support_rank(B, cols, support: int, cache: dict) -> int:
    r = cache.get(support)
    if r is None:
        rows = []
        s = support
        while s:
            low = s & -s
            i = low.bit_length() - 1
            rows.append([B[i][c] for c in cols])
            s ^= low
        r = cache[support] = int_rank(rows)
    return r


def _combine_chunk(args):
    B, cols, pos, neg, bound = args
    cache: dict = {}
    out = []
    for pv, ps, hp in pos:
        for nv, ns, hn in neg:
            s = ps | ns
            size = s.bit_count()
            if size > bound:
                continue
            if _support_rank(B, cols, s, cache) != size - 2:
                continue
            out.append((_normalize([hp * b - hn * a for a, b in zip(pv, nv)]), s))
    return out


def constraint_order(B: Sequence[Sequence[int]]) -> list[int]:
    """Columns sorted by nonzero count, then lexicographically."""
    ncols = len(B[0]) if B else 0
    colvecs = [tuple(row[c] for row in B) for c in range(ncols)]
    return sorted(range(ncols), key=lambda c: (sum(1 for v in colvecs[c] if v), colvecs[c], c))


def extreme_rays(C: CombinationCone, threads: int = 1, progress=None) -> RayList:
    """All extreme rays of ``{y >= 0 : y^T B = 0}`` as coprime integer vectors, sorted.

    The orthant's unit vectors are intersected with one hyperplane
    ``y . B[:, c] = 0`` at a time.  Two rays on opposite sides combine into
    a new ray exactly when they are adjacent, which is decided by the rank
    of the processed columns restricted to the union of their supports.
    """
    B = C.B
    m = C.nrows
    if m == 0:
        return RayList(())
    rays = [(tuple(int(i == j) for j in range(m)), 1 << i) for i in range(m)]
    done: list[int] = []
    pool = ProcessPoolExecutor(threads) if threads and threads > 1 else None
    try:
        for c in constraint_order(B):
            colv = [row[c] for row in B]
            zero, pos, neg = [], [], []
            for vec, sup in rays:
                h = 0
                s = sup
                while s:
                    low = s & -s
                    i = low.bit_length() - 1
                    if colv[i]:
                        h += vec[i] * colv[i]
                    s ^= low
                if h > 0:
                    pos.append((vec, sup, h))
                elif h < 0:
                    neg.append((vec, sup, h))
                else:
                    zero.append((vec, sup))
            bound = int_rank([[row[k] for k in done] for row in B]) + 2 if done else 2
            if pool is None or len(pos) < 2 * threads:
                new = _combine_chunk((B, done, pos, neg, bound))
            else:
                step = math.ceil(len(pos) / (threads * 4))
                chunks = [(B, list(done), pos[i:i + step], neg, bound) for i in range(0, len(pos), step)]
                new = [item for part in pool.map(_combine_chunk, chunks) for item in part]
            rays = zero + new
            done.append(c)
            if progress:
                progress(len(done), len(rays))
    finally:
        if pool is not None:
            pool.shutdown()
    return RayList(tuple(sorted(vec for vec, _ in rays)))


def is_extreme(C: CombinationCone, ray: Sequence[int]) -> bool:
    """Independent certificate: ``y`` lies in the cone and its active constraints have rank ``dim - 1``."""
    if any(v < 0 for v in ray) or not any(ray):
        return False
    for c in range(C.ncols):
        if sum(v * row[c] for v, row in zip(ray, C.B)):
            return False
    support = [i for i, v in enumerate(ray) if v]
    # tight orthant facets contribute m - |S|, the equalities rank(B_S)
    return int_rank([C.B[i] for i in support]) == len(support) - 1


# ---------------------------------------------------------------------------
# from rays to inequalities

@dataclass(frozen=True)
class Candidate:
    """A valid inequality of the projection together with its origin."""

    functional: LinFunctional
    combination: tuple[tuple[int, int], ...]
    """``(facet row index, multiplier)`` pairs over the full facet matrix."""

    def tags(self, facets: FacetMatrix) -> list[tuple[str, int]]:
        return [(facets.tags[k], c) for k, c in self.combination]


def _combine(facets: FacetMatrix, combo: Iterable[tuple[int, int]]) -> LinFunctional:
    acc = [0] * facets.ground.dim
    for k, c in combo:
        for m, v in facets.rows[k].terms():
            acc[m - 1] += c * int(v)
    return LinFunctional(facets.ground, tuple(acc))


def ray_combinations(ray: Sequence[int], rr: RestrictedRows) -> list[tuple[tuple[int, int], ...]]:
    """Every way of replacing each restricted row in the ray by one of its full facets."""
    choices = []
    for i, v in enumerate(ray):
        if v:
            choices.append([(k, v) for k in rr.backrefs[i]])
    return [tuple(sorted(p)) for p in itertools.product(*choices)]


def candidates(rays: RayList | Iterable[Sequence[int]], rr: RestrictedRows, kept: Sequence[int] | None = None) -> list[Candidate]:
    """Inequalities on the kept coordinates induced by the rays, deduplicated.

    ``kept`` defaults to the complement of the dropped columns; a nonzero
    coefficient outside ``kept`` is an error (the ray did not match ``rr``).
    """
    facets = rr.facets
    nrows = len(rr.rows)
    dropped = set(rr.columns)
    kept_set = set(kept) if kept is not None else set(facets.ground.nonempty()) - dropped
    seen: dict[tuple[int, ...], Candidate] = {}
    for ray in rays:
        if len(ray) != nrows:
            raise ValueError(f"ray of length {len(ray)} for {nrows} restricted rows")
        for combo in ray_combinations(ray, rr):
            lf = _combine(facets, combo)
            if any(c and m not in kept_set for m, c in lf.terms()):
                raise ValueError("ray does not cancel the dropped coordinates")
            if lf.is_zero():
                continue
            key = tuple(normalize_integer(lf.coeffs))
            if key not in seen:
                seen[key] = Candidate(LinFunctional(facets.ground, key), combo)
    return list(seen.values())


def zero_row_candidates(rr: RestrictedRows) -> list[Candidate]:
    """Facet rows that do not touch the dropped columns at all."""
    return [Candidate(rr.facets.rows[k].normalized(), ((k, 1),)) for k in rr.zero_rows]


@dataclass(frozen=True)
class Redundancy:
    """``functional = sum coeff * candidates[index]`` with nonnegative coefficients."""

    index: int
    combination: tuple[tuple[int, Fraction], ...]


@dataclass
class FacetReport:
    facets: list = field(default_factory=list)
    redundant: list = field(default_factory=list)
    certificates: dict = field(default_factory=dict)
    separators: dict = field(default_factory=dict)


def _dedup(cands: Sequence) -> list:
    seen = {}
    for c in cands:
        lf = c.functional if isinstance(c, Candidate) else c
        key = tuple(normalize_integer(lf.coeffs))
        if key not in seen:
            seen[key] = c
    return list(seen.values())


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a), Fraction(0))


def _interior_point(vecs: list, rng) -> tuple | None:
    """A point strictly inside every candidate half-space, or None when none exists."""
    nvars = len(vecs[0])
    res = solve_inequalities([{k: v for k, v in enumerate(vec) if v} for vec in vecs], [1] * len(vecs), nvars)
    if not res.feasible:
        return None
    q0 = res.point
    # generic perturbation keeps every value >= 1/2 and makes ties in the ray shooting unlikely
    r = [Fraction(rng.randint(-1000, 1000), 1000) for _ in range(nvars)]
    spread = max(sum(abs(c) for c in vec) for vec in vecs)
    delta = Fraction(1, 2) / spread
    return tuple(a + delta * b for a, b in zip(q0, r))


def facet_filter(cands: Sequence, interior=None, keep_separators: bool = False) -> FacetReport:
    """Split candidates into facets and redundant ones.

    A candidate is redundant iff it is a nonnegative combination of the
    other (distinct up to positive scaling) candidates; redundant ones get a
    combination certificate.  The candidates are assumed to describe a
    full-dimensional cone.

    Output-sensitive scheme: each candidate is tested against the facets
    confirmed so far.  If it is not in their cone, the LP yields a point
    ``p`` above all confirmed facets but below the candidate; walking from a
    strictly interior point ``q`` towards ``p``, the first candidate
    hyperplane reached is a new facet.  ``interior`` may supply ``q`` as a
    RankVector (or coefficient-indexed sequence); otherwise it is found by LP.
    With ``keep_separators`` every facet also gets a point on which all
    other candidates are >= 0 and the facet is negative.
    """
    import random

    cands = _dedup(cands)
    funcs = [c.functional if isinstance(c, Candidate) else c for c in cands]
    report = FacetReport()
    report.functionals = funcs
    if not funcs:
        return report
    coords = sorted({m - 1 for f in funcs for m, _ in f.terms()})
    vecs = [tuple(f.coeffs[i] for i in coords) for f in funcs]
    cols = [{k: v for k, v in enumerate(vec) if v} for vec in vecs]
    if interior is not None:
        full = interior.values if hasattr(interior, "values") else tuple(interior)
        q = tuple(Fraction(full[i]) for i in coords)
    else:
        q = _interior_point(vecs, random.Random(0))
    if q is None or any(_dot(v, q) <= 0 for v in vecs):
        return _facet_filter_plain(cands, funcs, cols, len(coords), report, keep_separators)
    cq = [_dot(v, q) for v in vecs]

    status: list = [None] * len(funcs)
    confirmed: list[int] = []
    certs: dict[int, tuple] = {}

    def full_test(j):
        others = [k for k in range(len(funcs)) if k != j]
        res = solve_standard([cols[k] for k in others], list(vecs[j]), len(coords))
        if res.feasible:
            certs[j] = tuple(sorted((others[k], v) for k, v in res.x.items()))
            status[j] = False
        else:
            status[j] = True
            confirmed.append(j)
        return status[j]

    for i in range(len(funcs)):
        while status[i] is None:
            res = solve_standard([cols[j] for j in confirmed], list(vecs[i]), len(coords))
            if res.feasible:
                certs[i] = tuple(sorted((confirmed[j], v) for j, v in res.x.items()))
                status[i] = False
                break
            p = [-v for v in res.farkas]
            best, hits = None, []
            for j, vec in enumerate(vecs):
                cp = _dot(vec, p)
                if cp < 0:
                    t = cq[j] / (cq[j] - cp)
                    if best is None or t < best:
                        best, hits = t, [j]
                    elif t == best:
                        hits.append(j)
            if len(hits) == 1:
                j = hits[0]
                status[j] = True
                confirmed.append(j)
            else:
                found = [j for j in hits if status[j] is None and full_test(j)]
                if not found and status[i] is None:  # pragma: no cover - boundary point lies on a facet
                    raise RuntimeError("ray shooting found no facet")

    for i, c in enumerate(cands):
        if status[i]:
            report.facets.append(c)
        else:
            report.redundant.append(c)
            report.certificates[len(report.redundant) - 1] = Redundancy(i, certs[i])
    if keep_separators:
        _add_separators(report, funcs, cols, len(coords), coords, status)
    return report


def _facet_filter_plain(cands, funcs, cols, nrows, report, keep_separators):
    """Fallback: test each candidate against all others."""
    coords = sorted({m - 1 for f in funcs for m, _ in f.terms()})
    status = []
    for i, f in enumerate(funcs):
        others = [j for j in range(len(funcs)) if j != i]
        res = solve_standard([cols[j] for j in others], [f.coeffs[k] for k in coords], nrows)
        if res.feasible:
            combo = tuple(sorted((others[j], v) for j, v in res.x.items()))
            report.redundant.append(cands[i])
            report.certificates[len(report.redundant) - 1] = Redundancy(i, combo)
            status.append(False)
        else:
            report.facets.append(cands[i])
            status.append(True)
    if keep_separators:
        _add_separators(report, funcs, cols, nrows, coords, status)
    return report


def _add_separators(report, funcs, cols, nrows, coords, status):
    facet_idx = [i for i, s in enumerate(status) if s]
    for pos, i in enumerate(facet_idx):
        others = [j for j in facet_idx if j != i]
        res = solve_standard([cols[j] for j in others], [funcs[i].coeffs[k] for k in coords], nrows)
        point = [Fraction(0)] * funcs[i].ground.dim
        for k, v in zip(coords, res.farkas):
            point[k] = -v
        report.separators[pos] = tuple(point)


def verify_redundancy(funcs: Sequence[LinFunctional], cert: Redundancy) -> bool:
    target = funcs[cert.index]
    if any(v < 0 for _, v in cert.combination) or any(j == cert.index for j, _ in cert.combination):
        return False
    acc = [Fraction(0)] * target.ground.dim
    for j, v in cert.combination:
        for m, c in funcs[j].terms():
            acc[m - 1] += v * c
    return tuple(acc) == target.coeffs


def express(target: LinFunctional, funcs: Sequence[LinFunctional]) -> tuple[tuple[int, Fraction], ...] | None:
    """Nonnegative ``(index, coefficient)`` pairs with ``sum c_i funcs[i] = target``, or None."""
    coords = sorted({m - 1 for f in list(funcs) + [target] for m, _ in f.terms()})
    pos = {k: i for i, k in enumerate(coords)}
    cols = [{pos[m - 1]: c for m, c in f.terms()} for f in funcs]
    res = solve_standard(cols, [target.coeffs[k] for k in coords], len(coords))
    if not res.feasible:
        return None
    return tuple(sorted(res.x.items()))


def verify_expression(target: LinFunctional, funcs: Sequence[LinFunctional], combo) -> bool:
    if combo is None or any(v < 0 for _, v in combo):
        return False
    acc = [Fraction(0)] * target.ground.dim
    for j, v in combo:
        for m, c in funcs[j].terms():
            acc[m - 1] += v * c
    return tuple(acc) == target.coeffs


@dataclass
class Projection:
    restricted: RestrictedRows
    rays: RayList
    candidates: list
    report: FacetReport


def project(facets: FacetMatrix, dropped: Sequence[int], threads: int = 1, filter_facets: bool = True) -> Projection:
    """Rays, candidates and (optionally) the facet split for one projection."""
    from .cone import restricted_rows

    rr = restricted_rows(facets, dropped)
    rays = extreme_rays(CombinationCone.from_restricted(rr), threads=threads)
    cands = zero_row_candidates(rr) + candidates(rays, rr)
    cands = _dedup(cands)
    report = facet_filter(cands) if filter_facets else FacetReport()
    return Projection(rr, rays, cands, report)


def functionals_to_text(funcs: Iterable[LinFunctional]) -> str:
    out = []
    for f in funcs:
        out.append(" ".join(str(c) for c in f.int_coeffs()) + "   # " + f.render())
    return "\n".join(out) + ("\n" if out else "")


def functionals_from_text(ground, text: str) -> list[LinFunctional]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(LinFunctional(ground, tuple(int(t) for t in line.split())))
    return out
