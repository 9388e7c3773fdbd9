"""Constructions of new polymatroids from old ones.

Rank-one matroids ``rho_A``, subtraction of ``lambda * rho_A``, tightening and
the tight + modular decomposition, one-point extensions through excess
functions, natural coordinates on four elements and rank functions of
rational subspace arrangements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .core import (
    GroundSet,
    LinFunctional,
    RankVector,
    Rational,
    as_fraction,
    bits,
    cond,
    cond_functional,
    info_expr,
    ingleton_functional,
    is_polymatroid,
    mi_functional,
    submasks,
)


class ConstructionError(ValueError):
    """A precondition of a construction does not hold."""

    def __init__(self, message: str, violations: Sequence[str] = ()):
        super().__init__(message if not violations else f"{message}: {'; '.join(violations)}")
        self.violations = list(violations)


def rho(ground: GroundSet, A) -> RankVector:
    a = ground.mask(A)
    if not a:
        raise ConstructionError("rho_A needs a nonempty A")
    return RankVector.from_function(ground, lambda m: 1 if m & a else 0)


def subtract_rho_conditions(f: RankVector, A, lam: Rational) -> list[str]:
    """Failing hypotheses for ``f - lam * rho_A`` to be a polymatroid."""
    g = f.ground
    a = g.mask(A)
    lam = as_fraction(lam)
    rest = g.full ^ a
    bad = []
    for x, y in combinations(list(bits(a)), 2):
        for B in submasks(rest):
            v = info_expr(f, x, y, B)
            if lam > v:
                bad.append(f"lambda={lam} > f({g.format(x)},{g.format(y)}|{g.format(B)})={v}")
    for x in bits(a):
        v = cond(f, x, rest)
        if lam > v:
            bad.append(f"lambda={lam} > f({g.format(x)}|{g.format(rest)})={v}")
    return bad


def subtract_rho_unchecked(f: RankVector, A, lam: Rational) -> RankVector:
    return f - rho(f.ground, A).scale(lam)


def subtract_rho(f: RankVector, A, lam: Rational) -> RankVector:
    """``f - lam * rho_A``, refusing when the sufficient conditions fail."""
    bad = subtract_rho_conditions(f, A, lam)
    if bad:
        raise ConstructionError("cannot subtract rho", bad)
    return subtract_rho_unchecked(f, A, lam)


def tighten(f: RankVector, a: str) -> RankVector:
    """Tightening at element ``a``: subtract ``f(a|M-a) * rho_a``."""
    g = f.ground
    b = g.bit(a)
    return subtract_rho_unchecked(f, b, cond(f, b, g.full ^ b))


def tighten_set(f: RankVector, A: Iterable[str] | str) -> RankVector:
    g = f.ground
    m = g.mask(A)
    for lab in g.members(m):
        f = tighten(f, lab)
    return f


def tighten_all(f: RankVector) -> RankVector:
    return tighten_set(f, f.ground.full)


def modular_decomposition(f: RankVector) -> tuple[RankVector, RankVector]:
    """Split ``f`` into its tight part and the modular remainder."""
    tight = tighten_all(f)
    return tight, f - tight


# ---------------------------------------------------------------------------
# excess functions

@dataclass(frozen=True)
class ExcessFunction:
    """Values ``e(A)`` on every subset of the base, indexed by mask (``e[0]`` is ``e(empty)``)."""

    ground: GroundSet
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(as_fraction(v) for v in self.values)
        if len(vals) != self.ground.full + 1:
            raise ValueError(f"excess function needs {self.ground.full + 1} values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, ground: GroundSet, fn) -> ExcessFunction:
        return cls(ground, tuple(fn(m) for m in range(ground.full + 1)))

    @classmethod
    def from_mapping(cls, ground: GroundSet, mapping: Mapping) -> ExcessFunction:
        vals: dict[int, Fraction] = {}
        for key, v in mapping.items():
            vals[ground.mask(key)] = as_fraction(v)
        missing = [ground.format(m) for m in range(ground.full + 1) if m not in vals]
        if missing:
            raise ValueError(f"excess function missing subsets {missing}")
        return cls(ground, tuple(vals[m] for m in range(ground.full + 1)))

    def __getitem__(self, subset) -> Fraction:
        return self.values[self.ground.mask(subset)]

    def mi(self, a: int, b: int, A: int = 0) -> Fraction:
        """``e(a,b|A) = e(aA) + e(bA) - e(abA) - e(A)``."""
        v = self.values
        return v[a | A] + v[b | A] - v[a | b | A] - v[A]


def excess_of(fx: RankVector, x: str) -> ExcessFunction:
    """Recover the excess function of a one-point extension at ``x``."""
    g = fx.ground
    xb = g.bit(x)
    base = g.sub(g.full ^ xb)
    return ExcessFunction.from_function(base, lambda m: fx[base.embed(g, m) | xb] - fx[base.embed(g, m)])


def excess_conditions(f: RankVector, e: ExcessFunction) -> list[str]:
    """Violated conditions for ``f`` extended by ``e`` to be a polymatroid.

    1. ``e`` is nonnegative and nonincreasing;
    2. ``e(a|M-a) + f(a|M-a) >= 0``;
    3. ``e(a,b|A) + f(a,b|A) >= 0``.
    """
    g = f.ground
    if e.ground != g:
        raise ValueError(f"excess function is on {e.ground.labels}, base is {g.labels}")
    fmt = g.format
    v = e.values
    bad = []
    if v[g.full] < 0:
        bad.append(f"1: e({fmt(g.full)})={v[g.full]} < 0")
    for A in range(g.full + 1):
        for b in bits(g.full ^ A):
            if v[A] < v[A | b]:
                bad.append(f"1: e({fmt(A)})={v[A]} < e({fmt(A | b)})={v[A | b]}")
    for a in bits(g.full):
        rest = g.full ^ a
        val = (v[g.full] - v[rest]) + cond(f, a, rest)
        if val < 0:
            bad.append(f"2: e({fmt(a)}|{fmt(rest)})+f({fmt(a)}|{fmt(rest)})={val} < 0")
    for a, b in combinations(list(bits(g.full)), 2):
        for A in submasks(g.full ^ a ^ b):
            val = e.mi(a, b, A) + info_expr(f, a, b, A)
            if val < 0:
                bad.append(f"3: e({fmt(a)},{fmt(b)}|{fmt(A)})+f({fmt(a)},{fmt(b)}|{fmt(A)})={val} < 0")
    return bad


def extend_by_excess_unchecked(f: RankVector, x: str, e: ExcessFunction) -> RankVector:
    g = f.ground
    gx = g.extend(x)
    xb = 1 << g.size
    return RankVector.from_function(gx, lambda m: f[m & g.full] + (e.values[m & g.full] if m & xb else 0))


def extend_by_excess(f: RankVector, x: str, e: ExcessFunction) -> RankVector:
    """One-point extension ``f_x(Ax) = f(A) + e(A)``, validated first."""
    bad = excess_conditions(f, e)
    if bad:
        raise ConstructionError(f"invalid excess function for new element {x!r}", bad)
    return extend_by_excess_unchecked(f, x, e)


def _check_nonneg(**params):
    for name, val in params.items():
        if as_fraction(val) < 0:
            raise ConstructionError(f"{name} must be nonnegative, got {val}")


def excess_uniform(f: RankVector, u: Rational, t: Rational) -> ExcessFunction:
    """``u + t`` on the empty set and ``u`` elsewhere."""
    _check_nonneg(u=u, t=t)
    u, t = as_fraction(u), as_fraction(t)
    return ExcessFunction.from_function(f.ground, lambda m: u + t if m == 0 else u)


def excess_pointed(f: RankVector, c: str, u: Rational, t: Rational) -> ExcessFunction:
    """``u + t`` on the empty set and on ``{c}``, ``u`` elsewhere."""
    _check_nonneg(u=u, t=t)
    u, t = as_fraction(u), as_fraction(t)
    cb = f.ground.bit(c)
    return ExcessFunction.from_function(f.ground, lambda m: u + t if m in (0, cb) else u)


def excess_copy(f: RankVector, B) -> ExcessFunction:
    """The new element duplicates the subset ``B``: ``e(A) = f(A u B) - f(A)``."""
    b = f.ground.mask(B)
    return ExcessFunction.from_function(f.ground, lambda m: f[m | b] - f[m])


# ---------------------------------------------------------------------------
# natural coordinates on four elements

NATURAL_TERMS = (
    "ingleton",
    ("a", "b", "x1"), ("a", "b", "x2"), ("a", "x1", "b"), ("b", "x1", "a"),
    ("a", "x2", "b"), ("b", "x2", "a"), ("x1", "x2", "a"), ("x1", "x2", "b"),
    ("x1", "x2", ""), ("a", "b", "x1x2"),
    ("a", "bx1x2"), ("b", "ax1x2"), ("x1", "abx2"), ("x2", "abx1"),
)
"""Coordinate list in role names ``a, b, x1, x2``; the first is minus the Ingleton value."""


@dataclass(frozen=True)
class NaturalCoords:
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(as_fraction(v) for v in self.values)
        if len(vals) != 15:
            raise ValueError(f"natural coordinates have 15 entries, got {len(vals)}")
        object.__setattr__(self, "values", vals)


def _role_mask(ground: GroundSet, roles: dict[str, str], spec: str) -> int:
    m = 0
    rest = spec
    for role in ("x1", "x2", "a", "b"):
        if role in rest:
            rest = rest.replace(role, "", 1)
            m |= ground.bit(roles[role])
    if rest:
        raise ValueError(f"bad role spec {spec!r}")
    return m


def natural_functionals(ground: GroundSet, labels: Sequence[str] | None = None) -> list[LinFunctional]:
    """The 15 coordinate functionals; ``labels`` plays the roles ``a, b, x1, x2``."""
    labels = tuple(labels) if labels is not None else ground.labels
    if len(labels) != 4 or ground.size != 4:
        raise ValueError("natural coordinates are defined on four elements")
    roles = dict(zip(("a", "b", "x1", "x2"), labels))
    rm = lambda s: _role_mask(ground, roles, s)  # noqa: E731
    out = []
    for term in NATURAL_TERMS:
        if term == "ingleton":
            out.append(-ingleton_functional(ground, *(ground.bit(roles[r]) for r in ("a", "b", "x1", "x2"))))
        elif len(term) == 3:
            out.append(mi_functional(ground, rm(term[0]), rm(term[1]), rm(term[2])))
        else:
            out.append(cond_functional(ground, rm(term[0]), rm(term[1])))
    return out


def natural_coords(f: RankVector, labels: Sequence[str] | None = None) -> NaturalCoords:
    return NaturalCoords(tuple(row.evaluate(f) for row in natural_functionals(f.ground, labels)))


_NATURAL_INVERSE: dict = {}


def natural_inverse(ground: GroundSet, labels: Sequence[str] | None = None) -> list[list[Fraction]]:
    """Matrix ``R`` with ``f(S) = sum_k R[S-1][k] * coord_k``; computed once per ground."""
    key = (ground, tuple(labels) if labels is not None else ground.labels)
    inv = _NATURAL_INVERSE.get(key)
    if inv is None:
        rows = [list(r.coeffs) for r in natural_functionals(ground, labels)]
        inv = _NATURAL_INVERSE[key] = invert(rows)
    return inv


def rank_from_natural(v: NaturalCoords | Sequence, labels: Sequence[str] = ("a", "b", "x1", "x2")) -> RankVector:
    vals = v.values if isinstance(v, NaturalCoords) else NaturalCoords(tuple(v)).values
    ground = GroundSet(tuple(labels))
    inv = natural_inverse(ground)
    return RankVector(ground, tuple(sum((c * x for c, x in zip(row, vals)), Fraction(0)) for row in inv))


# ---------------------------------------------------------------------------
# exact linear algebra

def invert(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over the rationals."""
    n = len(matrix)
    a = [[as_fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                k = a[r][col]
                a[r] = [x - k * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def rank(vectors: Sequence[Sequence]) -> int:
    """Rank of a list of rational row vectors."""
    rows = [[as_fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    width = len(rows[0])
    r = 0
    for col in range(width):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        for i in range(r + 1, len(rows)):
            if rows[i][col]:
                k = rows[i][col] / p
                rows[i] = [x - k * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


@dataclass(frozen=True)
class SubspaceArrangement:
    """Generators of a subspace of ``Q^dim`` for each ground element."""

    dim: int
    generators: Mapping[str, tuple[tuple[Fraction, ...], ...]]

    def __post_init__(self):
        gens = {}
        for lab, vecs in self.generators.items():
            vv = tuple(tuple(as_fraction(x) for x in vec) for vec in vecs)
            for vec in vv:
                if len(vec) != self.dim:
                    raise ValueError(f"generator {vec} for {lab!r} has length {len(vec)}, expected {self.dim}")
            gens[lab] = vv
        object.__setattr__(self, "generators", gens)


def rank_from_subspaces(S: SubspaceArrangement, M: GroundSet) -> RankVector:
    """``f(A)`` is the dimension of the span of the subspaces of the elements in ``A``."""
    missing = [lab for lab in M.labels if lab not in S.generators]
    if missing:
        raise ValueError(f"no subspace given for {missing}")
    return RankVector.from_function(
        M, lambda m: rank([vec for lab in M.members(m) for vec in S.generators[lab]])
    )


def is_valid_extension(f: RankVector, x: str, e: ExcessFunction) -> bool:
    """Brute-force alternative to :func:`excess_conditions`, via the full axiom check."""
    return is_polymatroid(extend_by_excess_unchecked(f, x, e))[0]
