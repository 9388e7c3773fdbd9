"""Random rational polymatroids and extension pairs, valid by construction.

A sample is a sum of components, each a positive multiple of a simple
polymatroid (``rho_A``, a uniform matroid on a subset, a truncated modular
function ``min(s|A n T|, r)``, or the rank function of a random rational
subspace arrangement).  A one-point extension extends
every component separately (the component's excess is a convex mixture of
excess functions known to be valid for it, or a fresh random subspace for
arrangement components) and adds a free multiple of ``rho_x``.  Sums of
extensions of the summands extend the sum, so no rejection step is needed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .core import GroundSet, RankVector, bits, info_expr, popcount
from .construct import (
    ExcessFunction,
    SubspaceArrangement,
    excess_copy,
    excess_pointed,
    excess_uniform,
    extend_by_excess_unchecked,
    rank_from_subspaces,
    rho,
)
from .glue import ExtensionPair

WEIGHTS = (Fraction(1, 2), Fraction(1), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3))


@dataclass(frozen=True)
class Component:
    f: RankVector
    weight: Fraction
    arrangement: SubspaceArrangement | None = None

    @property
    def value(self) -> RankVector:
        return self.f.scale(self.weight)


def _rand_mask(rng: random.Random, ground: GroundSet) -> int:
    return rng.randint(1, ground.full)


def _uniform_matroid(ground: GroundSet, k: int, A: int) -> RankVector:
    return RankVector.from_function(ground, lambda m: min(k, popcount(m & A)))


def _random_arrangement(rng: random.Random, ground: GroundSet, dim: int | None = None) -> SubspaceArrangement:
    dim = dim or rng.randint(2, 4)
    return SubspaceArrangement(dim, {lab: _random_subspace(rng, dim) for lab in ground.labels})


def _random_subspace(rng: random.Random, dim: int) -> tuple:
    k = rng.randint(0, min(2, dim))
    return tuple(tuple(rng.randint(-1, 1) for _ in range(dim)) for _ in range(k))


def _truncated(ground: GroundSet, s: int, r: int, T: int) -> RankVector:
    return RankVector.from_function(ground, lambda m: min(s * popcount(m & T), r))


KINDS = ("rho", "uniform", "truncated", "linear")


def random_component(ground: GroundSet, rng: random.Random, kinds: Sequence[str] = KINDS) -> Component:
    kind = rng.choice(kinds)
    w = rng.choice(WEIGHTS)
    if kind == "truncated":
        s = rng.randint(1, 4)
        return Component(_truncated(ground, s, rng.randint(s, 3 * s), _rand_mask(rng, ground)), w)
    if kind == "rho":
        return Component(rho(ground, _rand_mask(rng, ground)), w)
    if kind == "uniform":
        A = _rand_mask(rng, ground)
        return Component(_uniform_matroid(ground, rng.randint(1, max(1, popcount(A))), A), w)
    arr = _random_arrangement(rng, ground)
    return Component(rank_from_subspaces(arr, ground), w, arr)


def random_components(ground: GroundSet, rng: random.Random, k: int | None = None, **kw) -> list[Component]:
    k = k if k is not None else rng.randint(1, 4)
    return [random_component(ground, rng, **kw) for _ in range(k)]


def total(ground: GroundSet, comps: Sequence[Component]) -> RankVector:
    out = RankVector.zero(ground)
    for c in comps:
        out = out + c.value
    return out


def random_polymatroid(ground: GroundSet, rng: random.Random, k: int | None = None) -> RankVector:
    return total(ground, random_components(ground, rng, k))


def _min_pair(f: RankVector, avoid: int = 0, cond_on: int = 0) -> Fraction:
    g = f.ground
    els = [b for b in bits(g.full) if not b & avoid]
    vals = [info_expr(f, a, b) for a, b in combinations(els, 2)]
    if cond_on:
        vals += [info_expr(f, a, b, cond_on) for a, b in combinations(els, 2)]
    return min(vals) if vals else Fraction(0)


def excess_atoms(f: RankVector, rng: random.Random) -> list[ExcessFunction]:
    """A few excess functions, each valid for ``f`` on its own."""
    g = f.ground
    atoms = [excess_copy(f, rng.randint(0, g.full)) for _ in range(2)]
    tmax = _min_pair(f)
    atoms.append(excess_uniform(f, 0, tmax * rng.choice((0, Fraction(1, 2), 1, 1))))
    if g.size >= 2:
        c = 1 << rng.randrange(g.size)
        tc = _min_pair(f, avoid=c, cond_on=c) if g.size >= 3 else Fraction(0)
        atoms.append(excess_pointed(f, g.format(c), 0, tc * rng.choice((0, Fraction(1, 2), 1, 1))))
    return atoms


def random_excess(f: RankVector, rng: random.Random, walk: bool = False) -> ExcessFunction:
    """Convex mixture of valid atoms (validity conditions are convex in ``e``),
    optionally followed by a short random walk inside the valid region."""
    atoms = excess_atoms(f, rng)
    pick = rng.sample(atoms, 1 if rng.random() < 0.5 else rng.randint(1, len(atoms)))
    ws = [rng.randint(1, 3) for _ in pick]
    s = sum(ws)
    vals = [sum(Fraction(w, s) * a.values[m] for w, a in zip(ws, pick)) for m in range(f.ground.full + 1)]
    e = ExcessFunction(f.ground, tuple(vals))
    return walk_excess(f, e, rng) if walk else e


def excess_constraints(f: RankVector) -> list[tuple[dict[int, int], Fraction]]:
    """Validity of an excess function as linear constraints ``sum c_A e(A) + k >= 0``."""
    g = f.ground
    out: list[tuple[dict[int, int], Fraction]] = [({g.full: 1}, Fraction(0))]
    for A in range(g.full + 1):
        for b in bits(g.full ^ A):
            out.append(({A: 1, A | b: -1}, Fraction(0)))
    for a in bits(g.full):
        rest = g.full ^ a
        out.append(({g.full: 1, rest: -1}, f[g.full] - f[rest]))
    for a, b in combinations(list(bits(g.full)), 2):
        for A in range(g.full + 1):
            if A & (a | b):
                continue
            co: dict[int, int] = {}
            for m, c in ((a | A, 1), (b | A, 1), (a | b | A, -1), (A, -1)):
                co[m] = co.get(m, 0) + c
            out.append(({m: c for m, c in co.items() if c}, info_expr(f, a, b, A)))
    return out


def walk_excess(f: RankVector, start: ExcessFunction, rng: random.Random, steps: int = 2) -> ExcessFunction:
    """Move a valid excess function along random directions, staying valid.

    Each step goes to the boundary (or a random point before it) of the
    polyhedron of valid excess functions, so samples are often extreme.
    """
    cons = excess_constraints(f)
    e = list(start.values)
    n = len(e)
    for _ in range(steps):
        d = [rng.randint(-2, 2) for _ in range(n)]
        smax = None
        for co, k in cons:
            slack = sum(c * e[m] for m, c in co.items()) + k
            rate = sum(c * d[m] for m, c in co.items())
            if rate < 0:
                s = slack / -rate
                smax = s if smax is None or s < smax else smax
        if smax is None:
            smax = Fraction(2)
        s = smax if rng.random() < 0.5 else smax * Fraction(rng.randint(0, 4), 4)
        e = [x + s * dx for x, dx in zip(e, d)]
    return ExcessFunction(f.ground, tuple(e))


def extend_component(c: Component, x: str, rng: random.Random) -> Component:
    g = c.f.ground
    if c.arrangement is not None and rng.random() < 0.7:
        arr = c.arrangement
        new = SubspaceArrangement(arr.dim, {**arr.generators, x: _random_subspace(rng, arr.dim)})
        return Component(rank_from_subspaces(new, g.extend(x)), c.weight, new)
    return Component(extend_by_excess_unchecked(c.f, x, random_excess(c.f, rng, walk=rng.random() < 0.5)), c.weight)


def extend_components(comps: Sequence[Component], x: str, rng: random.Random) -> list[Component]:
    out = [extend_component(c, x, rng) for c in comps]
    g = out[0].f.ground if out else None
    if g is not None and rng.random() < 0.5:
        out.append(Component(rho(g, g.bit(x)), rng.choice(WEIGHTS)))
    return out


def random_extension(comps: Sequence[Component], labels: Sequence[str], rng: random.Random) -> RankVector:
    for x in labels:
        comps = extend_components(comps, x, rng)
    return total(comps[0].f.ground, comps)


def random_pair(
    base: GroundSet,
    X: Sequence[str],
    Y: Sequence[str],
    rng: random.Random,
    comps: Sequence[Component] | None = None,
) -> ExtensionPair:
    """Two independent random extensions of one random polymatroid on ``base``.

    Half of the time the components are first merged into one, so that the
    excess atoms see the whole base (this is where non-amalgamable pairs
    come from).
    """
    comps = list(comps) if comps is not None else random_components(base, rng)
    if rng.random() < 0.5:
        comps = [Component(total(base, comps), Fraction(1))]
    fX = random_extension(comps, X, rng)
    fY = random_extension(comps, Y, rng)
    return ExtensionPair(base, fX, fY)


def dependent_components(rng: random.Random, ground: GroundSet, a: str, b: str) -> list[Component]:
    """Components whose sum has ``f(a|b) = 0``: the value on ``a`` never exceeds the one on ``b``."""
    comps = []
    ab = ground.mask([a, b])
    for _ in range(rng.randint(1, 3)):
        kind = rng.choice(("ab", "b", "linear"))
        w = rng.choice(WEIGHTS)
        if kind == "ab":
            comps.append(Component(rho(ground, ab), w))
        elif kind == "b":
            comps.append(Component(rho(ground, ground.bit(b)), w))
        else:
            dim = rng.randint(2, 4)
            vb = _random_subspace(rng, dim)
            # V_a spanned by a subset of V_b's generators
            va = tuple(v for v in vb if rng.random() < 0.5)
            gens = {lab: () for lab in ground.labels}
            gens[a], gens[b] = va, vb
            arr = SubspaceArrangement(dim, gens)
            comps.append(Component(rank_from_subspaces(arr, ground), w, arr))
    return comps


def hard_pair(base: GroundSet, rng: random.Random, steps: int = 1) -> ExtensionPair:
    """One-point extensions started from the extreme uniform / pointed excess
    functions, then moved by a short valid random walk.

    Such pairs sit near the boundary of the amalgamable region, so both
    outcomes are common (generic pairs almost always have an amalgam).
    """
    s = rng.randint(1, 3)
    core = Component(_truncated(base, s, rng.randint(s, max(s, base.size * s - 1)), base.full), Fraction(1))
    extra = random_components(base, rng, k=rng.randint(0, 2))
    f = total(base, [core] + [Component(x.f, x.weight / 4, x.arrangement) for x in extra])
    c = rng.choice(base.labels)
    cb = base.bit(c)
    t = _min_pair(f)
    u = _min_pair(f, avoid=cb, cond_on=cb)
    # a constant shift keeps an excess function valid and raises f(x|M)
    ux = rng.choice((0, 0, t / 2, t))
    uy = rng.choice((0, 0, u / 2, u))
    ex = walk_excess(f, excess_uniform(f, ux, t), rng, steps=rng.randint(0, steps))
    ey = walk_excess(f, excess_pointed(f, c, uy, u), rng, steps=rng.randint(0, steps))
    return ExtensionPair(base, extend_by_excess_unchecked(f, "x", ex), extend_by_excess_unchecked(f, "y", ey))
