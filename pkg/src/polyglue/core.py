"""Ground sets, rank vectors and information-theoretic expressions.

Subsets of a ground set are integer bitmasks: bit ``i`` stands for the
``i``-th label of the :class:`GroundSet`.  A rank vector stores one exact
rational per nonempty subset, at index ``mask - 1``; the value of the empty
set is the constant zero and is never stored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Iterator, Mapping, Union

MAX_GROUND = 6

Rational = Union[int, Fraction]
SubsetLike = Union[int, str, Iterable[str]]


class GroundSetError(ValueError):
    """Bad labels, unknown elements or mismatched ground sets."""


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> Iterator[int]:
    """Yield the single-bit masks contained in ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def submasks(mask: int, *, include_empty: bool = True) -> Iterator[int]:
    """All submasks of ``mask`` in increasing numeric order."""
    members = list(bits(mask))
    out = []
    for k in range(1 << len(members)):
        sub = 0
        for i, b in enumerate(members):
            if k >> i & 1:
                sub |= b
        out.append(sub)
    out.sort()
    for sub in out:
        if sub or include_empty:
            yield sub


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


@dataclass(frozen=True)
class GroundSet:
    """Ordered tuple of distinct element labels (at most six)."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not 1 <= len(labels) <= MAX_GROUND:
            raise GroundSetError(f"ground set must have 1..{MAX_GROUND} elements, got {len(labels)}")
        if len(set(labels)) != len(labels):
            raise GroundSetError(f"duplicate labels in {labels}")
        for lab in labels:
            if not lab or not lab.isalnum():
                raise GroundSetError(f"labels must be nonempty alphanumeric strings, got {lab!r}")

    @classmethod
    def of(cls, *labels: str) -> GroundSet:
        """``GroundSet.of("abc")``, ``GroundSet.of("a b x1")`` or ``GroundSet.of("a", "b", "x1")``."""
        if len(labels) == 1:
            text = labels[0]
            return cls(tuple(text.split()) if any(ch.isspace() for ch in text) else tuple(text))
        return cls(tuple(labels))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    @property
    def dim(self) -> int:
        """Number of nonempty subsets, i.e. the length of a rank vector."""
        return self.full

    @property
    def compact(self) -> bool:
        """True when every label is a single character (subsets print unseparated)."""
        return all(len(lab) == 1 for lab in self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise GroundSetError(f"{label!r} is not in ground set {self.labels}") from None

    def bit(self, label: str) -> int:
        return 1 << self.index(label)

    def mask(self, subset: SubsetLike) -> int:
        """Convert labels, a subset string or an int into a bitmask."""
        if isinstance(subset, int):
            if not 0 <= subset <= self.full:
                raise GroundSetError(f"mask {subset} out of range for {self.labels}")
            return subset
        if isinstance(subset, str):
            return self.parse(subset)
        m = 0
        for lab in subset:
            m |= self.bit(lab)
        return m

    def members(self, mask: int) -> tuple[str, ...]:
        return tuple(lab for i, lab in enumerate(self.labels) if mask >> i & 1)

    def format(self, mask: int) -> str:
        if mask == 0:
            return "{}"
        sep = "" if self.compact else "."
        return sep.join(self.members(mask))

    def parse(self, text: str) -> int:
        text = text.strip()
        if text in ("{}", "", "0", "∅"):
            return 0
        if "." in text or not self.compact:
            if "." in text:
                parts = text.split(".")
            elif text in self.labels:
                parts = [text]
            else:
                parts = _split_greedy(text, self.labels)
        else:
            parts = list(text)
        m = 0
        for p in parts:
            b = self.bit(p)
            if m & b:
                raise GroundSetError(f"element {p!r} repeated in subset {text!r}")
            m |= b
        return m

    def nonempty(self) -> range:
        """Nonempty masks in canonical (ascending) order."""
        return range(1, self.full + 1)

    def extend(self, *labels: str) -> GroundSet:
        return GroundSet(self.labels + tuple(labels))

    def sub(self, mask: int) -> GroundSet:
        return GroundSet(self.members(mask))

    def embed(self, other: GroundSet, mask: int) -> int:
        """Translate ``mask`` over ``self`` into a mask over ``other`` (by label)."""
        out = 0
        for lab in self.members(mask):
            out |= other.bit(lab)
        return out

    def __str__(self):
        return " ".join(self.labels)


def _split_greedy(text: str, labels: tuple[str, ...]) -> list[str]:
    ordered = sorted(labels, key=len, reverse=True)
    parts, pos = [], 0
    while pos < len(text):
        for lab in ordered:
            if text.startswith(lab, pos):
                parts.append(lab)
                pos += len(lab)
                break
        else:
            raise GroundSetError(f"cannot split {text!r} into labels {labels}")
    return parts


def _coerce_ground(ground) -> GroundSet:
    if isinstance(ground, GroundSet):
        return ground
    if isinstance(ground, str):
        return GroundSet.of(ground)
    return GroundSet(tuple(ground))


@dataclass(frozen=True)
class RankVector:
    """Exact rational values on the nonempty subsets of a ground set."""

    ground: GroundSet
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(as_fraction(v) for v in self.values)
        if len(vals) != self.ground.dim:
            raise GroundSetError(
                f"rank vector on {self.ground.size} elements needs {self.ground.dim} values, got {len(vals)}"
            )
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, ground, fn: Callable[[int], Rational]) -> RankVector:
        ground = _coerce_ground(ground)
        return cls(ground, tuple(fn(m) for m in ground.nonempty()))

    @classmethod
    def from_mapping(cls, ground, mapping: Mapping) -> RankVector:
        """Build from ``{subset: value}``; subsets may be masks or strings."""
        ground = _coerce_ground(ground)
        vals: dict[int, Fraction] = {}
        for key, v in mapping.items():
            m = ground.mask(key)
            if m == 0:
                continue
            if m in vals:
                raise GroundSetError(f"subset {ground.format(m)} given twice")
            vals[m] = as_fraction(v)
        missing = [ground.format(m) for m in ground.nonempty() if m not in vals]
        if missing:
            raise GroundSetError(f"missing values for subsets {missing}")
        return cls(ground, tuple(vals[m] for m in ground.nonempty()))

    @classmethod
    def zero(cls, ground) -> RankVector:
        ground = _coerce_ground(ground)
        return cls(ground, (Fraction(0),) * ground.dim)

    def __getitem__(self, subset: SubsetLike) -> Fraction:
        m = self.ground.mask(subset)
        return Fraction(0) if m == 0 else self.values[m - 1]

    def __call__(self, subset: SubsetLike) -> Fraction:
        return self[subset]

    def _check_same(self, other: RankVector):
        if self.ground != other.ground:
            raise GroundSetError(f"ground sets differ: {self.ground.labels} vs {other.ground.labels}")

    def __add__(self, other: RankVector) -> RankVector:
        self._check_same(other)
        return RankVector(self.ground, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: RankVector) -> RankVector:
        self._check_same(other)
        return RankVector(self.ground, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> RankVector:
        return RankVector(self.ground, tuple(-a for a in self.values))

    def scale(self, factor: Rational) -> RankVector:
        factor = as_fraction(factor)
        return RankVector(self.ground, tuple(factor * a for a in self.values))

    __mul__ = scale
    __rmul__ = scale

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return zip(self.ground.nonempty(), self.values)

    def as_dict(self) -> dict[str, Fraction]:
        return {self.ground.format(m): v for m, v in self.items()}

    def relabel(self, mapping: Mapping[str, str]) -> RankVector:
        """Rename ground elements (a bijection old -> new)."""
        labels = tuple(mapping.get(lab, lab) for lab in self.ground.labels)
        return RankVector(GroundSet(labels), self.values)

    def reorder(self, ground: GroundSet) -> RankVector:
        """Same function presented over ``ground`` (same labels, another order)."""
        if sorted(ground.labels) != sorted(self.ground.labels):
            raise GroundSetError(f"cannot reorder {self.ground.labels} as {ground.labels}")
        return RankVector.from_function(ground, lambda m: self[ground.embed(self.ground, m)])


@dataclass(frozen=True)
class LinFunctional:
    """Rational coefficients over nonempty subsets; stands for ``<c, f> >= 0``."""

    ground: GroundSet
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = tuple(as_fraction(c) for c in self.coeffs)
        if len(cs) != self.ground.dim:
            raise GroundSetError(f"functional needs {self.ground.dim} coefficients, got {len(cs)}")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_terms(cls, ground: GroundSet, terms: Mapping[int, Rational] | Iterable[tuple[int, Rational]]) -> LinFunctional:
        acc = [Fraction(0)] * ground.dim
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in items:
            if m:
                acc[m - 1] += as_fraction(c)
        return cls(ground, tuple(acc))

    @classmethod
    def zero(cls, ground: GroundSet) -> LinFunctional:
        return cls(ground, (Fraction(0),) * ground.dim)

    def __getitem__(self, subset: SubsetLike) -> Fraction:
        m = self.ground.mask(subset)
        return Fraction(0) if m == 0 else self.coeffs[m - 1]

    def evaluate(self, f) -> Fraction:
        """``<c, f>``; ``f`` may be a RankVector or any mask -> value lookup."""
        if isinstance(f, RankVector):
            if f.ground != self.ground:
                raise GroundSetError(f"ground sets differ: {self.ground.labels} vs {f.ground.labels}")
            return sum((c * v for c, v in zip(self.coeffs, f.values) if c), Fraction(0))
        return sum((c * f[m] for m, c in self.terms()), Fraction(0))

    def terms(self) -> Iterator[tuple[int, Fraction]]:
        for i, c in enumerate(self.coeffs):
            if c:
                yield i + 1, c

    @property
    def support(self) -> int:
        """Bitmask over coordinate indices (bit ``mask - 1``) of nonzero coefficients."""
        s = 0
        for i, c in enumerate(self.coeffs):
            if c:
                s |= 1 << i
        return s

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: LinFunctional) -> LinFunctional:
        return LinFunctional(self.ground, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: LinFunctional) -> LinFunctional:
        return LinFunctional(self.ground, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> LinFunctional:
        return LinFunctional(self.ground, tuple(-a for a in self.coeffs))

    def scale(self, factor: Rational) -> LinFunctional:
        factor = as_fraction(factor)
        return LinFunctional(self.ground, tuple(factor * a for a in self.coeffs))

    __mul__ = scale
    __rmul__ = scale

    def normalized(self) -> LinFunctional:
        """Integer coefficients with gcd 1; the sign is kept."""
        return LinFunctional(self.ground, tuple(normalize_integer(self.coeffs)))

    def int_coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.normalized().coeffs)

    def render(self) -> str:
        """Human-readable ``3*abc - 2*ab + ...`` form."""
        parts = []
        for m, c in self.terms():
            name = self.ground.format(m)
            mag = abs(c)
            term = name if mag == 1 else f"{mag}*{name}"
            parts.append(("- " if c < 0 else "+ ") + term)
        if not parts:
            return "0"
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[1:]


def normalize_integer(values: Iterable[Rational]) -> list[int]:
    """Scale a rational vector to coprime integers, keeping the direction."""
    vals = [as_fraction(v) for v in values]
    den = 1
    for v in vals:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for i in ints:
        g = math.gcd(g, i)
    if g == 0:
        return ints
    return [i // g for i in ints]


# ---------------------------------------------------------------------------
# information expressions

def _disjoint(*masks: int) -> bool:
    seen = 0
    for m in masks:
        if seen & m:
            return False
        seen |= m
    return True


def mi_functional(ground: GroundSet, I: SubsetLike, J: SubsetLike, K: SubsetLike = 0) -> LinFunctional:
    """The functional of ``f(I,J|K) = f(IK) + f(JK) - f(IJK) - f(K)``."""
    i, j, k = ground.mask(I), ground.mask(J), ground.mask(K)
    if not i or not j:
        raise ValueError("I and J must be nonempty")
    if not _disjoint(i, j, k):
        raise ValueError(
            f"arguments must be pairwise disjoint: {ground.format(i)}, {ground.format(j)}, {ground.format(k)}"
        )
    return LinFunctional.from_terms(ground, [(i | k, 1), (j | k, 1), (i | j | k, -1), (k, -1)])


def cond_functional(ground: GroundSet, I: SubsetLike, K: SubsetLike = 0) -> LinFunctional:
    """The functional of ``f(I|K) = f(IK) - f(K)``."""
    i, k = ground.mask(I), ground.mask(K)
    if not i:
        raise ValueError("I must be nonempty")
    if i & k:
        raise ValueError(f"arguments must be disjoint: {ground.format(i)}, {ground.format(k)}")
    return LinFunctional.from_terms(ground, [(i | k, 1), (k, -1)])


def ingleton_functional(ground: GroundSet, I, J, K, L) -> LinFunctional:
    """``f[I,J,K,L] = -f(I,J) + f(I,J|K) + f(I,J|L) + f(K,L)``."""
    ms = [ground.mask(x) for x in (I, J, K, L)]
    if not all(ms):
        raise ValueError("Ingleton arguments must be nonempty")
    if not _disjoint(*ms):
        raise ValueError("Ingleton arguments must be pairwise disjoint")
    i, j, k, l = ms
    return (
        -mi_functional(ground, i, j)
        + mi_functional(ground, i, j, k)
        + mi_functional(ground, i, j, l)
        + mi_functional(ground, k, l)
    )


def info_expr(f: RankVector, I: SubsetLike, J: SubsetLike, K: SubsetLike = 0) -> Fraction:
    """``f(I,J|K)``; ``K`` may be empty."""
    return mi_functional(f.ground, I, J, K).evaluate(f)


def mutual(f: RankVector, I: SubsetLike, J: SubsetLike) -> Fraction:
    """``f(I,J)``."""
    return info_expr(f, I, J, 0)


def cond(f: RankVector, I: SubsetLike, K: SubsetLike = 0) -> Fraction:
    """``f(I|K)``."""
    return cond_functional(f.ground, I, K).evaluate(f)


def ingleton(f: RankVector, I, J, K, L) -> Fraction:
    return ingleton_functional(f.ground, I, J, K, L).evaluate(f)


# ---------------------------------------------------------------------------
# polymatroid axioms

def elemental_tag(ground: GroundSet, i: int, j: int = 0, k: int = 0) -> str:
    fmt = ground.format
    if j:
        return f"({fmt(i)},{fmt(j)}|{fmt(k)})" if k else f"({fmt(i)},{fmt(j)})"
    return f"({fmt(i)}|{fmt(k)})"


def elemental_inequalities(ground: GroundSet) -> list[tuple[str, LinFunctional]]:
    """The facets of the polymatroid cone, each named by its expression.

    Monotonicity rows ``(i|M-i)`` come first (in label order), then the
    submodular rows ``(i,j|K)`` ordered by the pair and then by ``K``.
    """
    n = ground.size
    out = []
    for i in range(n):
        b = 1 << i
        out.append((elemental_tag(ground, b, 0, ground.full ^ b), cond_functional(ground, b, ground.full ^ b)))
    for i, j in combinations(range(n), 2):
        bi, bj = 1 << i, 1 << j
        rest = ground.full ^ bi ^ bj
        for k in submasks(rest):
            out.append((elemental_tag(ground, bi, bj, k), mi_functional(ground, bi, bj, k)))
    return out


def is_polymatroid(f: RankVector) -> tuple[bool, list[tuple[str, LinFunctional]]]:
    """Check every facet inequality; return the verdict and the violated rows."""
    violated = [(tag, row) for tag, row in _elemental_cached(f.ground) if row.evaluate(f) < 0]
    return (not violated, violated)


_ELEMENTAL_CACHE: dict[GroundSet, tuple] = {}


def _elemental_cached(ground: GroundSet):
    rows = _ELEMENTAL_CACHE.get(ground)
    if rows is None:
        rows = _ELEMENTAL_CACHE[ground] = tuple(elemental_inequalities(ground))
    return rows


@dataclass(frozen=True)
class Classification:
    integer: bool
    matroid: bool
    modular: bool
    tight_at: dict
    tight: bool


def classify(f: RankVector) -> Classification:
    ok, violated = is_polymatroid(f)
    if not ok:
        raise ValueError(f"not a polymatroid; violates {[t for t, _ in violated]}")
    g = f.ground
    integer = all(v.denominator == 1 for v in f.values)
    matroid = integer and all(f[1 << i] in (0, 1) for i in range(g.size))
    modular = all(f[m] == sum((f[b] for b in bits(m)), Fraction(0)) for m in g.nonempty())
    tight_at = {lab: cond(f, g.bit(lab), g.full ^ g.bit(lab)) == 0 for lab in g.labels}
    return Classification(integer, matroid, modular, tight_at, all(tight_at.values()))


def restrict(f: RankVector, S: SubsetLike) -> RankVector:
    """Restriction of ``f`` to the nonempty subset ``S`` (labels keep their order)."""
    s = f.ground.mask(S)
    if not s:
        raise ValueError("restriction to the empty set")
    sub = f.ground.sub(s)
    return RankVector.from_function(sub, lambda m: f[sub.embed(f.ground, m)])


def distance(f: RankVector, g: RankVector) -> Fraction:
    """Squared Euclidean distance ``||f - g||^2`` (exact)."""
    f._check_same(g)
    return sum(((a - b) ** 2 for a, b in zip(f.values, g.values)), Fraction(0))
