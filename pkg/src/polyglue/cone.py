"""H-representation of the polymatroid cone and column-restricted rows."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .core import GroundSet, LinFunctional, elemental_inequalities


@dataclass(frozen=True)
class FacetMatrix:
    ground: GroundSet
    rows: tuple[LinFunctional, ...]
    tags: tuple[str, ...]

    def __len__(self):
        return len(self.rows)

    def row(self, tag: str) -> LinFunctional:
        return self.rows[self.tags.index(tag)]

    def to_text(self) -> str:
        """One line per row: ``tag: c_S1 c_S2 ...`` with subsets in ascending mask order."""
        head = "# columns: " + " ".join(self.ground.format(m) for m in self.ground.nonempty())
        lines = [head]
        for tag, row in zip(self.tags, self.rows):
            lines.append(f"{tag}: " + " ".join(str(c) for c in row.int_coeffs()))
        return "\n".join(lines) + "\n"


def facet_count(n: int) -> int:
    return n + comb(n, 2) * 2 ** (n - 2)


_CACHE: dict[GroundSet, FacetMatrix] = {}


def gamma_facets(M: GroundSet) -> FacetMatrix:
    """All elemental inequalities ``(i|M-i)`` and ``(i,j|K)`` of the polymatroid cone on ``M``."""
    if M.size < 2:
        raise ValueError("the facet description needs at least two elements")
    fm = _CACHE.get(M)
    if fm is None:
        pairs = elemental_inequalities(M)
        fm = _CACHE[M] = FacetMatrix(M, tuple(r for _, r in pairs), tuple(t for t, _ in pairs))
    return fm


@dataclass(frozen=True)
class RestrictedRows:
    """Distinct nonzero restrictions of facet rows to a set of dropped columns.

    ``columns`` are the dropped subsets in ascending mask order, ``rows`` the
    restricted integer rows, and ``backrefs[i]`` the indices of every full
    facet row whose restriction equals ``rows[i]``.
    """

    facets: FacetMatrix
    columns: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]
    backrefs: tuple[tuple[int, ...], ...]
    zero_rows: tuple[int, ...]

    def tags(self, i: int) -> tuple[str, ...]:
        return tuple(self.facets.tags[k] for k in self.backrefs[i])

    def find(self, tag: str) -> int:
        k = self.facets.tags.index(tag)
        for i, refs in enumerate(self.backrefs):
            if k in refs:
                return i
        raise KeyError(tag)


def restricted_rows(Mfac: FacetMatrix, dropped: Sequence[int]) -> RestrictedRows:
    cols = tuple(sorted(set(dropped)))
    if not cols:
        raise ValueError("no dropped coordinates")
    index: dict[tuple[int, ...], int] = {}
    rows, refs, zero = [], [], []
    for k, row in enumerate(Mfac.rows):
        r = tuple(int(row.coeffs[m - 1]) for m in cols)
        if not any(r):
            zero.append(k)
            continue
        i = index.get(r)
        if i is None:
            index[r] = len(rows)
            rows.append(r)
            refs.append([k])
        else:
            refs[i].append(k)
    return RestrictedRows(Mfac, cols, tuple(rows), tuple(tuple(x) for x in refs), tuple(zero))
