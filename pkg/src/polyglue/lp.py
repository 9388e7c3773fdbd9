"""Exact feasibility for linear systems with Farkas certificates.

The engine is a revised simplex over exact rationals that only runs Phase I:
either it drives the artificial variables to zero (feasible) or it stops at
an optimal Phase I basis whose simplex multipliers are an infeasibility
certificate.  Pricing is Dantzig's rule; after a run of degenerate pivots it
switches to Bland's rule for the rest of the solve, which cannot cycle.

Column data is sparse: each column is a ``{row: coefficient}`` mapping.
Arithmetic runs on ``gmpy2.mpq`` when gmpy2 is importable and on
:class:`fractions.Fraction` otherwise; results are always returned as
Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

try:  # pragma: no cover - exercised implicitly
    from gmpy2 import mpq as _num
except ImportError:  # pragma: no cover
    _num = Fraction

Column = Mapping[int, Fraction]

DEGENERATE_SWITCH = 30


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(int(x.numerator), int(x.denominator))


@dataclass(frozen=True)
class StandardResult:
    """Outcome of ``find x >= 0 with A x = b``.

    ``x`` maps column index to a nonzero value when feasible.  Otherwise
    ``farkas`` is a row vector ``y`` with ``y.A_j <= 0`` for every column and
    ``y.b > 0``.
    """

    feasible: bool
    x: dict | None = None
    farkas: tuple | None = None
    pivots: int = 0


def solve_standard(columns: Sequence[Column], rhs: Sequence, nrows: int | None = None) -> StandardResult:
    r = len(rhs) if nrows is None else nrows
    n = len(columns)
    sign = [(-1 if Fraction(b) < 0 else 1) for b in rhs]
    cols = [
        [(row, _num(c) * sign[row]) for row, c in sorted(col.items()) if c]
        for col in columns
    ]
    xb = [_num(b) * s for b, s in zip(rhs, sign)]
    zero, one = _num(0), _num(1)
    binv = [[one if i == j else zero for j in range(r)] for i in range(r)]
    basis = [n + i for i in range(r)]
    is_basic = [False] * n
    bland = False
    degenerate = 0
    pivots = 0

    while True:
        art_rows = [i for i in range(r) if basis[i] >= n]
        if not art_rows:
            break
        y = [zero] * r
        for i in art_rows:
            row = binv[i]
            for j in range(r):
                if row[j]:
                    y[j] += row[j]
        enter, best = -1, zero
        for j in range(n):
            if is_basic[j]:
                continue
            d = zero
            for row, c in cols[j]:
                if y[row]:
                    d += y[row] * c
            if d > best:
                enter, best = j, d
                if bland:
                    break
        if enter < 0:
            break
        col = cols[enter]
        w = [zero] * r
        for i in range(r):
            bi = binv[i]
            s = zero
            for row, c in col:
                if bi[row]:
                    s += bi[row] * c
            w[i] = s
        leave, ratio = -1, None
        for i in range(r):
            if w[i] > 0:
                t = xb[i] / w[i]
                if ratio is None or t < ratio or (t == ratio and basis[i] < basis[leave]):
                    leave, ratio = i, t
        if leave < 0:  # pragma: no cover - phase I objective is bounded below
            raise RuntimeError("unbounded phase I direction")
        pivots += 1
        if ratio == 0:
            degenerate += 1
            if degenerate >= DEGENERATE_SWITCH:
                bland = True
        else:
            degenerate = 0
        wp = w[leave]
        prow = [v / wp for v in binv[leave]]
        binv[leave] = prow
        for i in range(r):
            if i != leave and w[i]:
                wi = w[i]
                bi = binv[i]
                binv[i] = [a - wi * p if p else a for a, p in zip(bi, prow)]
                xb[i] -= wi * ratio
        xb[leave] = ratio
        old = basis[leave]
        if old < n:
            is_basic[old] = False
        basis[leave] = enter
        is_basic[enter] = True

    infeas = sum((xb[i] for i in range(r) if basis[i] >= n), zero)
    if infeas == 0:
        x = {basis[i]: _frac(xb[i]) for i in range(r) if basis[i] < n and xb[i]}
        return StandardResult(True, x=x, pivots=pivots)
    y = [zero] * r
    for i in range(r):
        if basis[i] >= n:
            row = binv[i]
            for j in range(r):
                if row[j]:
                    y[j] += row[j]
    farkas = tuple(_frac(v) * s for v, s in zip(y, sign))
    return StandardResult(False, farkas=farkas, pivots=pivots)


@dataclass(frozen=True)
class InequalityResult:
    """Outcome of ``find u (free) with a_i . u >= b_i for all i``.

    Feasible: ``point`` lists the coordinates of ``u``.  Infeasible:
    ``multipliers`` is ``z >= 0`` with ``sum z_i a_i = 0`` and
    ``sum z_i b_i = 1``.
    """

    feasible: bool
    point: tuple | None = None
    multipliers: tuple | None = None


def solve_inequalities(rows: Sequence[Column], rhs: Sequence, nvars: int) -> InequalityResult:
    """Decide ``A u >= b`` through the Farkas system ``z >= 0, A^T z = 0, b.z = 1``.

    A feasible Farkas system is itself the certificate; an infeasible one
    yields, from its Phase I multipliers, a solution of the original system.
    """
    columns = []
    for row, b in zip(rows, rhs):
        col = dict(row)
        if b:
            col[nvars] = Fraction(b)
        columns.append(col)
    target = [Fraction(0)] * nvars + [Fraction(1)]
    res = solve_standard(columns, target)
    if res.feasible:
        z = [Fraction(0)] * len(rows)
        for j, v in res.x.items():
            z[j] = v
        return InequalityResult(False, multipliers=tuple(z))
    y = res.farkas
    last = y[nvars]
    return InequalityResult(True, point=tuple(-v / last for v in y[:nvars]))
