"""Exact feasibility of ``A x = b, x >= 0`` by a Phase-I simplex over Fractions.

Bland's rule guarantees termination.  An infeasible system comes back with a
Farkas vector ``y`` (``y.A <= 0`` column-wise and ``y.b > 0``), which the
caller can re-verify without trusting the simplex.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class Feasible:
    x: tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    y: tuple[Fraction, ...]

    def __bool__(self) -> bool:
        return False


def check_farkas(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction], y) -> bool:
    ncols = len(rows[0]) if rows else 0
    if sum(yi * bi for yi, bi in zip(y, rhs)) <= 0:
        return False
    return all(sum(y[i] * rows[i][j] for i in range(len(rows))) <= 0 for j in range(ncols))


def feasible(rows: Sequence[Sequence[object]], rhs: Sequence[object]) -> Feasible | Infeasible:
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    # flip rows so that b >= 0; artificials then form the starting basis
    flip = [Fraction(b) < 0 for b in rhs]
    tab: list[list[Fraction]] = []
    for i in range(m):
        s = -1 if flip[i] else 1
        row = [s * Fraction(v) for v in rows[i]]
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(row + art + [s * Fraction(rhs[i])])
    width = ncols + m
    basis = list(range(ncols, ncols + m))
    # phase-I objective: minimize the sum of artificials; reduced costs in ``cost``
    cost = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(ncols):
            cost[j] -= tab[i][j]
        cost[width] -= tab[i][width]
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][width] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # pragma: no cover - phase I is bounded below by 0
            raise ArithmeticError("unbounded phase-I problem")
        p = best[1]
        prow = tab[p]
        pv = prow[enter]
        if pv != 1:
            prow = [v / pv for v in prow]
            tab[p] = prow
        nz = [j for j, v in enumerate(prow) if v]
        for i in range(m):
            if i != p:
                f = tab[i][enter]
                if f:
                    row = tab[i]
                    for j in nz:
                        row[j] -= f * prow[j]
        f = cost[enter]
        for j in nz:
            cost[j] -= f * prow[j]
        basis[p] = enter
    if -cost[width] > 0:
        # y_i = 1 - (reduced cost of artificial i), mapped back through the row flips
        y = []
        for i in range(m):
            yi = 1 - cost[ncols + i]
            y.append(-yi if flip[i] else yi)
        return Infeasible(tuple(y))
    x = [Fraction(0)] * ncols
    for i, j in enumerate(basis):
        if j < ncols:
            x[j] = tab[i][width]
    return Feasible(tuple(x))
