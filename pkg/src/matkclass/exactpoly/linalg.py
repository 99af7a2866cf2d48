"""Fraction-free linear algebra over Laurent polynomial entries.

Every intermediate entry of Bareiss elimination is a minor of the input, so the
divisions by the previous pivot are exact and no rational-function arithmetic
(and no multivariate gcd) is ever needed.
"""
from __future__ import annotations

from typing import Sequence

from ..errors import NotDivisible
from .laurent import LaurentPoly, exact_divide


def bareiss_det(matrix: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    ring = matrix[0][0].ring
    a = [list(row) for row in matrix]
    sign = 1
    prev = LaurentPoly.constant(ring, 1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return LaurentPoly.zero(ring)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_divide(piv * a[i][j] - a[i][k] * a[k][j], prev)
        prev = piv
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


class InconsistentSystem(ArithmeticError):
    pass


class SingularSystem(ArithmeticError):
    pass


def solve_fraction_free(rows: Sequence[Sequence[LaurentPoly]], rhs: Sequence[LaurentPoly]):
    """Solve an overdetermined but consistent system ``A x = b`` exactly.

    Returns ``(numerators, det)`` with ``x_k = numerators[k] / det``; the caller
    decides whether those quotients must be Laurent polynomials.  Uses
    fraction-free Gauss-Jordan elimination with row pivoting (fewest terms).
    Raises :class:`SingularSystem` if the columns are dependent and
    :class:`InconsistentSystem` if a non-pivot row keeps a nonzero right side.
    """
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    if ncols == 0:
        raise ValueError("system without unknowns")
    ring = rows[0][0].ring
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    prev = LaurentPoly.constant(ring, 1)
    for k in range(ncols):
        candidates = [i for i in range(k, m) if not a[i][k].is_zero()]
        if not candidates:
            raise SingularSystem(f"column {k} has no pivot")
        p = min(candidates, key=lambda i: (len(a[i][k]), i))
        a[k], a[p] = a[p], a[k]
        piv = a[k][k]
        for i in range(m):
            if i == k:
                continue
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(ncols + 1):
                if j == k:
                    continue
                val = piv * row_i[j]
                if not aik.is_zero() and not row_k[j].is_zero():
                    val = val - aik * row_k[j]
                try:
                    row_i[j] = exact_divide(val, prev)
                except NotDivisible as exc:  # pragma: no cover - Bareiss guarantees exactness
                    raise ArithmeticError("fraction-free elimination lost exactness") from exc
            row_i[k] = LaurentPoly.zero(ring)
        prev = piv
    for i in range(ncols, m):
        if not a[i][ncols].is_zero():
            raise InconsistentSystem("right-hand side is not in the column span")
    return [a[k][ncols] for k in range(ncols)], prev


def independent_rows(rows: Sequence[Sequence[LaurentPoly]]) -> list[int]:
    """Indices of a maximal set of linearly independent rows (first-found order)."""
    ncols = len(rows[0]) if rows else 0
    chosen: list[int] = []
    # fraction-free echelon form of the chosen rows, kept incrementally
    echelon: list[tuple[int, list[LaurentPoly]]] = []
    for idx, row in enumerate(rows):
        v = list(row)
        for col, er in echelon:
            if not v[col].is_zero():
                f, g = er[col], v[col]
                v = [f * a - g * b for a, b in zip(v, er)]
                v = _strip_content(v)
        lead = next((j for j in range(ncols) if not v[j].is_zero()), None)
        if lead is not None:
            chosen.append(idx)
            echelon.append((lead, v))
            if len(chosen) == ncols:
                break
    return chosen


def _strip_content(v: list[LaurentPoly]) -> list[LaurentPoly]:
    # divide out a common monomial so entries stay small
    nz = [p for p in v if not p.is_zero()]
    if not nz:
        return v
    lo = None
    for p in nz:
        m = p.min_exponents()
        lo = m if lo is None else tuple(min(a, b) for a, b in zip(lo, m))
    if not any(lo):
        return v
    mono = LaurentPoly.monomial(nz[0].ring, lo)
    return [exact_divide(p, mono) if not p.is_zero() else p for p in v]


def fraction_free_inverse(square: Sequence[Sequence[LaurentPoly]]):
    """Return ``(adj, det)`` with ``adj = det * inverse(square)``.

    Raises :class:`SingularSystem` if the matrix is singular.
    """
    size = len(square)
    ring = square[0][0].ring
    zero, one = LaurentPoly.zero(ring), LaurentPoly.constant(ring, 1)
    a = [list(row) + [one if i == j else zero for j in range(size)] for i, row in enumerate(square)]
    width = 2 * size
    prev = one
    for k in range(size):
        candidates = [i for i in range(k, size) if not a[i][k].is_zero()]
        if not candidates:
            raise SingularSystem(f"column {k} has no pivot")
        p = min(candidates, key=lambda i: (len(a[i][k]), i))
        a[k], a[p] = a[p], a[k]
        piv = a[k][k]
        row_k = a[k]
        for i in range(size):
            if i == k:
                continue
            row_i = a[i]
            aik = row_i[k]
            for j in range(width):
                if j == k:
                    continue
                val = piv * row_i[j]
                if not aik.is_zero() and not row_k[j].is_zero():
                    val = val - aik * row_k[j]
                row_i[j] = exact_divide(val, prev)
            row_i[k] = zero
        prev = piv
    # every diagonal entry now equals the last pivot (+-det), so row i reads
    # det * x_i = adj[i] . b
    det = prev
    adj = [[a[i][size + j] for j in range(size)] for i in range(size)]
    for i in range(size):
        if a[i][i] != det:  # pragma: no cover - property of Gauss-Jordan
            raise ArithmeticError("fraction-free Gauss-Jordan lost its diagonal")
    return adj, det
