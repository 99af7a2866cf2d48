"""Class of the projectivized orbit closure in (P^(r-1))^n.

Two routes: the lattice-point sum over S(M), and the K-class route
(u = 1, then t -> 1 - t, then the lowest-degree part), both reduced modulo
t_j^r.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, MismatchReport
from .exactpoly import LaurentPoly, Ring
from .exactpoly.operators import lowest_part_one_minus
from .matroid import Matroid
from .orbitclass import KClass, kclass, specialize


@dataclass(frozen=True)
class SPoints:
    points: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class PnClass:
    poly: LaurentPoly

    def __str__(self) -> str:
        return str(self.poly)


@dataclass(frozen=True)
class CrossCheck:
    li: PnClass
    via_k: PnClass

    @property
    def equal(self) -> bool:
        return self.li.poly == self.via_k.poly


def _satisfies(m: Matroid, s) -> bool:
    r = m.r
    if sum(s) != r * r - 1:
        return False
    for mask in range(1, 1 << m.n):
        total = sum(s[j] for j in range(m.n) if mask >> j & 1)
        if total >= r * m.rank_mask(mask):
            return False
    return True


def s_of_m(m: Matroid) -> SPoints:
    """Lattice points s >= 0 with sum r^2 - 1 and sum_(i in I) s_i < r rk(I) for nonempty I."""
    if m.r < 1:
        raise InputError("S(M) needs rank at least 1")
    r, n = m.r, m.n
    bound = [r * m.rank_mask(1 << j) - 1 for j in range(n)]
    target = r * r - 1
    found = []

    def rec(prefix: list[int], left: int):
        j = len(prefix)
        if j == n:
            if left == 0:
                found.append(tuple(prefix))
            return
        # the remaining coordinates can absorb at most sum of their bounds
        room = sum(max(b, -1) + 1 for b in bound[j + 1:])
        for v in range(min(bound[j], left), -1, -1):
            if left - v > room:
                break
            rec(prefix + [v], left - v)

    if all(b >= 0 for b in bound):
        rec([], target)
    points = tuple(sorted(s for s in found if _satisfies(m, s)))
    return SPoints(points)


def _t_ring(m: Matroid) -> Ring:
    return Ring(0, m.n)


def reduce_mod_powers(p: LaurentPoly, r: int) -> LaurentPoly:
    """Drop every monomial with some t-exponent >= r."""
    ring = p.ring
    return LaurentPoly.from_terms(ring, [(e, c) for e, c in p.items() if all(x < r for x in e[ring.r:])])


def li_class(m: Matroid, points: SPoints | None = None) -> PnClass:
    points = points or s_of_m(m)
    ring = _t_ring(m)
    poly = LaurentPoly.from_terms(ring, [([m.r - 1 - x for x in s], 1) for s in points.points])
    return PnClass(reduce_mod_powers(poly, m.r))


def class_via_k(m: Matroid, k: KClass | None = None) -> PnClass:
    k = k or kclass(m)
    at_u1 = specialize(k, "u")
    t_only = LaurentPoly.from_terms(_t_ring(m), [(e[m.r:], c) for e, c in at_u1.items()])
    low, _ = lowest_part_one_minus(t_only)
    return PnClass(reduce_mod_powers(low, m.r))


def cross_check(m: Matroid, k: KClass | None = None) -> CrossCheck:
    """Compare both routes; the matroid must be loopless and connected.

    With a loop the projection to (P^(r-1))^n is undefined.  With e > 1 the
    lattice-point sum is the pushforward along an orbit map with
    positive-dimensional fibres, which is zero, while the K-class route gives
    the class of the (smaller) orbit closure itself.
    """
    if m.loops:
        raise InputError(f"the projection to (P^(r-1))^n needs a loopless matroid; loops: {m.loops}")
    if m.num_components != 1:
        raise InputError(f"the lattice-point formula needs a connected matroid; "
                         f"components: {m.components}")
    result = CrossCheck(li_class(m), class_via_k(m, k))
    if not result.equal:
        raise MismatchReport(f"Li class {result.li} differs from the K-class route {result.via_k}",
                             li=result.li, via_k=result.via_k)
    return result
