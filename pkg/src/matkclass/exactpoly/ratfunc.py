"""Rational functions with a factored denominator.

Localization sums only ever divide by differences ``t_a - t_b`` (and, after a
substitution, by a handful of other polynomials), so a denominator is kept as a
multiset of normalized factors rather than as one expanded polynomial.
Monomial denominators are absorbed into the Laurent numerator.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from ..errors import AmbientMismatch, NotDivisible, ZeroPolynomial
from .laurent import LaurentPoly, Ring, _norm, _var_diff_positions, divide_var_diff, exact_divide


@dataclass(frozen=True)
class DenomFactor:
    """A normalized denominator factor.

    ``pair=(a, b)`` marks the variable difference ``x_a - x_b`` with ``a < b``
    (positions in the ring); anything else is a generic polynomial whose
    leading coefficient (internal order) is positive.
    """

    poly: LaurentPoly
    pair: tuple[int, int] | None = None

    @staticmethod
    def of(poly: LaurentPoly) -> tuple["DenomFactor", int]:
        """Normalize ``poly`` into (factor, sign) with ``poly == sign * factor.poly``."""
        if poly.is_zero():
            raise ZeroPolynomial("zero denominator factor")
        pair = _var_diff_positions(poly)
        if pair is not None:
            a, b = pair
            if a < b:
                return DenomFactor(poly, (a, b)), 1
            return DenomFactor(-poly, (b, a)), -1
        lead = max(poly.raw_items())[1]
        if lead < 0:
            return DenomFactor(-poly), -1
        return DenomFactor(poly), 1

    @staticmethod
    def tdiff(ring: Ring, a: int, b: int) -> tuple["DenomFactor", int]:
        """(t_a - t_b) as (factor, sign); a and b are 1-based t indices."""
        if a == b:
            raise ValueError("t_a - t_a is zero")
        pa, pb = ring.r + a - 1, ring.r + b - 1
        lo, hi = min(pa, pb), max(pa, pb)
        off = ring.offset
        poly = LaurentPoly._raw(ring, {off + ring.unit(lo): 1, off + ring.unit(hi): -1})
        return DenomFactor(poly, (lo, hi)), (1 if pa < pb else -1)

    def sort_key(self):
        if self.pair is not None:
            return (0, self.pair, "")
        return (1, (), str(self.poly))

    def divide(self, p: LaurentPoly) -> LaurentPoly:
        if self.pair is not None:
            return divide_var_diff(p, *self.pair)
        return exact_divide(p, self.poly)

    def __str__(self) -> str:
        return f"({self.poly})"


def _normalize_den(den: Mapping[DenomFactor, int]) -> tuple[tuple[DenomFactor, int], ...]:
    return tuple(sorted(((f, m) for f, m in den.items() if m), key=lambda fm: fm[0].sort_key()))


class RatFunc:
    """``numerator / prod(factor ** multiplicity)``; immutable.

    Equality is value equality (cross-multiplication), so two RatFuncs in
    different factored forms compare equal when they are the same function.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly,
                 den: Mapping[DenomFactor, int] | Iterable[tuple[DenomFactor, int]] = ()):
        if not isinstance(den, Mapping):
            c: Counter = Counter()
            for f, m in den:
                c[f] += m
            den = c
        for f in den:
            if f.poly.ring != num.ring:
                raise AmbientMismatch("denominator lives in a different ring")
        self.num = num
        self.den = _normalize_den(den)

    @property
    def ring(self) -> Ring:
        return self.num.ring

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RatFunc":
        return cls(p)

    @classmethod
    def quotient(cls, num: LaurentPoly, factors: Iterable[LaurentPoly]) -> "RatFunc":
        """``num / prod(factors)`` with each factor normalized (monomials absorbed)."""
        den: Counter = Counter()
        for f in factors:
            if f.is_monomial():
                num = exact_divide(num, f)
                continue
            df, sign = DenomFactor.of(f)
            if sign < 0:
                num = -num
            den[df] += 1
        return cls(num, den)

    def den_dict(self) -> dict[DenomFactor, int]:
        return dict(self.den)

    def denominator_poly(self) -> LaurentPoly:
        out = LaurentPoly.constant(self.ring, 1)
        for f, m in self.den:
            out = out * f.poly ** m
        return out

    def is_polynomial(self) -> bool:
        return not self.den

    def to_poly(self) -> LaurentPoly:
        """The numerator, once every denominator factor has cancelled."""
        reduced = self.cancel()
        if reduced.den:
            raise NotDivisible(f"denominator {reduced.den_str()} does not cancel",
                               remainder=reduced.num)
        return reduced.num

    def cancel(self) -> "RatFunc":
        """Divide out every denominator factor that divides the numerator."""
        num = self.num
        den = {}
        for f, m in self.den:
            while m:
                try:
                    num = f.divide(num)
                except NotDivisible:
                    break
                m -= 1
            if m:
                den[f] = m
        return RatFunc(num, den)

    def __add__(self, other):
        if isinstance(other, LaurentPoly):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            other = RatFunc(LaurentPoly.constant(self.ring, other))
        return rat_sum([self, other])

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, dict(self.den))

    def __sub__(self, other):
        if isinstance(other, LaurentPoly):
            other = RatFunc(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            den = Counter(dict(self.den))
            for f, m in other.den:
                den[f] += m
            return RatFunc(self.num * other.num, den)
        return RatFunc(self.num * other, dict(self.den))

    __rmul__ = __mul__

    def divide_by(self, factor: LaurentPoly) -> "RatFunc":
        """``self / factor`` keeping the factored form."""
        return self * RatFunc.quotient(LaurentPoly.constant(self.ring, 1), [factor])

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            other = RatFunc(other)
        elif not isinstance(other, RatFunc):
            try:
                other = RatFunc(LaurentPoly.constant(self.ring, other))
            except TypeError:
                return NotImplemented
        if self.ring != other.ring:
            return False
        lhs = self.num
        for f, m in other.den:
            lhs = lhs * f.poly ** m
        rhs = other.num
        for f, m in self.den:
            rhs = rhs * f.poly ** m
        return lhs == rhs

    __hash__ = None

    def evaluate(self, point) -> Fraction | int:
        val = Fraction(self.num.evaluate(point))
        for f, m in self.den:
            d = Fraction(f.poly.evaluate(point))
            if d == 0:
                raise ZeroDivisionError(f"denominator factor {f} vanishes at the point")
            val /= d ** m
        return val.numerator if val.denominator == 1 else val

    def den_str(self) -> str:
        return "*".join(str(f) if m == 1 else f"{f}^{m}" for f, m in self.den) or "1"

    def __str__(self) -> str:
        if not self.den:
            return str(self.num)
        return f"({self.num}) / ({self.den_str()})"

    def __repr__(self) -> str:
        return f"RatFunc({str(self)!r})"


def rat_sum(terms: Iterable[RatFunc]) -> RatFunc:
    """Sum over the common denominator (max multiplicity per factor), then cancel.

    The reduced result does not depend on the order or grouping of ``terms``.
    """
    terms = list(terms)
    if not terms:
        raise ValueError("rat_sum of an empty list needs a ring; pass at least one term")
    ring = terms[0].ring
    for t in terms:
        if t.ring != ring:
            raise AmbientMismatch(f"{t.ring} vs {ring}")
    if len(terms) == 1:
        return terms[0].cancel()
    common: dict[DenomFactor, int] = {}
    for t in terms:
        for f, m in t.den:
            if m > common.get(f, 0):
                common[f] = m
    acc: dict[int, object] = {}
    for t in terms:
        num = t.num
        own = dict(t.den)
        for f, m in common.items():
            for _ in range(m - own.get(f, 0)):
                num = num.mul_var_diff(*f.pair) if f.pair is not None else num * f.poly
        for k, c in num.raw_items():
            acc[k] = acc.get(k, 0) + c
    total = LaurentPoly._raw(ring, {k: _norm(c) for k, c in acc.items() if c})
    return RatFunc(total, common).cancel()
