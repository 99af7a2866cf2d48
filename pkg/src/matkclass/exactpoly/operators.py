"""Operators on Laurent polynomials: substitution, divided differences,
lowest-degree extraction, Schur polynomials and adjacent-ratio rewriting."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Mapping

from ..errors import NotDivisible, NotSymmetric, ZeroPolynomial, ZeroSubstitutionIntoNegativePower
from .laurent import (
    MASK, OFF, SHIFT, LaurentPoly, Ring, VarId, VarKind, _norm, divide_var_diff,
)
from .linalg import bareiss_det
from .ratfunc import DenomFactor, RatFunc, rat_sum


# -- labels ----------------------------------------------------------------------

class Partition(tuple):
    """Weakly decreasing tuple of non-negative integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def trimmed(self) -> "Partition":
        return Partition(p for p in self if p)

    def padded(self, length: int) -> "Partition":
        t = self.trimmed()
        if len(t) > length:
            raise ValueError(f"{self} has more than {length} parts")
        return Partition(tuple(t) + (0,) * (length - len(t)))

    def __str__(self) -> str:
        return "(" + (",".join(map(str, self)) or "0") + ")"

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"


class Composition(tuple):
    """Tuple of non-negative integers (the composition labels of the column basis)."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"not a composition: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"

    def __repr__(self) -> str:
        return f"Composition({tuple(self)})"


def partitions_in_box(rows: int, cols: int) -> list[Partition]:
    """All partitions with at most ``rows`` parts, each at most ``cols``, padded."""
    out = []

    def rec(prefix, limit):
        if len(prefix) == rows:
            out.append(Partition(prefix))
            return
        for p in range(limit, -1, -1):
            rec(prefix + [p], p)

    rec([], cols)
    return out


# -- substitution --------------------------------------------------------------------

def _as_ratfunc(image, ring: Ring) -> RatFunc:
    if isinstance(image, RatFunc):
        return image
    if isinstance(image, LaurentPoly):
        return RatFunc(image)
    return RatFunc(LaurentPoly.constant(ring, image))


def substitute(p: LaurentPoly, mapping: Mapping[VarId | str, object],
               target: Ring | None = None) -> RatFunc:
    """Compose ``p`` with ``mapping`` (variable -> polynomial, RatFunc or number).

    Variables missing from ``mapping`` are kept, which requires ``target`` to be
    ``p.ring``.  Negative exponents of non-monomial images become denominator
    factors.
    """
    src = p.ring
    target = target or src
    images: dict[int, RatFunc] = {}
    for v, img in mapping.items():
        images[src.index(v)] = _as_ratfunc(img, target)
    for k in range(src.nvars):
        if k not in images:
            if target != src:
                raise ValueError(f"no image given for {src.names[k]}")
            images[k] = RatFunc(LaurentPoly.var(target, src.names[k]))
    for img in images.values():
        if img.ring != target:
            raise ValueError("substitution images must live in the target ring")

    pos_cache: dict[tuple[int, int, int], LaurentPoly] = {}
    one = LaurentPoly.constant(target, 1)

    def power(k: int, e: int, part: LaurentPoly) -> LaurentPoly:
        key = (k, e, id(part))
        if key not in pos_cache:
            pos_cache[key] = part ** e
        return pos_cache[key]

    # group terms by their denominator signature
    groups: dict[tuple, tuple[LaurentPoly, Counter]] = {}
    for exps, c in p.items():
        num = one.scale(c)
        den: Counter = Counter()
        for k, e in enumerate(exps):
            if not e:
                continue
            img = images[k]
            if e > 0:
                num = num * power(k, e, img.num)
                for f, m in img.den:
                    den[f] += m * e
            else:
                if img.num.is_zero():
                    raise ZeroSubstitutionIntoNegativePower(
                        f"{src.names[k]} maps to 0 but appears with exponent {e}")
                if img.num.is_monomial():
                    num = num * img.num ** e
                else:
                    f, sign = DenomFactor.of(img.num)
                    den[f] += -e
                    if sign < 0 and e % 2:
                        num = -num
                for f, m in img.den:
                    num = num * power(k, -e * m, f.poly)
        sig = tuple(sorted(((f.sort_key(), m) for f, m in den.items() if m)))
        if sig in groups:
            acc, d = groups[sig]
            groups[sig] = (acc + num, d)
        else:
            groups[sig] = (num, den)
    if not groups:
        return RatFunc(LaurentPoly.zero(target))
    return rat_sum([RatFunc(num, den) for num, den in groups.values()])


def one_minus_map(ring: Ring) -> dict[str, LaurentPoly]:
    """The substitution x -> 1 - x on every variable of ``ring``."""
    one = LaurentPoly.constant(ring, 1)
    return {name: one - LaurentPoly.var(ring, name) for name in ring.names}


# -- degree extraction -----------------------------------------------------------------

def lowest_degree_part(p: LaurentPoly) -> tuple[LaurentPoly, int]:
    """Sum of the terms of minimal total degree, with that degree."""
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no lowest-degree part")
    if not p.is_polynomial():
        raise ValueError("lowest_degree_part expects non-negative exponents")
    d = min(p.total_degrees())
    return p.homogeneous_part(d), d


def one_minus_truncated(p: LaurentPoly, max_degree: int) -> LaurentPoly:
    """All terms of degree <= ``max_degree`` of ``p(1 - x)`` (every variable).

    Variables are substituted one at a time; a partial term whose degree in the
    already-substituted variables exceeds the budget can never come back down,
    so it is dropped immediately.
    """
    if not p.is_polynomial():
        raise ValueError("x -> 1 - x truncation expects non-negative exponents")
    ring = p.ring
    cur: dict[int, object] = dict(p.raw_items())
    deg: dict[int, int] = {k: 0 for k in cur}
    for var in range(ring.nvars):
        s = SHIFT * var
        unit = ring.unit(var)
        nxt: dict[int, object] = {}
        ndeg: dict[int, int] = {}
        for k, c in cur.items():
            e = ((k >> s) & MASK) - OFF
            d0 = deg[k]
            if e == 0:
                v = nxt.get(k, 0) + c
                nxt[k] = v
                ndeg[k] = d0
                continue
            base = k - e * unit
            for j in range(0, min(e, max_degree - d0) + 1):
                kk = base + j * unit
                term = c * comb(e, j)
                if j & 1:
                    term = -term
                nxt[kk] = nxt.get(kk, 0) + term
                ndeg[kk] = d0 + j
        cur = {k: v for k, v in nxt.items() if v}
        deg = {k: ndeg[k] for k in cur}
    return LaurentPoly._raw(ring, {k: _norm(v) for k, v in cur.items()})


def lowest_part_one_minus(p: LaurentPoly, degree_hint: int = 0) -> tuple[LaurentPoly, int]:
    """Lowest-degree part of ``p(1 - x)``; ``degree_hint`` only sets the first budget."""
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no lowest-degree part")
    top = max(p.total_degrees())
    budget = max(degree_hint, 0)
    while True:
        trunc = one_minus_truncated(p, budget)
        if not trunc.is_zero():
            return lowest_degree_part(trunc)
        if budget >= top:  # pragma: no cover - p(1-x) == 0 forces p == 0
            raise ZeroPolynomial("substitution produced zero")
        budget = min(top, max(1, 2 * budget))


# -- divided differences -------------------------------------------------------------

def demazure_t(f: LaurentPoly, i: int) -> LaurentPoly:
    """``(f - (t_(i+1)/t_i) s_i f) / (1 - t_(i+1)/t_i)``, i.e.
    ``(t_i f - t_(i+1) s_i f) / (t_i - t_(i+1))``."""
    ring = f.ring
    if not 1 <= i < ring.n:
        raise ValueError(f"demazure index {i} outside 1..{ring.n - 1}")
    a = ring.index(VarId(VarKind.T, i))
    b = ring.index(VarId(VarKind.T, i + 1))
    num = f.shift(ring.unit(a)) - f.swap(i).shift(ring.unit(b))
    try:
        return divide_var_diff(num, a, b)
    except NotDivisible as exc:  # pragma: no cover - always divisible
        raise NotDivisible(f"demazure numerator not divisible by t{i} - t{i + 1}",
                           remainder=exc.remainder) from exc


# -- symmetric functions in u ------------------------------------------------------------

def complete_homogeneous(k: int, ring: Ring) -> LaurentPoly:
    """h_k(u_1..u_r) inside ``ring``."""
    if k < 0:
        return LaurentPoly.zero(ring)
    r = ring.r
    terms = {}

    def rec(prefix, left):
        if len(prefix) == r - 1:
            terms[tuple(prefix) + (left,) + (0,) * ring.n] = 1
            return
        for a in range(left, -1, -1):
            rec(prefix + [a], left - a)

    if r == 0:
        return LaurentPoly.constant(ring, 1 if k == 0 else 0)
    rec([], k)
    return LaurentPoly(ring, terms)


def schur_u(lam, r: int | None = None, ring: Ring | None = None) -> LaurentPoly:
    """Schur polynomial s_lam(u_1..u_r) by the Jacobi-Trudi determinant."""
    ring = ring or Ring(r, 0)
    lam = Partition(lam).trimmed()
    if len(lam) > ring.r:
        return LaurentPoly.zero(ring)
    if not lam:
        return LaurentPoly.constant(ring, 1)
    size = len(lam)
    h = {}
    mat = []
    for i in range(size):
        row = []
        for j in range(size):
            k = lam[i] - i + j
            if k not in h:
                h[k] = complete_homogeneous(k, ring)
            row.append(h[k])
        mat.append(row)
    return bareiss_det(mat)


def _u_exponents(p: LaurentPoly) -> list[tuple[tuple[int, ...], object]]:
    r = p.ring.r
    out = []
    for exps, c in p.items():
        if any(exps[r:]):
            raise NotSymmetric("t variables present; expected a polynomial in u only")
        out.append((exps[:r], c))
    return out


def is_u_symmetric(p: LaurentPoly) -> bool:
    return all(p.swap(i, VarKind.U) == p for i in range(1, p.ring.r))


def schur_expand_u(p: LaurentPoly) -> dict[Partition, object]:
    """Coefficients d with ``p = sum d[lam] * s_lam(u)`` (trimmed partition labels)."""
    _u_exponents(p)
    if not p.is_polynomial():
        raise NotSymmetric("negative exponents")
    if not is_u_symmetric(p):
        raise NotSymmetric("polynomial is not symmetric in u")
    ring = p.ring
    out: dict[Partition, object] = {}
    rest = p
    cache: dict[Partition, LaurentPoly] = {}
    while not rest.is_zero():
        lead, c = max(_u_exponents(rest))
        try:
            lam = Partition(lead)
        except ValueError:
            raise NotSymmetric(f"leading exponent {lead} is not a partition") from None
        lam = lam.trimmed()
        if lam not in cache:
            cache[lam] = schur_u(lam, ring=ring)
        out[lam] = out.get(lam, 0) + c
        rest = rest - cache[lam].scale(c)
    return {lam: c for lam, c in sorted(out.items(), reverse=True) if c}


# -- adjacent ratios ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NotExpressible:
    """Why a Laurent polynomial could not be rewritten in adjacent ratios."""

    reason: str
    detail: str = ""

    def __bool__(self) -> bool:
        return False


def ratio_ring(count: int) -> Ring:
    """Ring of the shifted adjacent ratios b_i = x_(i+1)/x_i - 1."""
    return Ring(0, max(count - 1, 0), t_name="b")


def beta_rewrite(c: LaurentPoly, kind: VarKind = VarKind.T) -> LaurentPoly | NotExpressible:
    """Rewrite a degree-0 Laurent polynomial in ``b_i = x_(i+1)/x_i - 1``.

    ``x`` is the t block by default (the u block with ``kind=VarKind.U``).
    Returns a polynomial in the ``b`` ring, or a falsy :class:`NotExpressible`.
    """
    ring = c.ring
    idx = list(ring.t_indices() if kind is VarKind.T else ring.u_indices())
    others = [k for k in range(ring.nvars) if k not in idx]
    m = len(idx)
    target = ratio_ring(m)
    for exps, _ in c.items():
        if any(exps[k] for k in others):
            return NotExpressible("foreign-variables",
                                  f"expected only {kind.value}-variables")
        if sum(exps[k] for k in idx) != 0:
            return NotExpressible("inhomogeneous", f"term of degree {sum(exps[k] for k in idx)}")
    one = LaurentPoly.constant(target, 1)
    mapping: dict[str, LaurentPoly] = {}
    chain = one
    for pos, k in enumerate(idx):
        if pos:
            chain = chain * (one + LaurentPoly.var(target, f"b{pos}"))
        mapping[ring.names[k]] = chain
    for k in others:
        mapping[ring.names[k]] = one
    value = substitute(c, mapping, target=target)
    try:
        return value.to_poly()
    except NotDivisible as exc:
        return NotExpressible("division-remainder", str(exc))


def nonnegative_integral(p: LaurentPoly) -> bool:
    return all(isinstance(v, int) and v >= 0 for v in p.coefficients())
