"""Sparse Laurent polynomials with exact rational coefficients.

Monomials are packed into a single Python int: variable ``k`` occupies bits
``[16k, 16k+16)`` and stores ``exponent + 2**15``.  Multiplying monomials is
then one integer addition (minus a constant), and comparing packed keys is a
lexicographic monomial order in which the *last* variable is most significant.
That internal order is only used for division; rendering uses the canonical
graded order described on :meth:`LaurentPoly.terms`.
"""
from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Iterable, Mapping

from ..errors import AmbientMismatch, NotDivisible, ZeroPolynomial

SHIFT = 16
MASK = (1 << SHIFT) - 1
OFF = 1 << (SHIFT - 1)
MAX_EXPONENT = OFF - 1


class VarKind(str, Enum):
    U = "u"
    T = "t"


@dataclass(frozen=True, order=True)
class VarId:
    kind: VarKind
    index: int

    def __str__(self) -> str:
        return f"{self.kind.value}{self.index}"


def U(i: int) -> VarId:
    return VarId(VarKind.U, i)


def T(j: int) -> VarId:
    return VarId(VarKind.T, j)


@dataclass(frozen=True)
class Ring:
    """Ambient of a polynomial: variables ``u1..ur`` followed by ``t1..tn``.

    ``u_name``/``t_name`` only change how variables print; auxiliary rings
    (for instance the ``b1..b(n-1)`` ring of adjacent-ratio rewrites) use them.
    """

    r: int
    n: int
    u_name: str = "u"
    t_name: str = "t"

    def __post_init__(self):
        if self.r < 0 or self.n < 0:
            raise ValueError("ring sizes must be non-negative")

    @property
    def nvars(self) -> int:
        return self.r + self.n

    @cached_property
    def names(self) -> tuple[str, ...]:
        return tuple(f"{self.u_name}{i}" for i in range(1, self.r + 1)) + tuple(
            f"{self.t_name}{j}" for j in range(1, self.n + 1))

    @cached_property
    def offset(self) -> int:
        return sum(OFF << (SHIFT * k) for k in range(self.nvars))

    @cached_property
    def _name_index(self) -> dict[str, int]:
        return {name: k for k, name in enumerate(self.names)}

    def index(self, var: VarId | str) -> int:
        """Position of a variable in exponent vectors."""
        if isinstance(var, str):
            try:
                return self._name_index[var]
            except KeyError:
                raise AmbientMismatch(f"unknown variable {var!r} for {self}") from None
        if var.kind is VarKind.U:
            if not 1 <= var.index <= self.r:
                raise AmbientMismatch(f"{var} outside u1..u{self.r}")
            return var.index - 1
        if not 1 <= var.index <= self.n:
            raise AmbientMismatch(f"{var} outside t1..t{self.n}")
        return self.r + var.index - 1

    def u_indices(self) -> range:
        return range(self.r)

    def t_indices(self) -> range:
        return range(self.r, self.r + self.n)

    def pack(self, exps: Iterable[int]) -> int:
        key = 0
        for k, e in enumerate(exps):
            if not -MAX_EXPONENT <= e <= MAX_EXPONENT:
                raise OverflowError(f"exponent {e} out of range")
            key |= (e + OFF) << (SHIFT * k)
        return key

    def unpack(self, key: int) -> tuple[int, ...]:
        return tuple(((key >> (SHIFT * k)) & MASK) - OFF for k in range(self.nvars))

    def unit(self, k: int) -> int:
        """Packed-key increment that raises variable ``k`` by one."""
        return 1 << (SHIFT * k)

    def __str__(self) -> str:
        return f"Ring(r={self.r}, n={self.n})"


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _coerce_scalar(c):
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise TypeError(f"unsupported coefficient {c!r}")


def _div_coeff(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, rem = divmod(a, b)
        if rem == 0:
            return q
    return _norm(Fraction(a) / b)


def _fmt_coeff(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


class LaurentPoly:
    """Immutable sparse Laurent polynomial over the rationals."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[tuple[int, ...], object] | None = None):
        self.ring = ring
        data: dict[int, object] = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != ring.nvars:
                    raise AmbientMismatch(
                        f"exponent vector of length {len(exps)} in {ring}")
                c = _coerce_scalar(c)
                if c:
                    k = ring.pack(exps)
                    v = data.get(k, 0) + c
                    if v:
                        data[k] = _norm(v)
                    else:
                        data.pop(k, None)
        self._terms = data
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, data: dict[int, object]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._terms = data
        obj._hash = None
        return obj

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, ring: Ring) -> "LaurentPoly":
        return cls._raw(ring, {})

    @classmethod
    def constant(cls, ring: Ring, c=1) -> "LaurentPoly":
        c = _coerce_scalar(c)
        return cls._raw(ring, {ring.offset: c} if c else {})

    @classmethod
    def var(cls, ring: Ring, var: VarId | str, power: int = 1) -> "LaurentPoly":
        k = ring.index(var)
        return cls._raw(ring, {ring.offset + power * ring.unit(k): 1})

    @classmethod
    def monomial(cls, ring: Ring, exps: Mapping[VarId | str, int] | Iterable[int],
                 coeff=1) -> "LaurentPoly":
        if isinstance(exps, Mapping):
            vec = [0] * ring.nvars
            for v, e in exps.items():
                vec[ring.index(v)] += e
        else:
            vec = list(exps)
        return cls(ring, {tuple(vec): coeff})

    @classmethod
    def from_terms(cls, ring: Ring, terms: Iterable[tuple[Iterable[int], object]]) -> "LaurentPoly":
        acc: dict[tuple[int, ...], object] = {}
        for exps, c in terms:
            exps = tuple(exps)
            acc[exps] = acc.get(exps, 0) + _coerce_scalar(c)
        return cls(ring, acc)

    # -- inspection -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self.ring.offset in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_term(self):
        return self._terms.get(self.ring.offset, 0)

    def coefficient(self, exps: Mapping[VarId | str, int] | Iterable[int]):
        if isinstance(exps, Mapping):
            vec = [0] * self.ring.nvars
            for v, e in exps.items():
                vec[self.ring.index(v)] += e
            exps = vec
        return self._terms.get(self.ring.pack(exps), 0)

    def raw_items(self):
        """Packed (key, coefficient) pairs; for hot loops inside the package."""
        return self._terms.items()

    def items(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms as (exponent vector, coefficient), unordered."""
        unpack = self.ring.unpack
        return [(unpack(k), c) for k, c in self._terms.items()]

    @staticmethod
    def _order_key(exps: tuple[int, ...]):
        return (sum(exps), tuple(-e for e in exps))

    def terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms in canonical order: ascending total degree, then lexicographically
        descending exponent vectors (u-block before t-block)."""
        return sorted(self.items(), key=lambda it: self._order_key(it[0]))

    def coefficients(self) -> list:
        return list(self._terms.values())

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def is_polynomial(self) -> bool:
        """True when no exponent is negative."""
        return all(min(e) >= 0 for e, _ in self.items()) if self._terms else True

    def min_exponents(self) -> tuple[int, ...]:
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no exponents")
        return tuple(map(min, zip(*(e for e, _ in self.items()))))

    def max_exponents(self) -> tuple[int, ...]:
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no exponents")
        return tuple(map(max, zip(*(e for e, _ in self.items()))))

    def total_degrees(self) -> set[int]:
        return {sum(e) for e, _ in self.items()}

    def is_homogeneous(self) -> bool:
        return len(self.total_degrees()) <= 1

    def involves(self, kind: VarKind) -> bool:
        idx = self.ring.u_indices() if kind is VarKind.U else self.ring.t_indices()
        return any(any(e[k] for k in idx) for e, _ in self.items())

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "LaurentPoly") -> None:
        if other.ring != self.ring:
            raise AmbientMismatch(f"{self.ring} vs {other.ring}")

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        return LaurentPoly.constant(self.ring, other)

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out = dict(a)
        for k, c in b.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return LaurentPoly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.ring, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "LaurentPoly":
        c = _coerce_scalar(c)
        if not c:
            return LaurentPoly.zero(self.ring)
        return LaurentPoly._raw(self.ring, {k: _norm(v * c) for k, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentPoly.zero(self.ring)
        if len(a) < len(b):
            a, b = b, a
        off = self.ring.offset
        out: dict[int, object] = {}
        get = out.get
        for kb, cb in b.items():
            kb -= off
            if cb == 1:
                for ka, ca in a.items():
                    k = ka + kb
                    out[k] = get(k, 0) + ca
            elif cb == -1:
                for ka, ca in a.items():
                    k = ka + kb
                    out[k] = get(k, 0) - ca
            else:
                for ka, ca in a.items():
                    k = ka + kb
                    out[k] = get(k, 0) + ca * cb
        return LaurentPoly._raw(self.ring, {k: _norm(c) for k, c in out.items() if c})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if not self.is_monomial():
                raise NotDivisible("negative power of a non-monomial")
            ((k, c),) = self._terms.items()
            off = self.ring.offset
            return LaurentPoly._raw(self.ring, {off + e * (k - off): _norm(Fraction(c) ** e)})
        result = LaurentPoly.constant(self.ring, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, key_delta: int, coeff=1) -> "LaurentPoly":
        """Multiply by the monomial whose packed key is ``offset + key_delta``."""
        if coeff == 1:
            return LaurentPoly._raw(self.ring, {k + key_delta: c for k, c in self._terms.items()})
        return LaurentPoly._raw(self.ring, {k + key_delta: _norm(c * coeff)
                                            for k, c in self._terms.items()})

    def mul_var_diff(self, ia: int, ib: int) -> "LaurentPoly":
        """Multiply by ``x_ia - x_ib`` (variable positions)."""
        ua, ub = self.ring.unit(ia), self.ring.unit(ib)
        out = {k + ua: c for k, c in self._terms.items()}
        for k, c in self._terms.items():
            kk = k + ub
            v = out.get(kk, 0) - c
            if v:
                out[kk] = v
            else:
                del out[kk]
        return LaurentPoly._raw(self.ring, out)

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.ring == other.ring and self._terms == other._terms
        try:
            c = _coerce_scalar(other)
        except TypeError:
            return NotImplemented
        return self._terms == ({self.ring.offset: c} if c else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- variable maps ---------------------------------------------------------

    def permute_vars(self, perm: Mapping[int, int]) -> "LaurentPoly":
        """Rename variable positions: position ``k`` becomes ``perm.get(k, k)``."""
        out = {}
        ring = self.ring
        for exps, c in self.items():
            vec = [0] * ring.nvars
            for k, e in enumerate(exps):
                vec[perm.get(k, k)] += e
            out[ring.pack(vec)] = c
        return LaurentPoly._raw(ring, out)

    def swap(self, i: int, kind: VarKind = VarKind.T) -> "LaurentPoly":
        """The simple transposition s_i exchanging t_i and t_(i+1) (or u_i, u_(i+1))."""
        a = self.ring.index(VarId(kind, i))
        b = self.ring.index(VarId(kind, i + 1))
        return self.permute_vars({a: b, b: a})

    def permute_t(self, sigma: Mapping[int, int] | Iterable[int]) -> "LaurentPoly":
        """Replace t_j by t_sigma(j); ``sigma`` is 1-indexed."""
        if not isinstance(sigma, Mapping):
            sigma = {j + 1: s for j, s in enumerate(sigma)}
        r = self.ring.r
        return self.permute_vars({r + j - 1: r + s - 1 for j, s in sigma.items()})

    def evaluate(self, point: Mapping[VarId | str, object] | Iterable[object]):
        """Exact value at a point (all variables assigned)."""
        ring = self.ring
        if isinstance(point, Mapping):
            vals = [None] * ring.nvars
            for v, x in point.items():
                vals[ring.index(v)] = x
            if any(x is None for x in vals):
                raise AmbientMismatch("evaluate() needs every variable")
        else:
            vals = list(point)
        vals = [Fraction(x) for x in vals]
        total = Fraction(0)
        for exps, c in self.items():
            term = Fraction(c)
            for x, e in zip(vals, exps):
                if e:
                    term *= x ** e
            total += term
        return _norm(total)

    def specialize(self, values: Mapping[VarId | str, object]) -> "LaurentPoly":
        """Substitute numbers for some variables, keeping the ring."""
        ring = self.ring
        idx = {ring.index(v): Fraction(x) for v, x in values.items()}
        acc: dict[int, object] = {}
        for exps, c in self.items():
            val = Fraction(c)
            vec = list(exps)
            for k, x in idx.items():
                if vec[k]:
                    if x == 0 and vec[k] < 0:
                        raise ZeroDivisionError("zero substituted into a negative power")
                    val *= x ** vec[k]
                    vec[k] = 0
            if val:
                key = ring.pack(vec)
                v = acc.get(key, 0) + val
                if v:
                    acc[key] = v
                else:
                    del acc[key]
        return LaurentPoly._raw(ring, {k: _norm(v) for k, v in acc.items()})

    def homogeneous_part(self, degree: int) -> "LaurentPoly":
        return LaurentPoly._raw(self.ring, {
            k: c for (k, c), (e, _) in zip(self._terms.items(), self.items())
            if sum(e) == degree})

    def group_by_u(self) -> dict[tuple[int, ...], "LaurentPoly"]:
        """Split into {u-exponent vector: t-only polynomial}."""
        ring = self.ring
        groups: dict[tuple[int, ...], dict] = {}
        for exps, c in self.items():
            ue = exps[:ring.r]
            groups.setdefault(ue, {})[ring.pack((0,) * ring.r + exps[ring.r:])] = c
        return {ue: LaurentPoly._raw(ring, d) for ue, d in groups.items()}

    def group_by_t(self) -> dict[tuple[int, ...], "LaurentPoly"]:
        """Split into {t-exponent vector: u-only polynomial}."""
        ring = self.ring
        groups: dict[tuple[int, ...], dict] = {}
        for exps, c in self.items():
            te = exps[ring.r:]
            groups.setdefault(te, {})[ring.pack(exps[:ring.r] + (0,) * ring.n)] = c
        return {te: LaurentPoly._raw(ring, d) for te, d in groups.items()}

    def to_ring(self, ring: Ring) -> "LaurentPoly":
        """Re-home into a ring of the same shape (e.g. after renaming)."""
        if (ring.r, ring.n) != (self.ring.r, self.ring.n):
            raise AmbientMismatch(f"cannot move {self.ring} into {ring}")
        return LaurentPoly._raw(ring, dict(self._terms))

    # -- rendering -------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        names = self.ring.names
        parts = []
        for i, (exps, c) in enumerate(self.terms()):
            mono = "*".join(name if e == 1 else f"{name}^{e}"
                            for name, e in zip(names, exps) if e)
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = _fmt_coeff(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt_coeff(a)}*{mono}"
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.ring.r}, {self.ring.n}, {str(self)!r})"

    @classmethod
    def parse(cls, ring: Ring, text: str) -> "LaurentPoly":
        """Inverse of ``str()``: sums of ``c*x^e*...`` terms, exponents may be negative."""
        s = text.replace(" ", "").replace("^-", "^~")
        if s == "0":
            return cls.zero(ring)
        if not s or re.fullmatch(r"([+-]?[^+-]+)+", s) is None:
            raise ValueError(f"cannot parse polynomial {text!r}")
        terms = []
        for tok in re.findall(r"[+-]?[^+-]+", s):
            sign = -1 if tok[0] == "-" else 1
            vec = [0] * ring.nvars
            coeff = Fraction(sign)
            for factor in tok.lstrip("+-").split("*"):
                factor = factor.replace("^~", "^-")
                if not factor:
                    raise ValueError(f"malformed term {tok!r}")
                if factor[0].isdigit():
                    coeff *= Fraction(factor)
                    continue
                name, _, e = factor.partition("^")
                vec[ring.index(name)] += int(e) if e else 1
            terms.append((vec, coeff))
        return cls.from_terms(ring, terms)

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        names = self.ring.names
        return {
            "r": self.ring.r,
            "n": self.ring.n,
            "text": str(self),
            "terms": [
                {"coeff": _fmt_coeff(c),
                 "monomial": {name: e for name, e in zip(names, exps) if e}}
                for exps, c in self.terms()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping, ring: Ring | None = None) -> "LaurentPoly":
        ring = ring or Ring(int(data["r"]), int(data["n"]))
        acc = []
        for term in data["terms"]:
            vec = [0] * ring.nvars
            for name, e in term["monomial"].items():
                vec[ring.index(name)] += int(e)
            acc.append((vec, Fraction(term["coeff"])))
        return cls.from_terms(ring, acc)


# -- division --------------------------------------------------------------------

def _var_diff_positions(den: LaurentPoly) -> tuple[int, int] | None:
    """If ``den`` is ``x_a - x_b`` return (a, b), else None."""
    if len(den) != 2:
        return None
    ring = den.ring
    (e1, c1), (e2, c2) = den.items()
    if c1 != -c2 or abs(c1) != 1:
        return None
    p1 = [k for k, e in enumerate(e1) if e]
    p2 = [k for k, e in enumerate(e2) if e]
    if len(p1) != 1 or len(p2) != 1 or e1[p1[0]] != 1 or e2[p2[0]] != 1:
        return None
    return (p1[0], p2[0]) if c1 == 1 else (p2[0], p1[0])


def divide_var_diff(p: LaurentPoly, ia: int, ib: int) -> LaurentPoly:
    """Exact quotient of ``p`` by ``x_ia - x_ib`` via synthetic division in x_ia."""
    ring = p.ring
    if not p._terms:
        return p
    sa = SHIFT * ia
    ua, ub = ring.unit(ia), ring.unit(ib)
    buckets: dict[int, dict[int, object]] = {}
    for k, c in p._terms.items():
        buckets.setdefault(((k >> sa) & MASK) - OFF, {})[k] = c
    emax, emin = max(buckets), min(buckets)
    step = ub - ua
    q: dict[int, object] = {}
    carry: dict[int, object] = {}
    for e in range(emax, emin, -1):
        nxt = {k - ua: c for k, c in buckets.get(e, {}).items()}
        for k, c in carry.items():
            kk = k + step
            v = nxt.get(kk, 0) + c
            if v:
                nxt[kk] = v
            else:
                nxt.pop(kk, None)
        q.update(nxt)
        carry = nxt
    rem = dict(buckets[emin])
    for k, c in carry.items():
        kk = k + ub
        v = rem.get(kk, 0) + c
        if v:
            rem[kk] = v
        else:
            rem.pop(kk, None)
    if rem:
        raise NotDivisible("not divisible by a variable difference",
                           remainder=LaurentPoly._raw(ring, rem))
    return LaurentPoly._raw(ring, q)


def exact_divide(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Return ``q`` with ``q * den == num`` exactly, or raise :class:`NotDivisible`."""
    num._check(den)
    if den.is_zero():
        raise ZeroPolynomial("division by the zero polynomial")
    if num.is_zero():
        return num
    ring = num.ring
    off = ring.offset
    if den.is_monomial():
        ((kd, cd),) = den._terms.items()
        delta = off - kd
        return LaurentPoly._raw(ring, {k + delta: _div_coeff(c, cd) for k, c in num._terms.items()})
    pair = _var_diff_positions(den)
    if pair is not None:
        return divide_var_diff(num, *pair)

    # Per-variable exponent ranges of any exact quotient.
    nmin, nmax = num.min_exponents(), num.max_exponents()
    dmin, dmax = den.min_exponents(), den.max_exponents()
    lo = [a - b for a, b in zip(nmin, dmin)]
    hi = [a - b for a, b in zip(nmax, dmax)]
    if any(a > b for a, b in zip(lo, hi)):
        raise NotDivisible("exponent ranges are incompatible", remainder=num)

    dterms = list(den._terms.items())
    lead_k, lead_c = max(dterms)
    rem = dict(num._terms)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    q: dict[int, object] = {}
    unpack = ring.unpack
    while heap:
        k = -heapq.heappop(heap)
        c = rem.get(k)
        if not c:
            continue
        qk = k - lead_k + off
        qe = unpack(qk)
        if any(e < a or e > b for e, a, b in zip(qe, lo, hi)):
            raise NotDivisible("remainder is nonzero",
                               remainder=LaurentPoly._raw(ring, {kk: v for kk, v in rem.items() if v}))
        qc = _div_coeff(c, lead_c)
        q[qk] = qc
        base = qk - off
        for kd, cd in dterms:
            kk = base + kd
            old = rem.get(kk, 0)
            v = old - qc * cd
            if v:
                if not old:
                    heapq.heappush(heap, -kk)
                rem[kk] = _norm(v)
            elif old:
                del rem[kk]
    return LaurentPoly._raw(ring, q)
