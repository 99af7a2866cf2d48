"""K-classes, equivariant multiplicities and Chow classes of matrix orbit closures.

The localization sum over all permutations is regrouped by the fixed-point
basis B(w).  For a fixed basis the cone sum

    H_B = sum over w with B(w) = B of prod_i weight(w_i, w_(i+1))

is computed by a dynamic program over prefix sets: a prefix P of w is
admissible iff rk(P) = |B & P|, so the state is (prefix set, last element) and
every state value is cancelled as soon as it is complete.
"""
from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import (
    CrossCheckMismatch, DegreeMismatch, InputError, NotDivisible, NotSymmetric,
    PolynomialityViolation, ResourceLimit, SchurExpansionFailure,
)
from .exactpoly import LaurentPoly, RatFunc, Ring, rat_sum
from .exactpoly.operators import (
    Partition, complete_homogeneous, lowest_part_one_minus, one_minus_truncated,
    schur_expand_u,
)
from .exactpoly.ratfunc import DenomFactor
from .matroid import Matroid, all_permutations, require_basis

log = logging.getLogger(__name__)

MAX_N = 7
JOBS_ENV = "MATROID_KCLASS_JOBS"


@dataclass(frozen=True)
class KClass:
    poly: LaurentPoly
    matroid: Matroid = field(repr=False)

    @property
    def codimension(self) -> int:
        return self.matroid.codimension

    def __str__(self) -> str:
        return str(self.poly)


@dataclass(frozen=True)
class ChowClass:
    poly: LaurentPoly
    degree: int

    def __str__(self) -> str:
        return str(self.poly)


def ring_of(m: Matroid) -> Ring:
    return Ring(m.r, m.n)


def default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise InputError(f"{JOBS_ENV} must be an integer, got {raw!r}") from None


def _guard(m: Matroid) -> None:
    if m.r < 1:
        raise InputError("rank 0 matroids are not supported (the u-variables are indexed by 1..r)")
    if m.n > MAX_N:
        raise ResourceLimit(
            f"n = {m.n} exceeds the supported ground-set size {MAX_N}; the localization "
            "sum has n! terms and is refused rather than left to run for hours")


# -- fixed-point factors ------------------------------------------------------------------

def k_fixed_factor(ring: Ring, basis_mask: int) -> LaurentPoly:
    """prod over j not in B and i in [r] of (1 - u_i t_j)."""
    one = LaurentPoly.constant(ring, 1)
    out = one
    for j in range(1, ring.n + 1):
        if not basis_mask >> (j - 1) & 1:
            for i in range(1, ring.r + 1):
                out = out * (one - LaurentPoly.monomial(ring, {f"u{i}": 1, f"t{j}": 1}))
    return out


def chow_fixed_factor(ring: Ring, basis_mask: int) -> LaurentPoly:
    """prod over j not in B and i in [r] of (u_i + t_j)."""
    out = LaurentPoly.constant(ring, 1)
    for j in range(1, ring.n + 1):
        if not basis_mask >> (j - 1) & 1:
            for i in range(1, ring.r + 1):
                out = out * (LaurentPoly.var(ring, f"u{i}") + LaurentPoly.var(ring, f"t{j}"))
    return out


# -- edge weights -----------------------------------------------------------------------------

def _k_weight(ring: Ring, a: int, b: int) -> RatFunc:
    """1 / (1 - t_b/t_a) = t_a / (t_a - t_b)."""
    f, sign = DenomFactor.tdiff(ring, a, b)
    num = LaurentPoly.var(ring, f"t{a}")
    return RatFunc(num if sign > 0 else -num, {f: 1})


def _chow_weight(ring: Ring, a: int, b: int) -> RatFunc:
    """1 / (t_b - t_a)."""
    f, sign = DenomFactor.tdiff(ring, b, a)
    return RatFunc(LaurentPoly.constant(ring, sign), {f: 1})


_WEIGHTS = {"k": _k_weight, "chow": _chow_weight}


def cone_sum(m: Matroid, basis_mask: int, kind: str = "k") -> RatFunc:
    """Sum of the edge weights over every permutation w with B(w) equal to the basis."""
    ring = ring_of(m)
    weight = _WEIGHTS[kind]
    n = m.n
    full = (1 << n) - 1
    rank_cache: dict[int, bool] = {}

    def admissible(s: int) -> bool:
        if s not in rank_cache:
            rank_cache[s] = m.rank_mask(s) == (basis_mask & s).bit_count()
        return rank_cache[s]

    wcache: dict[tuple[int, int], RatFunc] = {}

    def w(a: int, b: int) -> RatFunc:
        if (a, b) not in wcache:
            wcache[(a, b)] = weight(ring, a, b)
        return wcache[(a, b)]

    one = RatFunc(LaurentPoly.constant(ring, 1))
    # layer[(S, last)] -> list of contributions, merged when the layer is complete
    layer: dict[tuple[int, int], RatFunc] = {}
    for e in range(1, n + 1):
        s = 1 << (e - 1)
        if admissible(s):
            layer[(s, e)] = one
    for _ in range(n - 1):
        incoming: dict[tuple[int, int], list[RatFunc]] = {}
        for (s, last), val in layer.items():
            rest = full ^ s
            while rest:
                bit = rest & -rest
                rest ^= bit
                s2 = s | bit
                if not admissible(s2):
                    continue
                nxt = bit.bit_length()
                incoming.setdefault((s2, nxt), []).append(val * w(last, nxt))
        layer = {key: rat_sum(vals) for key, vals in sorted(incoming.items())}
    finals = [val for (s, _), val in sorted(layer.items()) if s == full]
    if not finals:
        return RatFunc(LaurentPoly.zero(ring))
    return rat_sum(finals)


def _cone_sum_task(args):
    n, r, masks, basis_mask, kind = args
    return cone_sum(Matroid(n, r, masks, validate=False), basis_mask, kind)


def _per_basis(m: Matroid, kind: str, jobs: int | None) -> list[tuple[int, RatFunc]]:
    jobs = default_jobs() if jobs is None else max(1, int(jobs))
    masks = m.sorted_masks
    if jobs == 1 or len(masks) == 1:
        return [(b, cone_sum(m, b, kind)) for b in masks]
    tasks = [(m.n, m.r, tuple(masks), b, kind) for b in masks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_cone_sum_task, tasks))
    return list(zip(masks, results))


# -- public operations -------------------------------------------------------------------

def equiv_multiplicity(m: Matroid, basis: Iterable[int]) -> RatFunc:
    """Hilbert series of the tangent cone at the fixed point B, fully cancelled."""
    _guard(m)
    mask = require_basis(m, basis)
    return cone_sum(m, mask, "k")


def elementary_u(k: int, ring: Ring) -> LaurentPoly:
    """e_k(u_1..u_r) inside ``ring``."""
    from itertools import combinations
    terms = {}
    for c in combinations(range(ring.r), k):
        exps = [0] * ring.nvars
        for i in c:
            exps[i] = 1
        terms[tuple(exps)] = 1
    return LaurentPoly(ring, terms)


def _split_fixed_factor(ring: Ring, basis_mask: int, kind: str) -> dict[tuple[int, ...], LaurentPoly]:
    """Write the fixed-point factor as sum over E of e_E(u) * P_E(t).

    Per column j outside B the factor is sum_k e_k(u) * (-t_j)^k for K and
    sum_k e_k(u) * t_j^(r-k) for Chow; E is the sorted tuple of the k's.
    """
    r = ring.r
    outside = [j for j in range(1, ring.n + 1) if not basis_mask >> (j - 1) & 1]
    parts: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {(): {(0,) * ring.nvars: 1}}
    for j in outside:
        pos = ring.index(f"t{j}")
        nxt: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
        for key, terms in parts.items():
            for k in range(r + 1):
                power, sign = (k, (-1) ** k) if kind == "k" else (r - k, 1)
                bucket = nxt.setdefault(tuple(sorted(key + (k,))), {})
                for exps, c in terms.items():
                    e = list(exps)
                    e[pos] += power
                    e = tuple(e)
                    bucket[e] = bucket.get(e, 0) + sign * c
        parts = nxt
    return {key: LaurentPoly(ring, terms) for key, terms in parts.items()}


def _assemble(m: Matroid, kind: str, jobs: int | None) -> LaurentPoly:
    # e-monomials in u are linearly independent over the t-rational functions,
    # so each e-coefficient is a t-only sum that must itself be a polynomial
    ring = ring_of(m)
    grouped: dict[tuple[int, ...], list[RatFunc]] = {}
    for b, h in _per_basis(m, kind, jobs):
        for key, p in _split_fixed_factor(ring, b, kind).items():
            if not p.is_zero():
                grouped.setdefault(key, []).append(h * p)
    elem = {k: elementary_u(k, ring) for k in range(ring.r + 1)}
    total = LaurentPoly.zero(ring)
    for key in sorted(grouped):
        coeff = rat_sum(grouped[key])
        try:
            c = coeff.to_poly()
        except NotDivisible as exc:
            raise PolynomialityViolation(
                f"localization sum for {m!r} left the denominator {coeff.den_str()}") from exc
        if c.is_zero():
            continue
        e_part = LaurentPoly.constant(ring, 1)
        for k in key:
            e_part = e_part * elem[k]
        total = total + e_part * c
    return total


def kclass(m: Matroid, jobs: int | None = None) -> KClass:
    _guard(m)
    poly = _assemble(m, "k", jobs)
    if not poly.is_polynomial():
        raise PolynomialityViolation(f"K-class of {m!r} has negative exponents: {poly}")
    return KClass(poly, m)


def k_to_chow(k: KClass | LaurentPoly, expected_degree: int | None = None) -> ChowClass:
    """Lowest-degree part of K(1 - u, 1 - t), checked against the codimension."""
    if isinstance(k, KClass):
        poly, expected = k.poly, k.codimension if expected_degree is None else expected_degree
    else:
        poly, expected = k, expected_degree
    low, degree = lowest_part_one_minus(poly, expected or 0)
    if expected is not None and degree != expected:
        raise DegreeMismatch(expected, degree)
    return ChowClass(low, degree)


def chow_direct(m: Matroid, jobs: int | None = None) -> LaurentPoly:
    """The permutation-sum formula with (u_i + t_j) factors and 1/(t_(w_i+1) - t_(w_i)) weights.

    Every summand is homogeneous of degree r(n - r) - (n - 1), so for a
    disconnected matroid (whose class has higher degree) this sum is zero.
    """
    _guard(m)
    return _assemble(m, "chow", jobs)


def chow_class(m: Matroid, jobs: int | None = None, cross_check: bool = True) -> ChowClass:
    """Equivariant Chow class; the direct sum and the K-class route are compared."""
    _guard(m)
    k = kclass(m, jobs)
    via_k = k_to_chow(k)
    if not cross_check:
        return via_k
    direct = chow_direct(m, jobs)
    generic_degree = m.r * (m.n - m.r) - (m.n - 1)
    if m.num_components == 1:
        if direct != via_k.poly:
            raise CrossCheckMismatch(f"direct sum {direct} != K-route {via_k.poly}")
    else:
        # the direct sum is the degree-(n - 1) part of K(1 - u, 1 - t), which vanishes
        part = one_minus_truncated(k.poly, generic_degree).homogeneous_part(generic_degree)
        if direct != part or not direct.is_zero():
            raise CrossCheckMismatch(
                f"direct sum {direct} should vanish for a matroid with {m.num_components} components")
    return via_k


def specialize(k: KClass | LaurentPoly, which: str) -> LaurentPoly:
    """Set every u_i (``which='u'``) or every t_j (``which='t'``) to 1."""
    poly = k.poly if isinstance(k, KClass) else k
    ring = poly.ring
    if which in ("u", "AllU"):
        names = [f"u{i}" for i in range(1, ring.r + 1)]
    elif which in ("t", "AllT"):
        names = [f"t{j}" for j in range(1, ring.n + 1)]
    else:
        raise InputError(f"specialize expects 'u' or 't', got {which!r}")
    return poly.specialize({name: 1 for name in names})


def gv_character(m: Matroid, k: KClass | None = None) -> dict[Partition, int]:
    """Schur multiplicities of the coefficient of t_1...t_n in the Hilbert series."""
    _guard(m)
    if m.loops:
        log.warning("matroid has loops %s; the multilinear coefficient vanishes", m.loops)
        return {}
    k = k or kclass(m)
    ring = k.poly.ring
    uring = Ring(ring.r, 0)
    r, n = ring.r, ring.n
    h1 = complete_homogeneous(1, uring)
    one = LaurentPoly.constant(uring, 1)
    acc = LaurentPoly.zero(uring)
    for exps, c in k.poly.items():
        b = exps[r:]
        if any(e > 1 for e in b):
            continue
        term = LaurentPoly.monomial(uring, list(exps[:r]), c)
        missing = n - sum(b)
        term = term * (h1 ** missing if missing else one)
        acc = acc + term
    try:
        expansion = schur_expand_u(acc)
    except NotSymmetric as exc:
        raise SchurExpansionFailure(str(exc)) from exc
    return {lam: int(c) for lam, c in expansion.items()}


def sn_character(m: Matroid, k: KClass | None = None) -> dict[Partition, int]:
    """Specht-module multiplicities; by Schur-Weyl duality the same numbers as
    :func:`gv_character`, labelled by partitions of n with at most r parts."""
    return gv_character(m, k)


# -- oracles ----------------------------------------------------------------------------------

def permutation_sum(m: Matroid, kind: str = "k") -> RatFunc:
    """The ungrouped localization sum over all n! permutations."""
    _guard(m)
    ring = ring_of(m)
    weight = _WEIGHTS[kind]
    factor = k_fixed_factor if kind == "k" else chow_fixed_factor
    fcache: dict[int, LaurentPoly] = {}
    terms = []
    for w in all_permutations(m.n):
        b = m.lex_first_basis_mask(w)
        if b not in fcache:
            fcache[b] = factor(ring, b)
        val = RatFunc(fcache[b])
        for a, c in zip(w, w[1:]):
            val = val * weight(ring, a, c)
        terms.append(val)
    return rat_sum(terms)


def evaluate_sum(m: Matroid, point: dict[str, object], kind: str = "k") -> Fraction:
    """The localization sum evaluated numerically at a point (distinct nonzero t)."""
    u = [Fraction(point[f"u{i}"]) for i in range(1, m.r + 1)]
    t = [None] + [Fraction(point[f"t{j}"]) for j in range(1, m.n + 1)]
    total = Fraction(0)
    for w in all_permutations(m.n):
        b = m.lex_first_basis_mask(w)
        val = Fraction(1)
        for j in range(1, m.n + 1):
            if not b >> (j - 1) & 1:
                for ui in u:
                    val *= (1 - ui * t[j]) if kind == "k" else (ui + t[j])
        for a, c in zip(w, w[1:]):
            val *= t[a] / (t[a] - t[c]) if kind == "k" else 1 / (t[c] - t[a])
        total += val
    return total


def brute_basis_cone(m: Matroid, basis: Iterable[int]) -> RatFunc:
    """Cone sum by enumerating permutations and testing B(w) with the rank criterion."""
    ring = ring_of(m)
    basis = tuple(basis)
    terms = []
    for w in all_permutations(m.n):
        if m.is_lex_first_by_rank(basis, w):
            val = RatFunc(LaurentPoly.constant(ring, 1))
            for a, c in zip(w, w[1:]):
                val = val * _k_weight(ring, a, c)
            terms.append(val)
    if not terms:
        return RatFunc(LaurentPoly.zero(ring))
    return rat_sum(terms)


__all__ = [
    "ChowClass", "KClass", "MAX_N", "brute_basis_cone", "chow_class", "chow_direct", "cone_sum",
    "equiv_multiplicity", "evaluate_sum", "gv_character", "k_fixed_factor", "k_to_chow",
    "kclass", "permutation_sum", "ring_of", "sn_character", "specialize",
]
