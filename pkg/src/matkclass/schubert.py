"""Matrix Schubert bases, expansions of K- and Chow classes, positivity checks.

Labels are partitions in the r x (n - r) box with G_(0,...,0) = 1 and
codim X_lambda = |lambda|.  The polynomials come from a Demazure chain: start
from the class of {columns r+1..n vanish}, and remove a box from row i of mu
with operator index j = (n - r) + i - mu_i.  Every lambda is reached from each
of its parents and the results must agree.  The chain is then mirrored in the
columns (t_j -> t_(n+1-j)), which is the orientation in which the expansion
coefficients of realizable K-classes are positive in t_(i+1)/t_i - 1.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

from .errors import (
    DegreeBoundViolation, InputError, InvariantViolation, NonLaurentCoefficient, NotDivisible,
    PathDependence, SingularBasisMatrix,
)
from .exactpoly import LaurentPoly, Ring, VarKind, exact_divide
from .exactpoly.linalg import SingularSystem, fraction_free_inverse, independent_rows
from .exactpoly.operators import (
    Composition, NotExpressible, Partition, beta_rewrite, demazure_t, lowest_part_one_minus,
    nonnegative_integral, one_minus_truncated, partitions_in_box, schur_expand_u,
)
from .lp import Feasible, check_farkas, feasible
from .matroid import Matroid
from .orbitclass import ChowClass, KClass, chow_class, kclass


# -- bases ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GrothendieckBasis:
    r: int
    n: int
    polys: dict[Partition, LaurentPoly]

    def __getitem__(self, lam) -> LaurentPoly:
        return self.polys[Partition(lam).padded(self.r)]


def _box_check(r: int, n: int) -> None:
    if not 1 <= r <= n:
        raise InputError(f"need 1 <= r <= n, got r={r}, n={n}")


def _children(mu: Partition, r: int, n: int):
    """(lambda, demazure index) for every removable box of mu."""
    for i in range(1, r + 1):
        mi = mu[i - 1]
        nxt = mu[i] if i < r else 0
        if mi > nxt:
            lam = list(mu)
            lam[i - 1] -= 1
            yield Partition(lam), (n - r) + i - mi


@lru_cache(maxsize=None)
def grothendieck_basis(r: int, n: int) -> GrothendieckBasis:
    _box_check(r, n)
    ring = Ring(r, n)
    one = LaurentPoly.constant(ring, 1)
    top = Partition([n - r] * r)
    poly = one
    for j in range(r + 1, n + 1):
        for i in range(1, r + 1):
            poly = poly * (one - LaurentPoly.monomial(ring, {f"u{i}": 1, f"t{j}": 1}))
    polys = {top: poly}
    # walk the box by decreasing size so every parent is known before its children
    for mu in sorted(partitions_in_box(r, n - r), key=lambda p: -p.size):
        for lam, j in _children(mu, r, n):
            value = demazure_t(polys[mu], j)
            if lam in polys:
                if polys[lam] != value:
                    raise PathDependence(f"two removal orders disagree at {lam}")
            else:
                polys[lam] = value
    mirror = list(range(n, 0, -1))
    ordered = {lam: polys[lam].permute_t(mirror) for lam in partitions_in_box(r, n - r)}
    return GrothendieckBasis(r, n, ordered)


@lru_cache(maxsize=None)
def _double_schur_table(r: int, n: int) -> dict[Partition, LaurentPoly]:
    basis = grothendieck_basis(r, n)
    out = {}
    for lam, g in basis.polys.items():
        low, degree = lowest_part_one_minus(g, lam.size)
        if degree != lam.size:  # pragma: no cover - codimension of X_lambda is |lambda|
            raise InvariantViolation(f"lowest part of {lam} has degree {degree}")
        out[lam] = low
    return out


def double_schur(lam, r: int, n: int) -> LaurentPoly:
    """Lowest-degree part of the Grothendieck polynomial at (1 - u, 1 - t)."""
    _box_check(r, n)
    lam = Partition(lam).padded(r)
    if lam and lam[0] > n - r:
        raise InputError(f"{lam} does not fit in the {r} x {n - r} box")
    return _double_schur_table(r, n)[lam]


# -- linear expansion --------------------------------------------------------------------

@dataclass(frozen=True)
class ExpansionResult:
    basis: str
    coefficients: dict
    residual: LaurentPoly

    @property
    def nonzero(self) -> dict:
        return {k: v for k, v in self.coefficients.items() if not v.is_zero()}


class _Solver:
    """Cached square subsystem for a fixed basis: x = adj . b / det."""

    def __init__(self, labels: list[Partition], polys: list[LaurentPoly]):
        self.labels = labels
        self.polys = polys
        ring = polys[0].ring
        self.ring = ring
        table = [p.group_by_u() for p in polys]
        monos = sorted({m for t in table for m in t})
        zero = LaurentPoly.zero(ring)
        rows = [[t.get(mono, zero) for t in table] for mono in monos]
        chosen = independent_rows(rows)
        if len(chosen) < len(labels):
            raise SingularBasisMatrix(f"basis matrix has rank {len(chosen)} < {len(labels)}")
        self.monos = [monos[i] for i in chosen]
        try:
            self.adj, self.det = fraction_free_inverse([rows[i] for i in chosen])
        except SingularSystem as exc:  # pragma: no cover - rows were chosen independent
            raise SingularBasisMatrix(str(exc)) from exc

    def solve(self, target: LaurentPoly, tag: str) -> ExpansionResult:
        if target.ring != self.ring:
            raise InputError(f"class lives in {target.ring}, basis in {self.ring}")
        groups = target.group_by_u()
        zero = LaurentPoly.zero(self.ring)
        b = [groups.get(m, zero) for m in self.monos]
        coeffs = {}
        for lab, adj_row in zip(self.labels, self.adj):
            num = zero
            for a, bk in zip(adj_row, b):
                if not a.is_zero() and not bk.is_zero():
                    num = num + a * bk
            try:
                coeffs[lab] = exact_divide(num, self.det)
            except NotDivisible as exc:
                raise NonLaurentCoefficient(
                    f"coefficient of {lab} is not a Laurent polynomial in t") from exc
        residual = target
        for lab, p in zip(self.labels, self.polys):
            if not coeffs[lab].is_zero():
                residual = residual - coeffs[lab] * p
        if not residual.is_zero():
            raise InvariantViolation(f"{tag} expansion leaves the residual {residual}")
        return ExpansionResult(tag, coeffs, residual)


@lru_cache(maxsize=None)
def _grothendieck_solver(r: int, n: int) -> _Solver:
    basis = grothendieck_basis(r, n)
    return _Solver(list(basis.polys), list(basis.polys.values()))


@lru_cache(maxsize=None)
def _schur_solver(r: int, n: int) -> _Solver:
    table = _double_schur_table(r, n)
    return _Solver(list(table), list(table.values()))


def expand_grothendieck(k: KClass | LaurentPoly) -> ExpansionResult:
    """Coefficients c_lambda(t) with K = sum c_lambda * G_lambda(u, t)."""
    poly = k.poly if isinstance(k, KClass) else k
    return _grothendieck_solver(poly.ring.r, poly.ring.n).solve(poly, "grothendieck")


def expand_double_schur(c: ChowClass | LaurentPoly) -> ExpansionResult:
    """Coefficients d_lambda(t) with C = sum d_lambda * s_lambda(u, t)."""
    poly = c.poly if isinstance(c, ChowClass) else c
    return _schur_solver(poly.ring.r, poly.ring.n).solve(poly, "double-schur")


def composition_element(alpha, ring: Ring) -> LaurentPoly:
    """prod_j prod_(i <= alpha_j) (1 - u_i t_j)."""
    one = LaurentPoly.constant(ring, 1)
    out = one
    for j, a in enumerate(alpha, start=1):
        for i in range(1, a + 1):
            out = out * (one - LaurentPoly.monomial(ring, {f"u{i}": 1, f"t{j}": 1}))
    return out


def expand_composition(k: KClass | LaurentPoly) -> ExpansionResult:
    """Coefficients d_alpha(u) with K = sum d_alpha * prod_j prod_(i <= alpha_j) (1 - u_i t_j).

    Multidegrees in t are peeled from the top: the t^alpha coefficient of the
    alpha element is the signed u-monomial prod_j (-1)^alpha_j u_1...u_alpha_j.
    """
    poly = k.poly if isinstance(k, KClass) else k
    ring = poly.ring
    r, n = ring.r, ring.n
    for exps, _ in poly.items():
        if any(e >= r for e in exps[r:]) or any(e < 0 for e in exps[r:]):
            raise DegreeBoundViolation(
                f"t-exponents {exps[r:]} outside 0..{r - 1}; the matroid has a loop or the input is not a K-class")
    rest = poly
    coeffs: dict[Composition, LaurentPoly] = {}
    while not rest.is_zero():
        groups = rest.group_by_t()
        alpha = max(groups, key=lambda a: (sum(a), a))
        lead_exps = [0] * ring.nvars
        sign = 1
        for j, a in enumerate(alpha):
            sign *= (-1) ** a
            for i in range(a):
                lead_exps[i] += 1
        lead = LaurentPoly.monomial(ring, lead_exps, sign)
        d = exact_divide(groups[alpha], lead)
        label = Composition(alpha)
        coeffs[label] = d
        rest = rest - d * composition_element(alpha, ring)
    ordered = dict(sorted(coeffs.items(), key=lambda kv: (kv[0].size, kv[0])))
    return ExpansionResult("composition", ordered, rest)


# -- positivity -------------------------------------------------------------------------------

class Verdict(str, enum.Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    CERTIFICATE_FOUND = "CertificateFound"
    NO_CERTIFICATE_FOUND = "NoCertificateFound"
    NOT_EXPRESSIBLE = "NotExpressible"


@dataclass
class ReportEntry:
    label: object
    sign_exponent: int | None
    verdict: Verdict
    value: LaurentPoly | None = None
    witness: object = None


@dataclass
class PositivityReport:
    statement: str
    entries: list[ReportEntry] = field(default_factory=list)
    # set when a complete search produced an exact infeasibility certificate
    counterexample: bool = False

    @property
    def all_positive(self) -> bool:
        ok = {Verdict.POSITIVE, Verdict.CERTIFICATE_FOUND}
        return all(e.verdict in ok for e in self.entries)


def _ratio_verdict(value: LaurentPoly, kind: VarKind) -> tuple[Verdict, object]:
    if value.is_zero():
        return Verdict.POSITIVE, value
    rewritten = beta_rewrite(value, kind)
    if isinstance(rewritten, NotExpressible):
        return Verdict.NOT_EXPRESSIBLE, rewritten
    if nonnegative_integral(rewritten):
        return Verdict.POSITIVE, rewritten
    return Verdict.NEGATIVE, rewritten


def check_pos1(m: Matroid, k: KClass | None = None) -> PositivityReport:
    """Signed Grothendieck coefficients as polynomials in t_(i+1)/t_i - 1."""
    k = k or kclass(m)
    codim = m.codimension
    report = PositivityReport("pos1")
    for lam, c in expand_grothendieck(k).coefficients.items():
        exp = codim - lam.size
        value = c if exp % 2 == 0 else -c
        verdict, witness = _ratio_verdict(value, VarKind.T)
        report.entries.append(ReportEntry(lam, exp, verdict, value, witness))
    return report


def check_pos2(m: Matroid, k: KClass | None = None) -> PositivityReport:
    """Signed composition coefficients as polynomials in u_(i+1)/u_i - 1."""
    if m.loops:
        raise InputError(f"composition expansion needs a loopless matroid; loops: {m.loops}")
    k = k or kclass(m)
    codim = m.codimension
    report = PositivityReport("pos2")
    for alpha, d in expand_composition(k).coefficients.items():
        exp = codim - alpha.size
        value = d if exp % 2 == 0 else -d
        verdict, witness = _ratio_verdict(value, VarKind.U)
        report.entries.append(ReportEntry(alpha, exp, verdict, value, witness))
    return report


# -- square-free certificates ----------------------------------------------------------------

@dataclass(frozen=True)
class SquareFreeCertificate:
    """c = sum x_S prod_((i,j) in S) (t_j/t_i - 1) with every x_S >= 0."""

    coefficients: dict[tuple[tuple[int, int], ...], Fraction]
    integral: bool
    verified: bool

    def render(self) -> str:
        parts = []
        for s, x in self.coefficients.items():
            prod = "*".join(f"g{i}{j}" if max(i, j) < 10 else f"g{i}_{j}" for i, j in s)
            if not prod:
                parts.append(str(x))
            else:
                parts.append(prod if x == 1 else f"{x}*{prod}")
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class NoCertificateFound:
    reason: str
    complete: bool = False
    farkas: tuple[Fraction, ...] | None = None

    def __bool__(self) -> bool:
        return False


def gamma(ring: Ring, i: int, j: int) -> LaurentPoly:
    """t_j / t_i - 1."""
    return LaurentPoly.monomial(ring, {f"t{j}": 1, f"t{i}": -1}) - 1


def certificate_value(cert: dict, ring: Ring) -> LaurentPoly:
    total = LaurentPoly.zero(ring)
    for s, x in cert.items():
        term = LaurentPoly.constant(ring, x)
        for i, j in s:
            term = term * gamma(ring, i, j)
        total = total + term
    return total


def squarefree_certificate(c: LaurentPoly, n: int | None = None):
    """Search an exact LP for a non-negative square-free expression of ``c``."""
    ring = c.ring
    n = ring.n if n is None else n
    r = ring.r
    for exps, _ in c.items():
        if any(exps[:r]):
            raise InputError("square-free certificates are for t-only Laurent polynomials")
        if sum(exps[r:]) != 0:
            raise InputError("square-free certificates need t-degree 0")
    if c.is_zero():
        return SquareFreeCertificate({}, True, True)
    pairs = list(combinations(range(1, n + 1), 2))
    support = {j for exps, _ in c.items() for j, e in enumerate(exps[r:], start=1) if e}
    complete = n <= 4
    cap = len(pairs) if complete else min(len(pairs), len(support))
    if cap >= len(pairs):
        complete = True
    subsets = [s for size in range(cap + 1) for s in combinations(pairs, size)]
    columns = []
    for s in subsets:
        term = LaurentPoly.constant(ring, 1)
        for i, j in s:
            term = term * gamma(ring, i, j)
        columns.append(dict(term.raw_items()))
    target = dict(c.raw_items())
    keys = sorted(set(target).union(*columns))
    rows = [[Fraction(col.get(key, 0)) for col in columns] for key in keys]
    rhs = [Fraction(target.get(key, 0)) for key in keys]
    result = feasible(rows, rhs)
    if isinstance(result, Feasible):
        cert = {s: x for s, x in zip(subsets, result.x) if x}
        verified = certificate_value(cert, ring) == c
        if not verified:  # pragma: no cover - the LP solution satisfies every row
            raise InvariantViolation("LP certificate does not re-expand to the input")
        integral = all(x.denominator == 1 for x in cert.values())
        return SquareFreeCertificate(cert, integral, verified)
    ok = check_farkas(rows, rhs, result.y)
    if not ok:  # pragma: no cover - the simplex dual is a valid Farkas vector
        raise InvariantViolation("infeasibility certificate failed re-verification")
    if complete:
        return NoCertificateFound("the complete LP is infeasible", True, result.y)
    return NoCertificateFound(f"no certificate among products of at most {cap} factors")


def check_sqfree(m: Matroid, k: KClass | None = None) -> PositivityReport:
    """Square-free certificates for the signed Grothendieck coefficients."""
    k = k or kclass(m)
    codim = m.codimension
    report = PositivityReport("sqfree")
    for lam, c in expand_grothendieck(k).coefficients.items():
        exp = codim - lam.size
        value = c if exp % 2 == 0 else -c
        found = squarefree_certificate(value, m.n)
        if found:
            report.entries.append(ReportEntry(lam, exp, Verdict.CERTIFICATE_FOUND, value, found))
        else:
            report.entries.append(ReportEntry(lam, exp, Verdict.NO_CERTIFICATE_FOUND, value, found))
            report.counterexample |= found.complete
    return report


def check_chow2(m: Matroid, c: ChowClass | None = None) -> PositivityReport:
    """Schur coefficients of C(M) at t = 0 are non-negative and sit in degree codim."""
    c = c or chow_class(m)
    ring = c.poly.ring
    at_zero = c.poly.specialize({f"t{j}": 0 for j in range(1, ring.n + 1)})
    codim = m.codimension
    report = PositivityReport("chow2")
    for lam, d in schur_expand_u(at_zero).items():
        ok = isinstance(d, int) and d >= 0 and lam.size == codim
        report.entries.append(ReportEntry(lam, None, Verdict.POSITIVE if ok else Verdict.NEGATIVE,
                                          LaurentPoly.constant(ring, d), d))
    return report


def chow2_coefficients(report: PositivityReport) -> dict[Partition, int]:
    return {e.label: e.witness for e in report.entries}


# -- chow shadow of the Grothendieck expansion --------------------------------------------------

def one_minus_part(c: LaurentPoly, degree: int) -> LaurentPoly:
    """Homogeneous part of degree ``degree`` in the power series of c(1 - t)."""
    ring = c.ring
    lo = c.min_exponents()
    shift = [min(e, 0) for e in lo]
    mono = LaurentPoly.monomial(ring, [-s for s in shift])
    num = c * mono
    series = one_minus_truncated(num, degree)
    for pos, s in enumerate(shift):
        m = -s
        if not m:
            continue
        # (1 - x)^(-m) = sum_k C(m + k - 1, k) x^k
        geo = LaurentPoly.from_terms(
            ring, [([k if q == pos else 0 for q in range(ring.nvars)], comb(m + k - 1, k))
                   for k in range(degree + 1)])
        series = series * geo
        series = LaurentPoly.from_terms(
            ring, [(e, v) for e, v in series.items() if sum(e) <= degree])
    return series.homogeneous_part(degree)


def chow_shadow(expansion: ExpansionResult, codim: int) -> dict[Partition, LaurentPoly]:
    """Push Grothendieck coefficients to the degree they carry in the Chow class."""
    return {lam: one_minus_part(c, codim - lam.size)
            for lam, c in expansion.coefficients.items() if codim >= lam.size}
