"""The eleven acceptance criteria, each compared exactly.

Every criterion records one PASS/FAIL line in ``RESULTS``; the conftest hook
prints them at the end of the pytest run, and running this file directly
prints them as they finish.
"""
from __future__ import annotations

import functools
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from family import (  # noqa: E402
    dedupe, direct_sums, random_matrices, random_realizations, schuberts, uniforms,
)
from oracles import multilinear_character  # noqa: E402

from matkclass.errors import ResourceLimit  # noqa: E402
from matkclass.exactpoly import LaurentPoly, RatFunc, Ring, demazure_t, schur_expand_u  # noqa: E402
from matkclass.matroid import Matroid, direct_sum, schubert_matroid, uniform  # noqa: E402
from matkclass.orbitclass import (  # noqa: E402
    brute_basis_cone, chow_class, chow_direct, cone_sum, equiv_multiplicity, evaluate_sum,
    gv_character, k_to_chow, kclass, permutation_sum,
)
from matkclass.projclass import cross_check, li_class, s_of_m  # noqa: E402
from matkclass.schubert import (  # noqa: E402
    _children, certificate_value, check_chow2, check_pos1, check_pos2, chow2_coefficients,
    expand_double_schur, expand_grothendieck, grothendieck_basis, squarefree_certificate,
)
from matkclass.selftest import P, parallel_34  # noqa: E402

RESULTS: dict[int, str] = {}


def criterion(number: int, title: str):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            start = time.perf_counter()
            try:
                fn()
            except BaseException as exc:
                RESULTS[number] = f"FAIL criterion {number:2d} {title}: {exc}".splitlines()[0]
                print(RESULTS[number])
                raise
            RESULTS[number] = f"PASS criterion {number:2d} {title} ({time.perf_counter() - start:.1f} s)"
            print(RESULTS[number])
        return run
    return wrap


def quotient(num, dens):
    return RatFunc.quotient(P(num), [P(d) for d in dens])


def random_point(rng, r, n):
    ts = set()
    while len(ts) < n:
        x = Fraction(rng.randint(-50, 50), rng.randint(1, 6))
        if x:
            ts.add(x)
    ts = sorted(ts)
    rng.shuffle(ts)
    us = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(r)]
    return {**{f"u{i + 1}": u for i, u in enumerate(us)}, **{f"t{j + 1}": t for j, t in enumerate(ts)}}


def criterion_family():
    """Every matroid the criteria are run on (r <= 3, n <= 5 unless stated)."""
    return dedupe(uniforms(5, 3) + schuberts(5, 3) + direct_sums(5, 3)
                  + random_realizations(50, 5, 3, seed=7) + [parallel_34()])


# -- 1 -----------------------------------------------------------------------------------------

@criterion(1, "K-class fixtures")
def test_criterion_01_kclass_fixtures():
    for m, expected in ((parallel_34(), P("1 - u1*u2*t3*t4")),
                        (uniform(2, 4), P("1 - u1^2*u2^2*t1*t2*t3*t4")),
                        (direct_sum(uniform(2, 3), uniform(0, 1)), P("1 - u1*t4") * P("1 - u2*t4"))):
        start = time.perf_counter()
        got = kclass(m).poly
        assert got == expected, f"{m!r}: {got} != {expected}"
        assert time.perf_counter() - start < 1, f"{m!r} took over 1 s"


# -- 2 -----------------------------------------------------------------------------------------

@criterion(2, "equivariant multiplicity fixtures")
def test_criterion_02_multiplicities():
    m = parallel_34()
    h13 = quotient("1", ["1 - t2*t3^-1", "1 - t4*t3^-1", "1 - t2*t1^-1"])
    h12 = quotient("1 - t3*t4*t1^-1*t2^-1",
                   ["1 - t3*t2^-1", "1 - t4*t2^-1", "1 - t3*t1^-1", "1 - t4*t1^-1"])
    assert equiv_multiplicity(m, (1, 3)) == h13
    assert equiv_multiplicity(m, (1, 2)) == h12
    swaps = {(2, 3): [2, 1, 3, 4], (1, 4): [1, 2, 4, 3], (2, 4): [2, 1, 4, 3]}
    for basis, sigma in swaps.items():
        image = RatFunc.quotient(h13.num.permute_t(sigma), [f.poly.permute_t(sigma)
                                                            for f, k in h13.den for _ in range(k)])
        assert equiv_multiplicity(m, basis) == image, f"basis {basis}"


# -- 3 -----------------------------------------------------------------------------------------

@criterion(3, "Demazure fixture")
def test_criterion_03_demazure():
    assert demazure_t(P("1 - u1*t4") * P("1 - u2*t4"), 3) == P("1 - u1*u2*t3*t4")


# -- 4 -----------------------------------------------------------------------------------------

@criterion(4, "Grothendieck expansion of K(U_{2,4})")
def test_criterion_04_grothendieck_expansion():
    res = expand_grothendieck(kclass(uniform(2, 4)))
    assert res.residual.is_zero()
    assert res.nonzero == {
        (2, 1): P("t1^-1*t4"), (2, 0): P("-t1^-1*t4"), (1, 1): P("-t1^-1*t4"),
        (1, 0): P("t1^-1*t4 + t1^-1*t2^-1*t3*t4"), (0, 0): P("1 - t1^-1*t2^-1*t3*t4"),
    }


# -- 5 -----------------------------------------------------------------------------------------

@criterion(5, "Chow fixtures and k_to_chow against the direct sum")
def test_criterion_05_chow():
    u24 = uniform(2, 4)
    c = chow_class(u24)
    assert c.poly == P("2*u1 + 2*u2 + t1 + t2 + t3 + t4")
    assert expand_double_schur(c).nonzero == {(1, 0): P("2"), (0, 0): P("-t1 - t2 + t3 + t4")}
    disagree = []
    for m in criterion_family():
        via_k = k_to_chow(kclass(m)).poly
        direct = chow_direct(m)
        if direct != via_k:
            disagree.append(m)
    # For a disconnected matroid the direct sum is identically zero (checked
    # numerically in test_orbitclass), while the class has degree r(n-r)-(n-e).
    assert not disagree, (
        f"direct sum differs from k_to_chow on {len(disagree)} matroids, all disconnected: "
        f"{all(m.num_components > 1 for m in disagree)}; e.g. {disagree[0]!r} direct = 0")


# -- 6 -----------------------------------------------------------------------------------------

@criterion(6, "projective-side fixtures")
def test_criterion_06_projective():
    m = parallel_34()
    assert s_of_m(m).points == ((1, 1, 0, 1), (1, 1, 1, 0))
    assert li_class(m).poly == LaurentPoly.parse(Ring(0, 4), "t3 + t4")
    cc = cross_check(m)
    assert cc.equal and cc.via_k.poly == cc.li.poly


# -- 7 -----------------------------------------------------------------------------------------

@criterion(7, "pos1 and pos2 positivity sweep")
def test_criterion_07_positivity_sweep():
    start = time.perf_counter()
    family = uniforms(5, 3) + schuberts(5, 3) + direct_sums(5, 3) + random_realizations(50, 5, 3, seed=7)
    checked = 0
    for m in dedupe(family):
        k = kclass(m)
        rep = check_pos1(m, k)
        assert rep.all_positive, f"pos1 fails on {m!r}: {[(e.label, e.verdict) for e in rep.entries]}"
        if m.is_loopless:
            rep = check_pos2(m, k)
            assert rep.all_positive, f"pos2 fails on {m!r}"
        checked += 1
    assert checked > 50
    assert time.perf_counter() - start < 600


# -- 8 -----------------------------------------------------------------------------------------

@criterion(8, "square-free and Chow positivity checkers at fixture scale")
def test_criterion_08_positivity_checkers():
    c = P("t1^-1*t2^-1*t3*t4")
    shown = {((2, 4), (1, 3)): 1, ((1, 3),): 1, ((2, 4),): 1, (): 1}
    assert certificate_value(shown, c.ring) == c
    found = squarefree_certificate(c, 4)
    assert found and found.verified
    assert certificate_value(found.coefficients, c.ring) == c
    assert all(x >= 0 for x in found.coefficients.values())
    rep = check_chow2(uniform(2, 4))
    assert chow2_coefficients(rep) == {(1,): 2} and rep.all_positive


# -- 9 -----------------------------------------------------------------------------------------

@criterion(9, "property suites")
def test_criterion_09_properties():
    # polynomiality on the n <= 6 family
    start = time.perf_counter()
    family6 = dedupe(uniforms(6) + schuberts(6) + direct_sums(6)
                     + random_realizations(30, 6, 5, seed=11, nmin=3))
    for m in family6:
        assert kclass(m).poly.is_polynomial()
    assert time.perf_counter() - start < 300

    rng = random.Random(2024)
    pool = criterion_family()
    # relabeling equivariance
    for _ in range(20):
        m = rng.choice(pool)
        sigma = list(range(1, m.n + 1))
        rng.shuffle(sigma)
        assert kclass(m.relabel(sigma)).poly == kclass(m).poly.permute_t(sigma)

    # grouping invariance
    for m in [x for x in pool if x.n <= 4] + random_realizations(3, 5, 3, seed=31, nmin=5):
        assert permutation_sum(m).to_poly() == kclass(m).poly
        for b in m.sorted_masks:
            elems = [e + 1 for e in range(m.n) if b >> e & 1]
            assert cone_sum(m, b) == brute_basis_cone(m, elems)

    # numeric oracle, 50 points per class
    for m in [parallel_34(), uniform(2, 4), uniform(3, 5), direct_sum(uniform(2, 3), uniform(0, 1))] \
            + random_realizations(4, 5, 3, seed=41, nmin=4):
        k = kclass(m).poly
        for _ in range(50):
            pt = random_point(rng, m.r, m.n)
            assert k.evaluate(pt) == evaluate_sum(m, pt)

    # Demazure idempotence
    ring = Ring(2, 4)
    for _ in range(20):
        p = LaurentPoly.from_terms(ring, [(tuple(rng.randint(-1, 2) for _ in range(6)), rng.randint(-5, 5))
                                          for _ in range(5)])
        i = rng.randint(1, 3)
        assert demazure_t(demazure_t(p, i), i) == demazure_t(p, i)

    # path independence, r <= 3, n <= 6
    for n in range(1, 7):
        for r in range(1, min(n, 3) + 1):
            mirror = list(range(n, 0, -1))
            basis = grothendieck_basis(r, n)
            seen = {}
            frontier = [(max(basis.polys, key=lambda lam: lam.size), None)]
            frontier = [(frontier[0][0], basis[frontier[0][0]].permute_t(mirror))]
            while frontier:
                mu, poly = frontier.pop()
                if mu in seen:
                    assert seen[mu] == poly, f"path dependence at {mu} (r={r}, n={n})"
                    continue
                seen[mu] = poly
                frontier.extend((lam, demazure_t(poly, j)) for lam, j in _children(mu, r, n))
            assert all(basis[lam] == p.permute_t(mirror) for lam, p in seen.items())

    # Schubert-matroid coincidences (the basis is the column mirror of the plain chain)
    g = grothendieck_basis(2, 4)
    assert g[(2, 0)] == kclass(Matroid.from_bases(4, 2, [(1, 4), (2, 4), (3, 4)])).poly
    assert g[(2, 1)] == kclass(Matroid.from_bases(4, 2, [(2, 4), (3, 4)])).poly
    assert g[(2, 0)].permute_t([4, 3, 2, 1]) == kclass(schubert_matroid(2, 4, (1, 4))).poly
    assert g[(2, 1)].permute_t([4, 3, 2, 1]) == kclass(schubert_matroid(2, 4, (1, 3))).poly


# -- 10 ----------------------------------------------------------------------------------------

def truncated_series(m):
    """Multilinear coefficient of K * prod_j (1 + h_1(u) t_j), Schur-expanded."""
    k = kclass(m).poly
    ring = k.ring
    h1 = sum((LaurentPoly.var(ring, f"u{i}") for i in range(1, m.r + 1)), LaurentPoly.zero(ring))
    series = k
    for j in range(1, m.n + 1):
        series = series * (1 + h1 * LaurentPoly.var(ring, f"t{j}"))
    coeff = LaurentPoly.from_terms(Ring(m.r, 0), [(e[:m.r], c) for e, c in series.items()
                                                  if all(x == 1 for x in e[m.r:])])
    return schur_expand_u(coeff)


@criterion(10, "character fixture and independent oracles")
def test_criterion_10_character():
    u24 = uniform(2, 4)
    expected = {(4,): 1, (3, 1): 3, (2, 2): 1}
    assert gv_character(u24) == expected
    assert truncated_series(u24) == expected
    assert multilinear_character([[1, 0, 1, 1], [0, 1, 1, 2]]) == expected
    for rows, m in random_matrices(8, 5, 3, seed=19, nmin=3):
        if m.is_loopless:
            assert gv_character(m) == multilinear_character(rows), f"{m!r}"


# -- 11 ----------------------------------------------------------------------------------------

@criterion(11, "scale ceiling n = 7, r = 3 and fast failure at n = 8")
def test_criterion_11_scale():
    sevens = [uniform(3, 7), schubert_matroid(3, 7, (2, 5, 7))]
    sevens += [m for m in random_realizations(6, 7, 3, seed=3, nmin=7) if m.r == 3][:1]
    assert len(sevens) == 3
    for m in sevens:
        start = time.perf_counter()
        k = kclass(m)
        elapsed = time.perf_counter() - start
        assert k.poly.is_polynomial()
        assert elapsed < 300, f"{m!r} took {elapsed:.0f} s"
    start = time.perf_counter()
    try:
        kclass(uniform(3, 8))
    except ResourceLimit as exc:
        assert "n = 8" in str(exc)
    else:
        raise AssertionError("n = 8 was not refused")
    assert time.perf_counter() - start < 1


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except BaseException:
                failed += 1
    sys.exit(1 if failed else 0)
