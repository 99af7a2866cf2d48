import random
import time
from fractions import Fraction

import pytest

from matkclass.errors import DegreeMismatch, InputError, ResourceLimit
from matkclass.exactpoly import LaurentPoly, Ring, schur_expand_u
from matkclass.matroid import direct_sum, uniform
from matkclass.orbitclass import (
    brute_basis_cone, chow_class, chow_direct, cone_sum, equiv_multiplicity, evaluate_sum,
    gv_character, k_to_chow, kclass, permutation_sum, sn_character, specialize,
)
from matkclass.selftest import P, parallel_34

from family import direct_sums, random_realizations, schuberts, uniforms


def distinct_point(rng, r, n):
    ts = set()
    while len(ts) < n:
        ts.add(Fraction(rng.randint(-40, 40), rng.randint(1, 7)))
    ts = list(ts)
    rng.shuffle(ts)
    if any(t == 0 for t in ts):
        return distinct_point(rng, r, n)
    us = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(r)]
    return us, ts


def small_family():
    return uniforms(4) + schuberts(4, 3) + direct_sums(4) + random_realizations(10, 4, 3, seed=3)


# -- worked examples ---------------------------------------------------------------------------

def test_kclass_fixtures():
    assert kclass(parallel_34()).poly == P("1 - u1*u2*t3*t4")
    assert kclass(uniform(2, 4)).poly == P("1 - u1^2*u2^2*t1*t2*t3*t4")
    assert kclass(direct_sum(uniform(2, 3), uniform(0, 1))).poly == P("1 - u1*t4") * P("1 - u2*t4")


def test_free_matroid_has_trivial_class():
    for n in range(1, 5):
        assert kclass(uniform(n, n)).poly == LaurentPoly.constant(Ring(n, n), 1)


def _swap_t(rng_point, a, b):
    pt = list(rng_point)
    pt[a], pt[b] = pt[b], pt[a]
    return pt


def test_multiplicities_are_swap_images():
    m = parallel_34()
    h13 = equiv_multiplicity(m, (1, 3))
    rng = random.Random(8)
    # variable order: u1 u2 t1 t2 t3 t4
    for _ in range(10):
        us, ts = distinct_point(rng, 2, 4)
        pt = us + ts
        assert equiv_multiplicity(m, (2, 3)).evaluate(pt) == h13.evaluate(_swap_t(pt, 2, 3))
        assert equiv_multiplicity(m, (1, 4)).evaluate(pt) == h13.evaluate(_swap_t(pt, 4, 5))
        swapped = _swap_t(_swap_t(pt, 2, 3), 4, 5)
        assert equiv_multiplicity(m, (2, 4)).evaluate(pt) == h13.evaluate(swapped)


def test_multiplicity_rejects_non_basis():
    with pytest.raises(InputError):
        equiv_multiplicity(parallel_34(), (3, 4))


# -- grouping invariance --------------------------------------------------------------------------

@pytest.mark.parametrize("m", small_family(), ids=repr)
def test_grouped_sum_equals_permutation_sum(m):
    k = kclass(m).poly
    assert permutation_sum(m, "k") == k
    for b in m.sorted_masks:
        assert cone_sum(m, b, "k") == brute_basis_cone(m, [e + 1 for e in range(m.n) if b >> e & 1])


def test_cone_sums_match_rank_oracle_on_n5():
    m = random_realizations(1, 5, 3, seed=21, nmin=5)[0]
    for b in m.sorted_masks:
        assert cone_sum(m, b, "k") == brute_basis_cone(m, [e + 1 for e in range(m.n) if b >> e & 1])


def test_parallel_jobs_give_identical_class():
    m = uniform(2, 5)
    assert kclass(m, jobs=2).poly == kclass(m, jobs=1).poly


# -- numeric oracle ---------------------------------------------------------------------------------

@pytest.mark.parametrize("m", [parallel_34(), uniform(2, 4), uniform(3, 5), uniform(2, 5),
                               direct_sum(uniform(2, 3), uniform(0, 1)),
                               *random_realizations(3, 5, 3, seed=13, nmin=4)], ids=repr)
def test_numeric_oracle(m):
    k = kclass(m).poly
    rng = random.Random(m.n * 101 + len(m.basis_masks))
    for _ in range(50):
        us, ts = distinct_point(rng, m.r, m.n)
        point = {**{f"u{i + 1}": v for i, v in enumerate(us)}, **{f"t{j + 1}": v for j, v in enumerate(ts)}}
        assert k.evaluate(us + ts) == evaluate_sum(m, point)


# -- structural properties ------------------------------------------------------------------------------

def test_relabel_equivariance():
    rng = random.Random(17)
    pool = uniforms(5, 3) + schuberts(5, 3) + random_realizations(15, 5, 3, seed=5)
    for _ in range(20):
        m = rng.choice(pool)
        sigma = list(range(1, m.n + 1))
        rng.shuffle(sigma)
        k = kclass(m).poly
        # t_j follows the element j to sigma(j)
        assert kclass(m.relabel(sigma)).poly == k.permute_t(sigma)


def test_loop_divides_out():
    base = uniform(2, 3)
    with_loop = direct_sum(base, uniform(0, 1))
    k = kclass(with_loop).poly
    ring = k.ring
    factor = LaurentPoly.constant(ring, 1)
    for i in range(1, 3):
        factor = factor * (LaurentPoly.constant(ring, 1) - LaurentPoly.monomial(ring, {f"u{i}": 1, "t4": 1}))
    assert k == factor


def test_specialize():
    k = kclass(uniform(2, 4))
    assert specialize(k, "u") == P("1 - t1*t2*t3*t4")
    assert specialize(k, "AllT") == P("1 - u1^2*u2^2")
    with pytest.raises(InputError):
        specialize(k, "v")


# -- Chow classes -----------------------------------------------------------------------------------------

def test_chow_fixture():
    assert chow_class(uniform(2, 4)).poly == P("2*u1 + 2*u2 + t1 + t2 + t3 + t4")
    assert chow_class(parallel_34()).poly == P("u1 + u2 + t3 + t4")


@pytest.mark.parametrize("m", small_family() + uniforms(5, 3), ids=repr)
def test_chow_routes_agree(m):
    c = chow_class(m)
    assert c.degree == m.codimension
    direct = chow_direct(m)
    if m.num_components == 1:
        assert direct == c.poly
        assert permutation_sum(m, "chow").to_poly() == c.poly
    else:
        assert direct.is_zero()


def test_k_to_chow_degree_guard():
    k = kclass(uniform(2, 4))
    assert k_to_chow(k).degree == 1
    with pytest.raises(DegreeMismatch):
        k_to_chow(k.poly, expected_degree=2)
    assert k_to_chow(kclass(uniform(1, 2))).poly == LaurentPoly.constant(Ring(1, 2), 1)


# -- characters ---------------------------------------------------------------------------------------------

def truncated_series_character(m):
    """Coefficient of t_1...t_n in K * prod_j (1 + h_1(u) t_j), Schur-expanded.

    The Hilbert series is K / prod (1 - u_i t_j); only the t_j^0 and t_j^1
    terms of each geometric factor can reach the multilinear coefficient.
    """
    k = kclass(m).poly
    ring = k.ring
    h1 = sum((LaurentPoly.var(ring, f"u{i}") for i in range(1, m.r + 1)), LaurentPoly.zero(ring))
    series = k
    for j in range(1, m.n + 1):
        series = series * (LaurentPoly.constant(ring, 1) + h1 * LaurentPoly.var(ring, f"t{j}"))
    uring = Ring(m.r, 0)
    coeff = LaurentPoly.from_terms(uring, [(e[:m.r], c) for e, c in series.items()
                                           if all(x == 1 for x in e[m.r:])])
    return schur_expand_u(coeff)


def test_character_fixture():
    u24 = uniform(2, 4)
    assert gv_character(u24) == {(4,): 1, (3, 1): 3, (2, 2): 1}
    assert truncated_series_character(u24) == gv_character(u24)
    assert sn_character(u24) == gv_character(u24)


def test_character_of_free_matroid():
    # U_{2,2}: the multilinear part of 1/prod(1 - u_i t_j) is h_1(u)^2 = s_2 + s_11
    assert gv_character(uniform(2, 2)) == {(2,): 1, (1, 1): 1}


@pytest.mark.parametrize("m", [m for m in small_family() if m.is_loopless], ids=repr)
def test_character_matches_truncated_series(m):
    assert gv_character(m) == truncated_series_character(m)


def test_character_with_loop_is_empty():
    assert gv_character(direct_sum(uniform(2, 3), uniform(0, 1))) == {}


# -- guards -----------------------------------------------------------------------------------------

def test_n8_fails_fast():
    start = time.perf_counter()
    with pytest.raises(ResourceLimit, match="n = 8"):
        kclass(uniform(3, 8))
    assert time.perf_counter() - start < 1


def test_rank_zero_rejected():
    with pytest.raises(InputError):
        kclass(uniform(0, 3))


@pytest.mark.parametrize("m", [m for m in small_family() if m.num_components > 1][:12], ids=repr)
def test_direct_chow_sum_vanishes_numerically_when_disconnected(m):
    # every summand has degree r(n-r)-(n-1), below the codimension; they cancel
    rng = random.Random(len(m.basis_masks))
    for _ in range(5):
        us, ts = distinct_point(rng, m.r, m.n)
        point = {**{f"u{i + 1}": v for i, v in enumerate(us)}, **{f"t{j + 1}": v for j, v in enumerate(ts)}}
        assert evaluate_sum(m, point, "chow") == 0
    assert not chow_class(m).poly.is_zero()
