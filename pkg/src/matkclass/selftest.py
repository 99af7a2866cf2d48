"""The worked examples, runnable as ``matkclass selftest``."""
from __future__ import annotations

from typing import Callable

from .exactpoly import LaurentPoly, RatFunc, Ring, demazure_t
from .matroid import Matroid, direct_sum, uniform
from .orbitclass import chow_class, equiv_multiplicity, gv_character, kclass
from .projclass import cross_check, li_class, s_of_m
from .schubert import check_chow2, check_pos1, expand_double_schur, expand_grothendieck

R24 = Ring(2, 4)


def P(text: str) -> LaurentPoly:
    return LaurentPoly.parse(R24, text)


def parallel_34() -> Matroid:
    """Rank 2 on four elements with 3 and 4 parallel."""
    return Matroid.from_bases(4, 2, [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4)])


def _quotient(num: str, dens: list[str]) -> RatFunc:
    return RatFunc.quotient(P(num), [P(d) for d in dens])


def _fixtures() -> list[tuple[str, Callable[[], bool]]]:
    m7, u24 = parallel_34(), uniform(2, 4)
    linear = direct_sum(uniform(2, 3), uniform(0, 1))
    return [
        ("kclass parallel_34", lambda: kclass(m7).poly == P("1 - u1*u2*t3*t4")),
        ("kclass U24", lambda: kclass(u24).poly == P("1 - u1^2*u2^2*t1*t2*t3*t4")),
        ("kclass U23+U01", lambda: kclass(linear).poly == P("1 - u1*t4") * P("1 - u2*t4")),
        ("multiplicity {1,3}", lambda: equiv_multiplicity(m7, (1, 3)) == _quotient(
            "1", ["1 - t2*t3^-1", "1 - t4*t3^-1", "1 - t2*t1^-1"])),
        ("multiplicity {1,2}", lambda: equiv_multiplicity(m7, (1, 2)) == _quotient(
            "1 - t3*t4*t1^-1*t2^-1",
            ["1 - t3*t2^-1", "1 - t4*t2^-1", "1 - t3*t1^-1", "1 - t4*t1^-1"])),
        ("demazure delta_3", lambda: demazure_t(P("1 - u1*t4") * P("1 - u2*t4"), 3) == P("1 - u1*u2*t3*t4")),
        ("grothendieck expansion U24", lambda: {k: v for k, v in expand_grothendieck(kclass(u24)).nonzero.items()} == {
            (2, 1): P("t1^-1*t4"), (2, 0): P("-t1^-1*t4"), (1, 1): P("-t1^-1*t4"),
            (1, 0): P("t1^-1*t4 + t1^-1*t2^-1*t3*t4"), (0, 0): P("1 - t1^-1*t2^-1*t3*t4")}),
        ("chow U24", lambda: chow_class(u24).poly == P("2*u1 + 2*u2 + t1 + t2 + t3 + t4")),
        ("double schur expansion U24", lambda: expand_double_schur(chow_class(u24)).nonzero == {
            (1, 0): P("2"), (0, 0): P("-t1 - t2 + t3 + t4")}),
        ("S(M) parallel_34", lambda: s_of_m(m7).points == ((1, 1, 0, 1), (1, 1, 1, 0))),
        ("Li class parallel_34", lambda: str(li_class(m7)) == "t3 + t4"),
        ("cross check parallel_34", lambda: cross_check(m7).equal),
        ("pos1 U24", lambda: check_pos1(u24).all_positive),
        ("chow2 U24", lambda: {e.label: e.witness for e in check_chow2(u24).entries} == {(1,): 2}),
        ("character U24", lambda: gv_character(u24) == {(4,): 1, (3, 1): 3, (2, 2): 1}),
    ]


def run_fixtures() -> list[tuple[str, bool, str]]:
    out = []
    for name, check in _fixtures():
        try:
            ok = bool(check())
            out.append((name, ok, "" if ok else "value differs"))
        except Exception as exc:  # report every fixture, whatever breaks
            out.append((name, False, f"{type(exc).__name__}: {exc}"))
    return out
