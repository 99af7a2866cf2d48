"""Command-line front end.

Exit codes: 0 success, 2 rejected input, 3 internal invariant violation,
4 a checker found a decisive counterexample.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import __version__
from .errors import InputError, InvariantViolation
from .exactpoly import LaurentPoly, RatFunc
from .matroid import Matroid
from .orbitclass import (
    chow_class, default_jobs, equiv_multiplicity, gv_character, kclass, sn_character,
)
from .projclass import cross_check, li_class, s_of_m
from .schubert import (
    PositivityReport, SquareFreeCertificate, Verdict, check_chow2, check_pos1, check_pos2,
    check_sqfree, expand_composition, expand_double_schur, expand_grothendieck,
)

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT, EXIT_COUNTEREXAMPLE = 0, 2, 3, 4


# -- input ------------------------------------------------------------------------------

def _rational(x) -> Fraction:
    if isinstance(x, bool):
        raise InputError(f"matrix entry {x!r} is not a rational number")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"matrix entry {x!r} is not a rational 'p/q' string") from None
    raise InputError(f"matrix entry {x!r} must be an integer or a 'p/q' string")


def matroid_from_data(data) -> Matroid:
    if not isinstance(data, dict):
        raise InputError("matroid file must hold a JSON object")
    if "matrix" in data:
        matrix = data["matrix"]
        if not isinstance(matrix, list) or not all(isinstance(row, list) for row in matrix):
            raise InputError("'matrix' must be a list of rows")
        rows = [[_rational(x) for x in row] for row in matrix]
        return Matroid.from_matrix(rows, data.get("r"))
    missing = [key for key in ("n", "r", "bases") if key not in data]
    if missing:
        raise InputError(f"matroid file lacks {', '.join(missing)} (or a 'matrix')")
    n, r, bases = data["n"], data["r"], data["bases"]
    if not isinstance(n, int) or not isinstance(r, int) or not isinstance(bases, list):
        raise InputError("'n' and 'r' must be integers and 'bases' a list")
    seen = set()
    for b in bases:
        if not isinstance(b, list) or not all(isinstance(e, int) and not isinstance(e, bool) for e in b):
            raise InputError(f"basis {b!r} must be a list of integers")
        key = frozenset(b)
        if key in seen:
            raise InputError(f"duplicate basis {sorted(b)}")
        seen.add(key)
    return Matroid.from_bases(n, r, bases)


def load_matroid(path: str) -> Matroid:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    return matroid_from_data(data)


def matroid_digest(m: Matroid) -> str:
    canon = json.dumps({"n": m.n, "r": m.r, "bases": [list(b) for b in m.bases]},
                       separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


# -- payload rendering --------------------------------------------------------------------

def poly_payload(p: LaurentPoly) -> dict:
    return p.to_json()


def ratfunc_payload(q: RatFunc) -> dict:
    return {"text": str(q), "numerator": q.num.to_json(),
            "denominator": [{"factor": f.poly.to_json(), "multiplicity": m} for f, m in q.den]}


def _label(x) -> str:
    return str(x)


def _witness(entry) -> str:
    w = entry.witness
    if isinstance(w, SquareFreeCertificate):
        return w.render()
    if isinstance(w, LaurentPoly):
        return str(w)
    return str(w)


def report_payload(rep: PositivityReport) -> dict:
    return {
        "statement": rep.statement,
        "all_positive": rep.all_positive,
        "counterexample": _is_counterexample(rep),
        "entries": [{"label": _label(e.label), "sign_exponent": e.sign_exponent,
                     "verdict": e.verdict.value,
                     "value": None if e.value is None else str(e.value),
                     "witness": _witness(e)} for e in rep.entries],
    }


def _is_counterexample(rep: PositivityReport) -> bool:
    decisive = {Verdict.NEGATIVE, Verdict.NOT_EXPRESSIBLE}
    return rep.counterexample or any(e.verdict in decisive for e in rep.entries)


# -- commands ----------------------------------------------------------------------------------

def cmd_kclass(args, m: Matroid):
    k = kclass(m, jobs=args.jobs)
    return {"kclass": poly_payload(k.poly), "codimension": k.codimension}, str(k.poly), EXIT_OK


def cmd_chow(args, m: Matroid):
    c = chow_class(m, jobs=args.jobs)
    text = f"{c.poly}\ndegree {c.degree}"
    return {"chow": poly_payload(c.poly), "degree": c.degree}, text, EXIT_OK


def cmd_pn_class(args, m: Matroid):
    pts = s_of_m(m)
    li = li_class(m, pts)
    lines = ["S(M) = {" + ", ".join("(" + ",".join(map(str, s)) + ")" for s in pts.points) + "}",
             f"class = {li.poly}"]
    return {"points": [list(s) for s in pts.points], "class": poly_payload(li.poly)}, "\n".join(lines), EXIT_OK


def _parse_basis(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise InputError(f"--basis expects comma-separated integers, got {text!r}") from None


def cmd_multiplicity(args, m: Matroid):
    if not args.basis:
        raise InputError("multiplicity needs --basis, e.g. --basis 1,3")
    q = equiv_multiplicity(m, _parse_basis(args.basis))
    return {"basis": _parse_basis(args.basis), "multiplicity": ratfunc_payload(q)}, str(q), EXIT_OK


def cmd_expand(args, m: Matroid):
    kind = args.basis or "grothendieck"
    if kind == "grothendieck":
        res = expand_grothendieck(kclass(m, jobs=args.jobs))
    elif kind == "composition":
        res = expand_composition(kclass(m, jobs=args.jobs))
    elif kind == "double-schur":
        res = expand_double_schur(chow_class(m, jobs=args.jobs))
    else:
        raise InputError(f"unknown basis {kind!r}; use grothendieck, double-schur or composition")
    coeffs = {_label(k): v for k, v in res.coefficients.items()}
    lines = [f"{lab}: {v}" for lab, v in coeffs.items() if not v.is_zero()]
    lines.append(f"residual: {res.residual}")
    payload = {"basis": kind, "coefficients": {lab: poly_payload(v) for lab, v in coeffs.items()},
               "residual": poly_payload(res.residual)}
    return payload, "\n".join(lines), EXIT_OK


def cmd_characters(args, m: Matroid):
    k = kclass(m, jobs=args.jobs)
    gv = gv_character(m, k)
    sn = sn_character(m, k)
    fmt = lambda d: "{" + ", ".join(f"{lab}: {c}" for lab, c in d.items()) + "}"
    text = f"GL_r: {fmt(gv)}\nS_n: {fmt(sn)}"
    payload = {"gl": {str(k_): c for k_, c in gv.items()}, "sn": {str(k_): c for k_, c in sn.items()}}
    return payload, text, EXIT_OK


CHECKS: dict[str, Callable] = {
    "pos1": check_pos1, "pos2": check_pos2, "sqfree": check_sqfree, "chow2": check_chow2,
}


def cmd_check(args, m: Matroid):
    which = args.which or "all"
    names = ["pos1", "pos2", "sqfree", "chow2", "crosscheck"] if which == "all" else [which]
    payload, lines, code = {}, [], EXIT_OK
    k = kclass(m, jobs=args.jobs)
    for name in names:
        if name == "crosscheck":
            if which == "all" and (m.loops or m.num_components != 1):
                lines.append("crosscheck: skipped (needs a loopless connected matroid)")
                continue
            cc = cross_check(m, k)
            payload["crosscheck"] = {"li": str(cc.li), "via_k": str(cc.via_k), "equal": cc.equal}
            lines.append(f"crosscheck: li = {cc.li}, via K = {cc.via_k}, equal = {cc.equal}")
            continue
        if name not in CHECKS:
            raise InputError(f"unknown check {name!r}")
        if name == "pos2" and m.loops and which == "all":
            lines.append("pos2: skipped (matroid has loops)")
            continue
        rep = CHECKS[name](m) if name == "chow2" else CHECKS[name](m, k)
        payload[name] = report_payload(rep)
        lines.append(f"{name}: {'all positive' if rep.all_positive else 'NOT all positive'}")
        for e in rep.entries:
            lines.append(f"  {e.label}: {e.verdict.value}  [{_witness(e)}]")
        if _is_counterexample(rep):
            code = EXIT_COUNTEREXAMPLE
    return payload, "\n".join(lines), code


def cmd_selftest(args, m=None):
    from .selftest import run_fixtures
    results = run_fixtures()
    lines = [f"{'PASS' if ok else 'FAIL'} {name}" + ("" if ok else f": {detail}")
             for name, ok, detail in results]
    ok = all(r[1] for r in results)
    payload = {"fixtures": [{"name": n, "passed": p, "detail": d} for n, p, d in results]}
    return payload, "\n".join(lines), EXIT_OK if ok else EXIT_INVARIANT


COMMANDS = {
    "kclass": cmd_kclass, "chow": cmd_chow, "pn-class": cmd_pn_class,
    "multiplicity": cmd_multiplicity, "expand": cmd_expand, "characters": cmd_characters,
    "check": cmd_check, "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matkclass",
        description="Equivariant K-classes and Chow classes of matrix orbit closures.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--jobs", type=int, default=None,
                        help="worker processes (default: $MATROID_KCLASS_JOBS or 1)")
    common.add_argument("--out", help="write the result to this file instead of stdout")
    common.add_argument("--timing", action="store_true",
                        help="include wall-clock timing (makes output run-dependent)")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name != "selftest":
            p.add_argument("file", help="matroid JSON: {n, r, bases} or {matrix}")
        if name == "multiplicity":
            p.add_argument("--basis", help="fixed-point basis, e.g. 1,3")
        if name == "expand":
            p.add_argument("--basis", choices=["grothendieck", "double-schur", "composition"],
                           default="grothendieck")
        if name == "check":
            p.add_argument("--which", choices=["pos1", "pos2", "sqfree", "chow2", "crosscheck", "all"],
                           default="all")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    source = getattr(args, "file", None)
    start = time.perf_counter()
    try:
        if args.jobs is None:
            args.jobs = default_jobs()
        if args.jobs < 1:
            raise InputError("--jobs must be at least 1")
        m = load_matroid(source) if source else None
        payload, text, code = COMMANDS[args.command](args, m)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}" + (f" (input: {source})" if source else "") + "\n")
        return EXIT_INPUT
    except InvariantViolation as exc:
        sys.stderr.write(f"internal invariant violated: {type(exc).__name__}: {exc}"
                         + (f" (input: {source})" if source else "") + "\n")
        return EXIT_INVARIANT
    if args.format == "json":
        report = {"command": args.command, "result": payload}
        if m is not None:
            report["input"] = {"path": source, "digest": matroid_digest(m), "n": m.n, "r": m.r}
        if args.timing:
            report["timing_seconds"] = round(time.perf_counter() - start, 3)
        _emit(json.dumps(report, indent=2, sort_keys=True), args.out)
    else:
        if args.timing:
            text += f"\n({time.perf_counter() - start:.3f} s)"
        _emit(text, args.out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
