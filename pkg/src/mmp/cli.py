"""``mmp`` command-line front end.

Exit status: 0 on success (and a passing ``verify``), 1 when ``verify``
finds a failing check, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import bijections as bj
from . import oracle, poly
from . import stirling as st
from .pattern import classify, mmp_matches
from .perm import DEFAULT_MAX_N, Permutation, parse_permutation

FORMATS = ("text", "json", "csv", "latex")


class UsageError(Exception):
    pass


def _num(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def _latex_num(x) -> str:
    if isinstance(x, Fraction) and x.denominator != 1:
        sign = "-" if x < 0 else ""
        return rf"{sign}\frac{{{abs(x.numerator)}}}{{{x.denominator}}}"
    return _num(x)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _poly_latex(p: poly.IntPolynomial) -> str:
    text = p.to_text()
    out = []
    for tok in text.split(" "):
        if "^" in tok:
            base, exp = tok.split("^")
            tok = f"{base}^{{{exp}}}"
        out.append(tok)
    return " ".join(out)


def _require(value, flag: str, what: str):
    if value is None:
        raise UsageError(f"{flag} is required ({what})")
    return value


# subcommands

def cmd_dist(a) -> str:
    n = _require(a.n, "--n", "n >= 1")
    k = _require(a.k, "--k", "k >= 2")
    if n < 1:
        raise UsageError("--n must be at least 1")
    if k < 2:
        raise UsageError("--k must be at least 2")
    if a.enumerate:
        p = oracle.distribution_histogram(n, k, not a.unprimed, a.max_n)
    else:
        p = poly.r_poly(n, k) if a.unprimed else poly.p_poly(n, k)
    if a.format == "json":
        return _dump({"n": str(n), "k": str(k), "primed": not a.unprimed, "coefficients": p.to_json()})
    if a.format == "csv":
        return _csv(["degree", "coefficient"], [(d, c) for d, c in enumerate(p.coeffs)])
    if a.format == "latex":
        return _poly_latex(p)
    return p.to_text()


def cmd_stirling(a) -> str:
    n = _require(a.n, "--n", "n >= 0")
    kind = a.kind
    if kind == "r" and a.r is None:
        raise UsageError("--r is required for --kind r")

    def value(k):
        if kind == "unsigned":
            return st.stirling1_unsigned(n, k)
        if kind == "signed":
            return st.stirling1_signed(n, k)
        if kind == "negative":
            return st.stirling1_negative(n, k)
        return st.r_stirling(n, k, a.r)

    ks = [a.k] if a.k is not None else list(range(a.r if kind == "r" else 0, n + 1))
    rows = [(k, value(k)) for k in ks]
    label = {"unsigned": "c", "signed": "s", "negative": "s", "r": "r"}[kind]
    if a.format == "json":
        return _dump({"kind": kind, "n": str(n), "r": None if a.r is None else str(a.r),
                      "values": {str(k): _num(v) for k, v in rows}})
    if a.format == "csv":
        return _csv(["k", "value"], [(k, _num(v)) for k, v in rows])

    def name(k):
        if kind == "r":
            return f"[{n} {k}]_{a.r}"
        if kind == "negative":
            return f"s(-{n},{k})"
        return f"{label}({n},{k})"

    if a.format == "latex":
        return "\n".join(f"{name(k)} = {_latex_num(v)}" for k, v in rows)
    return "\n".join(f"{name(k)} = {_num(v)}" for k, v in rows)


def cmd_harmonic(a) -> str:
    n = _require(a.n, "--n", "n >= 0")
    js = [a.j] if a.j is not None else list(range(0, n + 1))
    if a.level is None:
        rows = [(j, st.harmonic_iterated(n, j)) for j in js]
        name = lambda j: f"H_{n}^({j})"
    else:
        rows = [(j, st.harmonic_nested(n, j, a.level)) for j in js]
        name = lambda j: f"H^{a.level}_{n},{j}"
    if a.format == "json":
        return _dump({"n": str(n), "level": None if a.level is None else str(a.level),
                      "values": {str(j): _num(v) for j, v in rows}})
    if a.format == "csv":
        return _csv(["j", "value"], [(j, _num(v)) for j, v in rows])
    if a.format == "latex":
        return "\n".join(f"{name(j)} = {_latex_num(v)}" for j, v in rows)
    return "\n".join(f"{name(j)} = {_num(v)}" for j, v in rows)


def cmd_table(a) -> str:
    n = _require(a.n, "--n", "n >= 1")
    if n < 1:
        raise UsageError("--n must be at least 1")
    t = poly.arrow_table(n)
    if a.format == "json":
        d = t.to_json()
        d["n"] = str(d["n"])
        return _dump(d)
    if a.format == "latex":
        return t.to_latex()
    if a.format == "csv":
        return _csv(["k", "j", "coefficient", "vertical", "diagonal"],
                    [(k, j, t.row(k)[j], *t.arrows.get((k, j), ("", ""))) for k in range(2, n + 2)
                     for j in range(len(t.row(k)))])
    return t.to_text()


def _perm(a) -> Permutation:
    return parse_permutation(_require(a.perm, "--perm", "a permutation such as 2341 or 2,3,4,1"))


def cmd_match(a) -> str:
    sigma = _perm(a)
    ks = [a.k] if a.k is not None else list(range(2, sigma.n + 2))
    reps = [(k, mmp_matches(sigma, k), classify(sigma, k)) for k in ks]
    if a.format == "json":
        return _dump({"perm": str(sigma), "reports": [
            {"k": str(k), "matched_positions": [str(i) for i in r.matched_positions],
             "zero_matches": r.zero_matches, "count_unprimed": str(r.count_unprimed),
             "count_primed": str(r.count_primed), "class": str(c)} for k, r, c in reps]})
    if a.format == "csv":
        return _csv(["k", "matched_positions", "zero_matches", "count_unprimed", "count_primed", "class"],
                    [(k, " ".join(map(str, r.matched_positions)), int(r.zero_matches),
                      r.count_unprimed, r.count_primed, c) for k, r, c in reps])
    if a.format == "latex":
        raise UsageError("match supports --format text|json|csv")
    lines = [f"perm {sigma}"]
    for k, r, c in reps:
        pos = ",".join(map(str, r.matched_positions)) or "-"
        lines.append(f"k={k}: positions {pos}; zero {'yes' if r.zero_matches else 'no'}; "
                     f"mmp={r.count_unprimed} mmp'={r.count_primed}; {c}")
    return "\n".join(lines)


BIJECTIONS = ("rstir-fwd", "rstir-inv", "main2-fwd", "main2-inv", "delete", "border-fwd", "border-inv")


def cmd_biject(a) -> str:
    sigma = _perm(a)
    which = a.which
    needs_k = which != "border-fwd"
    k = _require(a.k, "--k", "pattern parameter") if needs_k else a.k
    result: dict = {"which": which, "input": str(sigma)}
    if which == "rstir-fwd":
        fib = bj.rstir_forward(sigma, k)
        result.update(k=str(k), j=str(fib.j), case=fib.case_tag, base=str(fib.base),
                      images=[str(p) for p in fib.images])
    elif which == "rstir-inv":
        result.update(k=str(k), output=str(bj.rstir_inverse(sigma, k)))
    elif which == "main2-fwd":
        qs = [a.q] if a.q is not None else list(range(1, k))
        result.update(k=str(k), images={str(q): str(bj.main2_forward(sigma, k, q).pi_q) for q in qs})
    elif which == "main2-inv":
        pre, q = bj.main2_inverse(sigma, k)
        result.update(k=str(k), output=str(pre), q=str(q))
    elif which == "delete":
        result.update(k=str(k), branch=bj.delete_map_branch(sigma, k), output=str(bj.thm_main_delete_map(sigma, k)))
    elif which == "border-fwd":
        result.update(output=str(bj.border_to_mmp(sigma)))
    else:
        result.update(k=str(k), output=str(bj.border_from_mmp(sigma, k)))
    if a.format == "json":
        return _dump(result)
    if a.format == "csv":
        outs = result.get("images") or result.get("output")
        if isinstance(outs, dict):
            return _csv(["q", "output"], sorted(outs.items()))
        return _csv(["output"], [[o] for o in ([outs] if isinstance(outs, str) else outs)])
    if a.format == "latex":
        raise UsageError("biject supports --format text|json|csv")
    lines = []
    for key, v in result.items():
        if isinstance(v, list):
            lines.append(f"{key}: " + " ".join(v))
        elif isinstance(v, dict):
            lines.append(f"{key}: " + " ".join(f"{q}->{p}" for q, p in v.items()))
        else:
            lines.append(f"{key}: {v}")
    return "\n".join(lines)


def cmd_verify(a):
    max_n = a.max_n if a.max_n is not None else oracle.SuiteConfig.max_n
    cfg = oracle.SuiteConfig(max_n=max_n, arith_max=a.arith_max,
                             bijection_max=min(max_n, oracle.SuiteConfig.bijection_max),
                             suites=tuple(a.suite) if a.suite else None)
    report = oracle.run_suite(cfg)
    if a.format == "json":
        text = report.to_json(timing=a.timing)
    elif a.format == "csv":
        text = _csv(["id", "passed"], [(r.id, int(r.passed)) for r in sorted(report.records, key=lambda r: r.id)])
    elif a.format == "latex":
        raise UsageError("verify supports --format text|json|csv")
    else:
        text = report.summary()
    return text, (0 if report.passed else 1)


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--format", choices=FORMATS, default="text")
    shared.add_argument("--max-n", type=int, default=None,
                        help=f"bound for exhaustive enumeration (default {DEFAULT_MAX_N}; verify uses 7)")

    p = argparse.ArgumentParser(prog="mmp", description="MMP^k statistics, r-Stirling identities and bijections.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dist", parents=[shared], help="generating polynomial P_n^k or R_n^k")
    d.add_argument("--n", type=int)
    d.add_argument("--k", type=int)
    g = d.add_mutually_exclusive_group()
    g.add_argument("--primed", action="store_true", help="mmp^{k'} (default)")
    g.add_argument("--unprimed", action="store_true", help="mmp^k")
    d.add_argument("--enumerate", action="store_true", help="count by enumerating S_n")
    d.set_defaults(func=cmd_dist)

    s = sub.add_parser("stirling", parents=[shared], help="Stirling numbers of the first kind")
    s.add_argument("--kind", choices=("unsigned", "signed", "r", "negative"), default="unsigned")
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int, help="single column; omit for the whole row")
    s.add_argument("--r", type=int)
    s.set_defaults(func=cmd_stirling)

    h = sub.add_parser("harmonic", parents=[shared], help="iterated or nested harmonic sums")
    h.add_argument("--n", type=int)
    h.add_argument("--j", type=int)
    h.add_argument("--level", type=int, help="nested sum H^level_{n,j}; omit for H_n^(j)")
    h.set_defaults(func=cmd_harmonic)

    t = sub.add_parser("table", parents=[shared], help="arrow table of P_n^k for k = 2..n+1")
    t.add_argument("--n", type=int)
    t.set_defaults(func=cmd_table)

    m = sub.add_parser("match", parents=[shared], help="MMP^k matches of a permutation")
    m.add_argument("--perm")
    m.add_argument("--k", type=int)
    m.set_defaults(func=cmd_match)

    b = sub.add_parser("biject", parents=[shared], help="apply a correspondence")
    b.add_argument("--which", choices=BIJECTIONS, required=True)
    b.add_argument("--perm")
    b.add_argument("--k", type=int)
    b.add_argument("--q", type=int)
    b.set_defaults(func=cmd_biject)

    v = sub.add_parser("verify", parents=[shared], help="run the exhaustive verification suites")
    v.add_argument("--suite", action="append", choices=sorted(oracle.SUITES))
    v.add_argument("--arith-max", type=int, default=20)
    v.add_argument("--timing", action="store_true", help="include per-check timings in JSON")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = args.func(args)
    except (UsageError, ValueError, ArithmeticError) as exc:
        print(f"mmp {args.command}: error: {exc}", file=sys.stderr)
        return 2
    code = 0
    if isinstance(out, tuple):
        out, code = out
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
