"""Command-line front end.

Usage: ``smoothgerms <verb> <subverb> [args] [--format json|csv] [--grid N] [--tol X]``.

Exit codes: 0 on success, 2 on a usage error (bad flags, malformed
expressions), 1 on a domain error such as inverting the zero germ.  Errors
are reported on stdout as ``{"error": {"type": ..., "message": ...}}``.

JSON schemas (keys always present unless marked optional):

* germ cmp: lhs, rhs, relation, dominates, equal, le, witness_threshold
* germ sign / inv / diff / order: germ, plus sign / inverse / derivative /
  growth_order, plus witness_threshold
* zeroset isolate: poly, count, roots (intervals with lo, hi, exact)
* zeroset components: input, components, points
* zeroset dichotomy: f, cutoff, verdict, sign, components (null outside the
  piecewise-rational fragment), extension_smooth (null when undecided)
* smooth *: expr or summary fields, samples (list of {x, value, d1, d2, d3})
* quot eq: class_rep, equal, ideal_witness (null when the classes differ)
* quot phi / embed: class_rep, representative
* quot hadamard: f, verified, g1 ... gn
* selftest: suites (one result object per suite), passed
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from typing import Sequence, TextIO

import numpy as np

from . import germfield as GF
from . import quotient as Q
from . import suites as S
from .expr import nodes as N
from .expr.calculus import differentiate
from .expr.evaluate import EvaluationError, evaluate_array
from .expr.nodes import OutOfClassError
from .expr.parser import ParseError, parse, parse_poly
from .expr.printer import to_text
from .poly import NEG_INF, POS_INF, fmt_bound
from .smoothkit.bumps import BumpSpec, bump
from .smoothkit.cover import ClosedSet, CoverageError, CoverElement, LocalSmoothData
from .smoothkit.partition import partition_of_unity
from .smoothkit.tietze import OverlapMismatch, agreement_error, extend_beyond, tietze_extend
from .zeroset.components import extend_by_zero, extension_is_smooth, ominimal_dichotomy, unary_components
from .zeroset.sturm import ZeroPolynomialError, refine, sturm_isolate
from .zeroset.weak import ArityError


class UsageError(ValueError):
    """Malformed command-line input (exit code 2)."""


DOMAIN_ERRORS = (
    GF.ZeroGermError,
    OutOfClassError,
    CoverageError,
    OverlapMismatch,
    Q.NotTotalError,
    ArityError,
    EvaluationError,
    ZeroPolynomialError,
    ArithmeticError,
    ValueError,
)


# -- argument parsing helpers ------------------------------------------------------


def _num(text: str):
    t = text.strip().lower()
    if t in ("inf", "+inf", "infinity"):
        return POS_INF
    if t in ("-inf", "-infinity"):
        return NEG_INF
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a number: {text!r}") from None


def _rat(text: str) -> Fraction:
    v = _num(text)
    if v in (NEG_INF, POS_INF):
        raise UsageError(f"expected a finite number, got {text!r}")
    return v


def _expr(text: str) -> N.Expr:
    return parse(text)


_INTERVAL = re.compile(r"([\[(])\s*([^,\[\]()]+?)\s*,\s*([^,\[\]()]+?)\s*([\])])")


def _intervals(text: str) -> list[tuple]:
    """``(a, b), [c, d]`` -> [(open_left, a, b, open_right), ...]."""
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _INTERVAL.match(text, pos)
        if not m:
            raise UsageError(f"cannot read an interval at {text[pos:]!r}")
        out.append((m.group(1) == "(", _num(m.group(2)), _num(m.group(3)), m.group(4) == ")"))
        pos = m.end()
        while pos < len(text) and text[pos] in " ,;":
            pos += 1
    if not out:
        raise UsageError("no intervals given")
    return out


def parse_cover(text: str) -> list[CoverElement]:
    cover = []
    for open_l, lo, hi, open_r in _intervals(text):
        if not (open_l and open_r):
            raise UsageError("cover elements are open intervals (a, b)")
        cover.append(CoverElement(lo, hi))
    return cover


def parse_closed_set(text: str) -> ClosedSet:
    """``(-inf, -1], [1, inf)``: finite ends closed, infinite ends open."""
    if text.strip() in ("R", "(-inf, inf)", "(-inf,inf)"):
        return ClosedSet.line()
    pieces = []
    for open_l, lo, hi, open_r in _intervals(text):
        if open_l != (lo == NEG_INF) or open_r != (hi == POS_INF):
            raise UsageError("closed pieces need [ ] at finite ends and ( ) at infinite ends")
        pieces.append((lo, hi))
    return ClosedSet.of(pieces)


def parse_data(text: str) -> LocalSmoothData:
    """``(a, b): expr; (c, d): expr``."""
    entries = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        m = _INTERVAL.match(chunk.strip())
        if not m or m.group(1) != "(" or m.group(4) != ")":
            raise UsageError(f"data entries look like '(a, b): expr', got {chunk.strip()!r}")
        rest = chunk.strip()[m.end():].lstrip()
        if not rest.startswith(":"):
            raise UsageError(f"missing ':' after the neighbourhood in {chunk.strip()!r}")
        entries.append((CoverElement(_num(m.group(2)), _num(m.group(3))), _expr(rest[1:])))
    if not entries:
        raise UsageError("no local data given")
    return LocalSmoothData(tuple(entries))


# -- output ---------------------------------------------------------------------------


def _samples(e: N.Expr, lo: float, hi: float, grid: int) -> list[dict]:
    xs = np.linspace(lo, hi, grid)
    d1 = differentiate(e)
    d2 = differentiate(d1)
    d3 = differentiate(d2)
    cols = [evaluate_array(f, xs) for f in (e, d1, d2, d3)]
    rows = []
    for i, x in enumerate(xs):
        # + 0.0 turns -0.0 into 0.0
        rows.append({"x": float(x) + 0.0, "value": float(cols[0][i]) + 0.0, "d1": float(cols[1][i]) + 0.0,
                     "d2": float(cols[2][i]) + 0.0, "d3": float(cols[3][i]) + 0.0})
    return rows


def _emit(obj, fmt: str, out: TextIO) -> None:
    if fmt == "csv":
        rows = obj.get("samples") if isinstance(obj, dict) else None
        if rows is None:
            raise UsageError("this command has no tabular output; use --format json")
        w = csv.DictWriter(out, fieldnames=list(rows[0].keys()) if rows else ["x"], lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
    else:
        out.write(json.dumps(obj, indent=2, default=str) + "\n")


def _range(args, default_lo, default_hi) -> tuple[float, float]:
    lo = float(_rat(args.lo)) if args.lo is not None else float(default_lo)
    hi = float(_rat(args.hi)) if args.hi is not None else float(default_hi)
    if not lo < hi:
        raise UsageError(f"sample range needs lo < hi, got [{lo}, {hi}]")
    return lo, hi


# -- verbs ---------------------------------------------------------------------------------


def _germ(args) -> dict:
    f = GF.germ_of(_expr(args.e))
    if args.sub == "cmp":
        return GF.compare(f, GF.germ_of(_expr(args.g)))
    out = {"germ": str(f.rf)}
    if args.sub == "sign":
        out["sign"] = str(GF.eventual_sign(f))
        out["witness_threshold"] = fmt_bound(f.witness)
    elif args.sub == "inv":
        inv = GF.invert(f)
        out["inverse"] = str(inv.rf)
        out["witness_threshold"] = fmt_bound(inv.witness)
    elif args.sub == "diff":
        d = GF.derive(f)
        out["derivative"] = str(d.rf)
        out["witness_threshold"] = fmt_bound(d.witness)
    else:
        order = GF.growth_order(f)
        out["growth_order"] = fmt_bound(order) if order == NEG_INF else order
        out["witness_threshold"] = fmt_bound(f.witness)
    return out


def _poly_or_expr(text: str):
    try:
        p = parse_poly(text, 1)
    except (ParseError, OutOfClassError):
        return _expr(text)
    return p


def _zeroset(args) -> dict:
    if args.sub == "isolate":
        p = parse_poly(args.target, 1)
        roots = sturm_isolate(p)
        if args.width is not None:
            w = _rat(args.width)
            if w <= 0:
                raise UsageError("--width must be positive")
            roots = [refine(p, iv, w) for iv in roots]
        return {"poly": str(p), "count": len(roots), "roots": [iv.to_json() for iv in roots]}
    if args.sub == "components":
        target = _poly_or_expr(args.target)
        out = {"input": str(target) if not isinstance(target, N.Expr) else to_text(target)}
        out.update(unary_components(target).to_json())
        return out
    f = _expr(args.target)
    c = _num(args.cutoff) if args.cutoff is not None else NEG_INF
    verdict = ominimal_dichotomy(f, c)
    try:
        comps = unary_components(extend_by_zero(f, c)).to_json()["components"]
    except (OutOfClassError, ValueError):
        comps = None
    return {"f": to_text(f), "cutoff": fmt_bound(c), "verdict": verdict.value, "sign": verdict.sign,
            "components": comps, "extension_smooth": extension_is_smooth(f, c)}


def _smooth(args) -> dict:
    grid = args.grid
    if args.sub == "bump":
        spec = BumpSpec(_rat(args.q), _rat(args.a), _rat(args.b))
        e = bump(spec)
        lo, hi = _range(args, spec.q - 2 * spec.b, spec.q + 2 * spec.b)
        return {"expr": to_text(e), "samples": _samples(e, lo, hi, grid)}
    if args.sub == "pou":
        m1, m2 = (_rat(w) for w in args.window)
        if m1.denominator != 1 or m2.denominator != 1:
            raise UsageError("window ends must be integers")
        pou = partition_of_unity(parse_cover(args.cover), (int(m1), int(m2)))
        cert = pou.certify(grid=max(grid, 2), tol=args.tol if args.tol is not None else 1e-12)
        lo, hi = _range(args, m1, m2)
        xs = np.linspace(lo, hi, grid)
        vals = pou.member_values(xs)
        rows = []
        for i, x in enumerate(xs):
            row = {"x": float(x), "sum": float(vals[:, i].sum())}
            row.update({f"m{k + 1}": float(vals[k, i]) for k in range(len(pou.members))})
            rows.append(row)
        out = pou.to_json()
        out["certificate"] = cert.to_json()
        out["samples"] = rows
        return out
    if args.sub == "tietze":
        F = parse_closed_set(args.set)
        data = parse_data(args.data)
        ext = tietze_extend(F, data)
        ends = F.finite_ends() + [e for u, _ in data for e in u.finite_ends()]
        lo, hi = _range(args, min(ends, default=-1) - 1, max(ends, default=1) + 1)
        return {
            "set": str(F),
            "agreement_error": agreement_error(ext, F, data),
            "samples": _samples(ext, lo, hi, grid),
        }
    g = _expr(args.expr)
    b = _num(args.start) if args.start is not None else NEG_INF
    c = _rat(args.cutoff)
    if b == NEG_INF:
        b = Q.domain_start(g)
        if b == POS_INF:
            raise OutOfClassError("cannot tell where the expression is defined; pass --from")
        if b != NEG_INF and not c > b:
            raise ValueError(f"cutoff {c} must lie past where g is defined ({fmt_bound(b)}, inf)")
    ext = extend_beyond(g, b, c) if b != NEG_INF else g
    lo, hi = _range(args, (b if b != NEG_INF else c - 2) - 1, c + 3)
    return {"expr": to_text(g), "from": fmt_bound(b), "cutoff": fmt_bound(c), "samples": _samples(ext, lo, hi, grid)}


def _quot(args) -> dict:
    if args.sub == "eq":
        a, b = Q.QuotientElem(_expr(args.e1)), Q.QuotientElem(_expr(args.e2))
        w = Q.congruence_witness(a, b)
        return {"class_rep": str(a.rf), "other": str(b.rf), "equal": a == b,
                "ideal_witness": None if w is None else fmt_bound(w)}
    if args.sub == "phi":
        f = parse_poly(args.poly, len(args.args))
        val = Q.phi(f, [Q.QuotientElem(_expr(t)) for t in args.args])
        out = {"poly": str(f)}
        out.update(val.to_json())
        return out
    if args.sub == "hadamard":
        return Q.hadamard(parse_poly(args.poly, args.nvars)).to_json()
    f = GF.germ_of(_expr(args.germ))
    out = {"germ": str(f.rf), "witness_threshold": fmt_bound(f.witness)}
    out.update(Q.embed_T(f).to_json())
    return out


def _selftest(args, out: TextIO) -> int:
    if args.list:
        for name in S.SUITES:
            out.write(name + "\n")
        return 0
    names = args.suite or list(S.SUITES)
    for n in names:
        if n not in S.SUITES:
            raise UsageError(f"unknown suite {n!r}; known: {', '.join(S.SUITES)}")
    opts = {}
    if args.window:
        m1, m2 = (_rat(w) for w in args.window)
        if m1.denominator != 1 or m2.denominator != 1 or not m1 < m2:
            raise UsageError("--window needs integers M1 < M2")
        opts["window"] = (int(m1), int(m2))
    if args.tol is not None:
        opts["tol"] = args.tol
    if args.grid_given:
        opts["grid"] = args.grid
    results = [S.run_suite(n, seed=args.seed, scale=args.scale, opts=opts) for n in names]
    ok = all(r.passed for r in results)
    if args.format == "json":
        _emit({"suites": [r.to_json() for r in results], "passed": ok}, "json", out)
    else:
        for r in results:
            out.write(r.line() + "\n")
            for f in r.failures[:5]:
                out.write(f"    {f}\n")
        out.write(("all suites passed" if ok else "some suites failed") + "\n")
    return 0 if ok else 1


# -- parser -----------------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--grid", type=int, default=argparse.SUPPRESS, help="sampling density")
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="tolerance override")

    p = _Parser(prog="smoothgerms", description="Germs, zero sets, smooth gluing and quotient rings.")
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    verbs = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def leaf(group, name, help_):
        return group.add_parser(name, help=help_, parents=[common])

    germ = verbs.add_parser("germ", help="germs at +inf").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    sp = leaf(germ, "cmp", "compare growth and order")
    sp.add_argument("e")
    sp.add_argument("g")
    for name, h in (("sign", "eventual sign"), ("inv", "multiplicative inverse"),
                    ("diff", "derivative"), ("order", "growth order")):
        leaf(germ, name, h).add_argument("e")

    zs = verbs.add_parser("zeroset", help="unary zero sets").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    sp = leaf(zs, "isolate", "isolate real roots of a polynomial")
    sp.add_argument("target")
    sp.add_argument("--width", default=None)
    leaf(zs, "components", "connected components of a zero set").add_argument("target")
    sp = leaf(zs, "dichotomy", "eventual sign via the zero set")
    sp.add_argument("target")
    sp.add_argument("--cutoff", default=None)

    sm = verbs.add_parser("smooth", help="bumps, partitions, extensions").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    for name, h in (("bump", "bump function"), ("pou", "partition of unity"),
                    ("tietze", "extension from a closed set"), ("extend", "extension past a cutoff")):
        sp = leaf(sm, name, h)
        sp.add_argument("--lo", default=None)
        sp.add_argument("--hi", default=None)
        if name == "bump":
            sp.add_argument("--q", default="0")
            sp.add_argument("--a", default="1/2")
            sp.add_argument("--b", default="1")
        elif name == "pou":
            sp.add_argument("--cover", required=True)
            sp.add_argument("--window", nargs=2, required=True, metavar=("M1", "M2"))
        elif name == "tietze":
            sp.add_argument("--set", required=True)
            sp.add_argument("--data", required=True)
        else:
            sp.add_argument("--expr", required=True)
            sp.add_argument("--from", dest="start", default=None)
            sp.add_argument("--cutoff", required=True)

    qt = verbs.add_parser("quot", help="the quotient ring").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    sp = leaf(qt, "eq", "congruence modulo the eventually-zero ideal")
    sp.add_argument("e1")
    sp.add_argument("e2")
    sp = leaf(qt, "phi", "apply a polynomial operation")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--args", nargs="+", required=True)
    sp = leaf(qt, "hadamard", "Hadamard witness of a polynomial")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--nvars", type=int, default=None)
    leaf(qt, "embed", "the embedding of a germ").add_argument("--germ", required=True)

    st = verbs.add_parser("selftest", help="run the property suites", parents=[common])
    st.add_argument("--suite", action="append", default=None, help="suite name (repeatable)")
    st.add_argument("--window", nargs=2, default=None, metavar=("M1", "M2"))
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--scale", type=float, default=1.0, help="multiply every suite's sample count")
    st.add_argument("--list", action="store_true", help="list suite names")
    return p


def run(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    """Run one command; returns the exit code."""
    out = out if out is not None else sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _emit({"error": {"type": "UsageError", "message": str(exc)}}, "json", out)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    args.grid_given = args.grid is not None
    args.grid = args.grid if args.grid is not None else 201
    if args.grid < 2:
        _emit({"error": {"type": "UsageError", "message": "--grid needs at least 2 points"}}, "json", out)
        return 2
    fmt = args.format or ("csv" if args.verb == "smooth" else "json")
    buf = io.StringIO()
    try:
        if args.verb == "selftest":
            args.format = fmt if args.format else "text"
            code = _selftest(args, buf)
            out.write(buf.getvalue())
            return code
        handler = {"germ": _germ, "zeroset": _zeroset, "smooth": _smooth, "quot": _quot}[args.verb]
        _emit(handler(args), fmt, buf)
    except (UsageError, ParseError) as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}}, "json", out)
        return 2
    except DOMAIN_ERRORS as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}}, "json", out)
        return 1
    out.write(buf.getvalue())
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
