"""Numerical evaluation.

Two paths share the same semantics:

* :func:`evaluate` takes a single Fraction or float.  Fraction inputs choose
  piecewise branches exactly and evaluate rational leaves exactly; only gate
  values are inexact.
* :func:`evaluate_array` takes a numpy array and is what the sampling and
  certification code uses.
"""

from __future__ import annotations

import math
import sys
from fractions import Fraction

import numpy as np

from ..poly import NEG_INF, as_rat
from .calculus import differentiate
from .nodes import (
    Compose,
    Derivative,
    Domain,
    Expr,
    Gate,
    Piecewise,
    Product,
    Quotient,
    RFun,
    Sum,
    walk,
)

# below this argument exp(-1/t) is under the smallest normal double
GATE_CUTOFF = 1.0 / math.log(sys.float_info.max)


class EvaluationError(ArithmeticError):
    """Evaluation outside the domain or at a vanishing denominator."""


class DomainViolation(EvaluationError):
    pass


def _gate_scalar(t: float, k: int) -> float:
    if t <= GATE_CUTOFF:
        return 0.0
    return math.exp(-1.0 / t - k * math.log(t)) if k else math.exp(-1.0 / t)


def _piece_index(pw: Piecewise, x) -> int:
    """Index of the piece whose interval (b_k, b_{k+1}] contains ``x``."""
    bps = pw.breakpoints
    for k in range(len(bps) - 1, -1, -1):
        if x > bps[k]:
            # x lies in (b_k, b_{k+1}] since it failed x > b_{k+1}
            return k
    if bps[0] == NEG_INF:
        return 0
    raise DomainViolation(f"{x} is left of the piecewise domain ({bps[0]}, inf)")


def evaluate(e: Expr, x) -> float:
    """Value of ``e`` at ``x`` as a float.

    >>> from .parser import parse
    >>> evaluate(parse("x^2 - 3*x"), 2)
    -2.0
    """
    if isinstance(x, int):
        x = Fraction(x)
    if not isinstance(x, (Fraction, float)):
        x = float(x)
    return float(_eval_scalar(e, x, {}))


def evaluate_exact(e: Expr, x) -> Fraction:
    """Exact value at a rational point; only for expressions without gates."""
    for n in walk(e):
        if isinstance(n, (Gate, Compose)):
            raise TypeError("exact evaluation needs a gate-free rational expression")
    return Fraction(_eval_scalar(e, as_rat(x), {}))


def _eval_scalar(n: Expr, x, memo):
    key = id(n)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    if isinstance(n, RFun):
        rf = n.rf
        if isinstance(x, Fraction):
            try:
                v = rf(x)
            except ZeroDivisionError:
                raise DomainViolation(f"{x} is a pole of {rf}") from None
        else:
            qv = _horner_float(rf, x, den=True)
            if qv == 0.0:
                raise DomainViolation(f"{x} is a pole of {rf}")
            v = _horner_float(rf, x, den=False) / qv
    elif isinstance(n, Sum):
        v = 0
        for t in n.terms:
            v = v + _eval_scalar(t, x, memo)
    elif isinstance(n, Product):
        v = 1
        for f in n.factors:
            v = v * _eval_scalar(f, x, memo)
            if v == 0:
                break
    elif isinstance(n, Quotient):
        den = _eval_scalar(n.den, x, memo)
        if den == 0:
            raise EvaluationError(f"denominator of {n!r} vanishes at {x}")
        v = _eval_scalar(n.num, x, memo) / den
    elif isinstance(n, Gate):
        v = _gate_scalar(float(_eval_scalar(n.arg, x, memo)), n.k)
    elif isinstance(n, Compose):
        inner = _eval_scalar(n.inner, x, memo)
        v = _eval_scalar(n.outer, inner, {})
    elif isinstance(n, Derivative):
        v = _eval_scalar(differentiate(n.body), x, {})
    elif isinstance(n, Piecewise):
        v = _eval_scalar(n.pieces[_piece_index(n, x)][1], x, memo)
    elif isinstance(n, Domain):
        if not x > n.a:
            raise DomainViolation(f"{x} is outside the domain ({n.a}, inf)")
        v = _eval_scalar(n.body, x, memo)
    else:
        raise TypeError(f"unknown node {n!r}")
    memo[key] = (n, v)
    return v


_FLOAT_COEFFS: dict = {}


def _float_coeffs(rf):
    hit = _FLOAT_COEFFS.get(rf)
    if hit is None:
        hit = (tuple(float(c) for c in rf.p), tuple(float(c) for c in rf.q))
        if len(_FLOAT_COEFFS) > 100_000:
            _FLOAT_COEFFS.clear()
        _FLOAT_COEFFS[rf] = hit
    return hit


def _horner_float(rf, x, den: bool):
    cs = _float_coeffs(rf)[1 if den else 0]
    acc = 0.0 * x
    for c in reversed(cs):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# vectorized path


def _gt(xs: np.ndarray, b) -> np.ndarray:
    """Exact ``xs > b`` for float arrays against a Fraction breakpoint."""
    if b == NEG_INF:
        return np.ones(xs.shape, dtype=bool)
    fb = float(b)
    exact = Fraction(fb)
    if exact == b or exact < b:
        return xs > fb
    return xs >= fb


def evaluate_array(e: Expr, xs) -> np.ndarray:
    """Vectorized :func:`evaluate` over a float array."""
    xs = np.asarray(xs, dtype=float)
    with np.errstate(all="ignore"):
        return _eval_arr(e, xs, {})


def _eval_arr(n: Expr, xs: np.ndarray, memo) -> np.ndarray:
    key = id(n)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    if isinstance(n, RFun):
        rf = n.rf
        pc, qc = _float_coeffs(rf)
        if len(qc) == 1:
            v = _horner_arr(pc, xs) if pc else np.zeros_like(xs)
        else:
            qv = _horner_arr(qc, xs)
            if np.any(qv == 0):
                bad = xs[qv == 0][0]
                raise DomainViolation(f"{bad} is a pole of {rf}")
            v = (_horner_arr(pc, xs) if pc else np.zeros_like(xs)) / qv
    elif isinstance(n, Sum):
        v = _eval_arr(n.terms[0], xs, memo)
        for t in n.terms[1:]:
            v = v + _eval_arr(t, xs, memo)
    elif isinstance(n, Product):
        v = _eval_arr(n.factors[0], xs, memo)
        for f in n.factors[1:]:
            v = v * _eval_arr(f, xs, memo)
    elif isinstance(n, Quotient):
        den = _eval_arr(n.den, xs, memo)
        if np.any(den == 0):
            bad = xs[den == 0][0]
            raise EvaluationError(f"denominator of a quotient vanishes at {bad}")
        v = _eval_arr(n.num, xs, memo) / den
    elif isinstance(n, Gate):
        t = _eval_arr(n.arg, xs, memo)
        v = np.zeros_like(t)
        live = t > GATE_CUTOFF
        tl = t[live]
        if n.k:
            v[live] = np.exp(-1.0 / tl - n.k * np.log(tl))
        else:
            v[live] = np.exp(-1.0 / tl)
    elif isinstance(n, Compose):
        inner = _eval_arr(n.inner, xs, memo)
        v = _eval_arr(n.outer, inner, {})
    elif isinstance(n, Derivative):
        v = _eval_arr(differentiate(n.body), xs, {})
    elif isinstance(n, Piecewise):
        v = np.empty_like(xs)
        assigned = np.zeros(xs.shape, dtype=bool)
        for k in range(len(n.pieces) - 1, -1, -1):
            b, piece = n.pieces[k]
            mask = _gt(xs, b) & ~assigned
            if np.any(mask):
                v[mask] = _eval_arr(piece, xs[mask], {})
            assigned |= mask
        if not np.all(assigned):
            bad = xs[~assigned][0]
            raise DomainViolation(f"{bad} is left of the piecewise domain")
    elif isinstance(n, Domain):
        inside = _gt(xs, n.a)
        if not np.all(inside):
            raise DomainViolation(f"{xs[~inside][0]} is outside the domain ({n.a}, inf)")
        v = _eval_arr(n.body, xs, memo)
    else:
        raise TypeError(f"unknown node {n!r}")
    memo[key] = (n, v)
    return v


def _horner_arr(cs, xs):
    acc = np.full(xs.shape, cs[-1])
    for c in reversed(cs[:-1]):
        acc = acc * xs + c
    return acc


# ---------------------------------------------------------------------------
# rounding scale


def rounding_scale(e: Expr, xs) -> np.ndarray:
    """First-order size of the rounding in :func:`evaluate_array`.

    Returns M >= |value| with the float error of order eps * M: Horner sums
    cost sum |a_i| |x|^i, sums add their terms' scales, and products and
    quotients propagate relative error.  It is a heuristic bound, meant for
    telling rounding apart from truncation.
    """
    xs = np.asarray(xs, dtype=float)
    with np.errstate(all="ignore"):
        return _scale_arr(e, xs, {})[1]


def _scale_arr(n: Expr, xs: np.ndarray, memo) -> tuple[np.ndarray, np.ndarray]:
    key = id(n)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    if isinstance(n, RFun):
        pc, qc = _float_coeffs(n.rf)
        ax = np.abs(xs)
        pv = _horner_arr(pc, xs) if pc else np.zeros_like(xs)
        pm = _horner_arr([abs(c) for c in pc], ax) if pc else np.zeros_like(xs)
        if len(qc) == 1:
            out = (pv, pm)
        else:
            qv = _horner_arr(qc, xs)
            qm = _horner_arr([abs(c) for c in qc], ax)
            v = pv / qv
            out = (v, (pm + np.abs(v) * qm) / np.abs(qv))
    elif isinstance(n, Sum):
        parts = [_scale_arr(t, xs, memo) for t in n.terms]
        out = (sum(p[0] for p in parts), sum(p[1] for p in parts))
    elif isinstance(n, Product):
        parts = [_scale_arr(f, xs, memo) for f in n.factors]
        v = parts[0][0]
        m = parts[0][1]
        for pv, pm in parts[1:]:
            # |ab| err ~ |a| m_b + |b| m_a + |ab|
            m = np.abs(v) * pm + np.abs(pv) * m + np.abs(v * pv)
            v = v * pv
        out = (v, m)
    elif isinstance(n, Quotient):
        av, am = _scale_arr(n.num, xs, memo)
        bv, bm = _scale_arr(n.den, xs, memo)
        v = av / bv
        out = (v, (am + np.abs(v) * bm) / np.abs(bv) + np.abs(v))
    elif isinstance(n, Gate):
        tv, tm = _scale_arr(n.arg, xs, memo)
        v = _eval_arr(n, xs, {})
        live = tv > GATE_CUTOFF
        m = np.zeros_like(v)
        tl = tv[live]
        # d/dt log gate = 1/t^2 - k/t
        m[live] = np.abs(v[live]) * (1.0 + tm[live] * np.abs(1.0 / tl**2 - n.k / tl))
        out = (v, m)
    elif isinstance(n, Compose):
        iv, _ = _scale_arr(n.inner, xs, memo)
        out = _scale_arr(n.outer, iv, {})
    elif isinstance(n, Derivative):
        out = _scale_arr(differentiate(n.body), xs, {})
    elif isinstance(n, Piecewise):
        v = np.empty_like(xs)
        m = np.empty_like(xs)
        assigned = np.zeros(xs.shape, dtype=bool)
        for k in range(len(n.pieces) - 1, -1, -1):
            b, piece = n.pieces[k]
            mask = _gt(xs, b) & ~assigned
            if np.any(mask):
                v[mask], m[mask] = _scale_arr(piece, xs[mask], {})
            assigned |= mask
        out = (v, m)
    elif isinstance(n, Domain):
        out = _scale_arr(n.body, xs, memo)
    else:
        raise TypeError(f"unknown node {n!r}")
    memo[key] = (n, out)
    return out
