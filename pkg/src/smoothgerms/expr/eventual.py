"""Eventual behaviour at +infinity.

:func:`eventual_form` finds the rational function an expression agrees with
on some ray (c, +inf), together with such a threshold c.

A gate whose argument t is eventually positive contributes the formal
symbol E_t = exp(-1/t).  Intermediate values are Laurent polynomials in
these symbols with rational-function coefficients.  For distinct t the E_t
are independent over Q(x) (Lindemann-Weierstrass), so a formal
cancellation is a real one and a surviving symbol really is transcendental:
the expression is then outside the class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..poly import NEG_INF, RationalFunc
from .nodes import (
    Compose,
    Derivative,
    Domain,
    Expr,
    Gate,
    OutOfClassError,
    Piecewise,
    Product,
    Quotient,
    RFun,
    Sum,
)

Monomial = tuple  # sorted tuple of (symbol rf, exponent)


def _root_bound(dense) -> Fraction | float:
    from ..zeroset.sturm import max_root_bound

    if len(dense) <= 1:
        return NEG_INF
    return max_root_bound(dense)


def _sign_threshold(rf: RationalFunc):
    """Beyond this, ``rf`` is defined and of constant sign."""
    return max(_root_bound(rf.p) if rf.p else NEG_INF, _root_bound(rf.q))


def _mono_key(item):
    return str(item[0])


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    acc = dict(a)
    for sym, e in b:
        v = acc.get(sym, 0) + e
        if v:
            acc[sym] = v
        else:
            del acc[sym]
    return tuple(sorted(acc.items(), key=_mono_key))


def _mono_inv(a: Monomial) -> Monomial:
    return tuple((s, -e) for s, e in a)


@dataclass
class Form:
    terms: dict  # Monomial -> RationalFunc (nonzero)

    @classmethod
    def rational(cls, rf: RationalFunc) -> "Form":
        return cls({} if rf.is_zero() else {(): rf})

    @classmethod
    def zero(cls) -> "Form":
        return cls({})

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(m == () for m in self.terms)

    def as_rational(self) -> RationalFunc:
        if not self.is_rational():
            raise OutOfClassError("expression is not eventually rational (a live bump gate survives)")
        return self.terms.get((), RationalFunc.const(0))

    def __add__(self, other: "Form") -> "Form":
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(m, None)
            else:
                out[m] = v
        return Form(out)

    def __mul__(self, other: "Form") -> "Form":
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                v = out.get(m)
                c = c1 * c2
                v = c if v is None else v + c
                if v.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = v
        return Form(out)

    def scaled(self, mono: Monomial, rf: RationalFunc) -> "Form":
        return Form({_mono_mul(m, mono): c * rf for m, c in self.terms.items()})


@dataclass(frozen=True)
class EventualForm:
    """On (threshold, +inf) the expression is defined and equals ``rf``."""

    rf: RationalFunc
    threshold: object  # Fraction or -inf


def eventual_form(e: Expr) -> EventualForm:
    """The rational function ``e`` eventually agrees with, plus a threshold.

    Raises :class:`OutOfClassError` when ``e`` is not eventually rational.
    """
    form, thr = _Analyzer().form(e, None)
    rf = form.as_rational()
    return EventualForm(rf, thr)


def denominator_certificate(den: Expr):
    """Threshold beyond which ``den`` is nonzero, or None if unknown."""
    try:
        form, thr = _Analyzer().form(den, None)
    except (OutOfClassError, ArithmeticError):
        return None
    if len(form.terms) != 1:
        return None
    (coeff,) = form.terms.values()
    return max(thr, _sign_threshold(coeff))


class _Analyzer:
    def __init__(self):
        self.memo: dict = {}

    def form(self, n: Expr, tau: RationalFunc | None):
        """Form of n(tau(x)) (tau=None is the identity) and its threshold."""
        key = (id(n), tau)
        hit = self.memo.get(key)
        if hit is not None:
            return hit[1]
        out = self._form(n, tau)
        self.memo[key] = (n, out)
        return out

    def _form(self, n: Expr, tau):
        if isinstance(n, RFun):
            rf = n.rf if tau is None else n.rf.compose(tau)
            return Form.rational(rf), _root_bound(rf.q)
        if isinstance(n, Sum):
            acc, thr = Form.zero(), NEG_INF
            for t in n.terms:
                f, th = self.form(t, tau)
                acc, thr = acc + f, max(thr, th)
            return acc, thr
        if isinstance(n, Product):
            acc, thr = Form.rational(RationalFunc.const(1)), NEG_INF
            for t in n.factors:
                f, th = self.form(t, tau)
                acc, thr = acc * f, max(thr, th)
                if acc.is_zero():
                    break
            return acc, thr
        if isinstance(n, Quotient):
            fn, tn = self.form(n.num, tau)
            fd, td = self.form(n.den, tau)
            if fd.is_zero():
                raise OutOfClassError("denominator is eventually zero")
            if len(fd.terms) != 1:
                raise OutOfClassError("cannot certify that a multi-term gated denominator is eventually nonzero")
            ((mono, coeff),) = fd.terms.items()
            thr = max(tn, td, _sign_threshold(coeff))
            return fn.scaled(_mono_inv(mono), coeff.inverse()), thr
        if isinstance(n, Gate):
            fa, ta = self.form(n.arg, tau)
            if not fa.is_rational():
                raise OutOfClassError("gate of a non-rational argument")
            t = fa.as_rational()
            if t.is_zero():
                return Form.zero(), ta
            thr = max(ta, _sign_threshold(t))
            if t.leading_sign() < 0:
                return Form.zero(), thr
            coeff = t.inverse() ** n.k if n.k else RationalFunc.const(1)
            return Form({((t, 1),): coeff}), thr
        if isinstance(n, Compose):
            fi, ti = self.form(n.inner, tau)
            if not fi.is_rational():
                raise OutOfClassError("composition with a non-rational inner function")
            f, th = self.form(n.outer, fi.as_rational())
            return f, max(ti, th)
        if isinstance(n, Derivative):
            from .calculus import differentiate

            return self.form(differentiate(n.body), tau)
        if isinstance(n, Piecewise):
            return self._piecewise(n, tau)
        if isinstance(n, Domain):
            f, th = self.form(n.body, tau)
            if tau is None:
                return f, max(th, n.a)
            shifted = tau - n.a
            if shifted.leading_sign() <= 0:
                raise OutOfClassError(f"inner function eventually leaves the domain ({n.a}, inf)")
            return f, max(th, _sign_threshold(shifted))
        raise TypeError(f"unknown node {n!r}")

    def _piecewise(self, pw: Piecewise, tau):
        if tau is None:
            f, th = self.form(pw.pieces[-1][1], None)
            return f, max(th, pw.pieces[-1][0])
        # eventual position of tau relative to each breakpoint
        signs = []
        thr = NEG_INF
        for b, _ in pw.pieces:
            if b == NEG_INF:
                signs.append(1)
                continue
            diff = tau - b
            signs.append(diff.leading_sign())
            thr = max(thr, _sign_threshold(diff))
        # piece k holds on (b_k, b_{k+1}]: need tau > b_k and tau <= b_{k+1}
        for k in range(len(pw.pieces)):
            above = signs[k] > 0
            below = k + 1 == len(pw.pieces) or signs[k + 1] <= 0
            if above and below:
                f, th = self.form(pw.pieces[k][1], tau)
                return f, max(thr, th)
        raise OutOfClassError("inner function eventually leaves the piecewise domain")


def eventually_equal(a: Expr, b: Expr) -> bool:
    return eventual_form(a).rf == eventual_form(b).rf


__all__ = [
    "EventualForm",
    "Form",
    "denominator_certificate",
    "eventual_form",
    "eventually_equal",
]
