"""Real root isolation by Sturm sequences over exact rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..poly import (
    NEG_INF,
    Dense,
    Poly,
    cauchy_bound,
    d_deriv,
    d_divmod,
    d_eval,
    d_neg,
    d_primitive,
    d_sqf,
    fmt_rat,
)


class ZeroPolynomialError(ValueError):
    """Root isolation was asked for the zero polynomial."""


@dataclass(frozen=True)
class IsolatingInterval:
    """Interval containing exactly one real root.

    Either ``lo < hi`` (the root lies in the open interval) or
    ``lo == hi == exact`` for a root found exactly.
    """

    lo: Fraction
    hi: Fraction
    exact: Fraction | None = None

    def __post_init__(self):
        if self.exact is not None:
            if not (self.lo == self.hi == self.exact):
                raise ValueError("exact roots need lo == hi == exact")
        elif not self.lo < self.hi:
            raise ValueError("isolating interval needs lo < hi")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def to_json(self) -> dict:
        return {
            "lo": fmt_rat(self.lo),
            "hi": fmt_rat(self.hi),
            "exact": None if self.exact is None else fmt_rat(self.exact),
        }


def sturm_chain(d: Dense) -> list[Dense]:
    """Sturm sequence p0 = d, p1 = d', p_{k+1} = -rem(p_{k-1}, p_k)."""
    chain = [d, d_deriv(d)]
    while chain[-1]:
        chain.append(d_neg(d_divmod(chain[-2], chain[-1])[1]))
    return chain[:-1]


def _variations(signs) -> int:
    count, last = 0, 0
    for s in signs:
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def variations_at(chain: list[Dense], x: Fraction) -> int:
    return _variations(_sign(d_eval(c, x)) for c in chain)


def variations_at_infinity(chain: list[Dense], positive: bool) -> int:
    signs = []
    for c in chain:
        s = _sign(c[-1])
        if not positive and (len(c) - 1) % 2:
            s = -s
        signs.append(s)
    return _variations(signs)


def _dense_of(p) -> Dense:
    d = p.dense() if isinstance(p, Poly) else tuple(p)
    if not d:
        raise ZeroPolynomialError("the zero polynomial has every real number as a root")
    return d


def count_real_roots(p) -> int:
    """Distinct real roots, from sign variations of the chain at -inf/+inf."""
    d = d_sqf(_dense_of(p))
    chain = sturm_chain(d)
    return variations_at_infinity(chain, False) - variations_at_infinity(chain, True)


def _rational_root_in(prim: tuple[int, ...], lo: Fraction, hi: Fraction) -> Fraction | None:
    """The unique candidate k/lc in (lo, hi), if it is a root.

    Any rational root of the primitive integer polynomial ``prim`` has a
    denominator dividing the leading coefficient ``lc``, i.e. it is of the
    form k/lc.  Callers guarantee ``hi - lo < 1/lc`` so at most one such
    point lies in the open interval.
    """
    lc = prim[-1]
    k = (lo * lc).__floor__() + 1
    cand = Fraction(k, lc)
    if lo < cand < hi and d_eval(prim, cand) == 0:
        return cand
    return None


def sturm_isolate(p, *, detect_rational: bool = True) -> list[IsolatingInterval]:
    """Isolate every distinct real root of ``p`` (a unary Poly or dense tuple).

    Works on the square-free part and bisects (-B, B] where B is the Cauchy
    bound.  Rational roots come back with ``exact`` set.

    >>> [iv.exact for iv in sturm_isolate(Poly.from_coeffs([0, -1, 0, 1]))]
    [Fraction(-1, 1), Fraction(0, 1), Fraction(1, 1)]
    """
    d = d_sqf(_dense_of(p))
    if len(d) == 1:
        return []
    chain = sturm_chain(d)
    bound = cauchy_bound(d)
    prim = d_primitive(d)
    out: list[IsolatingInterval] = []

    # roots of d in (a, b] = V(a) - V(b)
    stack = [(-bound, bound, variations_at(chain, -bound), variations_at(chain, bound))]
    while stack:
        a, b, va, vb = stack.pop()
        k = va - vb
        if k == 0:
            continue
        if k == 1:
            if d_eval(d, b) == 0:
                out.append(IsolatingInterval(b, b, b))
            else:
                out.append(IsolatingInterval(a, b))
            continue
        m = (a + b) / 2
        vm = variations_at(chain, m)
        stack.append((a, m, va, vm))
        stack.append((m, b, vm, vb))

    out.sort(key=lambda iv: (iv.lo, iv.hi))
    if detect_rational:
        out = [_settle_rational(d, chain, prim, iv) for iv in out]
    return out


def _settle_rational(d, chain, prim, iv: IsolatingInterval) -> IsolatingInterval:
    if iv.exact is not None:
        return iv
    target = Fraction(1, abs(prim[-1]))
    if iv.width >= target:
        iv = refine(d, iv, target / 2, chain=chain)
        if iv.exact is not None:
            return iv
    r = _rational_root_in(prim, iv.lo, iv.hi)
    if r is not None:
        return IsolatingInterval(r, r, r)
    return iv


def refine(p, iv: IsolatingInterval, width: Fraction, *, chain=None) -> IsolatingInterval:
    """Bisect ``iv`` until narrower than ``width``; returns a new interval."""
    if iv.exact is not None:
        return iv
    d = d_sqf(_dense_of(p)) if not isinstance(p, tuple) else p
    lo, hi = iv.lo, iv.hi
    slo = _sign(d_eval(d, lo))
    if slo == 0:
        # lo was an open end sitting on another root; use the chain instead
        chain = chain or sturm_chain(d)
        return _refine_by_chain(d, chain, iv, width)
    while hi - lo >= width:
        m = (lo + hi) / 2
        sm = _sign(d_eval(d, m))
        if sm == 0:
            return IsolatingInterval(m, m, m)
        if sm == slo:
            lo = m
        else:
            hi = m
    return IsolatingInterval(lo, hi)


def _refine_by_chain(d, chain, iv, width):
    lo, hi = iv.lo, iv.hi
    vlo = variations_at(chain, lo)
    while hi - lo >= width:
        if d_eval(d, hi) == 0:
            return IsolatingInterval(hi, hi, hi)
        m = (lo + hi) / 2
        vm = variations_at(chain, m)
        if vlo - vm == 1:
            hi = m
        else:
            lo, vlo = m, vm
    if d_eval(d, hi) == 0:
        return IsolatingInterval(hi, hi, hi)
    return IsolatingInterval(lo, hi)


@lru_cache(maxsize=4096)
def _max_root_bound(d: Dense):
    if len(d) <= 1:
        return NEG_INF
    roots = sturm_isolate(d)
    if not roots:
        return NEG_INF
    top = roots[-1]
    if top.exact is not None:
        return top.exact
    return refine(d_sqf(d), top, _BOUND_WIDTH).hi


_BOUND_WIDTH = Fraction(1, 256)


def max_root_bound(p):
    """A rational >= every real root of ``p`` (``-inf`` if there are none).

    Equal to the largest root when it is rational; otherwise within 1/256
    above it.
    """
    d = p.dense() if isinstance(p, Poly) else tuple(p)
    if not d:
        raise ZeroPolynomialError("the zero polynomial vanishes everywhere")
    return _max_root_bound(d)


def real_roots_in(p, lo, hi) -> list[IsolatingInterval]:
    """Isolating intervals of roots of ``p`` lying in (lo, hi]; bounds may be infinite.

    Roots straddling an endpoint are refined until they fall clearly on
    one side.
    """
    d = d_sqf(_dense_of(p))
    out = []
    for iv in sturm_isolate(d):
        while iv.exact is None and (iv.lo < lo < iv.hi or iv.lo < hi < iv.hi):
            cand = lo if iv.lo < lo < iv.hi else hi
            if d_eval(d, cand) == 0:
                iv = IsolatingInterval(cand, cand, cand)
                break
            iv = refine(d, iv, iv.width / 2)
        if iv.exact is not None:
            inside = lo < iv.exact <= hi
        else:
            inside = iv.lo >= lo and iv.hi <= hi
        if inside:
            out.append(iv)
    return out
