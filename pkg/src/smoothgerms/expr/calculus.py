"""Symbolic differentiation."""

from __future__ import annotations

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
    add,
    compose,
    div,
    gate,
    mul,
    piecewise,
    restrict,
    sub,
)


def differentiate(e: Expr, order: int = 1) -> Expr:
    """Exact derivative d/dx, ``order`` times.

    Shared subtrees stay shared (memoized per call), which keeps repeated
    derivatives of bump-glued expressions from blowing up.

    The gate derivative is closed form and smooth across t = 0:
    d/dx [t^-k e^(-1/t)] = t' * (G_(k+2) - k * G_(k+1)).
    """
    for _ in range(order):
        e = _differentiate(e)
    return e


def _differentiate(e: Expr) -> Expr:
    memo: dict[int, tuple] = {}

    def d(n: Expr) -> Expr:
        key = id(n)
        hit = memo.get(key)
        if hit is not None:
            return hit[1]
        if isinstance(n, RFun):
            out = RFun(n.rf.derivative())
        elif isinstance(n, Sum):
            out = add(*(d(t) for t in n.terms))
        elif isinstance(n, Product):
            fs = n.factors
            parts = []
            for i, f in enumerate(fs):
                df = d(f)
                if isinstance(df, RFun) and df.rf.is_zero():
                    continue
                parts.append(mul(*fs[:i], df, *fs[i + 1:]))
            out = add(*parts)
        elif isinstance(n, Quotient):
            dn, dd = d(n.num), d(n.den)
            top = sub(mul(dn, n.den), mul(n.num, dd))
            out = div(top, mul(n.den, n.den), cert=n.cert)
        elif isinstance(n, Gate):
            dt = d(n.arg)
            inner = sub(gate(n.arg, n.k + 2), mul(n.k, gate(n.arg, n.k + 1))) if n.k else gate(n.arg, 2)
            out = mul(dt, inner)
        elif isinstance(n, Compose):
            out = mul(compose(d(n.outer), n.inner), d(n.inner))
        elif isinstance(n, Derivative):
            out = d(d(n.body))
        elif isinstance(n, Piecewise):
            out = piecewise([(b, d(p)) for b, p in n.pieces])
        elif isinstance(n, Domain):
            out = restrict(n.a, d(n.body))
        else:
            raise TypeError(f"unknown node {n!r}")
        memo[key] = (n, out)
        return out

    return d(e)
