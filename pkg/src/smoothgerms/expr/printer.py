"""Render expressions back into the input grammar."""

from __future__ import annotations

from ..poly import NEG_INF, fmt_bound, fmt_rat
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
)


def _is_atomic(s: str) -> bool:
    return not any(ch in s for ch in " +-*/^") or (s.startswith("(") and _balanced_wrap(s))


def _balanced_wrap(s: str) -> bool:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0 and i != len(s) - 1:
                return False
    return s.endswith(")")


def _is_call(s: str) -> bool:
    head = s.split("(", 1)[0]
    return head.isidentifier() and _balanced_wrap(s[len(head):])


def _wrap(s: str) -> str:
    return s if _is_atomic(s) or _is_call(s) else f"({s})"


def to_text(e: Expr) -> str:
    """Grammar text that :func:`parse` maps back to the same normal form."""
    if isinstance(e, RFun):
        return str(e.rf)
    if isinstance(e, Sum):
        return " + ".join(_wrap(to_text(t)) if isinstance(t, RFun) else _sum_term(t) for t in e.terms)
    if isinstance(e, Product):
        return "*".join(_wrap(to_text(f)) for f in e.factors)
    if isinstance(e, Quotient):
        return f"{_wrap(to_text(e.num))}/{_wrap(to_text(e.den))}"
    if isinstance(e, Gate):
        inner = to_text(e.arg)
        return f"gate({inner}; {e.k})" if e.k else f"gate({inner})"
    if isinstance(e, Compose):
        return f"compose({to_text(e.outer)}; {to_text(e.inner)})"
    if isinstance(e, Derivative):
        return f"diff({to_text(e.body)})"
    if isinstance(e, Piecewise):
        parts = [f"{_bp(b)}: {to_text(p)}" for b, p in e.pieces]
        return "piecewise(" + ", ".join(parts) + ")"
    if isinstance(e, Domain):
        return f"domain({to_text(e.body)}; {fmt_rat(e.a)})"
    raise TypeError(f"unknown node {e!r}")


def _sum_term(t: Expr) -> str:
    s = to_text(t)
    return s if not isinstance(t, Sum) else f"({s})"


def _bp(b) -> str:
    return "-inf" if b == NEG_INF else fmt_bound(b)
