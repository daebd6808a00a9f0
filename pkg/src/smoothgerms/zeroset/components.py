"""Exact zero-sets on the real line and the eventual-sign dichotomy.

Zero-sets are computed for unary polynomials and for expressions whose
pieces are rational (after peeling Piecewise and Domain wrappers).  Each
component is a connected subset of R: an isolated root, an interval, a ray
or the whole line.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from ..expr.eventual import eventual_form
from ..expr.nodes import ZERO, Domain, Expr, OutOfClassError, Piecewise, RFun, normalize, piecewise
from ..poly import NEG_INF, POS_INF, Poly, fmt_bound, fmt_rat
from .sturm import IsolatingInterval, real_roots_in, sturm_isolate
from .weak import ArityError, SymbolicZeroSet


@dataclass(frozen=True)
class Component:
    """A connected piece of a zero-set.

    Isolated roots have ``root`` set; irrational ones keep their isolating
    bracket in ``lo``/``hi``.  Otherwise the component is the interval from
    ``lo`` to ``hi`` with the stated closedness (infinite ends are open).
    """

    lo: object
    hi: object
    lo_closed: bool = True
    hi_closed: bool = True
    root: IsolatingInterval | None = None

    @property
    def is_point(self) -> bool:
        return self.root is not None

    @property
    def kind(self) -> str:
        if self.is_point:
            return "point"
        if self.lo == NEG_INF and self.hi == POS_INF:
            return "line"
        if self.lo == NEG_INF:
            return "left_ray"
        if self.hi == POS_INF:
            return "right_ray"
        return "interval"

    def contains(self, x) -> bool:
        if self.root is not None:
            if self.root.exact is not None:
                return x == self.root.exact
            return False  # rationals never hit an irrational root
        above = x > self.lo or (self.lo_closed and x == self.lo)
        below = x < self.hi or (self.hi_closed and x == self.hi)
        return above and below

    def to_json(self) -> dict:
        if self.root is not None:
            out = {"kind": "point"}
            out.update(self.root.to_json())
            return out
        return {
            "kind": self.kind,
            "lo": fmt_bound(self.lo),
            "hi": fmt_bound(self.hi),
            "lo_closed": self.lo_closed and self.lo != NEG_INF,
            "hi_closed": self.hi_closed and self.hi != POS_INF,
        }

    def __str__(self):
        if self.root is not None:
            r = self.root
            return f"{{{fmt_rat(r.exact)}}}" if r.exact is not None else f"{{root in ({fmt_rat(r.lo)}, {fmt_rat(r.hi)})}}"
        left = "[" if self.lo_closed and self.lo != NEG_INF else "("
        right = "]" if self.hi_closed and self.hi != POS_INF else ")"
        return f"{left}{fmt_bound(self.lo)}, {fmt_bound(self.hi)}{right}"


def _point(iv: IsolatingInterval) -> Component:
    return Component(iv.lo, iv.hi, True, True, iv)


@dataclass(frozen=True)
class ZeroSetDesc:
    """Sorted, pairwise disjoint components."""

    components: tuple

    @property
    def points(self) -> list[IsolatingInterval]:
        return [c.root for c in self.components if c.is_point]

    @property
    def intervals(self) -> list[Component]:
        return [c for c in self.components if c.kind == "interval"]

    @property
    def rays(self) -> list[Component]:
        return [c for c in self.components if c.kind in ("left_ray", "right_ray", "line")]

    @property
    def is_empty(self) -> bool:
        return not self.components

    @property
    def is_full_line(self) -> bool:
        return len(self.components) == 1 and self.components[0].kind == "line"

    @property
    def has_right_ray(self) -> bool:
        return any(c.hi == POS_INF for c in self.components)

    def bounded_sup(self):
        """Largest finite endpoint across components (``-inf`` if none)."""
        best = NEG_INF
        for c in self.components:
            for v in (c.lo, c.hi):
                if v not in (NEG_INF, POS_INF):
                    best = max(best, v)
        return best

    def contains(self, x) -> bool:
        return any(c.contains(x) for c in self.components)

    def to_json(self) -> dict:
        return {
            "components": [c.to_json() for c in self.components],
            "points": [fmt_rat(p.exact) if p.exact is not None else p.to_json() for p in self.points],
        }

    def __str__(self):
        return " U ".join(str(c) for c in self.components) if self.components else "{}"


def _merge(parts: list[Component]) -> ZeroSetDesc:
    parts = sorted(parts, key=lambda c: (c.lo, c.hi))
    out: list[Component] = []
    for c in parts:
        prev = out[-1] if out else None
        if prev is not None and _mergeable(prev) and _mergeable(c) and prev.hi == c.lo:
            if prev.hi_closed or c.lo_closed:
                if not (prev.is_point and c.is_point):
                    out[-1] = Component(prev.lo, c.hi, prev.lo_closed or prev.is_point, c.hi_closed or c.is_point)
                continue
        out.append(c)
    return ZeroSetDesc(tuple(out))


def _mergeable(c: Component) -> bool:
    # irrational roots sit strictly inside their bracket, so they touch nothing
    return c.root is None or c.root.exact is not None


def polynomial_components(p: Poly) -> ZeroSetDesc:
    if p.nvars != 1:
        raise ArityError("components are only computed for unary sets")
    if p.is_zero():
        return ZeroSetDesc((Component(NEG_INF, POS_INF, False, False),))
    return ZeroSetDesc(tuple(_point(iv) for iv in sturm_isolate(p)))


def _segments(e: Expr, lo, hi, lo_closed: bool):
    """Yield (lo, hi, lo_closed, rational leaf) covering e's domain within the segment."""
    if isinstance(e, RFun):
        yield lo, hi, lo_closed, e
    elif isinstance(e, Domain):
        if e.a >= hi:
            return
        if e.a >= lo:
            lo, lo_closed = e.a, False
        yield from _segments(e.body, lo, hi, lo_closed)
    elif isinstance(e, Piecewise):
        n = len(e.pieces)
        for k, (b, piece) in enumerate(e.pieces):
            top = e.pieces[k + 1][0] if k + 1 < n else POS_INF
            s_lo, s_closed = (lo, lo_closed) if b <= lo else (b, False)
            s_hi = min(hi, top)
            if s_lo < s_hi or (s_lo == s_hi and s_closed):
                yield from _segments(piece, s_lo, s_hi, s_closed)
    else:
        raise OutOfClassError(
            f"zero-set computation needs rational pieces, found {type(e).__name__}"
        )


def expr_components(e: Expr) -> ZeroSetDesc:
    """Zero-set of a piecewise-rational expression over its whole domain."""
    parts: list[Component] = []
    for lo, hi, lo_closed, leaf in _segments(e, NEG_INF, POS_INF, False):
        rf = leaf.rf
        hi_closed = hi != POS_INF
        if rf.is_zero():
            parts.append(Component(lo, hi, lo_closed, hi_closed))
            continue
        poles = real_roots_in(rf.q, lo, hi) if len(rf.q) > 1 else []
        if poles:
            raise ValueError(f"{rf} has a pole inside ({fmt_bound(lo)}, {fmt_bound(hi)}]")
        for iv in real_roots_in(rf.p, lo, hi):
            parts.append(_point(iv))
        if lo_closed and lo != NEG_INF and rf(lo) == 0:
            parts.append(_point(IsolatingInterval(lo, lo, lo)))
    return _merge(parts)


def unary_components(a) -> ZeroSetDesc:
    """Components of a unary zero-set: a SymbolicZeroSet, a Poly or an Expr."""
    if isinstance(a, SymbolicZeroSet):
        if a.arity != 1:
            raise ArityError(f"expected a unary set, got arity {a.arity}")
        return polynomial_components(a.poly)
    if isinstance(a, Poly):
        return polynomial_components(a)
    if isinstance(a, Expr):
        return expr_components(a)
    raise TypeError(f"cannot take components of {a!r}")


def extend_by_zero(f: Expr, c) -> Expr:
    """0 on (-inf, c] and f on (c, +inf); f itself when c is -inf.

    The result is continuous at c only if f tends to 0 there and smooth only
    if every derivative does too; it is a valid zero-set subject either way.
    """
    if c == NEG_INF:
        return f
    return piecewise([(NEG_INF, ZERO), (Fraction(c), f)])


def extension_is_smooth(f: Expr, c) -> bool | None:
    """Whether the extension of f by zero at c is smooth at c.

    Exact for rational f: a rational function with every derivative 0 at
    c is identically 0.  None when f has gated or piecewise parts.
    """
    if c == NEG_INF:
        return True
    f = normalize(f)
    if not isinstance(f, RFun):
        return None
    return f.rf.is_zero()


class Dichotomy(enum.Enum):
    EVENTUALLY_POSITIVE = "EventuallyPositive"
    EVENTUALLY_NEGATIVE = "EventuallyNegative"
    EVENTUALLY_ZERO = "EventuallyZero"

    @property
    def sign(self) -> int:
        return {"EventuallyPositive": 1, "EventuallyNegative": -1, "EventuallyZero": 0}[self.value]


_BY_SIGN = {1: Dichotomy.EVENTUALLY_POSITIVE, -1: Dichotomy.EVENTUALLY_NEGATIVE, 0: Dichotomy.EVENTUALLY_ZERO}


def ominimal_dichotomy(f: Expr, c=NEG_INF) -> Dichotomy:
    """Eventually positive, negative or zero.

    The zero-set of the extension by zero is a finite union of components.
    If one of them is a ray to +inf, f is eventually zero.  Otherwise f has
    no zeros beyond the last component, so its sign there is read off at a
    single exact probe point past both that component and the eventual
    threshold.  Expressions with gated pieces skip the zero-set step and use
    the eventual form's leading sign directly.
    """
    ef = eventual_form(f)
    try:
        desc = unary_components(extend_by_zero(f, c))
    except OutOfClassError:
        desc = None
    if desc is None:
        return _BY_SIGN[ef.rf.leading_sign()]
    if desc.has_right_ray:
        return Dichotomy.EVENTUALLY_ZERO
    probe = max(desc.bounded_sup(), ef.threshold, Fraction(c) if c != NEG_INF else NEG_INF)
    probe = Fraction(0) if probe == NEG_INF else probe + 1
    value = ef.rf(probe)
    return _BY_SIGN[(value > 0) - (value < 0)]


__all__ = [
    "Component",
    "Dichotomy",
    "ZeroSetDesc",
    "expr_components",
    "extend_by_zero",
    "ominimal_dichotomy",
    "polynomial_components",
    "unary_components",
]
