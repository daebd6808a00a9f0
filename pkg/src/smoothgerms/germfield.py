"""Germs at +infinity of eventually-rational expressions.

A germ is determined by the rational function its representative agrees
with on some ray (a, +inf); two rational functions that agree on a ray are
identical, so equality is a comparison of canceled forms.  Each germ keeps
a representative expression and a witness threshold beyond which that
representative is defined and equals the rational function.

Dominance follows the inequality |f| <= b|g| literally: ``dominates(f, g)``
is true when f is eventually bounded by a multiple of g.  For rational
germs that is growth_order(f) <= growth_order(g).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .expr import nodes as N
from .expr.calculus import differentiate
from .expr.eventual import eventual_form
from .expr.nodes import Expr
from .poly import NEG_INF, RationalFunc, fmt_bound
from .zeroset.sturm import max_root_bound


class ZeroGermError(ArithmeticError):
    """The zero germ has no multiplicative inverse."""


class EventualSign(enum.Enum):
    ZERO = 0
    POSITIVE = 1
    NEGATIVE = -1

    def __str__(self):
        return self.name.capitalize()


@dataclass(frozen=True, eq=False)
class Germ:
    rf: RationalFunc
    representative: Expr = field(repr=False)
    # representative == rf on (witness, inf), and no pole of rf lies past it;
    # a Fraction, or -inf when the agreement is global
    witness: object = NEG_INF

    def __eq__(self, other):
        if not isinstance(other, Germ):
            return NotImplemented
        return self.rf == other.rf

    def __hash__(self):
        return hash(self.rf)

    def is_zero(self) -> bool:
        return self.rf.is_zero()

    def __add__(self, other):
        return add(self, _lift(other))

    __radd__ = __add__

    def __mul__(self, other):
        return mul(self, _lift(other))

    __rmul__ = __mul__

    def __sub__(self, other):
        return sub(self, _lift(other))

    def __rsub__(self, other):
        return sub(_lift(other), self)

    def __neg__(self):
        return neg(self)

    def __truediv__(self, other):
        return mul(self, invert(_lift(other)))

    def __str__(self):
        return f"[{self.rf}]"

    def to_json(self) -> dict:
        return {"germ": str(self.rf), "witness_threshold": fmt_bound(self.witness)}


def _lift(value) -> Germ:
    if isinstance(value, Germ):
        return value
    return germ_of(N.coerce(value))


def _pole_bound(rf: RationalFunc):
    return max_root_bound(rf.q) if len(rf.q) > 1 else NEG_INF


def _root_bound(dense) -> object:
    return max_root_bound(dense) if len(dense) > 1 else NEG_INF


def germ_of(e: Expr | str) -> Germ:
    """Germ of an eventually-rational expression (text is parsed first).

    Raises OutOfClassError when e is not eventually rational.
    """
    if isinstance(e, str):
        from .expr.parser import parse

        e = parse(e)
    ef = eventual_form(e)
    return Germ(ef.rf, e, max(ef.threshold, _pole_bound(ef.rf)))


def _make(rf: RationalFunc, rep: Expr, witness) -> Germ:
    # every witness lies past the poles of its germ, and the reduced
    # denominator of f + g or f g divides q_f q_g, so the larger input
    # witness already clears the poles of the result
    return Germ(rf, rep, witness)


def add(f: Germ, g: Germ) -> Germ:
    return _make(f.rf + g.rf, N.add(f.representative, g.representative), max(f.witness, g.witness))


def mul(f: Germ, g: Germ) -> Germ:
    return _make(f.rf * g.rf, N.mul(f.representative, g.representative), max(f.witness, g.witness))


def neg(f: Germ) -> Germ:
    return Germ(-f.rf, N.neg(f.representative), f.witness)


def sub(f: Germ, g: Germ) -> Germ:
    return add(f, neg(g))


ZERO_GERM = Germ(RationalFunc.const(0), N.ZERO)
ONE_GERM = Germ(RationalFunc.const(1), N.ONE)


def eventual_sign(f: Germ) -> EventualSign:
    return EventualSign(f.rf.leading_sign())


def growth_order(f: Germ):
    """deg(num) - deg(den); ``-inf`` for the zero germ."""
    return NEG_INF if f.is_zero() else f.rf.growth_order()


def dominates(f: Germ, g: Germ) -> bool:
    """True iff |f| <= b|g| eventually for some b > 0."""
    if f.is_zero():
        return True
    if g.is_zero():
        return False
    return f.rf.growth_order() <= g.rf.growth_order()


def same_growth(f: Germ, g: Germ) -> bool:
    return dominates(f, g) and dominates(g, f)


def le(f: Germ, g: Germ) -> bool:
    """Eventual pointwise f <= g."""
    return eventual_sign(sub(g, f)) is not EventualSign.NEGATIVE


def invert(f: Germ) -> Germ:
    """[1/f] with a representative restricted past every root and pole of f."""
    if f.is_zero():
        raise ZeroGermError("the zero germ has no inverse")
    c = max(f.witness, _root_bound(f.rf.p), _root_bound(f.rf.q))
    rep = N.div(N.ONE, f.representative, cert=c)
    if c != NEG_INF:
        rep = N.restrict(c, rep)
    return Germ(f.rf.inverse(), rep, c)


def derive(f: Germ) -> Germ:
    """Germ of the derivative; only the tail matters, so the witness carries over."""
    return Germ(f.rf.derivative(), differentiate(f.representative), f.witness)


def compare(f: Germ, g: Germ) -> dict:
    """Everything the CLI reports for a pair of germs."""
    fd, gd = dominates(f, g), dominates(g, f)
    if fd and gd:
        relation = "same_growth"
    elif fd:
        relation = "precedes"
    else:
        relation = "succeeds"
    return {
        "lhs": str(f.rf),
        "rhs": str(g.rf),
        "relation": relation,
        "dominates": fd,
        "equal": f == g,
        "le": le(f, g),
        "witness_threshold": fmt_bound(max(f.witness, g.witness)),
    }


__all__ = [
    "EventualSign",
    "Germ",
    "ONE_GERM",
    "ZERO_GERM",
    "ZeroGermError",
    "add",
    "compare",
    "derive",
    "dominates",
    "eventual_sign",
    "germ_of",
    "growth_order",
    "invert",
    "le",
    "mul",
    "neg",
    "same_growth",
    "sub",
]
