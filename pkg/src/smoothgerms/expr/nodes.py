"""Expression nodes and normalizing constructors.

Every node is an immutable dataclass.  Build trees through :func:`add`,
:func:`mul`, :func:`div`, :func:`piecewise`, ... rather than the node
classes: the constructors fold rational sub-terms into a single
:class:`RFun` leaf, flatten sums and products, and drop units, which is the
normal form the parser and printer agree on.

Piecewise convention: piece ``k`` is in force on ``(b_k, b_{k+1}]`` and the
last piece on ``(b_last, +inf)``.  A first breakpoint of ``-inf`` makes the
first piece cover ``(-inf, b_1]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..poly import NEG_INF, Poly, RationalFunc, as_rat


class OutOfClassError(ValueError):
    """The expression leaves the eventually-rational, bump-glued class."""


class Expr:
    """Base class; see the module docstring for the node catalogue."""

    __slots__ = ()

    def __add__(self, other):
        return add(self, coerce(other))

    def __radd__(self, other):
        return add(coerce(other), self)

    def __sub__(self, other):
        return sub(self, coerce(other))

    def __rsub__(self, other):
        return sub(coerce(other), self)

    def __mul__(self, other):
        return mul(self, coerce(other))

    def __rmul__(self, other):
        return mul(coerce(other), self)

    def __truediv__(self, other):
        return div(self, coerce(other))

    def __rtruediv__(self, other):
        return div(coerce(other), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, n):
        return power(self, n)

    def __str__(self):
        from .printer import to_text

        return to_text(self)


@dataclass(frozen=True, eq=True, repr=False)
class RFun(Expr):
    """Rational-function leaf; constants, ``x`` and polynomials live here too."""

    rf: RationalFunc

    def __repr__(self):
        return f"RFun({self.rf})"


@dataclass(frozen=True, repr=False)
class Sum(Expr):
    terms: tuple

    def __repr__(self):
        return f"Sum{self.terms!r}"


@dataclass(frozen=True, repr=False)
class Product(Expr):
    factors: tuple

    def __repr__(self):
        return f"Product{self.factors!r}"


@dataclass(frozen=True, repr=False)
class Quotient(Expr):
    """num/den.  ``cert`` is a threshold beyond which ``den`` is known nonzero
    (``-inf``: nonzero on all of R); ``None`` means not certified."""

    num: Expr
    den: Expr
    cert: object = field(default=None, compare=False, hash=False)

    def certificate(self):
        if self.cert is not None:
            return self.cert
        from .eventual import denominator_certificate

        return denominator_certificate(self.den)

    def __repr__(self):
        return f"Quotient({self.num!r}, {self.den!r})"


@dataclass(frozen=True, repr=False)
class Gate(Expr):
    """t^(-k) * exp(-1/t) for t > 0 and 0 for t <= 0, with t = ``arg``.

    ``k = 0`` is the plain bump gate; higher ``k`` appear in derivatives.
    """

    arg: Expr
    k: int = 0

    def __repr__(self):
        return f"Gate({self.arg!r}, {self.k})"


@dataclass(frozen=True, repr=False)
class Compose(Expr):
    """outer(inner(x))."""

    outer: Expr
    inner: Expr

    def __repr__(self):
        return f"Compose({self.outer!r}, {self.inner!r})"


@dataclass(frozen=True, repr=False)
class Derivative(Expr):
    """Unexpanded derivative marker; :func:`normalize` expands it."""

    body: Expr

    def __repr__(self):
        return f"Derivative({self.body!r})"


@dataclass(frozen=True, repr=False)
class Piecewise(Expr):
    """``pieces`` is a tuple of ``(breakpoint, expr)``, breakpoints strictly increasing."""

    pieces: tuple

    def __post_init__(self):
        bps = [b for b, _ in self.pieces]
        if not bps:
            raise ValueError("piecewise needs at least one piece")
        if any(b == math.inf for b in bps):
            raise ValueError("breakpoints must be finite or -inf")
        if any(b == NEG_INF for b in bps[1:]):
            raise ValueError("only the first breakpoint may be -inf")
        if any(not a < b for a, b in zip(bps, bps[1:])):
            raise ValueError(f"breakpoints must strictly increase: {bps}")

    @property
    def breakpoints(self) -> list:
        return [b for b, _ in self.pieces]

    def interval(self, k: int):
        lo = self.pieces[k][0]
        hi = self.pieces[k + 1][0] if k + 1 < len(self.pieces) else math.inf
        return lo, hi

    def __repr__(self):
        return f"Piecewise{self.pieces!r}"


@dataclass(frozen=True, repr=False)
class Domain(Expr):
    """``body`` restricted to the open ray (a, +inf)."""

    a: Fraction
    body: Expr

    def __repr__(self):
        return f"Domain({self.a}, {self.body!r})"


# ---------------------------------------------------------------------------
# constructors


ZERO = RFun(RationalFunc.const(0))
ONE = RFun(RationalFunc.const(1))
X = RFun(RationalFunc.x())


def const(c) -> RFun:
    return RFun(RationalFunc.const(as_rat(c)))


def var() -> RFun:
    return X


def rational(p, q=None) -> RFun:
    """Leaf from a RationalFunc, a unary Poly, or a numerator/denominator pair."""
    if isinstance(p, RationalFunc):
        return RFun(p)
    if isinstance(p, Poly):
        return RFun(RationalFunc.from_polys(p, q))
    raise TypeError(f"cannot build a rational leaf from {p!r}")


def coerce(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, RationalFunc):
        return RFun(value)
    if isinstance(value, Poly):
        return rational(value)
    return const(value)


def is_zero(e: Expr) -> bool:
    return isinstance(e, RFun) and e.rf.is_zero()


def is_one(e: Expr) -> bool:
    return isinstance(e, RFun) and e.rf == 1


def add(*terms) -> Expr:
    flat: list[Expr] = []
    for t in terms:
        t = coerce(t)
        if isinstance(t, Sum):
            flat.extend(t.terms)
        else:
            flat.append(t)
    rat = RationalFunc.const(0)
    rest = []
    for t in flat:
        if isinstance(t, RFun):
            rat = rat + t.rf
        else:
            rest.append(t)
    if not rat.is_zero() or not rest:
        rest.insert(0, RFun(rat))
    if len(rest) == 1:
        return rest[0]
    return Sum(tuple(rest))


def mul(*factors) -> Expr:
    flat: list[Expr] = []
    for f in factors:
        f = coerce(f)
        if isinstance(f, Product):
            flat.extend(f.factors)
        else:
            flat.append(f)
    rat = RationalFunc.const(1)
    rest = []
    for f in flat:
        if isinstance(f, RFun):
            rat = rat * f.rf
        else:
            rest.append(f)
    if rat.is_zero():
        return ZERO
    if rat != 1 or not rest:
        rest.insert(0, RFun(rat))
    if len(rest) == 1:
        return rest[0]
    return Product(tuple(rest))


def neg(e: Expr) -> Expr:
    return mul(const(-1), e)


def sub(a: Expr, b: Expr) -> Expr:
    return add(a, neg(coerce(b)))


def div(num, den, cert=None) -> Expr:
    num, den = coerce(num), coerce(den)
    if isinstance(den, RFun):
        if den.rf.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return mul(RFun(den.rf.inverse()), num)
    if is_zero(num):
        return ZERO
    return Quotient(num, den, cert)


def power(e: Expr, n: int) -> Expr:
    if not isinstance(n, int) or isinstance(n, bool):
        raise OutOfClassError(f"only integer powers are in the class, got {n!r}")
    e = coerce(e)
    if isinstance(e, RFun):
        return RFun(e.rf**n)
    if n < 0:
        return div(ONE, power(e, -n))
    if n == 0:
        return ONE
    return mul(*([e] * n))


def gate(arg, k: int = 0) -> Expr:
    arg = coerce(arg)
    if isinstance(arg, RFun) and arg.rf.is_constant() and arg.rf.constant_value() <= 0:
        return ZERO
    return Gate(arg, k)


def compose(outer, inner) -> Expr:
    """outer(inner); rational outer over rational inner folds exactly."""
    outer, inner = coerce(outer), coerce(inner)
    if inner == X:
        return outer
    if isinstance(outer, RFun):
        if isinstance(inner, RFun):
            return RFun(outer.rf.compose(inner.rf))
        if outer.rf.is_constant():
            return outer
    return Compose(outer, inner)


def restrict(a, body) -> Expr:
    """``body`` on (a, +inf)."""
    a = as_rat(a)
    body = coerce(body)
    if isinstance(body, Domain):
        return Domain(max(a, body.a), body.body)
    return Domain(a, body)


def piecewise(pieces: Sequence) -> Expr:
    """Piecewise from ``[(breakpoint, expr), ...]``; ``-inf`` allowed first."""
    norm = []
    for b, e in pieces:
        b = NEG_INF if b == NEG_INF else as_rat(b)
        norm.append((b, coerce(e)))
    if len(norm) == 1 and norm[0][0] == NEG_INF:
        return norm[0][1]
    return Piecewise(tuple(norm))


def derivative_marker(e) -> Derivative:
    return Derivative(coerce(e))


# bump-gate library -----------------------------------------------------------


def smooth_step_of(t) -> Expr:
    """g(t) = f(t) / (f(t) + f(1 - t)) with f the bump gate.

    0 for t <= 0, 1 for t >= 1.  The denominator is positive on all of R.
    """
    t = coerce(t)
    ft = gate(t)
    f1t = gate(sub(ONE, t))
    return div(ft, add(ft, f1t), cert=NEG_INF)


def bump_of(arg, q, a, b) -> Expr:
    """rho(arg) = 1 - g(s), s = ((arg - q)^2 - a^2) / (b^2 - a^2).

    Built as f(1 - s) / (f(s) + f(1 - s)), the same function, so that values
    near the support ends keep their relative accuracy instead of cancelling.
    """
    q, a, b = as_rat(q), as_rat(a), as_rat(b)
    if not 0 < a < b:
        raise ValueError(f"bump needs 0 < a < b, got a={a}, b={b}")
    arg = coerce(arg)
    shifted = sub(arg, const(q))
    s = div(sub(mul(shifted, shifted), const(a * a)), const(b * b - a * a))
    fs, f1s = gate(s), gate(sub(ONE, s))
    return div(f1s, add(fs, f1s), cert=NEG_INF)


def step_of(arg, lo, hi) -> Expr:
    """Smooth transition: 0 for arg <= lo, 1 for arg >= hi."""
    lo, hi = as_rat(lo), as_rat(hi)
    if not lo < hi:
        raise ValueError(f"step needs lo < hi, got {lo}, {hi}")
    arg = coerce(arg)
    return smooth_step_of(div(sub(arg, const(lo)), const(hi - lo)))


def normalize(e: Expr) -> Expr:
    """Rebuild through the constructors and expand derivative markers."""
    from .calculus import differentiate

    memo: dict[int, tuple] = {}

    def go(n: Expr) -> Expr:
        key = id(n)
        if key in memo:
            return memo[key][1]
        if isinstance(n, RFun):
            out = n
        elif isinstance(n, Sum):
            out = add(*(go(t) for t in n.terms))
        elif isinstance(n, Product):
            out = mul(*(go(f) for f in n.factors))
        elif isinstance(n, Quotient):
            out = div(go(n.num), go(n.den), n.cert)
        elif isinstance(n, Gate):
            out = gate(go(n.arg), n.k)
        elif isinstance(n, Compose):
            out = compose(go(n.outer), go(n.inner))
        elif isinstance(n, Derivative):
            out = differentiate(go(n.body))
        elif isinstance(n, Piecewise):
            out = piecewise([(b, go(p)) for b, p in n.pieces])
        elif isinstance(n, Domain):
            out = restrict(n.a, go(n.body))
        else:
            raise TypeError(f"unknown node {n!r}")
        memo[key] = (n, out)
        return out

    return go(e)


def walk(e: Expr):
    """Yield every distinct node once (DAG-aware), parents before children."""
    seen = set()
    stack = [e]
    while stack:
        n = stack.pop()
        if id(n) in seen:
            continue
        seen.add(id(n))
        yield n
        stack.extend(children(n))


def children(n: Expr) -> tuple:
    if isinstance(n, Sum):
        return n.terms
    if isinstance(n, Product):
        return n.factors
    if isinstance(n, Quotient):
        return (n.num, n.den)
    if isinstance(n, Gate):
        return (n.arg,)
    if isinstance(n, Compose):
        return (n.outer, n.inner)
    if isinstance(n, Derivative):
        return (n.body,)
    if isinstance(n, Piecewise):
        return tuple(p for _, p in n.pieces)
    if isinstance(n, Domain):
        return (n.body,)
    return ()


def is_rational(e: Expr) -> bool:
    return isinstance(e, RFun)
