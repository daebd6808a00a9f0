"""The ring of total smooth functions modulo the eventually-zero ideal.

Elements are total expressions of the class; two are congruent when their
difference vanishes on some ray (c, +inf), which for this class means their
eventual rational functions coincide.  Polynomials act through Phi_f, and
Hadamard witnesses certify that Phi_f does not depend on representatives.
The map T sends a germ to the class of a total smooth extension of one of
its representatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .expr import nodes as N
from .expr.eventual import eventual_form
from .expr.nodes import Expr
from .expr.printer import to_text
from .germfield import Germ
from .poly import NEG_INF, POS_INF, Poly, RationalFunc, fmt_bound
from .smoothkit.tietze import extend_beyond
from .zeroset.sturm import max_root_bound
from .zeroset.weak import ArityError


class NotTotalError(ValueError):
    """A representative must be defined on all of R."""


def domain_start(e: Expr):
    """Smallest a (possibly -inf) with ``e`` structurally defined on (a, +inf).

    Conservative: a rational leaf with a real pole counts as defined only
    past its largest pole.
    """
    memo: dict = {}

    def go(n):
        hit = memo.get(id(n))
        if hit is not None:
            return hit[1]
        if isinstance(n, N.RFun):
            out = max_root_bound(n.rf.q) if len(n.rf.q) > 1 else NEG_INF
        elif isinstance(n, (N.Sum, N.Product)):
            out = max(go(c) for c in N.children(n))
        elif isinstance(n, N.Quotient):
            cert = n.certificate()
            out = max(go(n.num), go(n.den), POS_INF if cert is None else cert)
        elif isinstance(n, N.Gate):
            out = go(n.arg)
        elif isinstance(n, N.Derivative):
            out = go(n.body)
        elif isinstance(n, N.Compose):
            out = go(n.inner) if go(n.outer) == NEG_INF else POS_INF
        elif isinstance(n, N.Domain):
            out = max(n.a, go(n.body))
        elif isinstance(n, N.Piecewise):
            out = n.pieces[0][0]
            for b, piece in n.pieces:
                d = go(piece)
                if d > b:
                    out = max(out, d)
        else:
            raise TypeError(f"unknown node {n!r}")
        memo[id(n)] = (n, out)
        return out

    return go(e)


def is_total(e: Expr) -> bool:
    return domain_start(e) == NEG_INF


class QuotientElem:
    """Class rep + I; equality compares eventual rational functions."""

    __slots__ = ("rep", "_rf")

    def __init__(self, rep: Expr | str, *, check_total: bool = True, rf: RationalFunc | None = None):
        if isinstance(rep, str):
            from .expr.parser import parse

            rep = parse(rep)
        if check_total and not is_total(rep):
            raise NotTotalError(
                f"representative is only known to be defined on ({fmt_bound(domain_start(rep))}, inf)"
            )
        self.rep = rep
        self._rf = rf

    @property
    def rf(self) -> RationalFunc:
        """The eventual rational function, which determines the class."""
        if self._rf is None:
            self._rf = eventual_form(self.rep).rf
        return self._rf

    def is_zero(self) -> bool:
        return self.rf.is_zero()

    def __eq__(self, other):
        if not isinstance(other, QuotientElem):
            return NotImplemented
        return self.rf == other.rf

    def __hash__(self):
        return hash(self.rf)

    def __add__(self, other: "QuotientElem") -> "QuotientElem":
        return QuotientElem(N.add(self.rep, other.rep), check_total=False, rf=self.rf + other.rf)

    def __sub__(self, other: "QuotientElem") -> "QuotientElem":
        return QuotientElem(N.sub(self.rep, other.rep), check_total=False, rf=self.rf - other.rf)

    def __mul__(self, other: "QuotientElem") -> "QuotientElem":
        return QuotientElem(N.mul(self.rep, other.rep), check_total=False, rf=self.rf * other.rf)

    def __neg__(self) -> "QuotientElem":
        return QuotientElem(N.neg(self.rep), check_total=False, rf=-self.rf)

    def __repr__(self):
        return f"QuotientElem([{self.rf}] + I)"

    def to_json(self) -> dict:
        return {"class_rep": str(self.rf), "representative": to_text(self.rep)}


def ideal_member(e: Expr) -> bool:
    """True iff ``e`` vanishes on some ray (c, +inf)."""
    return eventual_form(e).rf.is_zero()


def ideal_witness(e: Expr):
    """A threshold past which ``e`` is identically zero, or None if it is not eventually zero."""
    ef = eventual_form(e)
    return ef.threshold if ef.rf.is_zero() else None


def congruence_witness(a: QuotientElem, b: QuotientElem):
    """Threshold past which the representatives agree, or None when the classes differ."""
    if a != b:
        return None
    return ideal_witness(N.sub(a.rep, b.rep))


def _poly_on(f: Poly, values: Sequence, *, one, add, mul, power, scale):
    total = None
    for mono, c in sorted(f.terms.items()):
        term = scale(c, one)
        for v, e in zip(values, mono):
            if e:
                term = mul(term, power(v, e))
        total = term if total is None else add(total, term)
    return total if total is not None else scale(0, one)


def phi(f: Poly, args: Sequence[QuotientElem]) -> QuotientElem:
    """Phi_f(c_1 + I, ..., c_n + I) = f(c_1, ..., c_n) + I."""
    if len(args) != f.nvars:
        raise ArityError(f"{f} takes {f.nvars} arguments, got {len(args)}")
    if f.is_zero():
        return QuotientElem(N.ZERO, check_total=False, rf=RationalFunc.const(0))
    # a bare projection returns its argument untouched
    terms = f.terms
    if len(terms) == 1:
        ((mono, c),) = terms.items()
        if c == 1 and sum(mono) == 1:
            return args[mono.index(1)]
    rep = _poly_on(
        f, [a.rep for a in args], one=N.ONE, add=N.add, mul=N.mul, power=N.power,
        scale=lambda c, one: N.const(c),
    )
    rf = _poly_on(
        f, [a.rf for a in args], one=None, add=lambda p, q: p + q, mul=lambda p, q: p * q,
        power=lambda p, e: p**e, scale=lambda c, one: RationalFunc.const(c),
    )
    return QuotientElem(rep, check_total=False, rf=rf)


# -- Hadamard decomposition ------------------------------------------------------


@dataclass(frozen=True)
class HadamardWitness:
    """f(y) - f(x) = sum_i (y_i - x_i) g_i(x, y), with g_i in 2n variables x1..xn, y1..yn."""

    f: Poly
    gs: tuple

    @property
    def n(self) -> int:
        return self.f.nvars

    def names(self) -> list[str]:
        return [f"x{i + 1}" for i in range(self.n)] + [f"y{i + 1}" for i in range(self.n)]

    def verify(self) -> bool:
        n = self.n
        fx = self.f.embed(2 * n, 0)
        fy = self.f.embed(2 * n, n)
        rhs = Poly({}, 2 * n)
        for i, g in enumerate(self.gs):
            rhs = rhs + (Poly.var(n + i, 2 * n) - Poly.var(i, 2 * n)) * g
        return fy - fx == rhs

    def to_json(self) -> dict:
        names = self.names()
        out = {"f": self.f.to_str(), "verified": self.verify()}
        out.update({f"g{i + 1}": g.to_str(names) for i, g in enumerate(self.gs)})
        return out


def _divide_by_difference(d: Poly, yi: int, xi: int) -> Poly:
    """Exact quotient of ``d`` by (y - x) for variable indices yi, xi.

    Synthetic division in the y variable; the remainder d|_{y=x} must be 0.
    """
    nv = d.nvars
    by_power: dict[int, Poly] = {}
    for mono, c in d.terms.items():
        k = mono[yi]
        rest = list(mono)
        rest[yi] = 0
        by_power[k] = by_power.get(k, Poly({}, nv)) + Poly({tuple(rest): c}, nv)
    if not by_power:
        return Poly({}, nv)
    top = max(by_power)
    x = Poly.var(xi, nv)
    y = Poly.var(yi, nv)
    quotient = Poly({}, nv)
    carry = Poly({}, nv)
    # q_{k-1} = c_k + x q_k, from the top power down
    for k in range(top, 0, -1):
        carry = by_power.get(k, Poly({}, nv)) + x * carry
        quotient = quotient + carry * y ** (k - 1)
    remainder = by_power.get(0, Poly({}, nv)) + x * carry
    if not remainder.is_zero():
        raise ArithmeticError("difference does not vanish on the diagonal")
    return quotient


def hadamard(f: Poly) -> HadamardWitness:
    """Telescoping witness, replacing x_n by y_n first.

    With Q_i = f(x_1, ..., x_i, y_{i+1}, ..., y_n), so that Q_0 = f(y) and
    Q_n = f(x), g_i = (Q_{i-1} - Q_i) / (y_i - x_i).  The identity is
    checked before the witness is returned.
    """
    n = f.nvars
    xs = [Poly.var(i, 2 * n) for i in range(n)]
    ys = [Poly.var(n + i, 2 * n) for i in range(n)]

    def q(i: int) -> Poly:
        return f.substitute(xs[:i] + ys[i:])

    qs = [q(i) for i in range(n + 1)]
    gs = tuple(_divide_by_difference(qs[i - 1] - qs[i], n + i - 1, i - 1) for i in range(1, n + 1))
    w = HadamardWitness(f, gs)
    if not w.verify():
        raise AssertionError("Hadamard identity failed")  # pragma: no cover
    return w


def hadamard_difference(
    f: Poly, args: Sequence[QuotientElem], others: Sequence[QuotientElem]
) -> tuple[Expr, RationalFunc]:
    """sum_i (c'_i - c_i) g_i(c, c') as an expression, with its eventual form.

    It equals f(c') - f(c) pointwise, and lies in I whenever each c'_i - c_i does.
    """
    w = hadamard(f)
    reps = [a.rep for a in args] + [b.rep for b in others]
    rfs = [a.rf for a in args] + [b.rf for b in others]
    total = N.ZERO
    total_rf = RationalFunc.const(0)
    for i, g in enumerate(w.gs):
        gi = _poly_on(g, reps, one=N.ONE, add=N.add, mul=N.mul, power=N.power, scale=lambda c, one: N.const(c))
        gi_rf = _poly_on(
            g, rfs, one=None, add=lambda p, q: p + q, mul=lambda p, q: p * q,
            power=lambda p, e: p**e, scale=lambda c, one: RationalFunc.const(c),
        )
        total = N.add(total, N.mul(N.sub(others[i].rep, args[i].rep), gi))
        total_rf = total_rf + (others[i].rf - args[i].rf) * gi_rf
    return total, total_rf


def well_defined(f: Poly, args: Sequence[QuotientElem], perturbations: Sequence[Expr]) -> bool:
    """Phi_f gives the same class after adding ideal members to each argument.

    Checks the perturbations really are in I, that the Hadamard sum for the
    two argument lists is in I, and that the two Phi values agree.
    """
    if not all(ideal_member(p) for p in perturbations):
        raise ValueError("perturbations must be eventually zero")
    others = [
        QuotientElem(N.add(a.rep, p), check_total=False) for a, p in zip(args, perturbations)
    ]
    _, diff_rf = hadamard_difference(f, args, others)
    return diff_rf.is_zero() and phi(f, args) == phi(f, others)


# -- the embedding T ---------------------------------------------------------------


def embed_T(f: Germ) -> QuotientElem:
    """Class of a total smooth function agreeing with f's representative past its witness.

    The representative is extended from (w, +inf) to R with a smooth step
    that reaches 1 at w + 1; a witness of -inf means it is already total.
    The class is computed from the extension itself.
    """
    rep = f.representative
    b = max(f.witness, domain_start(rep))
    total = rep if b == NEG_INF else extend_beyond(rep, b, b + 1)
    return QuotientElem(total)


__all__ = [
    "HadamardWitness",
    "NotTotalError",
    "QuotientElem",
    "congruence_witness",
    "domain_start",
    "embed_T",
    "hadamard",
    "hadamard_difference",
    "ideal_member",
    "ideal_witness",
    "is_total",
    "phi",
    "well_defined",
]
