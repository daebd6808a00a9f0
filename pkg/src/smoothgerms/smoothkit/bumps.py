"""Bump functions and the smooth step."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..expr import nodes as N
from ..expr.nodes import X, Expr, bump_of, smooth_step_of, step_of
from ..poly import as_rat


@dataclass(frozen=True)
class BumpSpec:
    """rho = 1 on [q - a, q + a], 0 off (q - b, q + b), requires 0 < a < b."""

    q: Fraction
    a: Fraction
    b: Fraction

    def __post_init__(self):
        for name in ("q", "a", "b"):
            object.__setattr__(self, name, as_rat(getattr(self, name)))
        if not 0 < self.a < self.b:
            raise ValueError(f"bump needs 0 < a < b, got a={self.a}, b={self.b}")

    @property
    def support(self) -> tuple[Fraction, Fraction]:
        return self.q - self.b, self.q + self.b

    @property
    def core(self) -> tuple[Fraction, Fraction]:
        return self.q - self.a, self.q + self.a


def bump(spec: BumpSpec, arg: Expr = X) -> Expr:
    return bump_of(arg, spec.q, spec.a, spec.b)


def smooth_step(arg: Expr = X) -> Expr:
    """g(t) = f(t) / (f(t) + f(1 - t)); 0 for t <= 0 and 1 for t >= 1."""
    return smooth_step_of(arg)


def transition(lo, hi, arg: Expr = X) -> Expr:
    """0 left of ``lo``, 1 right of ``hi``."""
    return step_of(arg, lo, hi)


def transition_down(lo, hi, arg: Expr = X) -> Expr:
    """1 left of ``lo``, 0 right of ``hi``: g((hi - arg) / (hi - lo)), which equals 1 - transition."""
    lo, hi = as_rat(lo), as_rat(hi)
    if not lo < hi:
        raise ValueError(f"transition needs lo < hi, got {lo}, {hi}")
    return smooth_step_of(N.div(N.sub(N.const(hi), arg), N.const(hi - lo)))
