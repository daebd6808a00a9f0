"""Central finite differences and an h^2 convergence check.

Second-order central stencils for derivative orders 1 to 3.  Their
truncation error is C h^2, so each decade step in h should shrink the error
against the exact derivative by about 100.  Once the error drops to the
rounding floor the ratio says nothing, so such
pairs are skipped rather than counted as failures.  The floor is
8 eps * sum|w_j| M(x_j) / h^k for stencil weights w_j, where M is the
rounding scale of evaluating f (at least |f|), plus the same factor
times eps |x| |f'| for rounding in the abscissas x + j h, plus the rounding
in the reference derivative itself, estimated from its spread over a few
ulps around x.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from ..expr.calculus import differentiate
from ..expr.evaluate import evaluate_array, rounding_scale
from ..expr.nodes import Expr

EPS = np.finfo(float).eps

# offsets and weights; the divisor is h^order
_STENCILS = {
    1: ((-1, 1), (-0.5, 0.5)),
    2: ((-1, 0, 1), (1.0, -2.0, 1.0)),
    3: ((-2, -1, 1, 2), (-0.5, 1.0, -1.0, 0.5)),
}

DEFAULT_HS = (1e-2, 1e-3, 1e-4, 1e-5)


def central_difference(fn: Callable, x: float, h: float, order: int) -> float:
    offsets, weights = _STENCILS[order]
    pts = np.array([x + o * h for o in offsets])
    vals = fn(pts)
    return float(np.dot(weights, vals) / h**order)


def _noise(fn: Callable, x: float, h: float, order: int, scale: float, slope: float = 0.0, size=None) -> float:
    offsets, weights = _STENCILS[order]
    pts = np.array([x + o * h for o in offsets])
    vals = size(pts) if size is not None else np.abs(fn(pts))
    spread = np.maximum(vals, 1e-300) + abs(x) * slope
    return scale * EPS * float(np.dot(np.abs(weights), spread)) / h**order


@dataclass
class RichardsonReport:
    x: float
    order: int
    hs: tuple
    errors: list
    noise: list
    ratios: list = field(default_factory=list)  # None where skipped
    factor: float = 4.0

    @property
    def ok(self) -> bool:
        need = 100.0 / self.factor
        return all(r is None or r >= need for r in self.ratios)

    @property
    def checked(self) -> int:
        return sum(r is not None for r in self.ratios)


def richardson(
    fn: Callable,
    x: float,
    order: int,
    exact: float,
    hs: Sequence[float] = DEFAULT_HS,
    factor: float = 4.0,
    noise_scale: float = 8.0,
    exact_noise: float = 0.0,
    slope: float = 0.0,
    size: Callable | None = None,
) -> RichardsonReport:
    """Errors of the order-``order`` stencil against ``exact`` over ``hs``.

    Consecutive pairs (h, h/10) pass when the error ratio is at least
    100 / factor; a pair is skipped when either error sits below three
    times its rounding floor.
    """
    errors, noise = [], []
    for h in hs:
        errors.append(abs(central_difference(fn, x, h, order) - exact))
        noise.append(_noise(fn, x, h, order, noise_scale, slope, size) + exact_noise)
    ratios = []
    for i in range(len(hs) - 1):
        big, small = errors[i], errors[i + 1]
        step = hs[i] / hs[i + 1]
        if small <= 3 * noise[i + 1] or big <= 3 * noise[i]:
            ratios.append(None)
        else:
            # normalize to a decade step so the threshold reads the same
            ratios.append((big / small) ** (np.log(10.0) / np.log(step)))
    return RichardsonReport(x, order, tuple(hs), errors, noise, ratios, factor)


def seam_points(e: Expr, *, gates: bool = True) -> list[float]:
    """Where a glued expression switches behaviour.

    These are the finite piecewise breakpoints and domain starts, plus (with
    ``gates``) the real zeros of every rational gate argument, which are the
    support and plateau ends of the bumps.  Irrational zeros are given to
    float precision.
    """
    from ..expr import nodes as N
    from ..poly import NEG_INF
    from ..zeroset.sturm import refine, sturm_isolate

    pts = set()
    for n in N.walk(e):
        if isinstance(n, N.Piecewise):
            pts.update(b for b in n.breakpoints if b != NEG_INF)
        elif isinstance(n, N.Domain) and n.a != NEG_INF:
            pts.add(n.a)
        elif gates and isinstance(n, N.Gate) and isinstance(n.arg, N.RFun) and len(n.arg.rf.p) > 1:
            for iv in sturm_isolate(n.arg.rf.p):
                iv = refine(n.arg.rf.p, iv, Fraction(1, 2**60))
                pts.add(iv.lo if iv.exact is not None else (iv.lo + iv.hi) / 2)
    return sorted({float(p) for p in pts})


def smoothness_reports(
    e: Expr, points: Sequence[float], orders: Sequence[int] = (1, 2, 3), hs=DEFAULT_HS, factor: float = 4.0
) -> list[RichardsonReport]:
    """Richardson reports for ``e`` at each point and order, exact derivatives symbolic.

    All stencil points are evaluated in one batch.
    """
    points = [float(x) for x in points]
    if not points:
        return []
    offsets = sorted({o for k in orders for o in _STENCILS[k][0]})
    grid = sorted({x + o * h for x in points for h in hs for o in offsets})
    table = dict(zip(grid, evaluate_array(e, np.array(grid))))
    scales = dict(zip(grid, rounding_scale(e, np.array(grid))))

    def fn(xs):
        return np.array([table[v] if v in table else evaluate_array(e, np.array([v]))[0] for v in xs])

    def size(xs):
        return np.array([scales[v] if v in scales else rounding_scale(e, np.array([v]))[0] for v in xs])

    derivs = {}
    d = e
    for k in range(1, max(orders) + 1):
        d = differentiate(d)
        derivs[k] = d
    ulps = np.arange(-8, 9) * 4
    clouds = np.concatenate([x + ulps * np.spacing(x) for x in points])
    dvals = {k: evaluate_array(derivs[k], clouds).reshape(len(points), len(ulps)) for k in derivs}
    out = []
    for i, x in enumerate(points):
        slope = float(np.abs(dvals[1][i]).max())
        for k in orders:
            vals = dvals[k][i]
            exact = float(vals[len(ulps) // 2])
            spread = float(vals.max() - vals.min())
            out.append(richardson(fn, x, k, exact, hs, factor, exact_noise=spread, slope=slope, size=size))
    return out
