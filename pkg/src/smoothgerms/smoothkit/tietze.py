"""Smooth extension from a closed set, and extension past a cutoff.

Given local smooth extensions f_i on neighbourhoods U_i covering F, take a
partition of unity subordinate to {U_i} together with the components of
R \\ F and glue: the result is sum_i phi_i f_i, where phi_i collects the
members assigned to U_i.  Members assigned to complement components carry
the zero function, and they vanish identically on F, so on F the glue is a
convex combination of values that all equal f.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..expr import nodes as N
from ..expr.evaluate import EvaluationError, evaluate, evaluate_array
from ..poly import NEG_INF, POS_INF, fmt_bound
from .bumps import transition
from .cover import ClosedSet, CoverageError, CoverElement, LocalSmoothData
from .partition import partition_of_unity


class OverlapMismatch(ValueError):
    """Two local extensions disagree somewhere on F."""


def _as_rational_leaf(e: N.Expr):
    while isinstance(e, N.Domain):
        e = e.body
    return e.rf if isinstance(e, N.RFun) else None


def _overlap_pieces(u: CoverElement, v: CoverElement, F: ClosedSet):
    w = u.intersect(v)
    if w is None:
        return []
    out = []
    for lo, hi in F.pieces:
        a, b = max(lo, w.lo), min(hi, w.hi)
        # F pieces are closed, w is open
        if a < b or (a == b and w.contains(a)):
            out.append((a, b))
    return out


def _sample(a, b, n: int = 33) -> list:
    """Points of [a, b] intersected with an open interval strictly inside it when ends are infinite."""
    lo = float(a) if a != NEG_INF else float(b) - 100.0
    hi = float(b) if b != POS_INF else lo + 100.0
    if lo == hi:
        return [a if isinstance(a, Fraction) else lo]
    return [Fraction(str(x)) for x in np.linspace(lo, hi, n)[1:-1]] + [
        v for v in (a, b) if v not in (NEG_INF, POS_INF)
    ]


def check_overlaps(F: ClosedSet, data: LocalSmoothData, rtol: float = 1e-12) -> None:
    """Raise OverlapMismatch unless the local extensions agree on every F-overlap.

    Rational pairs are compared exactly: agreement on an interval forces
    identical canceled forms, and isolated overlap points are checked by
    exact evaluation.  Anything else is compared on samples.
    """
    entries = list(data)
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            (u, f), (v, g) = entries[i], entries[j]
            for a, b in _overlap_pieces(u, v, F):
                rf, rg = _as_rational_leaf(f), _as_rational_leaf(g)
                w = u.intersect(v)
                if rf is not None and rg is not None and a < b:
                    if rf != rg:
                        raise OverlapMismatch(
                            f"extensions {i} and {j} differ on [{fmt_bound(a)}, {fmt_bound(b)}]: {rf} vs {rg}"
                        )
                    continue
                for x in _sample(a, b):
                    if not w.contains(x):
                        continue
                    try:
                        fx, gx = evaluate(f, x), evaluate(g, x)
                    except EvaluationError as exc:
                        raise OverlapMismatch(f"extension undefined on the overlap at {x}: {exc}") from None
                    if abs(fx - gx) > rtol * max(1.0, abs(fx), abs(gx)):
                        raise OverlapMismatch(f"extensions {i} and {j} differ at {x}: {fx} vs {gx}")


def _blend(g: N.Expr, b, c) -> N.Expr:
    """0 left of (b + c)/2, then step * g, with the step reaching 1 exactly at c."""
    mid = (b + c) / 2
    return N.piecewise([(NEG_INF, N.ZERO), (mid, N.mul(transition(mid, c), g))])


def _window(F: ClosedSet, data: LocalSmoothData) -> tuple[int, int]:
    ends = F.finite_ends() + [e for u, _ in data for e in u.finite_ends()]
    if not ends:
        return -1, 1
    return math.floor(min(ends)) - 1, math.ceil(max(ends)) + 1


def tietze_extend(F: ClosedSet, data: LocalSmoothData) -> N.Expr:
    """A smooth function on R agreeing with the data on F.

    Raises CoverageError when the neighbourhoods miss part of F and
    OverlapMismatch when two local extensions disagree on F.
    """
    if not isinstance(data, LocalSmoothData):
        data = LocalSmoothData.of(data)
    if F.is_empty():
        return N.ZERO
    if not len(data):
        raise CoverageError("no local data for a nonempty closed set")
    check_overlaps(F, data)

    for u, f in data:
        if u.lo == NEG_INF and u.hi == POS_INF:
            return f
    if len(data) == 1 and len(F.pieces) == 1:
        (u, f), (lo, hi) = data.entries[0], F.pieces[0]
        if hi == POS_INF and u.hi == POS_INF and u.lo != NEG_INF and u.lo < lo:
            return _blend(f, u.lo, lo)

    cover = [u for u, _ in data] + F.complement()
    pou = partition_of_unity(cover, _window(F, data), tails=True)
    # normalizer summed chart by chart, so where one chart alone is live it
    # equals that chart's weight bitwise and the weight ratio is exactly 1
    by_chart = [[m.raw for m in pou.members if m.cover_index == i] for i in range(len(cover))]
    normalizer = N.add(*(r for raws in by_chart for r in raws))
    glued = []
    for i, (u, f) in enumerate(data):
        mine = [m for m in pou.members if m.cover_index == i]
        if not mine:
            continue
        share = N.div(N.add(*by_chart[i]), normalizer, cert=NEG_INF)
        lo = min(m.support[0] for m in mine)
        hi = max(m.support[1] for m in mine)
        # f may be undefined off U, so zero it outside the hull of the supports
        pieces = [] if lo == NEG_INF else [(NEG_INF, N.ZERO)]
        pieces.append((NEG_INF if lo == NEG_INF else lo, N.mul(share, f)))
        if hi != POS_INF:
            pieces.append((hi, N.ZERO))
        glued.append(N.piecewise(pieces))
    return N.add(*glued)


def extend_beyond(g: N.Expr, b, c) -> N.Expr:
    """Total smooth function equal to g on (c, +inf); g must be smooth on (b, +inf)."""
    if b == NEG_INF:
        return g
    b, c = Fraction(b), Fraction(c)
    if not c > b:
        raise ValueError(f"extend_beyond needs c > b, got b={b}, c={c}")
    return tietze_extend(ClosedSet.ray_right(c), LocalSmoothData(((CoverElement(b, POS_INF), g),)))


def agreement_error(ext: N.Expr, F: ClosedSet, data: LocalSmoothData, grid: int = 2000) -> float:
    """Largest relative gap between ``ext`` and the data on grid points of F.

    Where the datum is exactly 0 the gap is measured absolutely.
    """
    worst = 0.0
    for lo, hi in F.pieces:
        if lo == NEG_INF and hi == POS_INF:
            a, b = -50.0, 50.0
        else:
            a = float(lo) if lo != NEG_INF else float(hi) - 50.0
            b = float(hi) if hi != POS_INF else a + 50.0
        xs = np.linspace(a, b, grid) if a < b else np.array([a])
        ev = evaluate_array(ext, xs)
        for u, f in data:
            inside = np.array([u.contains(Fraction(x)) for x in xs])
            if not inside.any():
                continue
            ref = evaluate_array(f, xs[inside])
            gap = np.abs(ev[inside] - ref)
            scale = np.abs(ref)
            rel = np.where(scale > 0, gap / np.where(scale > 0, scale, 1.0), gap)
            worst = max(worst, float(rel.max()))
    return worst
