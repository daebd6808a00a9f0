"""Seeded random instances for the property suites and tests."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .expr import nodes as N
from .poly import Poly, RationalFunc
from .smoothkit.cover import ClosedSet, CoverElement, LocalSmoothData
from .zeroset.sturm import max_root_bound


def rand_int(rng: random.Random, lo: int = -9, hi: int = 9, nonzero: bool = False) -> int:
    while True:
        v = rng.randint(lo, hi)
        if v or not nonzero:
            return v


def rand_rat(rng: random.Random, lo=-5, hi=5, dens=(1, 2, 3, 4)) -> Fraction:
    d = rng.choice(dens)
    return Fraction(rng.randint(lo * d, hi * d), d)


def rand_unary_poly(rng: random.Random, max_deg: int = 6, coeff: int = 9) -> Poly:
    deg = rng.randint(0, max_deg)
    cs = [rand_int(rng, -coeff, coeff) for _ in range(deg)] + [rand_int(rng, -coeff, coeff, nonzero=True)]
    return Poly.from_coeffs(cs)


def rand_rf(rng: random.Random, max_deg: int = 6, zero_rate: float = 0.05) -> RationalFunc:
    """Random rational function with numerator and denominator degrees <= max_deg."""
    if rng.random() < zero_rate:
        return RationalFunc.const(0)
    p = rand_unary_poly(rng, max_deg)
    q = rand_unary_poly(rng, rng.randint(0, max_deg))
    return RationalFunc.from_polys(p, q)


def rand_pole_free_rf(rng: random.Random, max_deg: int = 4) -> RationalFunc:
    """Rational function with no real poles: p / (1 + s^2) style denominators."""
    p = rand_unary_poly(rng, max_deg)
    if rng.random() < 0.5:
        return RationalFunc.from_polys(p)
    s = rand_unary_poly(rng, 2, coeff=3)
    q = s * s + Poly.const(rng.randint(1, 4))
    return RationalFunc.from_polys(p, q)


def rand_bump(rng: random.Random) -> N.Expr:
    q = rand_rat(rng, -4, 4)
    a = Fraction(rng.randint(1, 4), rng.choice((2, 4)))
    b = a + Fraction(rng.randint(1, 4), rng.choice((2, 4)))
    return N.bump_of(N.X, q, a, b)


def rand_ideal_member(rng: random.Random) -> N.Expr:
    """Total, eventually zero: combinations of bumps and smooth left steps."""
    kind = rng.random()
    if kind < 0.5:
        return N.mul(N.const(rand_int(rng, nonzero=True)), rand_bump(rng))
    if kind < 0.8:
        return N.mul(N.rational(rand_pole_free_rf(rng, 3)), rand_bump(rng))
    lo = rand_rat(rng, -3, 2)
    return N.mul(N.const(rand_int(rng, nonzero=True)), N.sub(N.ONE, N.step_of(N.X, lo, lo + 1)))


def rand_germ_expr(rng: random.Random, max_deg: int = 6) -> N.Expr:
    """Eventually-rational expression: rational tail glued to bumps, pieces or domains."""
    rf = rand_rf(rng, max_deg)
    tail = N.rational(rf)
    shape = rng.random()
    if shape < 0.4:
        return tail
    if shape < 0.6:
        return N.add(tail, N.mul(N.const(rand_int(rng, nonzero=True)), rand_bump(rng)))
    c = max_root_bound(rf.q) if len(rf.q) > 1 else None
    cut = rand_rat(rng, -3, 3)
    if c is not None and c != float("-inf"):
        cut = max(cut, math.ceil(Fraction(c)) + 1)
    if shape < 0.85:
        head = N.rational(rand_pole_free_rf(rng, 3))
        return N.piecewise([(float("-inf"), head), (cut, tail)])
    return N.restrict(cut, tail)


def rand_total_expr(rng: random.Random) -> N.Expr:
    """Total in-class expression (defined on all of R)."""
    base = N.rational(rand_pole_free_rf(rng, 4))
    if rng.random() < 0.4:
        base = N.add(base, rand_ideal_member(rng))
    return base


def rand_multi_poly(rng: random.Random, nvars: int, max_deg: int = 4, terms: int = 5, coeff: int = 6) -> Poly:
    out = {}
    for _ in range(rng.randint(0, terms)):
        budget = rng.randint(0, max_deg)
        mono = [0] * nvars
        for _ in range(budget):
            mono[rng.randrange(nvars)] += 1
        out[tuple(mono)] = out.get(tuple(mono), 0) + rand_int(rng, -coeff, coeff, nonzero=True)
    return Poly(out, nvars)


def rand_cover(rng: random.Random, window: tuple[int, int]) -> list[CoverElement]:
    """Finite open cover of [M1, M2] by overlapping random intervals, with some extras."""
    m1, m2 = window
    pts = [Fraction(m1) - rng.choice((Fraction(1, 2), 1, 2))]
    while pts[-1] <= m2:
        pts.append(pts[-1] + Fraction(rng.randint(1, 8), 4))
    cover = []
    for i in range(len(pts) - 1):
        lo = pts[i] - Fraction(rng.randint(1, 3), 8)
        hi = pts[i + 1] + Fraction(rng.randint(1, 3), 8)
        cover.append(CoverElement(lo, hi))
    if rng.random() < 0.3:
        cover[0] = CoverElement(float("-inf"), cover[0].hi)
    if rng.random() < 0.3:
        cover[-1] = CoverElement(cover[-1].lo, float("inf"))
    for _ in range(rng.randint(0, 2)):
        c = rand_rat(rng, m1, m2)
        cover.append(CoverElement(c - Fraction(rng.randint(1, 4), 4), c + Fraction(rng.randint(1, 4), 4)))
    rng.shuffle(cover)
    return cover


def rand_closed_set_and_data(rng: random.Random) -> tuple[ClosedSet, LocalSmoothData]:
    """Closed set of 1 to 3 pieces (rays allowed) with polynomial data per piece.

    Neighbourhoods of different pieces may overlap, but only off F, so the
    local extensions are free to differ.
    """
    n = rng.randint(1, 3)
    cuts = sorted({rand_rat(rng, -4, 4, dens=(1, 2)) for _ in range(2 * n)})
    while len(cuts) < 2 * n:
        cuts.append(cuts[-1] + 1)
    pieces = []
    for i in range(n):
        lo, hi = cuts[2 * i], cuts[2 * i + 1]
        if i == 0 and rng.random() < 0.4:
            lo = float("-inf")
        if i == n - 1 and rng.random() < 0.4:
            hi = float("inf")
        pieces.append((lo, hi))
    F = ClosedSet.of(pieces)
    entries = []
    for k, (lo, hi) in enumerate(F.pieces):
        # gap to neighbours, so neighbourhoods only meet off F
        left_gap = (lo - F.pieces[k - 1][1]) if k > 0 else Fraction(2)
        right_gap = (F.pieces[k + 1][0] - hi) if k + 1 < len(F.pieces) else Fraction(2)
        f = N.rational(RationalFunc.from_polys(rand_unary_poly(rng, 3, coeff=4)))
        u_lo = lo if lo == float("-inf") else lo - left_gap * Fraction(rng.randint(1, 3), 4)
        u_hi = hi if hi == float("inf") else hi + right_gap * Fraction(rng.randint(1, 3), 4)
        if rng.random() < 0.3 and lo != float("-inf") and hi != float("inf") and hi - lo >= 1:
            mid = (lo + hi) / 2
            entries.append((CoverElement(u_lo, mid + Fraction(1, 4)), f))
            entries.append((CoverElement(mid - Fraction(1, 4), u_hi), f))
        else:
            entries.append((CoverElement(u_lo, u_hi), f))
    return F, LocalSmoothData(tuple(entries))
