"""Smooth partitions of unity subordinate to a finite open cover.

The construction works one unit interval [m, m + 1] at a time.  A sweep
starts at p = m, picks the cover element U containing p that reaches
furthest right (capped at m + 2), and places one bump whose plateau runs
from p to a point r chosen so that the next element picked reaches strictly
further.  Because that reach increases at every step, each cover element is
used at most once per unit interval.  Bump supports stay inside
U and (m - 1, m + 2), so any point meets at most three unit intervals' worth
of bumps: the local finiteness bound is 3 * len(cover).

Members are the bumps divided by their total.  To keep every member defined
on all of R, the total also includes two pads that vanish on the window and
are positive outside it; with ``tails=True`` the pads become genuine members
assigned to cover elements containing the two end rays, and the family sums
to 1 on the whole line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..expr import nodes as N
from ..expr.evaluate import _gt, evaluate_array
from ..poly import NEG_INF, POS_INF, fmt_bound
from .bumps import BumpSpec, bump, transition, transition_down
from .cover import CoverageError, CoverElement


@dataclass(frozen=True)
class Member:
    function: N.Expr      # raw / normalizer
    raw: N.Expr           # the bump (or tail) before normalization
    support: tuple        # closed [lo, hi]; infinite ends for tails
    cover_index: int
    unit: object          # integer m of [m, m+1], or "left"/"right" for tails
    spec: BumpSpec | None = None


@dataclass
class PartitionCertificate:
    window: tuple
    grid: int
    sum_error: float
    min_raw_sum: float
    supports_contained: bool
    zero_outside_support: bool
    max_overlap: int
    overlap_bound: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.sum_error <= 1e-12
            and self.supports_contained
            and self.zero_outside_support
            and self.max_overlap <= self.overlap_bound
            and not self.failures
        )

    def to_json(self) -> dict:
        return {
            "window": [fmt_bound(w) for w in self.window],
            "grid": self.grid,
            "sum_error": self.sum_error,
            "min_raw_sum": self.min_raw_sum,
            "supports_contained": self.supports_contained,
            "zero_outside_support": self.zero_outside_support,
            "max_overlap": self.max_overlap,
            "overlap_bound": self.overlap_bound,
            "ok": self.ok,
        }


@dataclass
class PartitionOfUnity:
    cover: tuple
    window: tuple
    members: list
    normalizer: N.Expr
    tails: bool = False

    def member_values(self, xs) -> np.ndarray:
        """Matrix of member values, one row per member.

        Same floating-point operations as evaluating each member on its own,
        with the normalizer computed once.
        """
        xs = np.asarray(xs, dtype=float)
        phi = evaluate_array(self.normalizer, xs)
        raws = np.array([evaluate_array(m.raw, xs) for m in self.members])
        with np.errstate(all="ignore"):
            return raws / phi

    def certify(self, grid: int = 10_000, tol: float = 1e-12) -> PartitionCertificate:
        lo, hi = self.window
        xs = np.linspace(float(lo), float(hi), grid)
        vals = self.member_values(xs)
        total = vals.sum(axis=0)
        raw_sum = evaluate_array(N.add(*(m.raw for m in self.members)), xs)
        failures = []

        contained = True
        for k, m in enumerate(self.members):
            u = self.cover[m.cover_index]
            s_lo, s_hi = m.support
            ok = u.contains_closed(s_lo, s_hi)
            if isinstance(m.unit, int):
                ok = ok and m.unit - 1 < s_lo and s_hi < m.unit + 2
            if not ok:
                contained = False
                failures.append(f"member {k} support [{fmt_bound(s_lo)}, {fmt_bound(s_hi)}] not inside {u}")

        # exact zeros on the grid outside each support, plus the first floats past each end
        zero_ok = True
        edge_x, edge_k = [], []
        for k, m in enumerate(self.members):
            s_lo, s_hi = m.support
            outside = _lt(xs, s_lo) | _above(xs, s_hi)
            if np.any(vals[k][outside] != 0.0):
                zero_ok = False
                failures.append(f"member {k} is nonzero on the grid outside its support")
            for end, direction in ((s_lo, -math.inf), (s_hi, math.inf)):
                if end not in (NEG_INF, POS_INF):
                    x = float(end)
                    while s_lo <= Fraction(x) <= s_hi:
                        x = math.nextafter(x, direction)
                    edge_x.append(x)
                    edge_k.append(k)
        if edge_x:
            edge_vals = self.member_values(np.array(edge_x))
            for j, k in enumerate(edge_k):
                if edge_vals[k, j] != 0.0:
                    zero_ok = False
                    failures.append(f"member {k} is nonzero just outside its support at {edge_x[j]!r}")

        overlap = int((vals != 0).sum(axis=0).max()) if len(self.members) else 0
        err = float(np.max(np.abs(total - 1.0)))
        return PartitionCertificate(
            window=self.window,
            grid=grid,
            sum_error=err,
            min_raw_sum=float(raw_sum.min()),
            supports_contained=contained,
            zero_outside_support=zero_ok,
            max_overlap=overlap,
            overlap_bound=3 * len(self.cover),
            failures=failures if err <= tol else failures + [f"sum error {err:.3e} exceeds {tol:g}"],
        )

    def to_json(self) -> dict:
        return {
            "window": [fmt_bound(w) for w in self.window],
            "cover": [str(u) for u in self.cover],
            "members": [
                {
                    "support": [fmt_bound(s) for s in m.support],
                    "cover_index": m.cover_index,
                    "unit": m.unit,
                    "bump": None if m.spec is None else {
                        "q": fmt_bound(m.spec.q), "a": fmt_bound(m.spec.a), "b": fmt_bound(m.spec.b)
                    },
                }
                for m in self.members
            ],
        }


def _lt(xs: np.ndarray, b) -> np.ndarray:
    """Exact ``xs < b`` against a rational or infinite bound."""
    if b in (NEG_INF, POS_INF):
        return np.full(xs.shape, b == POS_INF)
    return _gt(-xs, -b)


def _above(xs: np.ndarray, b) -> np.ndarray:
    if b in (NEG_INF, POS_INF):
        return np.full(xs.shape, b == NEG_INF)
    return _gt(xs, b)


def _containing(cover: Sequence[CoverElement], x, cap):
    """(effective right end, index) of the element containing x reaching furthest."""
    best = None
    for i, u in enumerate(cover):
        if u.contains(x):
            reach = min(u.hi, cap)
            if best is None or reach > best[0]:
                best = (reach, i)
    return best


# how far toward the element ends the bump ramps reach; below 1 keeps supports compact in U
_SPREAD = Fraction(7, 8)


def sweep_unit(cover: Sequence[CoverElement], m: int) -> list[tuple[BumpSpec, int]]:
    """Bumps whose plateaus cover [m, m + 1], with supports in U and (m - 1, m + 2)."""
    p = Fraction(m)
    top = Fraction(m + 1)
    cap = Fraction(m + 2)
    out = []
    while True:
        hit = _containing(cover, p, cap)
        if hit is None:
            raise CoverageError(f"{p} lies in no cover element", p)
        reach, i = hit
        left = max(cover[i].lo, Fraction(m - 1))
        if reach > top:
            r, final = top, True
        else:
            nxt = _containing(cover, reach, cap)
            if nxt is None:
                raise CoverageError(f"{reach} lies in no cover element", reach)
            r, final = (max(cover[nxt[1]].lo, p) + reach) / 2, False
        s_lo = p - _SPREAD * (p - left)
        s_hi = r + _SPREAD * (reach - r)
        q, b = (s_lo + s_hi) / 2, (s_hi - s_lo) / 2
        a = b - min(p - s_lo, s_hi - r)
        out.append((BumpSpec(q, a, b), i))
        if final:
            return out
        p = r


def _tail_element(cover, end, side: str) -> int:
    for i, u in enumerate(cover):
        if side == "left" and u.lo == NEG_INF and u.hi > end:
            return i
        if side == "right" and u.hi == POS_INF and u.lo < end:
            return i
    raise CoverageError(f"no cover element contains the {side} ray beyond {end}")


def partition_of_unity(
    cover: Sequence[CoverElement | tuple], window: Sequence[int], *, tails: bool = False
) -> PartitionOfUnity:
    """Partition of unity subordinate to ``cover`` on the integer window [M1, M2].

    Raises CoverageError if some point of the window lies in no element.
    """
    cover = tuple(u if isinstance(u, CoverElement) else CoverElement(*u) for u in cover)
    m1, m2 = (int(w) for w in window)
    if Fraction(window[0]) != m1 or Fraction(window[1]) != m2:
        raise ValueError(f"window ends must be integers, got {window}")
    if m1 >= m2:
        raise ValueError(f"window needs M1 < M2, got [{m1}, {m2}]")
    if not cover:
        raise CoverageError("empty cover")

    members: list[Member] = []
    for m in range(m1, m2):
        for spec, i in sweep_unit(cover, m):
            members.append(Member(N.ZERO, bump(spec), spec.support, i, m, spec))

    # vanish on [M1, M2], positive outside
    left_pad = transition_down(m1 - 1, m1)
    right_pad = transition(m2, m2 + 1)
    if tails:
        members.append(Member(N.ZERO, left_pad, (NEG_INF, Fraction(m1)), _tail_element(cover, m1, "left"), "left"))
        members.append(Member(N.ZERO, right_pad, (Fraction(m2), POS_INF), _tail_element(cover, m2, "right"), "right"))
        normalizer = N.add(*(mb.raw for mb in members))
    else:
        normalizer = N.add(*(mb.raw for mb in members), left_pad, right_pad)

    members = [
        Member(N.div(mb.raw, normalizer, cert=NEG_INF), mb.raw, mb.support, mb.cover_index, mb.unit, mb.spec)
        for mb in members
    ]
    return PartitionOfUnity(cover, (Fraction(m1), Fraction(m2)), members, normalizer, tails)
