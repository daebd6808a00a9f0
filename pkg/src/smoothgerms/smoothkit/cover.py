"""Open covers and closed subsets of the line with exact rational ends."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..expr.nodes import Expr
from ..poly import NEG_INF, POS_INF, as_rat, fmt_bound


class CoverageError(ValueError):
    """Some point of the working region lies in no cover element."""

    def __init__(self, message: str, point=None):
        super().__init__(message)
        self.point = point


def _bound(v):
    if isinstance(v, str):
        v = v.strip().lower()
        if v in ("-inf", "-oo"):
            return NEG_INF
        if v in ("inf", "+inf", "oo", "+oo"):
            return POS_INF
    if isinstance(v, float) and math.isinf(v):
        return NEG_INF if v < 0 else POS_INF
    return as_rat(v)


@dataclass(frozen=True)
class CoverElement:
    """Open interval (lo, hi); either end may be infinite."""

    lo: object
    hi: object

    def __post_init__(self):
        object.__setattr__(self, "lo", _bound(self.lo))
        object.__setattr__(self, "hi", _bound(self.hi))
        if self.lo == POS_INF or self.hi == NEG_INF or not self.lo < self.hi:
            raise ValueError(f"cover element needs lo < hi, got ({self.lo}, {self.hi})")

    def contains(self, x) -> bool:
        return self.lo < x < self.hi

    def contains_closed(self, lo, hi) -> bool:
        """[lo, hi] inside (self.lo, self.hi); infinite ends must match."""
        left = self.lo == NEG_INF if lo == NEG_INF else self.lo < lo
        right = self.hi == POS_INF if hi == POS_INF else hi < self.hi
        return left and right

    def intersect(self, other: "CoverElement") -> "CoverElement | None":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return CoverElement(lo, hi) if lo < hi else None

    def finite_ends(self) -> list:
        return [v for v in (self.lo, self.hi) if v not in (NEG_INF, POS_INF)]

    def __str__(self):
        return f"({fmt_bound(self.lo)}, {fmt_bound(self.hi)})"


@dataclass(frozen=True)
class ClosedSet:
    """Sorted disjoint closed pieces [lo, hi]; infinite ends mean rays."""

    pieces: tuple

    @classmethod
    def of(cls, pieces: Iterable[Sequence]) -> "ClosedSet":
        norm = []
        for lo, hi in pieces:
            lo, hi = _bound(lo), _bound(hi)
            if lo == POS_INF or hi == NEG_INF or lo > hi:
                raise ValueError(f"bad closed piece [{lo}, {hi}]")
            norm.append((lo, hi))
        norm.sort()
        merged: list = []
        for lo, hi in norm:
            if merged and lo <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
            else:
                merged.append((lo, hi))
        return cls(tuple(merged))

    @classmethod
    def line(cls) -> "ClosedSet":
        return cls(((NEG_INF, POS_INF),))

    @classmethod
    def ray_right(cls, c) -> "ClosedSet":
        return cls(((as_rat(c), POS_INF),))

    def is_empty(self) -> bool:
        return not self.pieces

    def is_line(self) -> bool:
        return self.pieces == ((NEG_INF, POS_INF),)

    def contains(self, x) -> bool:
        return any(lo <= x <= hi for lo, hi in self.pieces)

    def complement(self) -> list[CoverElement]:
        out = []
        left = NEG_INF
        for lo, hi in self.pieces:
            if left < lo:
                out.append(CoverElement(left, lo))
            left = hi
        if left != POS_INF:
            out.append(CoverElement(left, POS_INF))
        return out

    def finite_ends(self) -> list:
        return [v for p in self.pieces for v in p if v not in (NEG_INF, POS_INF)]

    def __str__(self):
        if not self.pieces:
            return "{}"
        parts = []
        for lo, hi in self.pieces:
            left = "(" if lo == NEG_INF else "["
            right = ")" if hi == POS_INF else "]"
            parts.append(f"{left}{fmt_bound(lo)}, {fmt_bound(hi)}{right}")
        return " U ".join(parts)


@dataclass(frozen=True)
class LocalSmoothData:
    """(neighbourhood, smooth local extension) pairs."""

    entries: tuple

    @classmethod
    def of(cls, entries: Iterable) -> "LocalSmoothData":
        out = []
        for u, f in entries:
            if not isinstance(u, CoverElement):
                u = CoverElement(*u)
            if isinstance(f, str):
                from ..expr.parser import parse

                f = parse(f)
            elif not isinstance(f, Expr):
                from ..expr.nodes import coerce

                f = coerce(f)
            out.append((u, f))
        return cls(tuple(out))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)
