"""Zero-sets of polynomials as a weak structure.

A set is stored as one defining polynomial.  Intersection and product use
sums of squares, which vanish over the reals exactly when every summand
does, so the encoding stays a single polynomial of the expected arity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..poly import Poly, as_rat


class ArityError(ValueError):
    pass


@dataclass(frozen=True)
class SymbolicZeroSet:
    """{z in R^arity : poly(z) = 0}."""

    poly: Poly

    @property
    def arity(self) -> int:
        return self.poly.nvars

    @classmethod
    def of(cls, p: Poly | str, nvars: int | None = None) -> "SymbolicZeroSet":
        if isinstance(p, str):
            from ..expr.parser import parse_poly

            p = parse_poly(p, nvars)
        return cls(p)

    def contains(self, point: Sequence) -> bool:
        if len(point) != self.arity:
            raise ArityError(f"point has {len(point)} coordinates, set has arity {self.arity}")
        return self.poly(*(as_rat(z) for z in point)) == 0

    __contains__ = contains

    def is_empty_unary(self) -> bool:
        """Only decidable here for arity 1."""
        from .sturm import count_real_roots

        if self.arity != 1:
            raise ArityError("emptiness is only decided for unary sets")
        return not self.poly.is_zero() and count_real_roots(self.poly) == 0

    def __str__(self):
        return f"Z({self.poly})"


def whole_space(m: int) -> SymbolicZeroSet:
    return SymbolicZeroSet(Poly({}, m))


def ws_intersect(a: SymbolicZeroSet, b: SymbolicZeroSet) -> SymbolicZeroSet:
    if a.arity != b.arity:
        raise ArityError(f"cannot intersect sets of arity {a.arity} and {b.arity}")
    return SymbolicZeroSet(a.poly * a.poly + b.poly * b.poly)


def ws_product(a: SymbolicZeroSet, b: SymbolicZeroSet) -> SymbolicZeroSet:
    n = a.arity + b.arity
    p = a.poly.embed(n, 0)
    q = b.poly.embed(n, a.arity)
    return SymbolicZeroSet(p * p + q * q)


def ws_permute(a: SymbolicZeroSet, sigma: Sequence[int]) -> SymbolicZeroSet:
    """Rename variable x_i to x_sigma(i) (sigma given 1-based as a sequence).

    The result holds z exactly when (z_sigma(1), ..., z_sigma(m)) lies in ``a``.
    """
    sigma = [int(s) for s in sigma]
    if sorted(sigma) != list(range(1, a.arity + 1)):
        raise ArityError(f"{sigma} is not a permutation of 1..{a.arity}")
    return SymbolicZeroSet(a.poly.permute([s - 1 for s in sigma]))


def apply_inverse(sigma: Sequence[int], z: Sequence) -> tuple:
    """The point sigma^-1 . z = (z_sigma(1), ..., z_sigma(m))."""
    return tuple(z[s - 1] for s in sigma)
