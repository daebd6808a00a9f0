"""Exact polynomials and rational functions over the rationals.

Coefficients are :class:`fractions.Fraction` throughout (the ``Rat`` type).
:class:`Poly` is a sparse multivariate polynomial; unary work (division,
gcd, root isolation) goes through a dense coefficient tuple, lowest degree
first.  :class:`RationalFunc` is a unary rational function kept in canceled
form with a monic denominator, so equality is structural.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

Rat = Fraction

NEG_INF = -math.inf
POS_INF = math.inf

Dense = tuple  # tuple[Fraction, ...], low -> high, no trailing zeros


def as_rat(value) -> Fraction:
    """Coerce ints, Fractions and decimal strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"{value} is not a finite rational")
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def fmt_rat(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def fmt_bound(r) -> str:
    """Format a Rat or one of the sentinels +-inf."""
    if r == NEG_INF:
        return "-inf"
    if r == POS_INF:
        return "inf"
    return fmt_rat(r)


# ---------------------------------------------------------------------------
# dense unary helpers


def _trim(c: list) -> Dense:
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def d_add(a: Dense, b: Dense) -> Dense:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return _trim(out)


def d_neg(a: Dense) -> Dense:
    return tuple(-v for v in a)


def d_sub(a: Dense, b: Dense) -> Dense:
    return d_add(a, d_neg(b))


def d_scale(a: Dense, s: Fraction) -> Dense:
    if not s:
        return ()
    return tuple(v * s for v in a)


def d_mul(a: Dense, b: Dense) -> Dense:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if not u:
            continue
        for j, v in enumerate(b):
            out[i + j] += u * v
    return _trim(out)


def d_divmod(a: Dense, b: Dense) -> tuple[Dense, Dense]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return (), tuple(rem)
    inv = 1 / b[-1]
    quo = [Fraction(0)] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if not c:
            continue
        c *= inv
        quo[k - db] = c
        for j in range(db + 1):
            rem[k - db + j] -= c * b[j]
    return _trim(quo), _trim(rem[:db])


def d_monic(a: Dense) -> Dense:
    if not a or a[-1] == 1:
        return a
    inv = 1 / a[-1]
    return tuple(v * inv for v in a)


def d_gcd(a: Dense, b: Dense) -> Dense:
    """Monic gcd; gcd(0, 0) = 0."""
    while b:
        a, b = b, d_divmod(a, b)[1]
    return d_monic(a)


def d_deriv(a: Dense) -> Dense:
    return _trim([i * a[i] for i in range(1, len(a))])


def d_eval(a: Dense, x):
    acc = 0
    for v in reversed(a):
        acc = acc * x + v
    return acc


def d_primitive(a: Dense) -> tuple[int, ...]:
    """Integer primitive multiple of ``a`` with positive leading coefficient."""
    if not a:
        return ()
    den = reduce(math.lcm, (v.denominator for v in a), 1)
    ints = [int(v * den) for v in a]
    g = reduce(math.gcd, ints, 0)
    if ints[-1] < 0:
        g = -g
    return tuple(i // g for i in ints)


def d_sqf(a: Dense) -> Dense:
    """Square-free part: a / gcd(a, a')."""
    if len(a) <= 2:
        return d_monic(a)
    g = d_gcd(a, d_deriv(a))
    return d_monic(d_divmod(a, g)[0])


def d_compose(a: Dense, b: Dense) -> Dense:
    acc: Dense = ()
    for v in reversed(a):
        acc = d_add(d_mul(acc, b), (v,) if v else ())
    return acc


# ---------------------------------------------------------------------------


class Poly:
    """Sparse polynomial in ``nvars`` variables with rational coefficients.

    >>> p = Poly.from_coeffs([0, -3, 1])            # x^2 - 3*x
    >>> p.coeff_map()
    {2: Fraction(1, 1), 1: Fraction(-3, 1)}
    >>> p.degree()
    2
    """

    __slots__ = ("nvars", "_terms", "_dense", "_hash")

    def __init__(self, terms: Mapping[tuple[int, ...], object] | None = None, nvars: int = 1):
        if nvars < 1:
            raise ValueError("a polynomial needs at least one variable")
        clean: dict[tuple[int, ...], Fraction] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent tuple {mono} for {nvars} variables")
            c = as_rat(c)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if not clean[mono]:
                    del clean[mono]
        self.nvars = nvars
        self._terms = clean
        self._dense = None
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_coeffs(cls, coeffs: Iterable, nvars: int = 1) -> "Poly":
        """Unary polynomial from coefficients, lowest degree first."""
        if nvars != 1:
            raise ValueError("from_coeffs builds unary polynomials")
        return cls({(i,): c for i, c in enumerate(coeffs)}, 1)

    @classmethod
    def _from_dense(cls, d: Dense) -> "Poly":
        p = cls.__new__(cls)
        p.nvars = 1
        p._terms = {(i,): c for i, c in enumerate(d) if c}
        p._dense = d
        p._hash = None
        return p

    @classmethod
    def const(cls, c, nvars: int = 1) -> "Poly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def var(cls, i: int = 0, nvars: int = 1) -> "Poly":
        mono = [0] * nvars
        mono[i] = 1
        return cls({tuple(mono): 1}, nvars)

    # -- structure --------------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def coeff_map(self) -> dict[int, Fraction]:
        """Unary coefficient map ``{exponent: coefficient}``, highest first."""
        self._require_unary()
        return {m[0]: c for m, c in sorted(self._terms.items(), reverse=True)}

    def dense(self) -> Dense:
        self._require_unary()
        if self._dense is None:
            deg = max((m[0] for m in self._terms), default=-1)
            c = [Fraction(0)] * (deg + 1)
            for m, v in self._terms.items():
                c[m[0]] = v
            self._dense = tuple(c)
        return self._dense

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def degree(self):
        """Total degree; ``-inf`` for the zero polynomial."""
        if not self._terms:
            return NEG_INF
        return max(sum(m) for m in self._terms)

    def degree_in(self, i: int):
        if not self._terms:
            return NEG_INF
        return max(m[i] for m in self._terms)

    def leading_coeff(self) -> Fraction:
        d = self.dense()
        return d[-1] if d else Fraction(0)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def _require_unary(self):
        if self.nvars != 1:
            raise ValueError(f"operation needs a unary polynomial, got {self.nvars} variables")

    def _check(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.const(as_rat(other), self.nvars)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(out, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self._terms.items()}, self.nvars)

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Poly.const(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        q, r = d_divmod(self.dense(), other.dense())
        return Poly._from_dense(q), Poly._from_dense(r)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other, self.nvars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- calculus / evaluation -------------------------------------------
    def derivative(self, i: int = 0) -> "Poly":
        out = {}
        for m, c in self._terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return Poly(out, self.nvars)

    def __call__(self, *point):
        """Exact evaluation (Fractions in, Fraction out); floats give floats."""
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        if self.nvars == 1:
            return d_eval(self.dense(), point[0])
        total = 0
        for m, c in self._terms.items():
            term = c
            for x, e in zip(point, m):
                if e:
                    term = term * x**e
            total = total + term
        return total

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Compose: replace variable ``i`` by ``images[i]`` (all of one arity)."""
        if len(images) != self.nvars:
            raise ValueError(f"need {self.nvars} images, got {len(images)}")
        n = images[0].nvars
        total = Poly({}, n)
        powers: dict[tuple[int, int], Poly] = {}
        for m, c in self._terms.items():
            term = Poly.const(c, n)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = images[i] ** e
                    term = term * powers[key]
            total = total + term
        return total

    def embed(self, nvars: int, offset: int = 0) -> "Poly":
        """View as a polynomial in ``nvars`` variables, shifting indices by ``offset``."""
        if offset + self.nvars > nvars:
            raise ValueError("embedding does not fit")
        out = {}
        for m, c in self._terms.items():
            mm = [0] * nvars
            mm[offset:offset + self.nvars] = m
            out[tuple(mm)] = c
        return Poly(out, nvars)

    def permute(self, images: Sequence[int]) -> "Poly":
        """Rename variable ``i`` to variable ``images[i]`` (0-based)."""
        if sorted(images) != list(range(self.nvars)):
            raise ValueError(f"{list(images)} is not a permutation of 0..{self.nvars - 1}")
        out = {}
        for m, c in self._terms.items():
            mm = [0] * self.nvars
            for i, e in enumerate(m):
                mm[images[i]] = e
            out[tuple(mm)] = c
        return Poly(out, self.nvars)

    # -- printing ---------------------------------------------------------
    def default_names(self) -> list[str]:
        if self.nvars == 1:
            return ["x"]
        return [f"x{i + 1}" for i in range(self.nvars)]

    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = list(names) if names is not None else self.default_names()
        if not self._terms:
            return "0"

        def order(item):
            m, _ = item
            return (-sum(m), tuple(-e for e in m))

        parts: list[str] = []
        for m, c in sorted(self._terms.items(), key=order):
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = fmt_rat(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{fmt_rat(mag)}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Poly({self.to_str()!r}, nvars={self.nvars})"


def cauchy_bound(d: Dense) -> Fraction:
    """Strict upper bound on the modulus of every complex root of ``d``."""
    lc = abs(d[-1])
    return 1 + max((abs(v) / lc for v in d[:-1]), default=Fraction(0))


class RationalFunc:
    """Unary rational function p/q, canceled, with monic q.

    >>> r = RationalFunc.from_polys(Poly.from_coeffs([-1, 1]), Poly.from_coeffs([1, 1]))
    >>> str(r)
    '(x - 1)/(x + 1)'
    """

    __slots__ = ("_p", "_q", "_hash", "_str")

    def __init__(self, p: Dense, q: Dense = (Fraction(1),), *, canceled: bool = False):
        if not q:
            raise ZeroDivisionError("rational function with zero denominator")
        if not canceled:
            if not p:
                q = (Fraction(1),)
            elif len(q) > 1:
                g = d_gcd(p, q)
                if len(g) > 1:
                    p = d_divmod(p, g)[0]
                    q = d_divmod(q, g)[0]
            lc = q[-1]
            if lc != 1:
                p = d_scale(p, 1 / lc)
                q = d_monic(q)
        self._p = p
        self._q = q
        self._hash = None
        self._str = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_polys(cls, p: Poly, q: Poly | None = None) -> "RationalFunc":
        return cls(p.dense(), q.dense() if q is not None else (Fraction(1),))

    @classmethod
    def const(cls, c) -> "RationalFunc":
        c = as_rat(c)
        return cls((c,) if c else (), canceled=True)

    @classmethod
    def x(cls) -> "RationalFunc":
        return cls((Fraction(0), Fraction(1)), canceled=True)

    # -- structure --------------------------------------------------------
    @property
    def num(self) -> Poly:
        return Poly._from_dense(self._p)

    @property
    def den(self) -> Poly:
        return Poly._from_dense(self._q)

    @property
    def p(self) -> Dense:
        return self._p

    @property
    def q(self) -> Dense:
        return self._q

    def is_zero(self) -> bool:
        return not self._p

    def is_polynomial(self) -> bool:
        return len(self._q) == 1

    def is_constant(self) -> bool:
        return len(self._q) == 1 and len(self._p) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._p[0] if self._p else Fraction(0)

    def growth_order(self) -> int:
        """deg(numerator) - deg(denominator); undefined for zero."""
        if not self._p:
            raise ValueError("the zero function has no growth order")
        return len(self._p) - len(self._q)

    def leading_sign(self) -> int:
        """Sign at +infinity: sign of the numerator's leading coefficient."""
        if not self._p:
            return 0
        return 1 if self._p[-1] > 0 else -1

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "RationalFunc":
        if isinstance(other, RationalFunc):
            return other
        return RationalFunc.const(other)

    def __add__(self, other) -> "RationalFunc":
        o = self._coerce(other)
        if not o._p:
            return self
        if not self._p:
            return o
        if self._q == o._q:
            return RationalFunc(d_add(self._p, o._p), self._q)
        if len(self._q) == 1 and len(o._q) == 1:
            return RationalFunc(d_add(self._p, o._p), canceled=True)
        # p1/q1 + p2/q2 over lcm(q1, q2); with q1 = g c2 and q2 = g c1 the
        # numerator is coprime to c1 c2, so only gcd(num, g) can cancel
        g = d_gcd(self._q, o._q)
        if len(g) > 1:
            c1 = d_divmod(o._q, g)[0]
            c2 = d_divmod(self._q, g)[0]
            num = d_add(d_mul(self._p, c1), d_mul(o._p, c2))
            den = d_mul(self._q, c1)
            if not num:
                return RationalFunc((), canceled=True)
            h = d_gcd(num, g)
            if len(h) > 1:
                num, den = d_divmod(num, h)[0], d_divmod(den, h)[0]
        else:
            num = d_add(d_mul(self._p, o._q), d_mul(o._p, self._q))
            den = d_mul(self._q, o._q)
        if not num:
            return RationalFunc((), canceled=True)
        return RationalFunc(num, den, canceled=True)  # den is a product of monics

    __radd__ = __add__

    def __neg__(self) -> "RationalFunc":
        return RationalFunc(d_neg(self._p), self._q, canceled=True)

    def __sub__(self, other) -> "RationalFunc":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalFunc":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalFunc":
        o = self._coerce(other)
        if not self._p or not o._p:
            return RationalFunc((), canceled=True)
        # cross-cancel before multiplying keeps the gcds small
        p1, q1, p2, q2 = self._p, self._q, o._p, o._q
        if len(q2) > 1:
            g = d_gcd(p1, q2)
            if len(g) > 1:
                p1, q2 = d_divmod(p1, g)[0], d_divmod(q2, g)[0]
        if len(q1) > 1:
            g = d_gcd(p2, q1)
            if len(g) > 1:
                p2, q1 = d_divmod(p2, g)[0], d_divmod(q1, g)[0]
        num = d_mul(p1, p2)
        den = d_mul(q1, q2)
        lc = den[-1]
        if lc != 1:
            num, den = d_scale(num, 1 / lc), d_monic(den)
        return RationalFunc(num, den, canceled=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunc":
        if not self._p:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunc(self._q, self._p)

    def __truediv__(self, other) -> "RationalFunc":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "RationalFunc":
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "RationalFunc":
        if not isinstance(n, int):
            raise ValueError("only integer powers")
        if n < 0:
            return self.inverse() ** (-n)
        p = (Fraction(1),)
        q = (Fraction(1),)
        for _ in range(n):
            p = d_mul(p, self._p)
            q = d_mul(q, self._q)
        return RationalFunc(p, q, canceled=True)

    def derivative(self) -> "RationalFunc":
        if len(self._q) == 1:
            return RationalFunc(d_deriv(self._p), canceled=True)
        num = d_sub(d_mul(d_deriv(self._p), self._q), d_mul(self._p, d_deriv(self._q)))
        return RationalFunc(num, d_mul(self._q, self._q))

    def compose(self, inner: "RationalFunc") -> "RationalFunc":
        """self(inner(x))."""
        if inner.is_polynomial():
            return RationalFunc(d_compose(self._p, inner._p), d_compose(self._q, inner._p))
        # homogenize: p(a/b) = P(a, b) / b^deg p
        a, b = inner._p, inner._q

        def hom(c: Dense, deg: int) -> Dense:
            acc: Dense = ()
            for k, v in enumerate(c):
                if v:
                    term = (v,)
                    for _ in range(k):
                        term = d_mul(term, a)
                    for _ in range(deg - k):
                        term = d_mul(term, b)
                    acc = d_add(acc, term)
            return acc

        dp, dq = len(self._p) - 1, len(self._q) - 1
        n = max(dp, dq, 0)
        num = hom(self._p, n) if self._p else ()
        den = hom(self._q, n)
        return RationalFunc(num, den)

    def __call__(self, x):
        """Exact for Fraction input; raises ZeroDivisionError at poles."""
        qv = d_eval(self._q, x)
        if qv == 0:
            raise ZeroDivisionError(f"pole of {self} at {x}")
        return d_eval(self._p, x) / qv

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunc):
            return self._p == other._p and self._q == other._q
        if isinstance(other, (int, Fraction)):
            return self == RationalFunc.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._p, self._q))
        return self._hash

    def __str__(self) -> str:
        if self._str is None:
            ps = self.num.to_str()
            if len(self._q) == 1:
                self._str = ps
            else:
                self._str = f"({ps})/({self.den.to_str()})"
        return self._str

    def __repr__(self) -> str:
        return f"RationalFunc({str(self)!r})"
