"""Randomized property suites, shared by ``selftest`` and the acceptance tests.

Each suite draws seeded instances, checks every property exactly where the
objects are exact, and returns a :class:`SuiteResult` with counts.  Counts
scale with ``scale`` so a quick selftest can run with smaller samples.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import generators as G
from .expr import nodes as N
from .expr.evaluate import evaluate, evaluate_array, evaluate_exact
from .germfield import (
    ONE_GERM,
    ZERO_GERM,
    EventualSign,
    ZeroGermError,
    add,
    derive,
    dominates,
    eventual_sign,
    germ_of,
    invert,
    le,
    mul,
    neg,
)
from .poly import NEG_INF, POS_INF, Poly, RationalFunc, cauchy_bound, d_eval, d_sqf
from .quotient import QuotientElem, embed_T, hadamard, ideal_witness, phi, well_defined
from .smoothkit.cover import ClosedSet, CoverageError
from .smoothkit.fd import seam_points, smoothness_reports
from .smoothkit.partition import partition_of_unity
from .smoothkit.tietze import agreement_error, extend_beyond, tietze_extend
from .zeroset.components import extend_by_zero, ominimal_dichotomy, unary_components
from .zeroset.sturm import max_root_bound, sturm_isolate
from .zeroset.weak import SymbolicZeroSet, apply_inverse, ws_intersect, ws_permute, ws_product

MAX_FAILURES = 20


@dataclass
class SuiteResult:
    name: str
    instances: int = 0
    checks: int = 0
    failures: list = field(default_factory=list)
    metrics: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures and self.checks > 0

    def check(self, ok: bool, what: str) -> bool:
        self.checks += 1
        if not ok and len(self.failures) < MAX_FAILURES:
            self.failures.append(what)
        elif not ok:
            self.metrics["unreported_failures"] = self.metrics.get("unreported_failures", 0) + 1
        return ok

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.name}: {self.instances} instances, {self.checks} checks, {len(self.failures)} failures ({self.elapsed:.1f}s)"

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "instances": self.instances,
            "checks": self.checks,
            "failures": self.failures,
            "metrics": self.metrics,
            "elapsed": round(self.elapsed, 3),
        }


def _count(base: int, scale: float) -> int:
    return max(1, int(round(base * scale)))


def _beyond(*bounds) -> Fraction:
    """An integer strictly past every finite bound."""
    finite = [b for b in bounds if b not in (NEG_INF, POS_INF)]
    return Fraction(math.floor(max(finite)) + 2 if finite else 1)


# -- 1. germ field ---------------------------------------------------------------


def hardy_field_axioms(rng: random.Random, scale: float = 1.0, opts: dict | None = None) -> SuiteResult:
    res = SuiteResult("hardy-field-axioms")
    n = _count(1000, scale)
    pool = [germ_of(G.rand_germ_expr(rng, 6)) for _ in range(n)]
    res.instances = n
    one = ONE_GERM
    for i, f in enumerate(pool):
        g, h = rng.choice(pool), rng.choice(pool)
        tag = f"[{f.rf}], [{g.rf}], [{h.rf}]"
        res.check(add(add(f, g), h) == add(f, add(g, h)), f"add not associative: {tag}")
        res.check(add(f, g) == add(g, f), f"add not commutative: {tag}")
        res.check(mul(mul(f, g), h) == mul(f, mul(g, h)), f"mul not associative: {tag}")
        res.check(mul(f, g) == mul(g, f), f"mul not commutative: {tag}")
        res.check(mul(f, add(g, h)) == add(mul(f, g), mul(f, h)), f"not distributive: {tag}")
        res.check(add(f, ZERO_GERM) == f and mul(f, one) == f, f"identity failed: [{f.rf}]")
        res.check(add(f, neg(f)).is_zero(), f"no additive inverse: [{f.rf}]")

        if f.is_zero():
            try:
                invert(f)
                res.check(False, "invert accepted the zero germ")
            except ZeroGermError:
                res.check(True, "")
        else:
            inv = invert(f)
            res.check(mul(f, inv) == one, f"f * invert(f) != 1 for [{f.rf}]")
            # the inverse's representative is really 1/f past its witness
            x0 = _beyond(inv.witness)
            fx, ix = evaluate(f.representative, x0), evaluate(inv.representative, x0)
            res.check(abs(fx * ix - 1.0) <= 1e-9, f"invert representative wrong at {x0} for [{f.rf}]")

        res.check(
            derive(mul(f, g)) == add(mul(derive(f), g), mul(f, derive(g))),
            f"Leibniz failed: {tag}",
        )
        res.check(derive(add(f, g)) == add(derive(f), derive(g)), f"derive not additive: {tag}")

        s = eventual_sign(f)
        res.check(s in EventualSign, f"sign not trichotomous: [{f.rf}]")
        res.check((s is EventualSign.ZERO) == f.is_zero(), f"sign zero mismatch: [{f.rf}]")
        res.check(eventual_sign(neg(f)).value == -s.value, f"sign(-f) != -sign(f): [{f.rf}]")
        # oracle: exact value of the rational tail past all of its roots and poles
        x0 = _beyond(
            f.witness,
            max_root_bound(f.rf.p) if len(f.rf.p) > 1 else NEG_INF,
        )
        val = f.rf(x0) if not f.is_zero() else Fraction(0)
        res.check((val > 0) - (val < 0) == s.value, f"sign disagrees with value at {x0}: [{f.rf}]")
        rv = evaluate(f.representative, x0)
        res.check((rv > 0) - (rv < 0) == s.value, f"representative sign disagrees at {x0}: [{f.rf}]")

        res.check(dominates(f, f), f"dominance not reflexive: [{f.rf}]")
        res.check(dominates(f, g) or dominates(g, f), f"dominance not total: {tag}")
        if dominates(f, g) and dominates(g, h):
            res.check(dominates(f, h), f"dominance not transitive: {tag}")
        res.check(le(f, g) or le(g, f), f"le not total: {tag}")
        if le(f, g) and le(g, f):
            res.check(f == g, f"le not antisymmetric: {tag}")
        if le(f, g):
            res.check(le(add(f, h), add(g, h)), f"le not additive: {tag}")
            if le(g, h):
                res.check(le(f, h), f"le not transitive: {tag}")
        if le(ZERO_GERM, f) and le(ZERO_GERM, g):
            res.check(le(ZERO_GERM, mul(f, g)), f"positive cone not closed under mul: {tag}")
    return res


# -- 2. zero sets of extensions by zero -----------------------------------------


def _dichotomy_instance(rng: random.Random):
    """(f, c, gated) with f in the class on (c, +inf)."""
    tail = RationalFunc.const(0) if rng.random() < 0.15 else G.rand_rf(rng, 5, zero_rate=0)
    poles = max_root_bound(tail.q) if len(tail.q) > 1 else NEG_INF
    c = G.rand_rat(rng, -4, 4)
    if poles != NEG_INF:
        c = max(c, Fraction(math.ceil(poles)))
    body = N.rational(tail)
    kind = rng.random()
    if kind < 0.35:
        d = c + Fraction(rng.randint(1, 8), 2)
        head = N.rational(G.rand_pole_free_rf(rng, 3))
        body = N.piecewise([(NEG_INF, head), (d, body)])
    elif kind < 0.5:
        return N.add(body, N.mul(N.const(G.rand_int(rng, nonzero=True)), G.rand_bump(rng))), c, True, tail
    return body, c, False, tail


def zero_set_dichotomy(rng: random.Random, scale: float = 1.0, opts: dict | None = None) -> SuiteResult:
    res = SuiteResult("zero-set-dichotomy")
    n = _count(500, scale)
    res.instances = n
    structural = 0
    for _ in range(n):
        f, c, gated, tail = _dichotomy_instance(rng)
        tag = f"f={f}, c={c}"
        # oracle for the eventual sign: exact value past every root and pole
        if tail.is_zero():
            expect = 0
        else:
            x0 = _beyond(c, max_root_bound(tail.p) if len(tail.p) > 1 else NEG_INF,
                         max_root_bound(tail.q) if len(tail.q) > 1 else NEG_INF)
            v = tail(x0)
            expect = (v > 0) - (v < 0)
        verdict = ominimal_dichotomy(f, c)
        res.check(verdict.sign == expect, f"dichotomy {verdict.value} but sign {expect}: {tag}")
        res.check(eventual_sign(germ_of(f)).value == expect, f"eventual_sign disagrees: {tag}")
        if gated:
            continue
        structural += 1
        ext = extend_by_zero(f, c)
        desc = unary_components(ext)
        lefts = [k for k in desc.components if k.lo == NEG_INF]
        res.check(len(lefts) == 1, f"expected one left ray, got {desc}: {tag}")
        if lefts:
            res.check(lefts[0].hi >= c, f"left ray stops before the cutoff: {desc}: {tag}")
        others = [k for k in desc.components if k.lo != NEG_INF]
        if tail.is_zero():
            res.check(desc.has_right_ray or desc.is_full_line, f"eventually zero but no right ray: {tag}")
        else:
            res.check(not desc.has_right_ray, f"right ray for a nonzero tail: {desc}: {tag}")
            res.check(all(k.kind == "point" for k in others), f"bounded interval component: {desc}: {tag}")
        # membership against exact evaluation at rational sample points
        for _ in range(20):
            x = c + Fraction(rng.randint(-40, 200), rng.choice((1, 3, 8)))
            fx = Fraction(0) if x <= c else evaluate_exact(f, x)
            res.check((fx == 0) == desc.contains(x), f"membership wrong at {x}: {desc}: {tag}")
        for k in others:
            if k.kind == "point" and k.root.exact is not None:
                res.check(evaluate_exact(f, k.root.lo) == 0, f"reported zero {k.root.lo} is not a zero: {tag}")
    res.metrics["structural_instances"] = structural
    return res


# -- 3. Sturm against a sign scan ------------------------------------------------


def _scan_roots(sqf: tuple, step: float = 1e-4):
    """Roots of a square-free polynomial by sign changes on a uniform grid.

    Float signs are trusted only above a rounding bound; below it the sign is
    recomputed exactly at the grid point.  Returns (count, brackets).
    """
    coeffs = [float(c) for c in sqf]
    deg = len(coeffs) - 1
    lead = abs(coeffs[-1])
    # Cauchy bound, and the tighter Fujiwara bound; both are valid
    cauchy = float(cauchy_bound(sqf))
    fujiwara = 2 * max((abs(coeffs[deg - k]) / lead) ** (1.0 / k) for k in range(1, deg + 1))
    r = min(cauchy, fujiwara) + step
    xs = np.arange(-r, r + step, step)
    vals = np.zeros_like(xs)
    mags = np.zeros_like(xs)
    ax = np.abs(xs)
    for c in reversed(coeffs):
        vals = vals * xs + c
        mags = mags * ax + abs(c)
    signs = np.sign(vals)
    doubt = np.abs(vals) <= 4 * (deg + 1) * np.finfo(float).eps * mags
    for i in np.nonzero(doubt)[0]:
        v = d_eval(sqf, Fraction(float(xs[i])))
        signs[i] = (v > 0) - (v < 0)
    count = 0
    brackets = []
    last, last_x = 0, None
    for i, s in enumerate(signs):
        if s == 0:
            count += 1
            brackets.append((xs[i], xs[i]))
            last = 0
        elif last and s != last:
            count += 1
            brackets.append((last_x, xs[i]))
            last, last_x = s, xs[i]
        else:
            last, last_x = s, xs[i]
    return count, brackets, r


def _sympy_rational_roots(p: Poly) -> set:
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(p.dense()))
    _, factors = sympy.factor_list(sympy.Poly(expr, x, domain="QQ"))
    out = set()
    for fac, _mult in factors:
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            root = -sympy.Rational(b) / sympy.Rational(a)
            out.add(Fraction(int(root.p), int(root.q)))
    return out


def _rand_sturm_poly(rng: random.Random) -> Poly:
    if rng.random() < 0.4:
        # force rational and repeated roots
        p = Poly.const(G.rand_int(rng, -3, 3, nonzero=True))
        for _ in range(rng.randint(1, 4)):
            num, den = rng.randint(-4, 4), rng.randint(1, 3)
            p = p * Poly.from_coeffs([-num, den]) ** rng.randint(1, 2)
        while p.degree() > 8:
            p = Poly.from_coeffs(p.dense()[1:])
        if p.degree() < 8 and rng.random() < 0.5:
            extra = G.rand_unary_poly(rng, 8 - p.degree(), coeff=5)
            p = p * extra
        return p
    deg = rng.randint(1, 8)
    cs = [G.rand_int(rng) for _ in range(deg)] + [G.rand_int(rng, nonzero=True)]
    return Poly.from_coeffs(cs)


def sturm_oracle(rng: random.Random, scale: float = 1.0, opts: dict | None = None) -> SuiteResult:
    res = SuiteResult("sturm-oracle")
    n = _count(200, scale)
    res.instances = n
    for _ in range(n):
        p = _rand_sturm_poly(rng)
        if p.degree() < 1:
            p = p * Poly.from_coeffs([1, 1])
        dense = p.dense()
        ivs = sturm_isolate(dense)
        sqf = d_sqf(dense)
        count, brackets, r = _scan_roots(sqf)
        res.check(len(ivs) == count, f"{len(ivs)} isolated roots but scan found {count}: {p}")
        for lo, hi in brackets:
            hit = [iv for iv in ivs if iv.lo <= Fraction(float(hi)) and Fraction(float(lo)) <= iv.hi]
            res.check(bool(hit), f"scan root in [{lo}, {hi}] not isolated: {p}")
        exact = {iv.exact for iv in ivs if iv.exact is not None}
        res.check(exact == _sympy_rational_roots(p), f"rational roots {sorted(exact)} differ from factorization: {p}")
        for a, b in zip(ivs, ivs[1:]):
            res.check(a.hi <= b.lo, f"isolating intervals overlap: {p}")
    return res


# -- 4. partitions of unity -------------------------------------------------------


def _covers_window(cover, m1, m2) -> bool:
    """Exact: every point of [m1, m2] lies in some open element."""
    x = Fraction(m1)
    while x <= m2:
        best = None
        for u in cover:
            if u.contains(x) and (best is None or u.hi > best):
                best = u.hi
        if best is None:
            return False
        if best == POS_INF or best > m2:
            return True
        x = best
    return True


def partition_windows(rng: random.Random, scale: float = 1.0, opts: dict | None = None) -> SuiteResult:
    res = SuiteResult("partition-of-unity")
    opts = opts or {}
    n = _count(50, scale)
    grid = int(opts.get("grid", 10_000))
    tol = float(opts.get("tol", 1e-12))
    res.instances = n
    worst = 0.0
    for k in range(n):
        if opts.get("window"):
            m1, m2 = (int(w) for w in opts["window"])
        else:
            m1 = rng.randint(-5, 4)
            m2 = rng.randint(m1 + 1, 5)
        cover = G.rand_cover(rng, (m1, m2))
        pou = partition_of_unity(cover, (m1, m2))
        cert = pou.certify(grid=grid, tol=tol)
        worst = max(worst, cert.sum_error)
        tag = f"window [{m1}, {m2}], cover {[str(u) for u in cover]}"
        res.check(cert.sum_error <= tol, f"sum error {cert.sum_error:.2e}: {tag}")
        res.check(cert.supports_contained, f"support escapes its cover element: {tag}")
        res.check(cert.zero_outside_support, f"member nonzero outside support: {tag}")
        res.check(cert.max_overlap <= cert.overlap_bound, f"overlap {cert.max_overlap} > {cert.overlap_bound}: {tag}")
        res.check(all(m.support[0] < m.support[1] for m in pou.members), f"degenerate support: {tag}")
        res.check(not cert.failures, f"{cert.failures[:3]}: {tag}")
        # compact supports: every member vanishes near the window ends' neighbours
        res.check(
            all(NEG_INF < m.support[0] and m.support[1] < POS_INF for m in pou.members),
            f"unbounded support: {tag}",
        )
        if k % 5 == 0:
            # a cover with a hole must be rejected, and only when it really has one
            holed = [u for u in cover if not (u.lo < Fraction(m1 + m2, 2) < u.hi)] or cover[:1]
            try:
                partition_of_unity(holed, (m1, m2))
                res.check(_covers_window(holed, m1, m2), f"accepted a non-cover: {holed}")
            except CoverageError:
                res.check(not _covers_window(holed, m1, m2), f"rejected a genuine cover: {holed}")
    res.metrics["worst_sum_error"] = worst
    return res


# -- 5. smooth extension -----------------------------------------------------------


def _seams(F: ClosedSet, data, ext) -> tuple[list, list]:
    """Structural seams and the interior gate switch points.

    Structural seams are the ends of F and of the neighbourhoods and the
    breakpoints of the glue.  Gate switch points are the bump support and
    plateau ends that are not structural seams.
    """
    pts = set(F.finite_ends())
    for u, _ in data:
        pts.update(u.finite_ends())
    structural = {float(p) for p in pts} | set(seam_points(ext, gates=False))
    gates = set(seam_points(ext)) - structural
    return sorted(structural), sorted(gates)


def smooth_extension(rng: random.Random, scale: float = 1.0, opts: dict | None = None) -> SuiteResult:
    res = SuiteResult("smooth-extension")
    opts = opts or {}
    n = _count(50, scale)
    grid = int(opts.get("grid", 2000))
    tol = float(opts.get("tol", 1e-14))
    res.instances = n
    worst = 0.0
    fd = {"seam_reports": 0, "seam_pairs_checked": 0, "gate_reports": 0, "gate_pairs_checked": 0,
          "gate_coarse_pair_misses": 0}
    for _ in range(n):
        F, data = G.rand_closed_set_and_data(rng)
        tag = f"F={F}, data={[(str(u), str(f)) for u, f in data]}"
        ext = tietze_extend(F, data)
        err = agreement_error(ext, F, data, grid=grid)
        worst = max(worst, err)
        res.check(err <= tol, f"agreement error {err:.2e}: {tag}")
        seams, gates = _seams(F, data, ext)
        for rep in smoothness_reports(ext, seams):
            fd["seam_reports"] += 1
            fd["seam_pairs_checked"] += rep.checked
            res.check(rep.ok, f"no h^2 convergence at seam x={rep.x} order {rep.order}, ratios {rep.ratios}: {tag}")
        for rep in smoothness_reports(ext, gates):
            fd["gate_reports"] += 1
            fd["gate_pairs_checked"] += rep.checked
            fine = [r for r in rep.ratios[1:] if r is not None]
            if rep.ratios[0] is not None and rep.ratios[0] < 100 / rep.factor:
                fd["gate_coarse_pair_misses"] += 1
            res.check(
                all(r >= 100 / rep.factor for r in fine),
                f"no h^2 convergence below h=1e-2 at gate point x={rep.x} order {rep.order}, ratios {rep.ratios}: {tag}",
            )

        # extension past a cutoff is exact beyond it
        rf = G.rand_rf(rng, 4, zero_rate=0)
        poles = max_root_bound(rf.q) if len(rf.q) > 1 else NEG_INF
        b = G.rand_rat(rng, -3, 3) if poles == NEG_INF else Fraction(math.ceil(poles)) + G.rand_rat(rng, 0, 2)
        c = b + Fraction(rng.randint(1, 8), 4)
        g = N.rational(rf)
        ext_g = extend_beyond(g, b, c)
        first = float(c)
        while Fraction(first) <= c:
            first = math.nextafter(first, math.inf)
        xs = np.array([first] + [float(c) + rng.uniform(0, 30) for _ in range(200)])
        xs = xs[[Fraction(float(x)) > c for x in xs]]
        exact = np.array_equal(evaluate_array(ext_g, xs), evaluate_array(g, xs))
        res.check(exact, f"extend_beyond differs from g past c={c}: g={g}, b={b}")
        q = [c + Fraction(rng.randint(1, 400), 16) for _ in range(10)]
        res.check(all(evaluate(ext_g, x) == evaluate(g, x) for x in q), f"extend_beyond differs from g at rationals: g={g}")
        for rep in smoothness_reports(ext_g, [float(b), float((b + c) / 2), float(c)]):
            fd["seam_reports"] += 1
            fd["seam_pairs_checked"] += rep.checked
            res.check(rep.ok, f"extend_beyond not smooth at x={rep.x} order {rep.order}, ratios {rep.ratios}: g={g}, b={b}, c={c}")
    res.metrics.update(worst_agreement=worst, **fd)
    return res


# -- 6. the embedding into the quotient ring -------------------------------------------


def _total_args(rng, n):
    return [QuotientElem(G.rand_total_expr(rng)) for _ in range(n)]


def quotient_embedding(rng: random.Random, scale: float = 1.0, opts: dict | None = None) -> SuiteResult:
    res = SuiteResult("quotient-embedding")
    n_pairs = _count(500, scale)
    n_had = _count(200, scale)
    res.instances = n_pairs + n_had
    unit = QuotientElem(N.ONE)
    res.check(embed_T(ONE_GERM) == unit, "T([1]) != 1 + I")
    res.check(embed_T(germ_of(N.ONE)) == unit, "T of the parsed unit != 1 + I")
    for _ in range(n_pairs):
        f = germ_of(G.rand_germ_expr(rng, 4))
        g = germ_of(G.rand_germ_expr(rng, 4) if rng.random() > 0.1 else G.rand_ideal_member(rng))
        tf, tg = embed_T(f), embed_T(g)
        tag = f"[{f.rf}], [{g.rf}]"
        res.check(embed_T(add(f, g)) == tf + tg, f"T not additive: {tag}")
        res.check(embed_T(mul(f, g)) == tf * tg, f"T not multiplicative: {tag}")
        res.check(tg.is_zero() == g.is_zero(), f"kernel mismatch for [{g.rf}]")
        res.check((tf == tg) == (f == g), f"T not injective: {tag}")
        res.check(tf.rf == f.rf, f"T changed the tail of [{f.rf}]")
        if not f.is_zero():
            res.check(tf * embed_T(invert(f)) == unit, f"no inverse in the image for [{f.rf}]")

    for _ in range(n_had):
        nv = rng.randint(1, 3)
        f = G.rand_multi_poly(rng, nv, max_deg=4)
        w = hadamard(f)
        res.check(w.verify(), f"Hadamard identity fails symbolically for {f}")
        # and at an exact random point
        pt = [G.rand_rat(rng, -3, 3) for _ in range(2 * nv)]
        lhs = f(*pt[nv:]) - f(*pt[:nv])
        rhs = sum((pt[nv + i] - pt[i]) * g(*pt) for i, g in enumerate(w.gs))
        res.check(lhs == rhs, f"Hadamard identity fails at {pt} for {f}")

        args = _total_args(rng, nv)
        perts = [G.rand_ideal_member(rng) for _ in range(nv)]
        res.check(well_defined(f, args, perts), f"Phi_f depends on representatives: {f}")
        moved = [QuotientElem(N.add(a.rep, p)) for a, p in zip(args, perts)]
        v1, v2 = phi(f, args), phi(f, moved)
        x0 = _beyond(*(ideal_witness(p) for p in perts))
        a, b = evaluate(v1.rep, x0), evaluate(v2.rep, x0)
        res.check(abs(a - b) <= 1e-9 * max(1.0, abs(a)), f"Phi values differ numerically past {x0}: {f}")

        # composition law on the polynomial fragment
        inner = [G.rand_multi_poly(rng, nv, max_deg=2, terms=3) for _ in range(nv)]
        composed = f.substitute(inner)
        lhs_c = phi(composed, args)
        rhs_c = phi(f, [phi(h, args) for h in inner])
        res.check(lhs_c == rhs_c, f"composition law fails for {f} o {[str(h) for h in inner]}")
        proj = rng.randrange(nv)
        res.check(phi(Poly.var(proj, nv), args) == args[proj], "projection law fails")
    return res


# -- 7. weak structure -----------------------------------------------------------------


_COORDS = [Fraction(k, 2) for k in range(-4, 5)]


def _rand_factors(rng: random.Random, m: int) -> list[Poly]:
    """Simple factors, so that zeros are common on the sample grid."""
    out = []
    for _ in range(rng.randint(1, 3)):
        i = rng.randrange(m)
        kind = rng.random()
        if kind < 0.5 or m == 1:
            fac = Poly.var(i, m) - Poly.const(rng.choice(_COORDS), m)
        elif kind < 0.8:
            j = rng.randrange(m)
            fac = Poly.var(i, m) - Poly.var(j, m) if j != i else Poly.var(i, m)
        else:
            fac = Poly.var(i, m) * Poly.var(i, m) + Poly.const(1, m)  # never zero
        out.append(fac)
    return out


def _product(rng: random.Random, factors: list[Poly], m: int) -> Poly:
    p = Poly.const(G.rand_int(rng, 1, 3), m)
    for fac in factors:
        p = p * fac
    return p


def _rand_point(rng: random.Random, m: int) -> tuple:
    return tuple(rng.choice(_COORDS) if rng.random() < 0.9 else G.rand_rat(rng, -3, 3, dens=(3, 5)) for _ in range(m))


def weak_structure(rng: random.Random, scale: float = 1.0, opts: dict | None = None) -> SuiteResult:
    res = SuiteResult("weak-structure")
    n_pts = _count(10_000, scale)
    sets = 0
    for m, group in ((m, g) for m in (1, 2, 3) for g in range(2)):
        fa = _rand_factors(rng, m)
        fb = _rand_factors(rng, m)
        if rng.random() < 0.7:
            fb[0] = rng.choice(fa)  # shared factor, so A and B meet
        a = SymbolicZeroSet(_product(rng, fa, m))
        b = SymbolicZeroSet(_product(rng, fb, m))
        c = SymbolicZeroSet(_product(rng, _rand_factors(rng, 2), 2))
        sigma = list(range(1, m + 1))
        rng.shuffle(sigma)
        inter, prod, perm = ws_intersect(a, b), ws_product(a, c), ws_permute(a, sigma)
        sets += 4
        hits = {"base": 0, "inter": 0, "prod": 0, "perm": 0}
        direct = a.poly
        for _ in range(n_pts):
            z = _rand_point(rng, m)
            w = _rand_point(rng, 2)
            in_a, in_b, in_c = a.contains(z), b.contains(z), c.contains(w)
            res.check(in_a == (direct(*z) == 0), f"base membership wrong at {z} for {a}")
            res.check(inter.contains(z) == (in_a and in_b), f"intersection wrong at {z}: {a}, {b}")
            res.check(prod.contains(z + w) == (in_a and in_c), f"product wrong at {z + w}: {a} x {c}")
            # sigma(A) holds sigma . z exactly when z in A, with (sigma . z)_{sigma(i)} = z_i
            moved = [None] * m
            for i, s in enumerate(sigma):
                moved[s - 1] = z[i]
            res.check(perm.contains(moved) == in_a, f"permutation {sigma} wrong at {moved} for {a}")
            res.check(apply_inverse(sigma, moved) == z, f"apply_inverse is not the inverse for {sigma}")
            hits["base"] += in_a
            hits["inter"] += in_a and in_b
            hits["prod"] += in_a and in_c
            hits["perm"] += perm.contains(moved)
        res.metrics[f"arity{m}_group{group}_members"] = hits
    res.instances = sets
    res.metrics["points_per_set"] = n_pts
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "hardy-field-axioms": hardy_field_axioms,
    "zero-set-dichotomy": zero_set_dichotomy,
    "sturm-oracle": sturm_oracle,
    "partition-of-unity": partition_windows,
    "smooth-extension": smooth_extension,
    "quotient-embedding": quotient_embedding,
    "weak-structure": weak_structure,
}


def run_suite(name: str, *, seed: int = 0, scale: float = 1.0, opts: dict | None = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    rng = random.Random(f"{name}:{seed}")
    t0 = time.perf_counter()
    res = SUITES[name](rng, scale, opts or {})
    res.elapsed = time.perf_counter() - t0
    return res
