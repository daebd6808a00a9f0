"""Property-based checks with hypothesis, complementing the seeded suites."""

from fractions import Fraction as Fr

import numpy as np
import sympy
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from smoothgerms import germfield as GF
from smoothgerms.expr import evaluate_array, evaluate_exact, parse, to_text
from smoothgerms.expr import nodes as N
from smoothgerms.poly import Poly, RationalFunc, d_eval
from smoothgerms.smoothkit import BumpSpec, CoverageError, CoverElement, bump, partition_of_unity
from smoothgerms.zeroset import count_real_roots, sturm_isolate, unary_components

settings.register_profile("ci", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")

small = st.integers(-6, 6)
rats = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polys(draw, max_deg=6):
    cs = draw(st.lists(small, min_size=1, max_size=max_deg + 1))
    return Poly.from_coeffs(cs)


@st.composite
def nonzero_polys(draw, max_deg=6):
    p = draw(polys(max_deg))
    assume(not p.is_zero())
    return p


@st.composite
def rfs(draw):
    return RationalFunc.from_polys(draw(polys()), draw(nonzero_polys(4)))


def germ(rf):
    return GF.germ_of(N.rational(rf))


@given(rfs(), rfs(), rfs())
def test_field_laws(a, b, c):
    f, g, h = germ(a), germ(b), germ(c)
    assert (f + g) + h == f + (g + h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    if not f.is_zero():
        assert f * GF.invert(f) == GF.ONE_GERM


@given(rfs(), rfs())
def test_leibniz(a, b):
    f, g = germ(a), germ(b)
    assert GF.derive(f * g) == GF.derive(f) * g + f * GF.derive(g)


@given(rfs(), rfs())
def test_order_is_compatible_with_addition(a, b):
    f, g = germ(a), germ(b)
    assert GF.le(f, g) or GF.le(g, f)
    if GF.le(f, g):
        assert GF.le(f + germ(b), g + germ(b))


@given(rfs(), rfs())
def test_dominance_total(a, b):
    f, g = germ(a), germ(b)
    assert GF.dominates(f, g) or GF.dominates(g, f)


@given(nonzero_polys(8))
def test_sturm_count_matches_sympy(p):
    x = sympy.Symbol("x")
    sp = sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(p.dense())), x)
    distinct = len(set(sympy.real_roots(sp))) if sp.degree() > 0 else 0
    assert count_real_roots(p) == distinct
    roots = sturm_isolate(p)
    assert all(a.hi <= b.lo for a, b in zip(roots, roots[1:]))
    for iv in roots:
        if iv.exact is not None:
            assert p(iv.exact) == 0


@given(nonzero_polys(5), st.lists(rats, min_size=1, max_size=20))
def test_components_membership(p, pts):
    desc = unary_components(p)
    for z in pts:
        assert desc.contains(z) == (p(z) == 0)


@given(rats, st.fractions(min_value=Fr(1, 8), max_value=2, max_denominator=8), st.fractions(min_value=Fr(1, 8), max_value=2, max_denominator=8))
def test_bump_range(q, a, gap):
    spec = BumpSpec(q, a, a + gap)
    b = bump(spec)
    xs = np.linspace(float(q - 2 * spec.b), float(q + 2 * spec.b), 257)
    vals = evaluate_array(b, xs)
    assert np.all((vals >= 0) & (vals <= 1))
    inside = (xs >= float(q - a)) & (xs <= float(q + a))
    outside = (xs <= float(q - spec.b)) | (xs >= float(q + spec.b))
    assert np.all(vals[inside] == 1.0) and np.all(vals[outside] == 0.0)


@given(st.lists(st.tuples(rats, st.fractions(min_value=Fr(1, 4), max_value=3, max_denominator=4)), min_size=1, max_size=6))
def test_partition_sums_to_one_or_reports_gap(raw):
    cover = [CoverElement(c - r, c + r) for c, r in raw]
    lo = min(int(np.floor(float(u.lo))) for u in cover)
    # a gap in the window must raise CoverageError; any other error fails the test
    try:
        pou = partition_of_unity(cover, (lo + 1, lo + 3))
    except CoverageError:
        return
    cert = pou.certify(grid=500)
    assert cert.ok, cert.failures


@given(rfs())
def test_print_parse_round_trip(rf):
    e = N.rational(rf)
    assert parse(to_text(e)).rf == rf


@given(rfs(), rats)
def test_exact_eval_matches_rf(rf, z):
    assume(d_eval(rf.q, z) != 0)
    assert evaluate_exact(N.rational(rf), z) == rf(z)
