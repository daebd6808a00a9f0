from fractions import Fraction as Fr

import numpy as np
import pytest

from smoothgerms.expr import parse, parse_poly
from smoothgerms.poly import Poly
from smoothgerms.zeroset import (
    ArityError,
    Dichotomy,
    SymbolicZeroSet,
    ZeroPolynomialError,
    count_real_roots,
    extend_by_zero,
    extension_is_smooth,
    ominimal_dichotomy,
    real_roots_in,
    refine,
    sturm_isolate,
    unary_components,
    whole_space,
    ws_intersect,
    ws_permute,
    ws_product,
)

Z = SymbolicZeroSet.of


def sign_scan_count(coeffs, lo, hi, step=1e-4):
    xs = np.arange(lo, hi + step / 2, step)
    vals = np.polyval(coeffs[::-1], xs)
    s = np.sign(vals)
    return int(np.count_nonzero(s[:-1] * s[1:] < 0) + np.count_nonzero(s == 0))


def test_isolate_cubic():
    roots = sturm_isolate(parse_poly("x^3 - x"))
    assert [iv.exact for iv in roots] == [-1, 0, 1]


def test_isolate_empty():
    assert sturm_isolate(parse_poly("x^2 + 1")) == []


def test_isolate_quintic_matches_scan():
    p = parse_poly("x^5 - 4*x^3 + 2")
    inside = real_roots_in(p, -3, 3)
    assert len(inside) == sign_scan_count([2, 0, 0, -4, 0, 1], -3, 3)
    assert len(inside) == count_real_roots(p)


def test_zero_polynomial():
    with pytest.raises(ZeroPolynomialError):
        sturm_isolate(Poly.from_coeffs([]))


def test_refine_irrational():
    p = parse_poly("x^2 - 2")
    iv = refine(p, sturm_isolate(p)[1], Fr(1, 10**12))
    assert iv.hi - iv.lo <= Fr(1, 10**12)
    assert iv.lo ** 2 < 2 < iv.hi ** 2
    assert iv.exact is None


def test_repeated_root_is_one_interval():
    roots = sturm_isolate(parse_poly("(x - 1/2)^3 * (x + 2)"))
    assert [iv.exact for iv in roots] == [-2, Fr(1, 2)]


def test_intersection():
    a, b = Z("x1", 2), Z("x2", 2)
    ab = ws_intersect(a, b)
    assert ab.poly == parse_poly("x1^2 + x2^2")
    assert ab.contains((0, 0)) and not ab.contains((1, 0))
    assert ws_intersect(a, a).contains((0, 5)) == a.contains((0, 5))
    assert ws_intersect(Z("x - 1"), Z("x + 1")).is_empty_unary()
    with pytest.raises(ArityError):
        ws_intersect(Z("x1", 1), Z("x1", 2))


def test_product():
    zz = ws_product(Z("x1"), Z("x1"))
    assert zz.poly == parse_poly("x1^2 + x2^2")
    assert zz.contains((0, 0)) and not zz.contains((0, 1))


def test_permute():
    a = Z("x1 - x2^2")
    assert ws_permute(a, (1, 2)).poly == a.poly
    swapped = ws_permute(a, (2, 1))
    assert swapped.poly == parse_poly("x2 - x1^2")
    assert a.contains((1, 1)) and swapped.contains((1, 1))
    assert ws_permute(swapped, (2, 1)).poly == a.poly
    assert swapped.contains((2, 4)) and not swapped.contains((4, 2))
    with pytest.raises(ArityError):
        ws_permute(a, (1, 1))


def test_whole_space():
    assert whole_space(3).contains((Fr(1, 3), -7, 2))


def test_components_examples():
    assert unary_components(parse_poly("x^3 - x")).to_json()["points"] == ["-1", "0", "1"]
    line = unary_components(Poly.from_coeffs([]))
    assert line.is_full_line and len(line.components) == 1
    desc = unary_components(extend_by_zero(parse("x - 5"), 0))
    kinds = [(c.kind, c.to_json()["hi"]) for c in desc.components]
    assert kinds == [("left_ray", "0"), ("point", "5")]


def test_extend_by_zero():
    f = parse("x - 5")
    e = extend_by_zero(f, 0)
    assert e.breakpoints == [float("-inf"), 0]
    assert extend_by_zero(f, float("-inf")) is f
    assert extension_is_smooth(parse("1"), 0) is False
    assert extension_is_smooth(f, float("-inf")) is True
    assert extension_is_smooth(parse("bump(x; 3, 1, 2)"), 0) is None


@pytest.mark.parametrize(
    "text,c,verdict",
    [
        ("x^2 - 3*x", 0, Dichotomy.EVENTUALLY_POSITIVE),
        ("0", 1, Dichotomy.EVENTUALLY_ZERO),
        ("piecewise(-inf: x, 2: 0)", float("-inf"), Dichotomy.EVENTUALLY_ZERO),
        ("(1 - x)/(1 + x^2)", -4, Dichotomy.EVENTUALLY_NEGATIVE),
        ("x - bump(x; 10, 1, 2)", 0, Dichotomy.EVENTUALLY_POSITIVE),
    ],
)
def test_dichotomy(text, c, verdict):
    assert ominimal_dichotomy(parse(text), c) is verdict


def test_component_membership():
    desc = unary_components(parse("piecewise(-inf: 0, 1: x^2 - 4)"))
    assert desc.contains(Fr(-10)) and desc.contains(1) and desc.contains(2)
    assert not desc.contains(Fr(3, 2))
    assert not desc.has_right_ray
