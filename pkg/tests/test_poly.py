from fractions import Fraction as Fr

import pytest
import sympy

from smoothgerms.poly import Poly, RationalFunc, d_gcd, fmt_bound

x = sympy.Symbol("x")


def to_sympy(rf: RationalFunc):
    num = sum(sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(rf.p))
    den = sum(sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(rf.q))
    return num / den


def test_from_coeffs_and_dense():
    p = Poly.from_coeffs([0, -3, 1])
    assert p.coeff_map() == {2: 1, 1: -3}
    assert p.degree() == 2
    assert p(2) == -2


def test_multivariate_eval_and_substitute():
    x1, x2 = Poly.var(0, 2), Poly.var(1, 2)
    f = x1 * x2 + x1 ** 2
    assert f(Fr(1, 2), 3) == Fr(7, 4)
    g = f.substitute([x2, x1])
    assert g(3, Fr(1, 2)) == Fr(7, 4)


def test_rational_cancels_to_monic_denominator():
    rf = RationalFunc.from_polys(Poly.from_coeffs([-2, 2]), Poly.from_coeffs([-3, 3]))  # (2x-2)/(3x-3)
    assert rf.q[-1] == 1
    assert rf == RationalFunc.const(Fr(2, 3))


@pytest.mark.parametrize(
    "a,b",
    [
        (([1, 1], [0, 1]), ([-1], [1, 1])),
        (([0, 0, 1], [1, 0, 1]), ([3, 2], [1, 0, 1])),
        (([5], [2, 0, 0, 1]), ([1, 1], [4, 0, 2])),
    ],
)
def test_field_ops_match_sympy(a, b):
    f = RationalFunc(tuple(map(Fr, a[0])), tuple(map(Fr, a[1])))
    g = RationalFunc(tuple(map(Fr, b[0])), tuple(map(Fr, b[1])))
    sf, sg = to_sympy(f), to_sympy(g)
    for ours, theirs in ((f + g, sf + sg), (f - g, sf - sg), (f * g, sf * sg), (f / g, sf / sg)):
        assert sympy.simplify(to_sympy(ours) - theirs) == 0
    assert sympy.simplify(to_sympy(f.derivative()) - sympy.diff(sf, x)) == 0


def test_sum_is_reduced():
    # 1/(x(x+1)) + 1/(x+1) = 1/x after cancellation
    f = RationalFunc((Fr(1),), (Fr(0), Fr(1), Fr(1)))
    g = RationalFunc((Fr(1),), (Fr(1), Fr(1)))
    s = f + g
    assert s.p == (Fr(1),) and s.q == (Fr(0), Fr(1))
    assert d_gcd(s.p, s.q) == (Fr(1),)


def test_growth_and_sign():
    rf = RationalFunc.from_polys(Poly.from_coeffs([0, 0, 100, -2]))
    assert rf.growth_order() == 3
    assert rf.leading_sign() == -1
    assert RationalFunc.const(0).leading_sign() == 0


def test_fmt_bound():
    assert fmt_bound(float("-inf")) == "-inf"
    assert fmt_bound(Fr(-3, 4)) == "-3/4"
    assert fmt_bound(Fr(6, 3)) == "2"
