import numpy as np
import pytest

from smoothgerms import quotient as Q
from smoothgerms.expr import evaluate_array, parse, parse_poly
from smoothgerms.germfield import ONE_GERM, germ_of
from smoothgerms.poly import Poly
from smoothgerms.zeroset import ArityError

E = Q.QuotientElem


@pytest.mark.parametrize("text,member", [("bump(x; 0, 1, 2)", True), ("x", False), ("0", True)])
def test_ideal_membership(text, member):
    assert Q.ideal_member(parse(text)) is member


def test_ideal_witness():
    assert Q.ideal_witness(parse("bump(x; 0, 1, 2)")) <= 2
    assert Q.ideal_witness(parse("x")) is None


def test_phi_examples():
    x, minus_x = E("x"), E("-x")
    assert Q.phi(parse_poly("x1 + x2"), [x, minus_x]).is_zero()
    prod = Q.phi(parse_poly("x1*x2"), [x, E("1/(1 + x^2)")])
    assert prod == E("x/(1 + x^2)")
    args = [E("x^2"), E("x + bump(x; 0, 1, 2)"), E("3")]
    for j in range(3):
        assert Q.phi(Poly.var(j, 3), args) is args[j]


def test_phi_arity():
    with pytest.raises(ArityError):
        Q.phi(parse_poly("x1*x2"), [E("x")])


def test_not_total():
    with pytest.raises(Q.NotTotalError):
        E("1/x")
    assert not Q.is_total(parse("domain(x; 0)"))
    assert Q.is_total(parse("1/(1 + x^2)"))


def test_congruence():
    a, b = E("x"), E("x + bump(x; 0, 1, 2)")
    assert a == b
    assert Q.congruence_witness(a, b) <= 2
    assert Q.congruence_witness(a, E("x + 1")) is None


@pytest.mark.parametrize(
    "text,nvars,expected",
    [("x1^2", 1, {"g1": "x1 + y1"}), ("x1*x2", 2, {"g1": "y2", "g2": "x1"}), ("5", 2, {"g1": "0", "g2": "0"})],
)
def test_hadamard_examples(text, nvars, expected):
    w = Q.hadamard(parse_poly(text, nvars))
    out = w.to_json()
    assert out["verified"]
    for k, v in expected.items():
        assert out[k] == v


def test_well_defined_under_perturbation():
    f = parse_poly("x1^2*x2 - 3*x2 + 1")
    args = [E("x"), E("1/(2 + x^2)")]
    bumps = [parse("bump(x; 1, 1, 2)"), parse("4*bump(x; -2, 1/2, 3/2)")]
    assert Q.well_defined(f, args, bumps)
    with pytest.raises(ValueError):
        Q.well_defined(f, args, [parse("x"), parse("0")])


def test_hadamard_difference_is_pointwise():
    f = parse_poly("x1*x2^2 + x1")
    a = [E("x"), E("x^2 - 1")]
    b = [E("x + bump(x; 0, 1, 2)"), E("x^2 - 1 - bump(x; 1, 1, 2)")]
    diff, diff_rf = Q.hadamard_difference(f, a, b)
    assert diff_rf.is_zero()
    xs = np.linspace(-3, 5, 81)
    fa = Q.phi(f, a).rep
    fb = Q.phi(f, b).rep
    np.testing.assert_allclose(evaluate_array(diff, xs), evaluate_array(fb, xs) - evaluate_array(fa, xs), atol=1e-12)


def test_embedding():
    assert Q.embed_T(ONE_GERM) == E("1")
    t = Q.embed_T(germ_of("1/x"))
    assert Q.is_total(t.rep)
    assert t.rf == parse("1/x").rf
    xs = np.linspace(2, 30, 50)
    assert np.array_equal(evaluate_array(t.rep, xs), 1 / xs)
    f, g = germ_of("x^2 - 1"), germ_of("1/(x - 3)")
    assert Q.embed_T(f + g) == Q.embed_T(f) + Q.embed_T(g)
    assert Q.embed_T(f * g) == Q.embed_T(f) * Q.embed_T(g)
    assert not Q.embed_T(germ_of("1/x^5")).is_zero()
