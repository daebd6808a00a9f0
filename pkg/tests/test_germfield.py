from fractions import Fraction as Fr

import pytest

from smoothgerms import germfield as GF
from smoothgerms.expr import evaluate, parse

G = GF.germ_of


def test_ring_examples():
    assert G("x") + G("-x") == GF.ZERO_GERM
    assert G("x") * G("1/x") == GF.ONE_GERM
    assert G("x^2 - 3*x") + G("3*x") == G("x^2")


def test_germ_equality_ignores_compact_glue():
    assert G("x + bump(x; 0, 1, 2)") == G("x")
    assert G("piecewise(-inf: 0, 5: x)") == G("x")


@pytest.mark.parametrize(
    "text,sign",
    [("-2*x^3 + 100*x^2", GF.EventualSign.NEGATIVE), ("(x-1)/(x+1)", GF.EventualSign.POSITIVE), ("0", GF.EventualSign.ZERO)],
)
def test_eventual_sign(text, sign):
    assert GF.eventual_sign(G(text)) is sign


def test_dominance_examples():
    assert GF.dominates(G("x"), G("x^2"))
    assert not GF.dominates(G("x^2"), G("x"))
    assert GF.dominates(G("0"), G("1"))


@pytest.mark.parametrize("b", [1, 10, 100])
def test_no_constant_makes_x_squared_dominated_by_x(b):
    # x^2 > b x at x = b + 1, and at every larger x
    for x in (b + 1, 10 * (b + 1), 1000 * (b + 1)):
        assert x * x > b * x


def test_same_growth():
    assert GF.same_growth(G("x"), G("2*x + 7"))
    assert not GF.same_growth(G("x"), G("x^2"))
    assert GF.same_growth(G("0"), G("0"))


def test_order():
    assert GF.le(G("x"), G("x^2"))
    assert not GF.le(G("x^2"), G("x"))
    f = G("(x^3 - 1)/(x + 2)")
    assert GF.le(f, f)


def test_invert_with_witness():
    inv = GF.invert(G("x^2 - 3*x"))
    assert inv.rf == parse("1/(x^2 - 3*x)").rf
    assert inv.witness >= 3
    for x in (3.5, 10.0, 1e6):
        assert evaluate(inv.representative, x) == pytest.approx(1 / (x * x - 3 * x), rel=1e-14)


def test_invert_zero():
    with pytest.raises(GF.ZeroGermError):
        GF.invert(G("0"))
    with pytest.raises(GF.ZeroGermError):
        GF.invert(G("bump(x; 0, 1, 2)"))


def test_derive():
    assert GF.derive(G("x^3 + bump(x; 0, 1, 2)")) == G("3*x^2")


def test_growth_order():
    assert GF.growth_order(G("(x^2+1)/x")) == 1
    assert GF.growth_order(G("1/x^2")) == -2
    assert GF.growth_order(G("0")) == float("-inf")


def test_compare_payload():
    out = GF.compare(G("x"), G("x^2"))
    assert out["relation"] == "precedes" and out["dominates"] is True
    assert set(out) >= {"lhs", "rhs", "relation", "witness_threshold"}
    assert GF.compare(G("x^2"), G("x"))["relation"] == "succeeds"
    assert GF.compare(G("3*x"), G("x + 1"))["relation"] == "same_growth"


def test_germ_witness_of_restricted_rep():
    f = G("domain(1/x; 0)")
    assert f.witness >= Fr(0)
