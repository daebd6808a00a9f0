import math
from fractions import Fraction as Fr

import numpy as np
import pytest

from smoothgerms.expr import (
    X,
    DomainViolation,
    OutOfClassError,
    ParseError,
    differentiate,
    evaluate,
    evaluate_array,
    evaluate_exact,
    eventual_form,
    gate,
    parse,
    parse_poly,
    to_text,
)
from smoothgerms.expr import nodes as N
from smoothgerms.poly import RationalFunc


def test_parse_polynomial_literal():
    e = parse("x^2 - 3*x")
    assert isinstance(e, N.RFun)
    assert e.rf.num.coeff_map() == {2: 1, 1: -3}


def test_parse_rational():
    e = parse("(x-1)/(x+1)")
    assert str(e.rf.num) == "x - 1"
    assert str(e.rf.den) == "x + 1"


def test_parse_bump_is_gate_based():
    e = parse("bump(x; 0, 1, 2)")
    assert any(isinstance(n, N.Gate) for n in N.walk(e))
    assert evaluate(e, 0) == 1.0
    assert evaluate(e, 2) == 0.0


@pytest.mark.parametrize(
    "text,exc",
    [
        ("x+", ParseError),
        ("foo(x)", ParseError),
        ("(x", ParseError),
        ("bump(x; 0, 2, 1)", ParseError),
        ("x^1.5", OutOfClassError),
        ("exp(x)", OutOfClassError),
    ],
)
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse(text)


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as info:
        parse("x + * 2")
    assert info.value.position == 4


def test_poly_mode_arity():
    p = parse_poly("x1*x2 + 3")
    assert p.nvars == 2
    with pytest.raises(ParseError):
        parse_poly("x1*x2", 1)


@pytest.mark.parametrize(
    "text",
    ["x^2 - 3*x", "(x - 1)/(x + 1)", "bump(x; 1/2, 1, 2)", "piecewise(-inf: 0, 1: x^2)", "domain((1)/(x); 0)", "gate(x; 2)"],
)
def test_print_parse_round_trip(text):
    e = parse(text)
    again = parse(to_text(e))
    xs = np.linspace(0.25, 3.5, 41)
    assert np.array_equal(evaluate_array(e, xs), evaluate_array(again, xs))


def test_evaluate_examples():
    assert evaluate(parse("x^2 - 3*x"), 2) == -2
    g = gate(X)
    assert evaluate(g, -1) == 0.0
    assert math.isclose(evaluate(g, 1), math.exp(-1), rel_tol=1e-15)


def test_evaluate_exact_rational():
    assert evaluate_exact(parse("(x-1)/(x+1)"), Fr(1, 3)) == Fr(-1, 2)
    with pytest.raises(TypeError):
        evaluate_exact(parse("bump(x; 0, 1, 2)"), 0)


def test_pole_is_a_domain_violation():
    with pytest.raises(DomainViolation):
        evaluate(parse("1/(x-1)"), 1)


def test_derivatives():
    assert differentiate(parse("x^2 - 3*x")).rf == parse("2*x - 3").rf
    assert differentiate(parse("1/x")).rf == parse("-1/x^2").rf


def test_gate_derivatives_vanish_at_switch():
    d = gate(X)
    for _ in range(3):
        d = differentiate(d)
        assert evaluate(d, 0) == 0.0
    xs = np.array([-1e-3, 1e-3])
    assert np.all(np.abs(evaluate_array(d, xs)) < 1e-100)


def test_array_matches_scalar():
    e = parse("bump(x; 0, 1, 2) * (x^3 - x) + piecewise(-inf: 0, 1: 1/x)")
    xs = np.linspace(-3, 3, 97)
    vals = evaluate_array(e, xs)
    assert all(vals[i] == evaluate(e, float(x)) for i, x in enumerate(xs))


def test_eventual_form_drops_compact_glue():
    ef = eventual_form(parse("x + bump(x; 0, 1, 2)"))
    assert ef.rf == RationalFunc.x()
    assert ef.threshold <= 2
    ef = eventual_form(parse("piecewise(-inf: 0, 1: x^2)"))
    assert ef.rf == parse("x^2").rf and ef.threshold == 1
