"""Expression trees for the eventually-rational class with bump-gate glue."""

from .calculus import differentiate
from .evaluate import (
    GATE_CUTOFF,
    DomainViolation,
    EvaluationError,
    evaluate,
    evaluate_array,
    evaluate_exact,
    rounding_scale,
)
from .eventual import EventualForm, denominator_certificate, eventual_form, eventually_equal
from .nodes import (
    ONE,
    X,
    ZERO,
    Compose,
    Derivative,
    Domain,
    Expr,
    Gate,
    OutOfClassError,
    Piecewise,
    Product,
    Quotient,
    RFun,
    Sum,
    add,
    bump_of,
    compose,
    const,
    div,
    gate,
    is_zero,
    mul,
    neg,
    normalize,
    piecewise,
    power,
    rational,
    restrict,
    smooth_step_of,
    step_of,
    sub,
)
from .parser import ParseError, parse, parse_poly
from .printer import to_text

__all__ = [
    "GATE_CUTOFF", "ONE", "X", "ZERO",
    "Compose", "Derivative", "Domain", "DomainViolation", "EvaluationError", "EventualForm",
    "Expr", "Gate", "OutOfClassError", "ParseError", "Piecewise", "Product", "Quotient", "RFun", "Sum",
    "add", "bump_of", "compose", "const", "denominator_certificate", "differentiate", "div",
    "evaluate", "evaluate_array", "evaluate_exact", "rounding_scale", "eventual_form", "eventually_equal", "gate", "is_zero", "mul",
    "neg", "normalize", "parse", "parse_poly", "piecewise", "power", "rational", "restrict",
    "smooth_step_of", "step_of", "sub", "to_text",
]
