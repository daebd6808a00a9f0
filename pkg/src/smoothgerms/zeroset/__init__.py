"""Real root isolation and the weak structure of polynomial zero-sets."""

from .sturm import (
    IsolatingInterval,
    ZeroPolynomialError,
    count_real_roots,
    max_root_bound,
    real_roots_in,
    refine,
    sturm_chain,
    sturm_isolate,
)
from .weak import ArityError, SymbolicZeroSet, whole_space, ws_intersect, ws_permute, ws_product
from .components import (
    Component,
    Dichotomy,
    ZeroSetDesc,
    expr_components,
    extend_by_zero,
    extension_is_smooth,
    ominimal_dichotomy,
    polynomial_components,
    unary_components,
)

__all__ = [
    "ArityError",
    "Component",
    "Dichotomy",
    "IsolatingInterval",
    "SymbolicZeroSet",
    "ZeroPolynomialError",
    "ZeroSetDesc",
    "count_real_roots",
    "expr_components",
    "extend_by_zero",
    "extension_is_smooth",
    "max_root_bound",
    "ominimal_dichotomy",
    "polynomial_components",
    "real_roots_in",
    "refine",
    "sturm_chain",
    "sturm_isolate",
    "unary_components",
    "whole_space",
    "ws_intersect",
    "ws_permute",
    "ws_product",
]
