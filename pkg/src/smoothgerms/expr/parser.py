"""Recursive-descent parser for the expression grammar.

Grammar (whitespace is insignificant)::

    expr      := term (("+" | "-") term)*
    term      := unary (("*" | "/") unary)*
    unary     := "-" unary | power
    power     := atom ("^" ["-"] INTEGER)?
    atom      := NUMBER | VAR | "(" expr ")" | call
    call      := "bump" "(" expr ";" num "," num "," num ")"
               | "step" "(" expr ";" num "," num ")"
               | "gate" "(" expr [";" INTEGER] ")"
               | "piecewise" "(" bp ":" expr ("," bp ":" expr)* ")"
               | "compose" "(" expr ";" expr ")"
               | "domain" "(" expr ";" num ")"
               | "diff" "(" expr ")"
    num       := ["-"] NUMBER ["/" NUMBER]
    bp        := "-inf" | num
    NUMBER    := decimal literal, e.g. 3, 0.25, 1.5e-3
    VAR       := "x" (unary mode) | "x1" ... "xn" (polynomial mode)

``parse`` builds unary expressions; ``parse_poly`` builds multivariate
polynomials from the polynomial fragment (no calls, constant divisors only).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..poly import NEG_INF, Poly
from . import nodes as N
from .nodes import OutOfClassError

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),;:]))"
)

_TRANSCENDENTAL = {"exp", "log", "ln", "sin", "cos", "tan", "sqrt", "abs", "sign", "atan", "sinh", "cosh"}


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append(Token(kind, m.group(kind), start))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, algebra: "_Algebra"):
        self.tokens = tokenize(text)
        self.i = 0
        self.alg = algebra

    # -- token helpers ----------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not (self.tok.kind == "op" and self.tok.text == text):
            found = self.tok.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", self.tok.pos)
        return self.advance()

    # -- grammar ----------------------------------------------------------
    def parse(self):
        value = self.expr()
        if self.tok.kind != "eof":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return value

    def expr(self):
        value = self.term()
        while True:
            if self.accept("+"):
                value = self.alg.add(value, self.term())
            elif self.accept("-"):
                value = self.alg.sub(value, self.term())
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            if self.accept("*"):
                value = self.alg.mul(value, self.unary())
            elif self.tok.kind == "op" and self.tok.text == "/":
                pos = self.advance().pos
                value = self.alg.div(value, self.unary(), pos)
            else:
                return value

    def unary(self):
        if self.accept("-"):
            return self.alg.neg(self.unary())
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            pos = self.advance().pos
            negative = self.accept("-")
            if self.tok.kind != "num" or not self.tok.text.isdigit():
                raise OutOfClassError(f"exponent must be an integer literal (position {self.tok.pos})")
            n = int(self.advance().text)
            base = self.alg.pow(base, -n if negative else n, pos)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return self.alg.const(Fraction(t.text))
        if t.kind == "op" and t.text == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        if t.kind == "name":
            self.advance()
            if self.tok.kind == "op" and self.tok.text == "(":
                return self.call(t)
            return self.alg.var(t)
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos)

    def number(self) -> Fraction:
        negative = self.accept("-")
        t = self.tok
        if t.kind != "num":
            raise ParseError(f"expected a number, found {t.text!r}", t.pos)
        self.advance()
        value = Fraction(t.text)
        if self.accept("/"):
            d = self.tok
            if d.kind != "num":
                raise ParseError(f"expected a denominator, found {d.text!r}", d.pos)
            self.advance()
            value /= Fraction(d.text)
        return -value if negative else value

    def breakpoint(self):
        if self.tok.kind == "op" and self.tok.text == "-":
            nxt = self.tokens[self.i + 1]
            if nxt.kind == "name" and nxt.text == "inf":
                self.i += 2
                return NEG_INF
        return self.number()

    def call(self, name: Token):
        fn = name.text
        if fn in _TRANSCENDENTAL:
            raise OutOfClassError(f"{fn} is not in the eventually-rational class (position {name.pos})")
        if fn not in _CALLS:
            raise ParseError(f"unknown function {fn!r}", name.pos)
        self.expect("(")
        if fn == "piecewise":
            pieces = []
            while True:
                bp = self.breakpoint()
                self.expect(":")
                pieces.append((bp, self.expr()))
                if not self.accept(","):
                    break
            self.expect(")")
            return self.alg.piecewise(pieces, name.pos)
        arg = self.expr()
        if fn == "diff":
            self.expect(")")
            return self.alg.diff(arg, name.pos)
        if fn == "gate":
            k = 0
            if self.accept(";"):
                t = self.tok
                if t.kind != "num" or not t.text.isdigit():
                    raise ParseError("gate order must be a non-negative integer", t.pos)
                k = int(self.advance().text)
            self.expect(")")
            return self.alg.gate(arg, k, name.pos)
        self.expect(";")
        if fn == "bump":
            q = self.number()
            self.expect(",")
            a = self.number()
            self.expect(",")
            b = self.number()
            self.expect(")")
            return self.alg.bump(arg, q, a, b, name.pos)
        if fn == "step":
            lo = self.number()
            self.expect(",")
            hi = self.number()
            self.expect(")")
            return self.alg.step(arg, lo, hi, name.pos)
        if fn == "compose":
            inner = self.expr()
            self.expect(")")
            return self.alg.compose(arg, inner, name.pos)
        if fn == "domain":
            a = self.number()
            self.expect(")")
            return self.alg.domain(arg, a, name.pos)
        raise AssertionError(fn)  # pragma: no cover


_CALLS = frozenset({"bump", "step", "gate", "piecewise", "compose", "domain", "diff"})


class _Algebra:
    pass


class _ExprAlgebra(_Algebra):
    add = staticmethod(N.add)
    sub = staticmethod(N.sub)
    mul = staticmethod(N.mul)
    neg = staticmethod(N.neg)
    const = staticmethod(N.const)

    def div(self, a, b, pos):
        try:
            return N.div(a, b)
        except ZeroDivisionError:
            raise ParseError("division by zero", pos) from None

    def pow(self, base, n, pos):
        try:
            return N.power(base, n)
        except ZeroDivisionError:
            raise ParseError("zero raised to a negative power", pos) from None

    def var(self, t: Token):
        if t.text == "x":
            return N.X
        if t.text == "inf":
            raise ParseError("inf is only allowed as a piecewise breakpoint", t.pos)
        raise ParseError(f"unknown variable {t.text!r} (unary expressions use x)", t.pos)

    def _guard(self, fn, pos, *args):
        try:
            return fn(*args)
        except (ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, (OutOfClassError, ParseError)):
                raise
            raise ParseError(str(exc), pos) from None

    def piecewise(self, pieces, pos):
        return self._guard(N.piecewise, pos, pieces)

    def diff(self, arg, pos):
        from .calculus import differentiate

        return differentiate(arg)

    def gate(self, arg, k, pos):
        return N.gate(arg, k)

    def bump(self, arg, q, a, b, pos):
        return self._guard(N.bump_of, pos, arg, q, a, b)

    def step(self, arg, lo, hi, pos):
        return self._guard(N.step_of, pos, arg, lo, hi)

    def compose(self, outer, inner, pos):
        return N.compose(outer, inner)

    def domain(self, arg, a, pos):
        return N.restrict(a, arg)


class _PolyAlgebra(_Algebra):
    _VAR = re.compile(r"[xy](\d+)$")

    def __init__(self, nvars: int | None):
        self.nvars = nvars
        self.seen = 0

    # polynomials are built lazily as {name-index: ...} once arity is known
    def const(self, c):
        return ("c", c)

    def var(self, t: Token):
        if t.text == "x":
            idx = 1
        else:
            m = self._VAR.match(t.text)
            if not m or t.text[0] != "x" or int(m.group(1)) < 1:
                raise ParseError(f"unknown variable {t.text!r} (use x1, x2, ...)", t.pos)
            idx = int(m.group(1))
        if self.nvars is not None and idx > self.nvars:
            raise ParseError(f"variable {t.text} exceeds arity {self.nvars}", t.pos)
        self.seen = max(self.seen, idx)
        return ("v", idx)

    def add(self, a, b):
        return ("+", a, b)

    def sub(self, a, b):
        return ("-", a, b)

    def mul(self, a, b):
        return ("*", a, b)

    def neg(self, a):
        return ("neg", a)

    def div(self, a, b, pos):
        return ("/", a, b, pos)

    def pow(self, base, n, pos):
        if n < 0:
            raise OutOfClassError(f"negative powers are not polynomial (position {pos})")
        return ("^", base, n)

    def _no_calls(self, *args):
        raise OutOfClassError("function calls are not allowed in polynomials")

    piecewise = diff = gate = bump = step = compose = domain = _no_calls

    def build(self, tree, n: int) -> Poly:
        kind = tree[0]
        if kind == "c":
            return Poly.const(tree[1], n)
        if kind == "v":
            return Poly.var(tree[1] - 1, n)
        if kind == "+":
            return self.build(tree[1], n) + self.build(tree[2], n)
        if kind == "-":
            return self.build(tree[1], n) - self.build(tree[2], n)
        if kind == "*":
            return self.build(tree[1], n) * self.build(tree[2], n)
        if kind == "neg":
            return -self.build(tree[1], n)
        if kind == "^":
            return self.build(tree[1], n) ** tree[2]
        if kind == "/":
            den = self.build(tree[2], n)
            if not den.is_constant():
                raise OutOfClassError(f"division by a non-constant is not polynomial (position {tree[3]})")
            if den.is_zero():
                raise ParseError("division by zero", tree[3])
            return self.build(tree[1], n) * Poly.const(1 / den.constant_term(), n)
        raise AssertionError(kind)


def parse(text: str) -> N.Expr:
    """Parse a unary expression into normal form.

    >>> parse("x^2 - 3*x").rf.num.coeff_map()
    {2: Fraction(1, 1), 1: Fraction(-3, 1)}
    """
    return _Parser(text, _ExprAlgebra()).parse()


def parse_poly(text: str, nvars: int | None = None) -> Poly:
    """Parse a polynomial in x1..xn (``x`` alone means x1).

    The arity is ``nvars`` if given, else the highest variable index seen.
    """
    alg = _PolyAlgebra(nvars)
    tree = _Parser(text, alg).parse()
    n = nvars if nvars is not None else max(alg.seen, 1)
    return alg.build(tree, n)
