"""Parse rational-function expressions in z.

Grammar (EBNF, whitespace insignificant, implicit multiplication allowed):

    rational  = expr [ "/" expr ] ;          (* single top-level division *)
    expr      = term { ("+" | "-") term } ;
    term      = unary { [ "*" ] unary } ;
    unary     = "-" unary | power ;
    power     = atom [ "^" INTEGER ] ;
    atom      = NUMBER | "z" | "(" expr ")" ;

Exponents must be non-negative integer literals, and division may appear only
once, outside any parentheses. When the denominator is written as a product of
powers of linear or irreducible quadratic polynomials, its factor structure is
extracted exactly so that inversion can bypass numeric root finding.
"""

from __future__ import annotations

import dataclasses
import math
import re
from dataclasses import dataclass

from .errors import ParseError
from .factorize import FactoredDenominator, LinearFactor, QuadraticFactor
from .pfe import RationalFunction
from .polynomial import Polynomial

_TOKEN_RE = re.compile(
    r"""
    (?P<number>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z]+)
  | (?P<op>[-+*/^()])
  | (?P<ws>\s+)
  | (?P<bad>.)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "number" | "z" | one of + - * / ^ ( ) | "end"
    value: object
    pos: int


def _line_col(text, pos):
    line = text.count("\n", 0, pos) + 1
    last_nl = text.rfind("\n", 0, pos)
    return line, pos - last_nl


def _error(text, pos, message, expected=()):
    line, col = _line_col(text, pos)
    return ParseError(message, line=line, column=col, expected=expected)


def tokenize(text):
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        if kind == "ws":
            continue
        if kind == "bad":
            raise _error(text, m.start(), f"unexpected character {m.group()!r}")
        if kind == "number":
            s = m.group()
            value = int(s) if re.fullmatch(r"\d+", s) else float(s)
            tokens.append(Token("number", value, m.start()))
        elif kind == "name":
            if m.group() != "z":
                raise _error(
                    text, m.start(), f"only variable 'z' is allowed, got {m.group()!r}"
                )
            tokens.append(Token("z", "z", m.start()))
        else:
            tokens.append(Token(m.group(), m.group(), m.start()))
    tokens.append(Token("end", None, len(text)))
    return tokens


# -- AST --------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: object
    span: tuple


@dataclass(frozen=True)
class Var:
    span: tuple


@dataclass(frozen=True)
class Neg:
    child: object
    span: tuple


@dataclass(frozen=True)
class Bin:
    op: str  # '+', '-', '*'
    left: object
    right: object
    span: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int
    span: tuple


_ATOM_START = ("number", "z", "(")


class _Parser:
    def __init__(self, text, tokens):
        self.text = text
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, expected=()):
        raise _error(self.text, self.peek().pos, message, expected)

    def parse(self):
        node = self.expr()
        if self.peek().kind != "end":
            self.fail(
                f"unexpected token {self.peek().value!r}",
                expected=("operator", "end of input"),
            )
        return node

    def expr(self):
        node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.next().kind
            rhs = self.term()
            node = Bin(op, node, rhs, (node.span[0], rhs.span[1]))
        return node

    def term(self):
        node = self.unary()
        while True:
            tok = self.peek()
            if tok.kind == "*":
                self.next()
                rhs = self.unary()
            elif tok.kind in _ATOM_START:
                rhs = self.unary()  # implicit multiplication, e.g. "2z"
            else:
                return node
            node = Bin("*", node, rhs, (node.span[0], rhs.span[1]))

    def unary(self):
        tok = self.peek()
        if tok.kind == "-":
            self.next()
            child = self.unary()
            return Neg(child, (tok.pos, child.span[1]))
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().kind != "^":
            return base
        self.next()
        tok = self.peek()
        if tok.kind == "-":
            raise _error(self.text, tok.pos, "negative exponent is not allowed")
        if tok.kind != "number":
            self.fail("exponent must be an integer literal", expected=("INTEGER",))
        if not isinstance(tok.value, int):
            raise _error(self.text, tok.pos, "non-integer exponent is not allowed")
        self.next()
        return Pow(base, tok.value, (base.span[0], tok.pos + len(str(tok.value))))

    def atom(self):
        tok = self.peek()
        if tok.kind == "number":
            self.next()
            return Num(tok.value, (tok.pos, tok.pos))
        if tok.kind == "z":
            self.next()
            return Var((tok.pos, tok.pos))
        if tok.kind == "(":
            self.next()
            node = self.expr()
            if self.peek().kind != ")":
                self.fail("missing closing parenthesis", expected=(")",))
            close = self.next()
            return dataclasses.replace(node, span=(tok.pos, close.pos))
        self.fail(
            f"unexpected token {tok.value!r}" if tok.kind != "end" else "unexpected end of input",
            expected=("NUMBER", "'z'", "'('", "'-'"),
        )


def _to_polynomial(node, text):
    if isinstance(node, Num):
        return Polynomial((node.value,))
    if isinstance(node, Var):
        return Polynomial((0, 1))
    if isinstance(node, Neg):
        return -_to_polynomial(node.child, text)
    if isinstance(node, Pow):
        base = _to_polynomial(node.base, text)
        out = Polynomial((1,))
        for _ in range(node.exp):
            out = out * base
        return out
    if isinstance(node, Bin):
        left = _to_polynomial(node.left, text)
        right = _to_polynomial(node.right, text)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    raise TypeError(f"unknown node {node!r}")


# -- factored-denominator extraction -----------------------------------------


def _flatten_product(node, factors, state):
    if isinstance(node, Bin) and node.op == "*":
        _flatten_product(node.left, factors, state)
        _flatten_product(node.right, factors, state)
    elif isinstance(node, Neg):
        state["sign"] = -state["sign"]
        _flatten_product(node.child, factors, state)
    elif isinstance(node, Pow):
        state["explicit"] = True
        factors.append((node.base, node.exp))
    else:
        factors.append((node, 1))


def _extract_factored(node, text):
    """Exact factor structure of a denominator AST, or None to fall back.

    Raises only for explicitly factored input containing a quadratic factor
    that is reducible over the reals.
    """
    factors = []
    state = {"sign": 1, "explicit": False}
    _flatten_product(node, factors, state)
    poly_factors = []
    scale = state["sign"]
    for base, exp in factors:
        p = _to_polynomial(base, text)
        if p.degree == 0:
            scale *= p.coeff(0) ** exp
        elif exp > 0:
            poly_factors.append((p, exp, base))
    if state["explicit"] is False and len(poly_factors) > 1:
        state["explicit"] = True
    if scale == 0:
        return None

    origin = 0
    linears = {}
    quads = {}
    for p, exp, base in poly_factors:
        if p.degree == 1:
            c0, c1 = p.coeff(0), p.coeff(1)
            scale *= c1**exp
            if c1 == 1:
                r = -c0
            elif c1 == -1:
                r = c0
            else:
                r = -c0 / c1
            if r == 0:
                origin += exp
            else:
                linears[r] = linears.get(r, 0) + exp
        elif p.degree == 2:
            c0, c1, c2 = p.coeff(0), p.coeff(1), p.coeff(2)
            disc = c1 * c1 - 4 * c2 * c0
            if disc >= 0:
                if state["explicit"]:
                    start = base.span[0] if hasattr(base, "span") else 0
                    raise _error(
                        text, start, "factor is reducible; supply linear factors"
                    )
                return None
            a = -c1 / (2 * c2)
            b = math.sqrt(-disc) / (2 * abs(c2))
            scale *= c2**exp
            key = (a, b)
            quads[key] = quads.get(key, 0) + exp
        else:
            return None

    return FactoredDenominator(
        origin,
        tuple(LinearFactor(r, u) for r, u in sorted(linears.items())),
        tuple(QuadraticFactor(a, b, k) for (a, b), k in sorted(quads.items())),
        scale,
    )


# -- top level ----------------------------------------------------------------


def _split_division(text, tokens):
    depth = 0
    slash = None
    for idx, tok in enumerate(tokens):
        if tok.kind == "(":
            depth += 1
        elif tok.kind == ")":
            depth -= 1
            if depth < 0:
                raise _error(text, tok.pos, "unbalanced ')'")
        elif tok.kind == "/":
            if depth > 0:
                raise _error(
                    text,
                    tok.pos,
                    "division must appear once at the top level "
                    "(write the expression as NUM/DEN)",
                )
            if slash is not None:
                raise _error(text, tok.pos, "more than one top-level '/'")
            slash = idx
    return slash


def parse_rational_expr(text):
    """Parse text into a rational function plus, when the denominator is
    written in factored form, its exact factor structure."""
    tokens = tokenize(text)
    if len(tokens) == 1:
        raise _error(text, 0, "empty expression", expected=("NUMBER", "'z'", "'('"))
    slash = _split_division(text, tokens)
    if slash is None:
        num_tokens, den_tokens = tokens, None
    else:
        end = tokens[-1]
        num_tokens = tokens[:slash] + [Token("end", None, tokens[slash].pos)]
        den_tokens = tokens[slash + 1 :]
        if num_tokens[0].kind == "end":
            raise _error(text, tokens[slash].pos, "missing numerator before '/'")
        if den_tokens[0].kind == "end":
            raise _error(text, end.pos, "missing denominator after '/'")

    num_ast = _Parser(text, num_tokens).parse()
    num = _to_polynomial(num_ast, text)
    if den_tokens is None:
        return RationalFunction(num, Polynomial((1,))), None

    den_ast = _Parser(text, den_tokens).parse()
    den = _to_polynomial(den_ast, text)
    if den.is_zero:
        raise _error(text, tokens[slash].pos, "denominator is identically zero")
    factored = None
    if den.degree >= 1:
        factored = _extract_factored(den_ast, text)
        if factored is not None and factored.degree != den.degree:
            factored = None
    return RationalFunction(num, den), factored


def format_rational(x):
    """Round-trippable text form of a rational function."""
    if x.den.degree == 0 and x.den.coeff(0) == 1:
        return f"({x.num})"
    return f"({x.num})/({x.den})"


def batch_expressions(text):
    """Expressions from batch text: one per line, '#' starts a comment."""
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if body:
            out.append((lineno, body))
    return out
