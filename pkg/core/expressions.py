"""
Element grammar: a PLY lexer/parser producing ring elements.

Grammar (UTF-8 text)::

    expression : expression '+' expression
               | expression '-' expression
               | expression '*' expression
               | '-' expression
               | expression '^' NUMBER
               | '(' expression ')'
               | NUMBER | NUMBER '/' NUMBER
               | NAME

``^`` binds tightest, then unary minus, then ``*``, then ``+``/``-``.
Names are ``x``, ``d`` (or ``∂``) and ``theta`` in the Weyl algebra, the
polynomial variable in QX, and nothing in Z.
"""

import threading
from fractions import Fraction
from typing import Any, Tuple

import ply.lex as lex
import ply.yacc as yacc

from core.rings import (
    Element,
    RingId,
    RingTag,
    UniPoly,
    WeylOp,
    coerce,
    format_element,
)
from utils.exceptions import ParseError, RingMismatchError
from utils.logging_utils import ContextLogger

logger = ContextLogger("expressions")

Node = Tuple[Any, ...]

WEYL_SYMBOLS = ("x", "d", "∂", "theta")


class ElementParser:
    """PLY lexer and LALR parser for the element grammar, producing a syntax tree."""

    tokens = (
        "NUMBER",
        "NAME",
        "PLUS",
        "MINUS",
        "TIMES",
        "SLASH",
        "CARET",
        "LPAREN",
        "RPAREN",
    )

    t_PLUS = r"\+"
    t_MINUS = r"-"
    t_TIMES = r"\*"
    t_SLASH = r"/"
    t_CARET = r"\^"
    t_LPAREN = r"\("
    t_RPAREN = r"\)"
    t_NAME = r"[A-Za-z_][A-Za-z0-9_]*|∂"

    t_ignore = " \t\r\n"

    precedence = (
        ("left", "PLUS", "MINUS"),
        ("left", "TIMES"),
        ("right", "UMINUS"),
        ("left", "CARET"),
    )

    def __init__(self) -> None:
        self.lexer = lex.lex(module=self)
        self.parser = yacc.yacc(
            module=self,
            start="expression",
            write_tables=False,
            debug=False,
            errorlog=yacc.NullLogger(),
        )

    # lexer rules

    def t_NUMBER(self, t: lex.LexToken) -> lex.LexToken:
        r"\d+"
        t.value = int(t.value)
        return t

    def t_error(self, t: lex.LexToken) -> None:
        raise ParseError(f"Illegal character {t.value[0]!r} at position {t.lexpos}")

    # parser rules

    def p_expression_binop(self, p: yacc.YaccProduction) -> None:
        """expression : expression PLUS expression
        | expression MINUS expression
        | expression TIMES expression"""
        op = {"+": "add", "-": "sub", "*": "mul"}[p[2]]
        p[0] = (op, p[1], p[3])

    def p_expression_uminus(self, p: yacc.YaccProduction) -> None:
        "expression : MINUS expression %prec UMINUS"
        p[0] = ("neg", p[2])

    def p_expression_power(self, p: yacc.YaccProduction) -> None:
        "expression : expression CARET NUMBER"
        p[0] = ("pow", p[1], p[3])

    def p_expression_group(self, p: yacc.YaccProduction) -> None:
        "expression : LPAREN expression RPAREN"
        p[0] = p[2]

    def p_expression_number(self, p: yacc.YaccProduction) -> None:
        "expression : NUMBER"
        p[0] = ("num", Fraction(p[1]))

    def p_expression_rational(self, p: yacc.YaccProduction) -> None:
        "expression : NUMBER SLASH NUMBER"
        if p[3] == 0:
            raise ParseError("Zero denominator in rational literal")
        p[0] = ("num", Fraction(p[1], p[3]))

    def p_expression_name(self, p: yacc.YaccProduction) -> None:
        "expression : NAME"
        p[0] = ("sym", p[1])

    def p_error(self, t: Any) -> None:
        if t is None:
            raise ParseError("Unexpected end of expression")
        raise ParseError(f"Syntax error at {t.value!r} (position {t.lexpos})")

    def parse(self, text: str) -> Node:
        if not text or not text.strip():
            raise ParseError("Empty expression")
        return self.parser.parse(text, lexer=self.lexer.clone())


_local = threading.local()


def _parser() -> ElementParser:
    parser = getattr(_local, "parser", None)
    if parser is None:
        parser = ElementParser()
        _local.parser = parser
    return parser


def _symbol(name: str, ring: RingId) -> Element:
    if ring.tag is RingTag.WEYL:
        if name == "x":
            return WeylOp.x()
        if name in ("d", "∂"):
            return WeylOp.d()
        if name == "theta":
            return WeylOp.theta()
    elif ring.tag is RingTag.QX and name == ring.var:
        return UniPoly.gen(ring.var)
    if name in WEYL_SYMBOLS or (ring.tag is RingTag.Z and name == "x"):
        raise RingMismatchError(f"Symbol {name!r} does not belong to ring {ring}")
    raise ParseError(f"Unknown symbol {name!r} for ring {ring}")


def _evaluate(node: Node, ring: RingId) -> Any:
    kind = node[0]
    if kind == "num":
        return node[1]
    if kind == "sym":
        return _symbol(node[1], ring)
    if kind == "neg":
        return -_evaluate(node[1], ring)
    if kind == "pow":
        return _lift(_evaluate(node[1], ring), ring) ** node[2]
    lhs = _evaluate(node[1], ring)
    rhs = _evaluate(node[2], ring)
    if kind == "add":
        return lhs + rhs
    if kind == "sub":
        return lhs - rhs
    return lhs * rhs


def _lift(value: Any, ring: RingId) -> Any:
    # Z keeps exact Fractions until the end so "6/3" stays an integer
    if isinstance(value, Fraction) and ring.tag is RingTag.Z:
        return value
    if isinstance(value, (int, Fraction)):
        return coerce(value, ring)
    return value


def ring_eval(expr: str, ring: RingId) -> Element:
    """Parse and evaluate ``expr`` into the canonical normal form of ``ring``.

    Raises:
        ParseError: if ``expr`` violates the grammar
        RingMismatchError: if a symbol belongs to another ring
    """
    tree = _parser().parse(expr)
    value = _evaluate(tree, ring)
    if ring.tag is RingTag.Z and isinstance(value, Fraction):
        if value.denominator != 1:
            raise ParseError(f"{expr!r} is not an integer")
        return int(value)
    return coerce(value, ring)


def parse_element(text: str, ring: RingId) -> Element:
    """Parse element text; the printed form re-parses to the same element."""
    element = ring_eval(text, ring)
    logger.debug(f"Parsed {text!r} as {format_element(element)}")
    return element
