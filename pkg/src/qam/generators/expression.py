"""
Analyseur descendant récursif des expressions de générateurs.

Grammaire:

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' atom)?
    atom   := number | 'x' | 'exp' '(' expr ')' | 'ln' '(' expr ')'
            | '(' expr ')' | '-' atom

L'opérande droite de '^' ne doit pas dépendre de x. L'arbre s'évalue sur des
tableaux numpy pour les valeurs et sur des Dual2 pour les dérivées.
"""
import logging
import re
from dataclasses import dataclass
from typing import List, Union

import numpy as np

from ..config.config import get_settings
from ..utils.errors import ExpressionParseError, NotAGeneratorError
from ..utils.optimize import vectorized_bisection
from .base import Generator, check_monotone
from .dual import Dual2
from .interval import Interval

logger = logging.getLogger(__name__)

Value = Union[np.ndarray, Dual2]


class Token(object):
    """ Types de jetons """
    number = "number"
    name = "name"
    operator = "operator"
    left_paren = "("
    right_paren = ")"
    eof = "eof"

    def __init__(self, typ, text, position):
        self.typ = typ
        self.text = text
        self.position = position

    def __repr__(self):
        return "(" + self.typ + ", " + self.text + ", " + str(self.position) + ")"


TOKEN_PATTERN = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<operator>[-+*/^])"
    r"|(?P<paren>[()])"
    r")"
)


def tokenize(text: str) -> List[Token]:
    """Découpe une expression en jetons, avec leur position."""
    tokens = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = TOKEN_PATTERN.match(text, position)
        if match is None or match.end() == position:
            offset = len(text[position:]) - len(text[position:].lstrip())
            raise ExpressionParseError(
                f"Unexpected character '{text[position + offset]}'", position + offset, text
            )
        kind = match.lastgroup
        start = match.start(kind)
        token_text = match.group(kind)
        if kind == "paren":
            kind = token_text
        tokens.append(Token(kind, token_text, start))
        position = match.end()
    tokens.append(Token(Token.eof, "", len(text)))
    return tokens


# ---------- arbre syntaxique ----------

class Node:
    def evaluate(self, x: Value) -> Value:
        raise NotImplementedError

    def depends_on_x(self) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class Number(Node):
    value: float

    def evaluate(self, x):
        return self.value

    def depends_on_x(self):
        return False


@dataclass(frozen=True)
class Variable(Node):
    def evaluate(self, x):
        return x

    def depends_on_x(self):
        return True


@dataclass(frozen=True)
class Negate(Node):
    operand: Node

    def evaluate(self, x):
        return -self.operand.evaluate(x)

    def depends_on_x(self):
        return self.operand.depends_on_x()


@dataclass(frozen=True)
class BinaryOp(Node):
    op: str
    left: Node
    right: Node

    def evaluate(self, x):
        a = self.left.evaluate(x)
        b = self.right.evaluate(x)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        return a / b

    def depends_on_x(self):
        return self.left.depends_on_x() or self.right.depends_on_x()


@dataclass(frozen=True)
class Power(Node):
    base: Node
    exponent: float

    def evaluate(self, x):
        value = self.base.evaluate(x)
        if isinstance(value, Dual2):
            return value ** self.exponent
        return np.power(value, self.exponent)

    def depends_on_x(self):
        return self.base.depends_on_x()


@dataclass(frozen=True)
class Call(Node):
    function: str
    argument: Node

    def evaluate(self, x):
        value = self.argument.evaluate(x)
        if isinstance(value, Dual2):
            return value.exp() if self.function == "exp" else value.log()
        return np.exp(value) if self.function == "exp" else np.log(value)

    def depends_on_x(self):
        return self.argument.depends_on_x()


FUNCTIONS = ("exp", "ln")


class Parser:
    """Analyseur descendant récursif sur la liste des jetons."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def error(self, message: str, token: Token = None):
        token = token or self.current
        return ExpressionParseError(message, token.position, self.text)

    def expect(self, typ: str) -> Token:
        if self.current.typ != typ:
            found = self.current.text or "end of expression"
            raise self.error(f"Expected '{typ}' but found '{found}'")
        return self.advance()

    def parse(self) -> Node:
        if self.current.typ == Token.eof:
            raise self.error("Empty expression")
        node = self.expr()
        if self.current.typ != Token.eof:
            raise self.error(f"Unexpected token '{self.current.text}'")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.current.typ == Token.operator and self.current.text in "+-":
            op = self.advance().text
            node = BinaryOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.current.typ == Token.operator and self.current.text in "*/":
            op = self.advance().text
            node = BinaryOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        node = self.atom()
        if self.current.typ == Token.operator and self.current.text == "^":
            caret = self.advance()
            exponent = self.atom()
            if exponent.depends_on_x():
                raise self.error("Exponent must be a constant", caret)
            with np.errstate(all="ignore"):
                value = float(exponent.evaluate(np.float64(0.0)))
            if not np.isfinite(value):
                raise self.error("Exponent is not a finite number", caret)
            node = Power(node, value)
        return node

    def atom(self) -> Node:
        token = self.current
        if token.typ == Token.number:
            self.advance()
            return Number(float(token.text))
        if token.typ == Token.name:
            self.advance()
            if token.text == "x":
                return Variable()
            if token.text in FUNCTIONS:
                self.expect(Token.left_paren)
                argument = self.expr()
                self.expect(Token.right_paren)
                return Call(token.text, argument)
            raise self.error(f"Unknown identifier '{token.text}'", token)
        if token.typ == Token.left_paren:
            self.advance()
            node = self.expr()
            self.expect(Token.right_paren)
            return node
        if token.typ == Token.operator and token.text == "-":
            self.advance()
            return Negate(self.atom())
        if token.typ == Token.eof:
            raise self.error("Unexpected end of expression")
        raise self.error(f"Unexpected token '{token.text}'")


def parse_expression(text: str) -> Node:
    """
    Analyse une expression en x en arbre syntaxique.

    Raises:
        ExpressionParseError: Erreur de syntaxe (message et position)
    """
    return Parser(text).parse()


def _as_array(result, shape) -> np.ndarray:
    return np.broadcast_to(np.asarray(result, dtype=float), shape).astype(float)


def parse_generator(expr: str, domain: Interval) -> Generator:
    """
    Construit un générateur à partir d'une expression en x.

    Dérivées par nombres duaux d'ordre 2; inverse par bissection vectorisée
    encadrée par les bornes du domaine, à inverse_tol_rel·|U| près en x.
    Monotonie contrôlée sur une grille.

    Raises:
        ExpressionParseError: Erreur de syntaxe
        NotAGeneratorError: Expression non finie, ou dérivée qui s'annule
            ou change de signe sur la grille
    """
    tree = parse_expression(expr)
    if not tree.depends_on_x():
        raise NotAGeneratorError(f"Expression '{expr}' is constant")

    def value(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(all="ignore"):
            return _as_array(tree.evaluate(x), x.shape)

    def derivatives(x) -> Dual2:
        x = np.asarray(x, dtype=float)
        with np.errstate(all="ignore"):
            return tree.evaluate(Dual2.variable(x))

    def first(x):
        x = np.asarray(x, dtype=float)
        result = derivatives(x)
        return _as_array(result.t if isinstance(result, Dual2) else 0.0, x.shape)

    def second(x):
        x = np.asarray(x, dtype=float)
        result = derivatives(x)
        return _as_array(result.c if isinstance(result, Dual2) else 0.0, x.shape)

    ends = value(np.array([domain.lo, domain.hi]))
    slopes = first(np.array([domain.lo, domain.hi]))
    extends = bool(np.all(np.isfinite(ends)) and np.all(np.isfinite(slopes)))

    draft = Generator(
        domain=domain,
        sign=1,
        eval=value,
        d1=first,
        d2=second,
        inverse=value,
        label=f"expr:{expr}",
        extends_to_closure=extends,
    )
    numerics = get_settings().numerics
    lo, hi = draft.scan_bounds()
    values = value(np.linspace(lo, hi, numerics['monotone_points']))
    if not np.all(np.isfinite(values)):
        raise NotAGeneratorError(f"Expression '{expr}' is not finite on {domain}")
    sign = check_monotone(draft)

    xtol = numerics['inverse_tol_rel'] * domain.length()
    increasing = sign > 0

    def inverse(y):
        return vectorized_bisection(y, value, (lo, hi), increasing, xtol)

    logger.debug(f"Parsed generator '{expr}' on {domain}: sign {sign}, closure {extends}")
    return Generator(
        domain=domain,
        sign=sign,
        eval=value,
        d1=first,
        d2=second,
        inverse=inverse,
        label=f"expr:{expr}",
        extends_to_closure=extends,
    )


__all__ = [
    'Token',
    'tokenize',
    'Parser',
    'parse_expression',
    'parse_generator',
]
