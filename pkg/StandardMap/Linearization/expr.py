"""
Planar maps R^2 -> R^2 given as text or as Python functions, evaluated with
exact first-order derivatives through the DualScalar type.

Grammar accepted by ``parse``::

    map    := "(" expr "," expr ")"
    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := unary ("^" integer)?
    unary  := "-" unary | atom
    atom   := number | "x" | "y" | func "(" expr ")" | "(" expr ")"
    func   := "sinh" | "cosh" | "asinh" | "sqrt" | "abs"

Unary minus binds tighter than ``^``: ``-y^2`` reads as ``(-y)^2``.
"""
import logging
import math
import re
from collections import namedtuple
from dataclasses import dataclass

from .exceptions import (
    EvaluationError,
    ExpressionSyntaxError,
    MalformedExponentError,
    UnknownIdentifierError,
)
from .linalg2 import Mat2

logger = logging.getLogger(__name__)

CONSTANT = 'constant'
VARIABLE_X = 'variable-x'
VARIABLE_Y = 'variable-y'
ADD = 'add'
SUB = 'sub'
MUL = 'mul'
DIV = 'div'
POW = 'pow-integer'
NEG = 'neg'
SINH = 'sinh'
COSH = 'cosh'
ASINH = 'asinh'
SQRT = 'sqrt'
ABS = 'abs'

FUNCTIONS = {'sinh': SINH, 'cosh': COSH, 'asinh': ASINH, 'sqrt': SQRT, 'abs': ABS}
BINARY = {ADD: '+', SUB: '-', MUL: '*', DIV: '/'}
UNARY = (POW, NEG) + tuple(FUNCTIONS.values())
LEAVES = (CONSTANT, VARIABLE_X, VARIABLE_Y)


@dataclass(frozen=True)
class ExprNode:
    kind: str
    children: tuple = ()
    value: float = None
    exponent: int = None

    def __post_init__(self):
        if self.kind in BINARY:
            arity = 2
        elif self.kind in UNARY:
            arity = 1
        elif self.kind in LEAVES:
            arity = 0
        else:
            raise ValueError('Unknown node kind {0}'.format(self.kind))
        if len(self.children) != arity:
            raise ValueError('{0} node takes {1} children, got {2}'.format(self.kind, arity, len(self.children)))
        if self.kind == POW and (not isinstance(self.exponent, int) or self.exponent < 0):
            raise ValueError('pow-integer exponent must be a non-negative integer')


class DualScalar:
    """
    A value with its partial derivatives along x and y
    """
    __slots__ = ('value', 'dx', 'dy')

    def __init__(self, value, dx=0.0, dy=0.0):
        self.value = value
        self.dx = dx
        self.dy = dy

    @classmethod
    def seed_x(cls, value):
        return cls(value, 1.0, 0.0)

    @classmethod
    def seed_y(cls, value):
        return cls(value, 0.0, 1.0)

    @classmethod
    def lift(cls, value):
        if isinstance(value, DualScalar):
            return value
        return cls(float(value))

    def __repr__(self):
        return 'DualScalar({0!r}, dx={1!r}, dy={2!r})'.format(self.value, self.dx, self.dy)

    def __add__(self, other):
        if isinstance(other, DualScalar):
            return DualScalar(self.value + other.value, self.dx + other.dx, self.dy + other.dy)
        return DualScalar(self.value + other, self.dx, self.dy)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, DualScalar):
            return DualScalar(self.value - other.value, self.dx - other.dx, self.dy - other.dy)
        return DualScalar(self.value - other, self.dx, self.dy)

    def __rsub__(self, other):
        return DualScalar(other - self.value, -self.dx, -self.dy)

    def __mul__(self, other):
        if isinstance(other, DualScalar):
            return DualScalar(
                self.value * other.value,
                self.dx * other.value + self.value * other.dx,
                self.dy * other.value + self.value * other.dy,
            )
        return DualScalar(self.value * other, self.dx * other, self.dy * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, DualScalar):
            quotient = self.value / other.value
            return DualScalar(
                quotient,
                (self.dx - quotient * other.dx) / other.value,
                (self.dy - quotient * other.dy) / other.value,
            )
        return DualScalar(self.value / other, self.dx / other, self.dy / other)

    def __rtruediv__(self, other):
        quotient = other / self.value
        return DualScalar(quotient, -quotient * self.dx / self.value, -quotient * self.dy / self.value)

    def __neg__(self):
        return DualScalar(-self.value, -self.dx, -self.dy)

    def __pow__(self, exponent):
        return integer_power(self, exponent)

    def __abs__(self):
        sign = (self.value > 0) - (self.value < 0)
        return DualScalar(abs(self.value), sign * self.dx, sign * self.dy)

    def __lt__(self, other):
        return self.value < _value(other)

    def __le__(self, other):
        return self.value <= _value(other)

    def __gt__(self, other):
        return self.value > _value(other)

    def __ge__(self, other):
        return self.value >= _value(other)

    def _chain(self, value, slope):
        return DualScalar(value, slope * self.dx, slope * self.dy)

    def sinh(self):
        return self._chain(math.sinh(self.value), math.cosh(self.value))

    def cosh(self):
        return self._chain(math.cosh(self.value), math.sinh(self.value))

    def asinh(self):
        return self._chain(math.asinh(self.value), 1.0 / math.sqrt(1.0 + self.value * self.value))

    def sqrt(self):
        root = math.sqrt(self.value)
        return self._chain(root, 0.5 / root)

    def sin(self):
        return self._chain(math.sin(self.value), math.cos(self.value))

    def cos(self):
        return self._chain(math.cos(self.value), -math.sin(self.value))


def _value(v):
    return v.value if isinstance(v, DualScalar) else v


def integer_power(v, exponent):
    """
    v ** exponent by repeated multiplication
    """
    result = 1.0
    for _ in range(exponent):
        result = result * v
    return result


def sinh(v):
    return v.sinh() if isinstance(v, DualScalar) else math.sinh(v)


def cosh(v):
    return v.cosh() if isinstance(v, DualScalar) else math.cosh(v)


def asinh(v):
    return v.asinh() if isinstance(v, DualScalar) else math.asinh(v)


def sqrt(v):
    return v.sqrt() if isinstance(v, DualScalar) else math.sqrt(v)


def sin(v):
    return v.sin() if isinstance(v, DualScalar) else math.sin(v)


def cos(v):
    return v.cos() if isinstance(v, DualScalar) else math.cos(v)


def clamp(v, low, high):
    if v <= low:
        return low
    if v >= high:
        return high
    return v


_CALLS = {SINH: sinh, COSH: cosh, ASINH: asinh, SQRT: sqrt, ABS: abs}


class PlanarMap:
    """
    A differentiable map of the plane.

    Subclasses implement ``components(x, y)`` with plain arithmetic so that the same code
    runs on floats and on DualScalar values.
    """
    source = None

    def components(self, x, y):
        raise NotImplementedError

    def describe(self):
        return self.__class__.__name__

    def __call__(self, p):
        return self.evaluate(p)

    def evaluate(self, p):
        x, y = float(p[0]), float(p[1])
        try:
            u, v = self.components(x, y)
            u, v = float(u), float(v)
        except (ZeroDivisionError, ValueError, OverflowError) as error:
            raise EvaluationError((x, y), str(error)) from error
        if not (math.isfinite(u) and math.isfinite(v)):
            raise EvaluationError((x, y), 'non-finite result')
        return u, v

    def evaluate_with_jacobian(self, p):
        x, y = float(p[0]), float(p[1])
        try:
            u, v = self.components(DualScalar.seed_x(x), DualScalar.seed_y(y))
        except (ZeroDivisionError, ValueError, OverflowError) as error:
            raise EvaluationError((x, y), str(error)) from error
        u, v = DualScalar.lift(u), DualScalar.lift(v)
        jacobian = Mat2(u.dx, u.dy, v.dx, v.dy)
        if not all(math.isfinite(entry) for entry in (u.value, v.value) + jacobian.entries()):
            raise EvaluationError((x, y), 'non-finite result')
        return (u.value, v.value), jacobian


class ExpressionMap(PlanarMap):
    source = 'expression'

    def __init__(self, text, first, second):
        self.text = text
        self.nodes = (first, second)
        self._first = _compile(first)
        self._second = _compile(second)

    def components(self, x, y):
        return self._first(x, y), self._second(x, y)

    def describe(self):
        return self.text

    def unparse(self):
        return '({0}, {1})'.format(unparse(self.nodes[0]), unparse(self.nodes[1]))


class NativeMap(PlanarMap):
    source = 'native'

    def __init__(self, name, function, parameters=None, formula=''):
        self.name = name
        self.function = function
        self.parameters = dict(parameters or {})
        self.formula = formula

    def components(self, x, y):
        return self.function(x, y)

    def describe(self):
        return 'native:{0}'.format(self.name)


class RecenteredMap(PlanarMap):
    """
    q -> map(q + center) - center, which fixes the origin when center is a fixed point of map
    """
    source = 'recentered'

    def __init__(self, base, center):
        self.base = base
        self.center = (float(center[0]), float(center[1]))

    def components(self, x, y):
        cx, cy = self.center
        u, v = self.base.components(x + cx, y + cy)
        return u - cx, v - cy

    def describe(self):
        return '{0} recentered at ({1!r}, {2!r})'.format(self.base.describe(), self.center[0], self.center[1])


def evaluate(planar_map, p):
    return planar_map.evaluate(p)


def evaluate_with_jacobian(planar_map, p):
    return planar_map.evaluate_with_jacobian(p)


def _compile(node):
    kind = node.kind
    if kind == CONSTANT:
        value = node.value
        return lambda x, y: value
    if kind == VARIABLE_X:
        return lambda x, y: x
    if kind == VARIABLE_Y:
        return lambda x, y: y
    if kind in BINARY:
        left, right = _compile(node.children[0]), _compile(node.children[1])
        if kind == ADD:
            return lambda x, y: left(x, y) + right(x, y)
        if kind == SUB:
            return lambda x, y: left(x, y) - right(x, y)
        if kind == MUL:
            return lambda x, y: left(x, y) * right(x, y)
        return lambda x, y: left(x, y) / right(x, y)
    operand = _compile(node.children[0])
    if kind == NEG:
        return lambda x, y: -operand(x, y)
    if kind == POW:
        exponent = node.exponent
        return lambda x, y: integer_power(operand(x, y), exponent)
    call = _CALLS[kind]
    return lambda x, y: call(operand(x, y))


def unparse(node):
    """
    Fully parenthesized text of an expression tree; parsing it back gives the same tree
    """
    kind = node.kind
    if kind == CONSTANT:
        return repr(node.value)
    if kind == VARIABLE_X:
        return 'x'
    if kind == VARIABLE_Y:
        return 'y'
    if kind in BINARY:
        return '({0} {1} {2})'.format(unparse(node.children[0]), BINARY[kind], unparse(node.children[1]))
    if kind == NEG:
        return '(-{0})'.format(unparse(node.children[0]))
    if kind == POW:
        return '({0})^{1}'.format(unparse(node.children[0]), node.exponent)
    return '{0}({1})'.format(kind, unparse(node.children[0]))


Token = namedtuple('Token', ['kind', 'text', 'position'])

NUMBER = 'number'
NAME = 'name'
OPERATOR = 'operator'
END = 'end'

_TOKEN = re.compile(
    r'(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)'
    r'|(?P<name>[A-Za-z_][A-Za-z_0-9]*)'
    r'|(?P<operator>[-+*/^(),])'
)
_WHITESPACE = re.compile(r'\s*')


def _tokenize(source):
    tokens = []
    position = _WHITESPACE.match(source, 0).end()
    while position < len(source):
        match = _TOKEN.match(source, position)
        if match is None:
            raise ExpressionSyntaxError("unexpected character '{0}'".format(source[position]), position)
        tokens.append(Token(match.lastgroup, match.group(), position))
        position = _WHITESPACE.match(source, match.end()).end()
    tokens.append(Token(END, '', len(source)))
    return tokens


class _Parser:
    def __init__(self, source):
        self.tokens = _tokenize(source)
        self.index = 0

    def peek(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        if token.kind != END:
            self.index += 1
        return token

    def at_operator(self, *texts):
        token = self.peek()
        return token.kind == OPERATOR and token.text in texts

    def expect(self, text):
        token = self.peek()
        if token.kind != OPERATOR or token.text != text:
            raise ExpressionSyntaxError("expected '{0}', found {1}".format(text, _describe(token)), token.position)
        return self.advance()

    def parse_map(self):
        self.expect('(')
        first = self.expression()
        self.expect(',')
        second = self.expression()
        self.expect(')')
        token = self.peek()
        if token.kind != END:
            raise ExpressionSyntaxError('unexpected trailing {0}'.format(_describe(token)), token.position)
        return first, second

    def expression(self):
        node = self.term()
        while self.at_operator('+', '-'):
            operator = self.advance()
            self.require_operand(operator)
            node = ExprNode(ADD if operator.text == '+' else SUB, (node, self.term()))
        return node

    def term(self):
        node = self.factor()
        while self.at_operator('*', '/'):
            operator = self.advance()
            self.require_operand(operator)
            node = ExprNode(MUL if operator.text == '*' else DIV, (node, self.factor()))
        return node

    def factor(self):
        base = self.unary()
        if self.at_operator('^'):
            self.advance()
            token = self.peek()
            if token.kind != NUMBER or not token.text.isdigit():
                raise MalformedExponentError(
                    "exponent must be a non-negative integer literal, found {0}".format(_describe(token)),
                    token.position)
            self.advance()
            return ExprNode(POW, (base,), exponent=int(token.text))
        return base

    def unary(self):
        if self.at_operator('-'):
            operator = self.advance()
            self.require_operand(operator)
            return ExprNode(NEG, (self.unary(),))
        return self.atom()

    def atom(self):
        token = self.peek()
        if token.kind == NUMBER:
            self.advance()
            value = float(token.text)
            if not math.isfinite(value):
                raise ExpressionSyntaxError("number literal '{0}' is not finite".format(token.text), token.position)
            return ExprNode(CONSTANT, value=value)
        if token.kind == NAME:
            self.advance()
            if token.text == 'x':
                return ExprNode(VARIABLE_X)
            if token.text == 'y':
                return ExprNode(VARIABLE_Y)
            if token.text in FUNCTIONS:
                self.expect('(')
                argument = self.expression()
                self.expect(')')
                return ExprNode(FUNCTIONS[token.text], (argument,))
            raise UnknownIdentifierError("unknown identifier '{0}'".format(token.text), token.position)
        if self.at_operator('('):
            self.advance()
            inner = self.expression()
            self.expect(')')
            return inner
        raise ExpressionSyntaxError('expected an operand, found {0}'.format(_describe(token)), token.position)

    def require_operand(self, operator):
        token = self.peek()
        if token.kind in (NUMBER, NAME) or (token.kind == OPERATOR and token.text in ('(', '-')):
            return
        raise ExpressionSyntaxError("operator '{0}' is missing its right operand".format(operator.text),
                                    operator.position)


def _describe(token):
    if token.kind == END:
        return 'end of input'
    return "'{0}'".format(token.text)


def parse(source):
    """
    Parses "(f1, f2)" over x and y into an expression-backed PlanarMap
    """
    first, second = _Parser(source).parse_map()
    logger.debug('Parsed map %s', source)
    return ExpressionMap(source.strip(), first, second)
