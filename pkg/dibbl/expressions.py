"""
Single-variable expression language

Grammar (loosest binding first):

    expression := term (("+" | "-") term)*
    term       := unary (("*" | "/") unary)*
    unary      := "-" unary | power
    power      := NUMBER power            (NUMBER directly before a NAME, "5x^17")
                | primary ["^" exponent]
    exponent   := ["-"] NUMBER ["^" exponent] | "(" ["-"] NUMBER ["/" NUMBER] ")"
    primary    := NUMBER | NAME | ("sin" | "cos") "(" expression ")"
                | "(" ["-"] INTEGER ["/" INTEGER] ")"  (exact rational constant)
                | "(" expression ")"
"""
import logging
import re
from abc import abstractmethod
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, Mapping

from dibbl.duals import (
    AngleUnit, Number, exponent as as_exponent, finite, range_checked, real_cos,
    real_div, real_pow, real_sin)
from dibbl.exceptions import InvalidArgumentError, ParseError, UnknownVariableError


logger = logging.getLogger(__name__)

ADDITIVE, MULTIPLICATIVE, UNARY, POWER, ATOM = range(1, 6)

MAX_CHAINED_EXPONENT = 64

Token = namedtuple('Token', ('kind', 'text', 'position'))

TOKEN_PATTERN = re.compile(r'''
    (?P<space>\s+)
  | (?P<number>(?:\d+(?:\.\d+)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\*\*|[-+*/^()])
''', re.VERBOSE)

# A parenthesised node that renders like this would read back as a constant
LITERAL_LOOKALIKE = re.compile(r'-?\d+(?:/\d+)?')


class Kernel:
    """
    Arithmetic an expression tree is folded into, one method per node type
    """

    @abstractmethod
    def constant(self, value: Fraction):
        raise NotImplementedError()

    @abstractmethod
    def variable(self, name: str):
        raise NotImplementedError()

    @abstractmethod
    def add(self, left, right):
        raise NotImplementedError()

    @abstractmethod
    def sub(self, left, right):
        raise NotImplementedError()

    @abstractmethod
    def mul(self, left, right):
        raise NotImplementedError()

    @abstractmethod
    def div(self, left, right):
        raise NotImplementedError()

    @abstractmethod
    def neg(self, operand):
        raise NotImplementedError()

    @abstractmethod
    def pow(self, base, power: Fraction):
        raise NotImplementedError()

    @abstractmethod
    def sin(self, operand):
        raise NotImplementedError()

    @abstractmethod
    def cos(self, operand):
        raise NotImplementedError()


@dataclass(frozen=True)
class Expr:
    """
    Base class of an immutable expression tree node
    """
    precedence = ATOM

    def fold(self, kernel: Kernel):
        raise NotImplementedError()

    def render(self) -> str:
        raise NotImplementedError()

    def __str__(self):
        return self.render()


def _wrap(node: Expr, context: int) -> str:
    text = node.render()

    if node.precedence >= context:
        return text

    if not isinstance(node, Constant) and LITERAL_LOOKALIKE.fullmatch(text):
        text = re.sub(r'\d+', lambda m: m.group() + '.0', text, count=1)

    return '(' + text + ')'


def _render_rational(value: Fraction) -> str:
    if value.denominator == 1 and value >= 0:
        return str(value.numerator)

    return '({})'.format(value)


@dataclass(frozen=True)
class Constant(Expr):
    value: Fraction

    def __post_init__(self):
        value = finite(self.value)
        object.__setattr__(self, 'value', value if isinstance(value, Fraction) else Fraction(value))

    def fold(self, kernel):
        return kernel.constant(self.value)

    def render(self):
        return _render_rational(self.value)


@dataclass(frozen=True)
class Variable(Expr):
    name: str

    def fold(self, kernel):
        return kernel.variable(self.name)

    def render(self):
        return self.name


@dataclass(frozen=True)
class BinaryOp(Expr):
    left: Expr
    right: Expr

    operation = ''
    symbol = ''

    def fold(self, kernel):
        return getattr(kernel, self.operation)(self.left.fold(kernel), self.right.fold(kernel))

    def render(self):
        # Left associative: an equal-precedence right operand needs parentheses
        return _wrap(self.left, self.precedence) + self.symbol + _wrap(self.right, self.precedence + 1)


@dataclass(frozen=True)
class Add(BinaryOp):
    precedence = ADDITIVE
    operation = 'add'
    symbol = '+'


@dataclass(frozen=True)
class Sub(BinaryOp):
    precedence = ADDITIVE
    operation = 'sub'
    symbol = '-'


@dataclass(frozen=True)
class Mul(BinaryOp):
    precedence = MULTIPLICATIVE
    operation = 'mul'
    symbol = '*'


@dataclass(frozen=True)
class Div(BinaryOp):
    precedence = MULTIPLICATIVE
    operation = 'div'
    symbol = '/'


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr

    precedence = UNARY

    def fold(self, kernel):
        return kernel.neg(self.operand.fold(kernel))

    def render(self):
        return '-' + _wrap(self.operand, UNARY)


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: Fraction

    precedence = POWER

    def __post_init__(self):
        object.__setattr__(self, 'exponent', as_exponent(self.exponent))

    def fold(self, kernel):
        return kernel.pow(self.base.fold(kernel), self.exponent)

    def render(self):
        return _wrap(self.base, ATOM) + '^' + _render_rational(self.exponent)


@dataclass(frozen=True)
class Function(Expr):
    operand: Expr

    operation = ''

    def fold(self, kernel):
        return getattr(kernel, self.operation)(self.operand.fold(kernel))

    def render(self):
        return '{}({})'.format(self.operation, self.operand.render())


@dataclass(frozen=True)
class Sin(Function):
    operation = 'sin'


@dataclass(frozen=True)
class Cos(Function):
    operation = 'cos'


FUNCTIONS = {'sin': Sin, 'cos': Cos}


def tokenize(text: str) -> Iterator[Token]:
    """
    Split an expression into tokens, always ending with an 'end' token
    :raises: ParseError on characters outside the language
    """
    position = 0

    while position < len(text):
        match = TOKEN_PATTERN.match(text, position)

        if not match:
            raise ParseError('Unknown token {!r}'.format(text[position]), position)

        if match.lastgroup != 'space':
            token_text = '^' if match.group() == '**' else match.group()
            yield Token(match.lastgroup, token_text, position)

        position = match.end()

    yield Token('end', '', len(text))


class Parser:
    """
    Recursive descent parser for the grammar in this module's docstring
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = list(tokenize(text))
        self.index = 0

    @property
    def token(self) -> Token:
        return self.tokens[self.index]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.token

        if token.kind != 'end':
            self.index += 1

        return token

    def parse(self) -> Expr:
        if self.token.kind == 'end':
            raise ParseError('Empty expression', 0)

        tree = self.expression()

        if self.token.text == ')':
            raise ParseError('Unbalanced parentheses: unexpected ")"', self.token.position)

        if self.token.kind != 'end':
            raise ParseError('Unexpected {!r}'.format(self.token.text), self.token.position)

        return tree

    def expression(self) -> Expr:
        left = self.term()

        while self.token.text in ('+', '-'):
            operator = self.advance()
            right = self.term()
            left = Add(left, right) if operator.text == '+' else Sub(left, right)

        return left

    def term(self) -> Expr:
        left = self.unary()

        while self.token.text in ('*', '/'):
            operator = self.advance()
            right = self.unary()
            left = Mul(left, right) if operator.text == '*' else Div(left, right)

        return left

    def unary(self) -> Expr:
        if self.token.text == '-':
            self.advance()
            return Neg(self.unary())

        return self.power()

    def power(self) -> Expr:
        if self.token.kind == 'number' and self.peek().kind == 'name':
            coefficient = Constant(Fraction(self.advance().text))
            return Mul(coefficient, self.power())

        base = self.primary()

        if self.token.text == '^':
            self.advance()
            return Pow(base, self.exponent())

        return base

    def exponent(self) -> Fraction:
        token = self.token

        negative = False

        if token.text == '(':
            value = self.rational_literal(decimals=True)

            if value is None:
                raise ParseError(
                    'Variable exponent: exponents must be rational literals '
                    'such as ^2 or ^(5/3)', token.position)

        else:
            negative = token.text == '-'

            if negative:
                self.advance()

            if self.token.kind != 'number':
                raise ParseError(
                    'Variable exponent: exponents must be rational literals '
                    'such as ^2 or ^(5/3)', self.token.position)

            value = Fraction(self.advance().text)

        if self.token.text == '^':
            hat = self.advance()
            outer = self.exponent()

            if outer.denominator != 1 or abs(outer) > MAX_CHAINED_EXPONENT:
                raise ParseError('Chained exponent must be a small integer, parenthesise instead', hat.position)

            if value == 0 and outer < 0:
                raise ParseError('Chained exponent divides by zero', hat.position)

            value = value ** int(outer)

        # The sign applies to the folded chain, -2^2 is -4
        return -value if negative else value

    def rational_literal(self, decimals: bool = False):
        """
        Consume "(" ["-"] NUMBER ["/" NUMBER] ")" if it is next in the stream
        :param decimals: Accept decimal numbers (exponents), not just integers
        :return: The exact value or None when the tokens don't form a literal
        """
        def is_number(token):
            return token.kind == 'number' and (decimals or token.text.isdigit())

        index = self.index
        tokens = self.tokens

        if tokens[index].text != '(':
            return None

        index += 1
        sign = 1

        if tokens[index].text == '-':
            sign = -1
            index += 1

        if not is_number(tokens[index]):
            return None

        value = Fraction(tokens[index].text)
        index += 1

        if tokens[index].text == '/':
            index += 1

            if not is_number(tokens[index]):
                return None

            denominator = Fraction(tokens[index].text)

            if denominator == 0:
                raise ParseError('Zero denominator in rational literal', tokens[index].position)

            value /= denominator
            index += 1

        if tokens[index].text != ')':
            return None

        self.index = index + 1
        return sign * value

    def primary(self) -> Expr:
        token = self.token

        if token.kind == 'number':
            self.advance()
            return Constant(Fraction(token.text))

        if token.kind == 'name':
            self.advance()

            if token.text in FUNCTIONS:
                if self.token.text != '(':
                    raise ParseError(
                        '{}() requires a parenthesised argument'.format(token.text),
                        self.token.position)

                opening = self.advance()
                argument = self.expression()
                self.close(opening)
                return FUNCTIONS[token.text](argument)

            return Variable(token.text)

        if token.text == '(':
            literal = self.rational_literal()

            if literal is not None:
                return Constant(literal)

            opening = self.advance()
            inner = self.expression()
            self.close(opening)
            return inner

        if token.kind == 'end':
            raise ParseError('Unexpected end of expression', token.position)

        raise ParseError('Unexpected {!r}'.format(token.text), token.position)

    def close(self, opening: Token) -> None:
        if self.token.text != ')':
            raise ParseError(
                'Unbalanced parentheses: "(" at position {} is never closed'.format(opening.position),
                self.token.position)

        self.advance()


def parse(text) -> Expr:
    """
    Parse an expression string
    :param text: Expression, e.g. "5x^17" or "(t^(5/3)/(5+6t^(5/3)))^(2/7)"
    :return: Expression tree
    :raises: ParseError
    """
    if isinstance(text, bytes):
        text = text.decode('utf-8')

    tree = Parser(text).parse()
    logger.debug('Parsed %r as %r', text, tree)
    return tree


def unparse(expr: Expr) -> str:
    """Canonical text of a tree; parse(unparse(e)) == e"""
    return expr.render()


class RealKernel(Kernel):
    """
    Plain evaluation; shares the real-part helpers with the dual kernel so
    both produce bit-identical values
    """

    def __init__(self, var: str, x, unit: AngleUnit = AngleUnit.RADIANS):
        self.var = var
        self.x = finite(x)
        self.unit = AngleUnit.parse(unit)

    def constant(self, value):
        return value

    def variable(self, name):
        if name != self.var:
            raise UnknownVariableError(
                'Unknown variable {!r}, the expression is evaluated over {!r}'.format(name, self.var))

        return self.x

    @range_checked
    def add(self, left, right):
        return finite(left + right)

    @range_checked
    def sub(self, left, right):
        return finite(left - right)

    @range_checked
    def mul(self, left, right):
        return finite(left * right)

    def div(self, left, right):
        return real_div(left, right)

    def neg(self, operand):
        return finite(-operand)

    def pow(self, base, power):
        return real_pow(base, power)

    def sin(self, operand):
        return real_sin(operand, self.unit)

    def cos(self, operand):
        return real_cos(operand, self.unit)


def eval_numeric(expr: Expr, var: str, x, unit: AngleUnit = AngleUnit.RADIANS) -> Number:
    """
    Evaluate a tree at var = x, trigonometry read in `unit`
    :raises: DomainError, ZeroDivisionRealPartError, UnknownVariableError
    """
    return expr.fold(RealKernel(var, x, unit))


class _Rebuild(Kernel):

    def __init__(self, bindings: Mapping[str, Constant]):
        self.bindings = bindings

    def constant(self, value):
        return Constant(value)

    def variable(self, name):
        return self.bindings.get(name, Variable(name))

    def add(self, left, right):
        return Add(left, right)

    def sub(self, left, right):
        return Sub(left, right)

    def mul(self, left, right):
        return Mul(left, right)

    def div(self, left, right):
        return Div(left, right)

    def neg(self, operand):
        return Neg(operand)

    def pow(self, base, power):
        return Pow(base, power)

    def sin(self, operand):
        return Sin(operand)

    def cos(self, operand):
        return Cos(operand)


class _Names(Kernel):

    def constant(self, value):
        return frozenset()

    def variable(self, name):
        return frozenset((name,))

    def add(self, left, right):
        return left | right

    sub = mul = div = add

    def neg(self, operand):
        return operand

    sin = cos = neg

    def pow(self, base, power):
        return base


def substitute(expr: Expr, bindings: Mapping[str, object]) -> Expr:
    """
    Replace named variables by exact constants, unused names are ignored
    :param bindings: {name: number}
    """
    constants: Dict[str, Constant] = {}

    for name, value in bindings.items():
        try:
            constants[name] = Constant(value)
        except InvalidArgumentError:
            raise InvalidArgumentError('Parameter {!r} is not a number: {!r}'.format(name, value))

    return expr.fold(_Rebuild(constants))


def variables(expr: Expr) -> FrozenSet[str]:
    return expr.fold(_Names())
