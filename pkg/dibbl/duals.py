"""
Dual numbers built on the dibbl equation, dx * dx = 0

A dibbl is never stored as a magnitude. A value a + b*dx is kept as the
pair (a, b) and every operation below drops the dx * dx cross term, so the
dibbl equation holds as an identity instead of an approximation.

Integers and fractions stay exact (``Fraction``) through addition,
multiplication, division and integer powers. Non-integer powers and the
trigonometric functions leave the rational numbers and return floats.
"""
import math
import sys
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import wraps
from numbers import Rational, Real
from typing import Union

from dibbl.exceptions import (
    ArithmeticRangeError, DomainError, InvalidArgumentError,
    ZeroDivisionRealPartError)


Number = Union[Fraction, float]

LARGEST = Fraction(sys.float_info.max)


def coerce(value) -> Number:
    """
    Bring a plain number into the kernel's two number types
    :param value: int, Fraction or anything float() understands
    :return: Fraction for rationals, float otherwise
    """
    if isinstance(value, bool):
        raise InvalidArgumentError('Expected a number, got a boolean: {!r}'.format(value))

    if isinstance(value, Rational):
        return Fraction(value)

    try:
        return float(value)
    except (TypeError, ValueError):
        raise InvalidArgumentError('Expected a number, got: {!r}'.format(value))


def finite(value) -> Number:
    """
    Coerce a value and refuse anything that is not a finite number
    :raises: ArithmeticRangeError
    """
    value = coerce(value)

    if isinstance(value, float) and not math.isfinite(value):
        raise ArithmeticRangeError('Result is not a finite number: {!r}'.format(value))

    # Every value converts to float
    if isinstance(value, Fraction) and abs(value) > LARGEST:
        raise ArithmeticRangeError('Result exceeds the floating point range: about 2^{}'.format(
            value.numerator.bit_length() - value.denominator.bit_length()))

    return value


def range_checked(function):
    """Turns an OverflowError raised while mixing fractions and floats into ArithmeticRangeError"""
    @wraps(function)
    def wrapper(*args, **kwargs):
        try:
            return function(*args, **kwargs)
        except OverflowError as e:
            raise ArithmeticRangeError('Result exceeds the floating point range: {}'.format(e))

    return wrapper


def exponent(value) -> Fraction:
    """
    Exponents are always rational, floats are converted exactly
    :raises: InvalidArgumentError when the exponent is not finite
    """
    value = finite(value)
    return value if isinstance(value, Fraction) else Fraction(value)


class AngleUnit(Enum):
    """
    Angular units the trigonometric operations understand.
    ``scale`` is the constant A of sin' = A cos: radians per unit.
    """
    RADIANS = ('rad', None)
    DEGREES = ('deg', 180)
    GRADS = ('grad', 200)

    def __init__(self, tag: str, half_turn):
        self.tag = tag
        self.half_turn = half_turn

    @property
    def scale(self) -> Real:
        if self.half_turn is None:
            return 1

        return math.pi / self.half_turn

    def to_radians(self, value) -> float:
        try:
            if self.half_turn is None:
                return float(value)

            return float(value) * self.scale

        except OverflowError as e:
            raise ArithmeticRangeError(e)

    @classmethod
    def parse(cls, tag: str) -> 'AngleUnit':
        """
        Look up a unit by one of its names (rad, deg, grad, ...)
        :raises: InvalidArgumentError
        """
        if isinstance(tag, AngleUnit):
            return tag

        unit = _UNIT_ALIASES.get(str(tag).strip().lower())

        if unit is None:
            raise InvalidArgumentError(
                'Unknown angular unit: {!r}, accepted values: rad, deg, grad'.format(tag))

        return unit

    def __str__(self):
        return self.tag


_UNIT_ALIASES = {
    'rad': AngleUnit.RADIANS, 'radian': AngleUnit.RADIANS, 'radians': AngleUnit.RADIANS,
    'deg': AngleUnit.DEGREES, 'degree': AngleUnit.DEGREES, 'degrees': AngleUnit.DEGREES,
    'grad': AngleUnit.GRADS, 'grads': AngleUnit.GRADS, 'gon': AngleUnit.GRADS,
}


def unit_scale(unit: AngleUnit) -> Real:
    """The constant A for a unit: 1, pi/180 or pi/200"""
    return AngleUnit.parse(unit).scale


def scale_ratio(numerator: AngleUnit, denominator: AngleUnit) -> Real:
    """
    Ratio A(numerator) / A(denominator), exact when neither unit is radians
    (degrees over grads is exactly 200/180)
    """
    numerator, denominator = AngleUnit.parse(numerator), AngleUnit.parse(denominator)

    if numerator.half_turn is None or denominator.half_turn is None:
        return numerator.scale / denominator.scale

    return Fraction(denominator.half_turn, numerator.half_turn)


def real_div(a: Number, b: Number) -> Number:
    if b == 0:
        raise ZeroDivisionRealPartError('Division by zero is undefined')

    try:
        return finite(a / b)
    except OverflowError as e:
        raise ArithmeticRangeError(e)


def real_pow(base: Number, power: Fraction) -> Number:
    """
    Real power with a rational exponent
    :raises: DomainError for a negative base with a non-integer exponent
             and for a zero base with an exponent below one
    """
    if base == 0 and power < 1:
        raise DomainError('Zero base requires an exponent of at least 1, got {}'.format(power))

    try:
        if power.denominator == 1:
            return finite(base ** int(power))

        if base < 0:
            raise DomainError(
                'Negative base {} with non-integer exponent {}'.format(base, power))

        return finite(float(base) ** float(power))

    except OverflowError as e:
        raise ArithmeticRangeError(e)


@range_checked
def real_sin(angle: Number, unit: AngleUnit) -> float:
    return finite(math.sin(unit.to_radians(angle)))


@range_checked
def real_cos(angle: Number, unit: AngleUnit) -> float:
    return finite(math.cos(unit.to_radians(angle)))


@dataclass(frozen=True)
class Dual:
    """
    A number real + dibbl * dx with dx * dx = 0
    """
    real: Number = Fraction(0)
    dibbl: Number = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, 'real', finite(self.real))
        object.__setattr__(self, 'dibbl', finite(self.dibbl))

    @classmethod
    def variable(cls, value) -> 'Dual':
        """The independent variable at `value`, seeded with dibbl 1"""
        return cls(value, 1)

    @classmethod
    def constant(cls, value) -> 'Dual':
        return cls(value, 0)

    @staticmethod
    def _operand(other):
        if isinstance(other, Dual):
            return other

        if isinstance(other, Real) and not isinstance(other, bool):
            return Dual(other, 0)

        return None

    def __add__(self, other):
        other = self._operand(other)
        return NotImplemented if other is None else dual_add(self, other)

    def __radd__(self, other):
        other = self._operand(other)
        return NotImplemented if other is None else dual_add(other, self)

    def __sub__(self, other):
        other = self._operand(other)
        return NotImplemented if other is None else dual_sub(self, other)

    def __rsub__(self, other):
        other = self._operand(other)
        return NotImplemented if other is None else dual_sub(other, self)

    def __mul__(self, other):
        other = self._operand(other)
        return NotImplemented if other is None else dual_mul(self, other)

    def __rmul__(self, other):
        other = self._operand(other)
        return NotImplemented if other is None else dual_mul(other, self)

    def __truediv__(self, other):
        other = self._operand(other)
        return NotImplemented if other is None else dual_div(self, other)

    def __rtruediv__(self, other):
        other = self._operand(other)
        return NotImplemented if other is None else dual_div(other, self)

    def __pow__(self, power):
        return dual_pow(self, power)

    def __neg__(self):
        return dual_neg(self)

    def __str__(self):
        return '{} + {} dx'.format(self.real, self.dibbl)


@range_checked
def dual_add(u: Dual, v: Dual) -> Dual:
    return Dual(u.real + v.real, u.dibbl + v.dibbl)


@range_checked
def dual_sub(u: Dual, v: Dual) -> Dual:
    return Dual(u.real - v.real, u.dibbl - v.dibbl)


@range_checked
def dual_neg(u: Dual) -> Dual:
    return Dual(-u.real, -u.dibbl)


@range_checked
def dual_mul(u: Dual, v: Dual) -> Dual:
    # (a + b dx)(c + d dx) = ac + (ad + bc) dx + bd dx*dx, and dx*dx = 0
    return Dual(u.real * v.real, u.real * v.dibbl + u.dibbl * v.real)


@range_checked
def dual_div(u: Dual, v: Dual) -> Dual:
    """
    Quotient of two duals
    :raises: ZeroDivisionRealPartError when v has no real part, a pure
             dibbl can't be divided by
    """
    if v.real == 0:
        raise ZeroDivisionRealPartError(
            'Division by a dual with zero real part is undefined: {}'.format(v))

    return Dual(
        real_div(u.real, v.real),
        real_div(u.dibbl * v.real - u.real * v.dibbl, v.real * v.real))


@range_checked
def dual_pow(u: Dual, power) -> Dual:
    """
    Power law on a dual: (x + d dx)^p = x^p + p x^(p-1) d dx
    :param u: Base
    :param power: Rational exponent
    :raises: DomainError (negative base with non-integer exponent, zero base
             with exponent below 1)
    """
    power = exponent(power)
    real = real_pow(u.real, power)

    if power == 0:
        dibbl = 0 * u.dibbl
    elif power == 1:
        dibbl = u.dibbl
    elif u.real == 0:
        dibbl = 0 * u.dibbl
    else:
        dibbl = power * real_pow(u.real, power - 1) * u.dibbl

    return Dual(real, dibbl)


@range_checked
def dual_sin(u: Dual, unit: AngleUnit = AngleUnit.RADIANS) -> Dual:
    """sin' = A cos, the trigonometry itself runs in radians"""
    unit = AngleUnit.parse(unit)
    angle = unit.to_radians(u.real)
    return Dual(real_sin(u.real, unit), unit.scale * math.cos(angle) * u.dibbl)


@range_checked
def dual_cos(u: Dual, unit: AngleUnit = AngleUnit.RADIANS) -> Dual:
    """cos' = -A sin"""
    unit = AngleUnit.parse(unit)
    angle = unit.to_radians(u.real)
    return Dual(real_cos(u.real, unit), -unit.scale * math.sin(angle) * u.dibbl)
