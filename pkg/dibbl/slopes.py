"""
Slopes of curves: derivatives by dibbl evaluation, secants, tangent lines,
quadratics, the Pythagorean residual and the unit constant A
"""
import logging
import math
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from dibbl.duals import (
    AngleUnit, Dual, Number, dual_add, dual_cos, dual_div, dual_mul, dual_neg,
    dual_pow, dual_sin, dual_sub, exponent as as_rational, finite, real_div,
    real_pow)
from dibbl.exceptions import (
    ArithmeticRangeError, CoincidentPointsError, InvalidArgumentError,
    NotAQuadraticError, UnknownVariableError)
from dibbl.expressions import Expr, Kernel, Sin, Variable, eval_numeric, parse


logger = logging.getLogger(__name__)

PowerTerm = namedtuple('PowerTerm', ('coefficient', 'exponent'))
Residual = namedtuple('Residual', ('value_residual', 'dibbl_residual'))

SINE = Sin(Variable('x'))


@dataclass(frozen=True)
class TangentLine:
    """
    The line y_t(x) = intercept + slope * x
    """
    intercept: Number
    slope: Number

    def __post_init__(self):
        object.__setattr__(self, 'intercept', finite(self.intercept))
        object.__setattr__(self, 'slope', finite(self.slope))

    def at(self, x) -> Number:
        return finite(self.intercept + self.slope * finite(x))


@dataclass(frozen=True)
class QuadraticRoots:
    """
    Real roots of a t^2 + b t + c = 0 in ascending order (zero, one or two)
    """
    discriminant: Number
    roots: Tuple[Number, ...]


@dataclass(frozen=True)
class Vertex:
    """
    Stationary point of p0 + p1 t + p2 t^2
    """
    t_m: Number
    value: Number


def as_tree(expr: Union[Expr, str]) -> Expr:
    return parse(expr) if isinstance(expr, (str, bytes)) else expr


class DualKernel(Kernel):
    """
    Maps every tree node onto the matching dual-number operation
    """

    def __init__(self, var: str, seed: Dual, unit: AngleUnit = AngleUnit.RADIANS):
        self.var = var
        self.seed = seed
        self.unit = AngleUnit.parse(unit)

    def constant(self, value):
        return Dual.constant(value)

    def variable(self, name):
        if name != self.var:
            raise UnknownVariableError(
                'Unknown variable {!r}, the expression is evaluated over {!r}'.format(name, self.var))

        return self.seed

    def add(self, left, right):
        return dual_add(left, right)

    def sub(self, left, right):
        return dual_sub(left, right)

    def mul(self, left, right):
        return dual_mul(left, right)

    def div(self, left, right):
        return dual_div(left, right)

    def neg(self, operand):
        return dual_neg(operand)

    def pow(self, base, power):
        return dual_pow(base, power)

    def sin(self, operand):
        return dual_sin(operand, self.unit)

    def cos(self, operand):
        return dual_cos(operand, self.unit)


def eval_dual(expr: Union[Expr, str], var: str, seed, unit: AngleUnit = AngleUnit.RADIANS) -> Dual:
    """
    Evaluate a tree over the dual numbers
    :param seed: Dual (x, d) or a (real, dibbl) pair for the variable
    :return: (value, d * slope)
    """
    if not isinstance(seed, Dual):
        seed = Dual(*seed)

    return as_tree(expr).fold(DualKernel(var, seed, unit))


def derivative_at(expr: Union[Expr, str], var: str, x0, unit: AngleUnit = AngleUnit.RADIANS) -> Number:
    """
    Slope of a curve at x0: y(x0 + dx) - y(x0) = slope * dx
    """
    return eval_dual(expr, var, Dual.variable(x0), unit).dibbl


def secant_slope(expr: Union[Expr, str], var: str, x1, x2, unit: AngleUnit = AngleUnit.RADIANS) -> Number:
    """
    Rise over run between two points of a curve
    :raises: CoincidentPointsError when x1 == x2
    """
    x1, x2 = finite(x1), finite(x2)

    if x1 == x2:
        raise CoincidentPointsError('A secant needs two different points, got x1 = x2 = {}'.format(x1))

    expr = as_tree(expr)
    rise = finite(eval_numeric(expr, var, x2, unit) - eval_numeric(expr, var, x1, unit))
    return real_div(rise, finite(x2 - x1))


def tangent_line(expr: Union[Expr, str], var: str, x0, unit: AngleUnit = AngleUnit.RADIANS) -> TangentLine:
    """
    Tangent at x0: the slope is the derivative, the intercept makes the
    line pass through the curve's point
    """
    x0 = finite(x0)
    point = eval_dual(expr, var, Dual.variable(x0), unit)
    return TangentLine(intercept=point.real - point.dibbl * x0, slope=point.dibbl)


def power_rule(c, n) -> PowerTerm:
    """
    d(c x^n)/dx = (c n) x^(n - 1)
    """
    c, n = as_rational(c), as_rational(n)
    return PowerTerm(coefficient=c * n, exponent=n - 1)


def power_rule_tangent(c, n, x0) -> TangentLine:
    """
    Tangent to y = c x^n at x0 in closed form, without evaluating duals
    """
    c, n, x0 = as_rational(c), as_rational(n), finite(x0)
    coefficient, power = power_rule(c, n)

    slope = coefficient if power == 0 else coefficient * real_pow(x0, power)
    value = c if n == 0 else c * real_pow(x0, n)
    return TangentLine(intercept=value - slope * x0, slope=slope)


def _square_root(value: Number) -> Number:
    if isinstance(value, Fraction):
        numerator, denominator = math.isqrt(value.numerator), math.isqrt(value.denominator)

        if numerator * numerator == value.numerator and denominator * denominator == value.denominator:
            return Fraction(numerator, denominator)

    try:
        return math.sqrt(value)
    except OverflowError as e:
        raise ArithmeticRangeError(e)


def quadratic_roots(a, b, c) -> QuadraticRoots:
    """
    Roots of a t^2 + b t + c = 0
    The larger-magnitude root comes first, the other one follows from
    c / (a t1) so no cancellation happens between b and the square root.
    :raises: NotAQuadraticError when a = 0
    """
    a, b, c = finite(a), finite(b), finite(c)

    if a == 0:
        raise NotAQuadraticError('Not a quadratic: the t^2 coefficient is zero')

    discriminant = finite(b * b - 4 * a * c)

    if discriminant < 0:
        return QuadraticRoots(discriminant, ())

    if discriminant == 0:
        return QuadraticRoots(discriminant, (real_div(-b, 2 * a),))

    root = _square_root(discriminant)
    q = -(b + root) / 2 if b >= 0 else -(b - root) / 2
    first, second = real_div(q, a), real_div(c, q)
    return QuadraticRoots(discriminant, tuple(sorted((first, second))))


def quadratic_vertex(p0, p1, p2) -> Vertex:
    """
    Stationary point of p0 + p1 t + p2 t^2, where the slope p1 + 2 p2 t is zero
    :raises: NotAQuadraticError when p2 = 0
    """
    p0, p1, p2 = finite(p0), finite(p1), finite(p2)

    if p2 == 0:
        raise NotAQuadraticError('Not a quadratic: the t^2 coefficient is zero')

    t_m = real_div(-p1, 2 * p2)
    return Vertex(t_m=t_m, value=finite(p0 + p1 * t_m + p2 * t_m * t_m))


def estimate_A(unit: AngleUnit, step) -> Number:
    """
    Secant slope of the sine between 0 and `step`, which tends to the
    constant A of sin' = A cos as the step shrinks
    :raises: InvalidArgumentError on a zero step
    """
    step = finite(step)

    if step == 0:
        raise InvalidArgumentError('The step used to estimate A must not be zero')

    estimate = secant_slope(SINE, 'x', 0, step, AngleUnit.parse(unit))
    logger.debug('Estimated A for %s with step %s: %s', unit, step, estimate)
    return estimate


def pythagorean_residual(theta, unit: AngleUnit = AngleUnit.RADIANS, radius=1) -> Residual:
    """
    Evaluate (r sin)^2 + (r cos)^2 over the dual (theta, 1) and subtract (r^2, 0).
    The dibbl part is the derivative of the identity, so both parts vanish.
    """
    angle = Dual.variable(theta)
    r = Dual.constant(radius)

    sine = dual_mul(r, dual_sin(angle, unit))
    cosine = dual_mul(r, dual_cos(angle, unit))
    total = dual_add(dual_mul(sine, sine), dual_mul(cosine, cosine))

    return Residual(finite(total.real - r.real * r.real), total.dibbl)
