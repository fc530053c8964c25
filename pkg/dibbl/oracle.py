"""
Independent checks on dibbl results

Finite differences never touch the dual numbers: they evaluate the curve at
two points, on the exact rational path whenever the expression allows it
(x0 and h are converted to fractions exactly), so differences of lines and
quadratics come out exact instead of carrying round-off.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np
import sympy

from dibbl.duals import AngleUnit, Dual, Number, finite, real_div
from dibbl.exceptions import DomainError, InvalidArgumentError
from dibbl.expressions import Expr, eval_numeric
from dibbl.slopes import as_tree, derivative_at


logger = logging.getLogger(__name__)

FORWARD = 'forward'
CENTRAL = 'central'

EXACT_AGREEMENT = math.inf

BINOMIAL_MAX_POWER = 20

x, dx = sympy.symbols('x dx')


@dataclass(frozen=True)
class DiffEstimate:
    value: Number
    step: Number
    scheme: str


@dataclass(frozen=True)
class BinomialResult:
    """
    (x + dx)^n once every monomial with two or more dibbls is gone:
    constant_term + dibbl_coefficient * dibbl_power * dx
    """
    n: int
    constant_term: sympy.Expr
    dibbl_coefficient: int
    dibbl_power: sympy.Expr
    dropped_order: int

    def as_expr(self) -> sympy.Expr:
        return self.constant_term + self.dibbl_coefficient * self.dibbl_power * dx

    def evaluate(self, at) -> Dual:
        """Substitute x = at, exactly when `at` is rational"""
        at = finite(at)
        point = sympy.Rational(at.numerator, at.denominator) if isinstance(at, Fraction) else sympy.Float(at)

        def number(value):
            return Fraction(int(value.p), int(value.q)) if value.is_Rational else float(value)

        return Dual(
            number(self.constant_term.subs(x, point)),
            self.dibbl_coefficient * number(self.dibbl_power.subs(x, point)))


def _exact(value) -> Number:
    value = finite(value)
    return value if isinstance(value, Fraction) else Fraction(value)


def _step(h) -> Fraction:
    h = _exact(h)

    if h <= 0:
        raise InvalidArgumentError('Finite difference step must be positive, got {}'.format(h))

    return h


def forward_difference(expr: Union[Expr, str], var: str, x0, h,
                       unit: AngleUnit = AngleUnit.RADIANS) -> DiffEstimate:
    """(y(x0 + h) - y(x0)) / h"""
    expr, x0, h = as_tree(expr), _exact(x0), _step(h)
    rise = finite(eval_numeric(expr, var, x0 + h, unit) - eval_numeric(expr, var, x0, unit))
    return DiffEstimate(real_div(rise, h), h, FORWARD)


def central_difference(expr: Union[Expr, str], var: str, x0, h,
                       unit: AngleUnit = AngleUnit.RADIANS) -> DiffEstimate:
    """(y(x0 + h) - y(x0 - h)) / 2h"""
    expr, x0, h = as_tree(expr), _exact(x0), _step(h)
    rise = finite(eval_numeric(expr, var, x0 + h, unit) - eval_numeric(expr, var, x0 - h, unit))
    return DiffEstimate(real_div(rise, 2 * h), h, CENTRAL)


SCHEMES = {FORWARD: forward_difference, CENTRAL: central_difference}


def convergence_order(expr: Union[Expr, str], var: str, x0, h0,
                      unit: AngleUnit = AngleUnit.RADIANS, scheme: str = CENTRAL) -> float:
    """
    Order p of a difference scheme from its errors at h0 and h0 / 2,
    p = log2(err(h0) / err(h0 / 2)); about 2 for central differences
    :return: p, or EXACT_AGREEMENT when the finer estimate has no error
    """
    if scheme not in SCHEMES:
        raise InvalidArgumentError('Invalid scheme: {!r}, accepted values: forward, central'.format(scheme))

    expr, x0, h0 = as_tree(expr), _exact(x0), _step(h0)
    difference = SCHEMES[scheme]
    reference = derivative_at(expr, var, x0, unit)

    coarse = abs(difference(expr, var, x0, h0, unit).value - reference)
    fine = abs(difference(expr, var, x0, h0 / 2, unit).value - reference)
    logger.debug('%s errors at h=%s and h/2: %s, %s', scheme, h0, coarse, fine)

    if fine == 0:
        return EXACT_AGREEMENT

    if coarse == 0:
        return -math.inf

    return float(np.log2(float(coarse / fine)))


def binomial_expand_mod_dibbl(n: int) -> BinomialResult:
    """
    Multiply out (x + dx)(x + dx)...(x + dx), n factors, and throw away
    every monomial holding two or more dibbls
    :raises: DomainError outside 1..20
    """
    if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= BINOMIAL_MAX_POWER:
        raise DomainError('Binomial expansion takes 1 <= n <= {}, got {!r}'.format(BINOMIAL_MAX_POWER, n))

    product = sympy.Poly(sympy.expand(sympy.Mul(*[x + dx] * n)), x, dx)

    retained = {}
    dropped = 0

    # Coefficients count the monomials of the unexpanded product
    for (x_power, dx_power), coefficient in product.terms():
        if dx_power >= 2:
            dropped += int(coefficient)
        else:
            retained[dx_power] = (x_power, int(coefficient))

    assert sorted(retained) == [0, 1], 'Expected exactly two retained terms'

    constant_power, _ = retained[0]
    dibbl_power, dibbl_coefficient = retained[1]

    return BinomialResult(
        n=n,
        constant_term=x ** constant_power,
        dibbl_coefficient=dibbl_coefficient,
        dibbl_power=x ** dibbl_power,
        dropped_order=dropped)
