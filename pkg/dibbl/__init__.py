__version__ = '0.1.0'

from dibbl.duals import AngleUnit, Dual
from dibbl.exceptions import DibblException, MathDomainError, ParseError
from dibbl.expressions import eval_numeric, parse, unparse
from dibbl.slopes import derivative_at, eval_dual, secant_slope, tangent_line
