"""
Worked exercises with known answers, re-computed by the engine
"""
import json
import logging
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from multiprocessing.pool import ThreadPool
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from dibbl.duals import AngleUnit, Number, finite
from dibbl.exceptions import CorpusError, DibblException, InvalidArgumentError
from dibbl.expressions import eval_numeric, parse, substitute
from dibbl.slopes import (
    derivative_at, estimate_A, eval_dual, pythagorean_residual,
    quadratic_roots, quadratic_vertex, secant_slope, tangent_line)


logger = logging.getLogger(__name__)

BUNDLED_CORPUS = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data', 'corpus.json')

PASS = 'pass'
FAIL = 'fail'
ERROR = 'error'

DEFAULT_TOLERANCE = Fraction(1, 10 ** 9)

# kind: (minimum points, maximum points, needs an expression)
KINDS = {
    'eval': (1, 1, True),
    'derivative': (1, 1, True),
    'tangent': (1, 1, True),
    'secant': (2, 2, True),
    'dual': (2, 2, True),
    'vertex': (3, 3, False),
    'roots': (3, 3, False),
    'estimate_A': (1, 1, False),
    'residual': (1, 2, False),
}


def _number(value, what: str) -> Number:
    if isinstance(value, bool) or value is None:
        raise CorpusError('{} is not a number: {!r}'.format(what, value))

    if isinstance(value, str):
        try:
            value = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise CorpusError('{} is not a number: {!r}'.format(what, value))

    try:
        return finite(value)
    except DibblException as e:
        raise CorpusError('{}: {}'.format(what, e.message))


def _numbers(values, what: str) -> Tuple[Number, ...]:
    if not isinstance(values, list):
        values = [values]

    return tuple(_number(value, what) for value in values)


@dataclass(frozen=True)
class ExerciseCase:
    id: str
    kind: str
    expression: str = ''
    variable: str = 'x'
    points: Tuple[Number, ...] = ()
    unit: AngleUnit = AngleUnit.RADIANS
    expected: Tuple[Number, ...] = ()
    tolerance: Number = DEFAULT_TOLERANCE
    provenance: str = ''
    parameters: Tuple[Tuple[str, Number], ...] = field(default=())

    @property
    def bindings(self) -> Dict[str, Number]:
        return dict(self.parameters)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'ExerciseCase':
        """
        Build a case from one corpus entry, fields not listed here are ignored
        :raises: CorpusError
        """
        if not isinstance(data, Mapping):
            raise CorpusError('Corpus entries must be objects, got {!r}'.format(data))

        case_id = data.get('id')
        kind = data.get('kind')

        if not isinstance(case_id, str) or not case_id:
            raise CorpusError('Corpus entry without an id')

        if kind not in KINDS:
            raise CorpusError('{}: invalid kind {!r}, accepted values: {}'.format(
                case_id, kind, ', '.join(KINDS)))

        least, most, needs_expression = KINDS[kind]
        expression = data.get('expression', '')

        if needs_expression and (not isinstance(expression, str) or not expression.strip()):
            raise CorpusError('{}: a {} case needs an expression'.format(case_id, kind))

        points = _numbers(data.get('points', []), '{}: point'.format(case_id))

        if not least <= len(points) <= most:
            raise CorpusError('{}: a {} case takes {} to {} points, got {}'.format(
                case_id, kind, least, most, len(points)))

        expected = _numbers(data.get('expected', []), '{}: expected value'.format(case_id))

        if not expected:
            raise CorpusError('{}: no expected values'.format(case_id))

        tolerance = _number(data.get('tolerance', DEFAULT_TOLERANCE), '{}: tolerance'.format(case_id))

        if tolerance <= 0:
            raise CorpusError('{}: tolerance must be positive'.format(case_id))

        parameters = data.get('parameters', {})

        if not isinstance(parameters, Mapping):
            raise CorpusError('{}: parameters must be an object'.format(case_id))

        try:
            unit = AngleUnit.parse(data.get('unit', 'rad'))
        except DibblException as e:
            raise CorpusError('{}: {}'.format(case_id, e.message))

        return cls(
            id=case_id,
            kind=kind,
            expression=expression or '',
            variable=data.get('variable', 'x'),
            points=points,
            unit=unit,
            expected=expected,
            tolerance=tolerance,
            provenance=data.get('provenance', ''),
            parameters=tuple(sorted(
                (name, _number(value, '{}: parameter {}'.format(case_id, name)))
                for name, value in parameters.items())))


@dataclass(frozen=True)
class CaseReport:
    id: str
    status: str
    actual: Tuple[Number, ...] = ()
    expected: Tuple[Number, ...] = ()
    delta: Optional[float] = None
    message: str = ''

    @property
    def passed(self) -> bool:
        return self.status == PASS


def load_corpus(path: str = BUNDLED_CORPUS) -> List[Any]:
    """
    Read the raw corpus entries, numbers are kept exact
    :raises: CorpusError when the file is missing or not a JSON array
    """
    try:
        with open(path, 'r', encoding='utf-8') as file:
            entries = json.load(file, parse_float=Fraction)
    except OSError as e:
        raise CorpusError('Unable to read corpus {!r}: {}'.format(path, e.strerror))
    except ValueError as e:
        raise CorpusError('Malformed corpus {!r}: {}'.format(path, e))

    if not isinstance(entries, list):
        raise CorpusError('Malformed corpus {!r}: expected a JSON array'.format(path))

    logger.debug('Loaded %d corpus entries from %s', len(entries), path)
    return entries


def compute(case: ExerciseCase, overrides: Optional[Mapping[str, Number]] = None) -> Tuple[Number, ...]:
    """
    Run the engine operation a case describes
    :param overrides: Parameter values replacing the case's own
    """
    bindings = case.bindings
    bindings.update(overrides or {})

    points, unit, var = case.points, case.unit, case.variable

    if case.kind == 'vertex':
        vertex = quadratic_vertex(*points)
        return vertex.t_m, vertex.value

    if case.kind == 'roots':
        return quadratic_roots(*points).roots

    if case.kind == 'estimate_A':
        return estimate_A(unit, points[0]),

    if case.kind == 'residual':
        radius = points[1] if len(points) > 1 else 1
        return tuple(pythagorean_residual(points[0], unit, radius))

    expr = substitute(parse(case.expression), bindings)

    if case.kind == 'eval':
        return eval_numeric(expr, var, points[0], unit),

    if case.kind == 'derivative':
        return derivative_at(expr, var, points[0], unit),

    if case.kind == 'tangent':
        line = tangent_line(expr, var, points[0], unit)
        return line.intercept, line.slope

    if case.kind == 'dual':
        point = eval_dual(expr, var, points, unit)
        return point.real, point.dibbl

    return secant_slope(expr, var, points[0], points[1], unit),


def run_case(case: ExerciseCase, overrides: Optional[Mapping[str, Number]] = None) -> CaseReport:
    try:
        actual = compute(case, overrides)
    except DibblException as e:
        return CaseReport(case.id, ERROR, expected=case.expected, message=str(e))

    if len(actual) != len(case.expected):
        return CaseReport(case.id, FAIL, actual, case.expected, message='expected {} values, got {}'.format(
            len(case.expected), len(actual)))

    try:
        delta = max(float(abs(a - e)) for a, e in zip(actual, case.expected))
    except OverflowError:
        delta = math.inf

    status = PASS if delta <= case.tolerance else FAIL
    logger.debug('%s: %s (delta %s, tolerance %s)', case.id, status, delta, case.tolerance)
    return CaseReport(case.id, status, actual, case.expected, delta)


def run_entry(index: int, entry: Any) -> CaseReport:
    """A corpus entry that doesn't form a valid case reports an error"""
    try:
        case = ExerciseCase.from_dict(entry)
    except CorpusError as e:
        case_id = entry.get('id') if isinstance(entry, Mapping) else None
        return CaseReport(case_id if isinstance(case_id, str) else '#{}'.format(index), ERROR, message=e.message)

    return run_case(case)


def verify(entries: Sequence[Any], threads: int = 8) -> List[CaseReport]:
    """
    Run every corpus entry, reports come back in corpus order
    """
    if threads < 1:
        raise InvalidArgumentError('At least one thread is required, got {}'.format(threads))

    pool = ThreadPool(processes=threads)
    result = pool.starmap_async(run_entry, enumerate(entries))
    pool.close()
    pool.join()
    return result.get()
