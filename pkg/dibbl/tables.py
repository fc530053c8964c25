"""
Function tables (x, value, slope) sampled on an evenly spaced grid
"""
import csv
import json
import math
from collections import namedtuple
from fractions import Fraction
from typing import IO, Iterable, Iterator, List, Union

import numpy as np

from dibbl.duals import AngleUnit, Dual, Number, finite
from dibbl.exceptions import InvalidArgumentError
from dibbl.expressions import Expr
from dibbl.slopes import as_tree, eval_dual
from dibbl.utils import format_number, json_number


MAX_ROWS = 100000

# Float grids absorb round-off in (stop - start) / step
GRID_SLACK = 1e-9

TableRow = namedtuple('TableRow', ('x', 'value', 'slope'))

HEADER = TableRow._fields


def sample_points(start, stop, step) -> List[Number]:
    """
    start, start + step, ... up to and including stop when it lies on the grid
    :raises: InvalidArgumentError on a non-positive step or an empty range
    """
    start, stop, step = finite(start), finite(stop), finite(step)

    if step <= 0:
        raise InvalidArgumentError('Table step must be positive, got {}'.format(step))

    if not start < stop:
        raise InvalidArgumentError('Table range is empty: --from {} is not below --to {}'.format(start, stop))

    ratio = (stop - start) / step

    if not isinstance(ratio, Fraction):
        ratio += GRID_SLACK

    count = math.floor(ratio) + 1

    if count > MAX_ROWS:
        raise InvalidArgumentError('Table would have {} rows, the limit is {}'.format(count, MAX_ROWS))

    # Object dtype keeps fractions exact
    grid = start + np.arange(count, dtype=object) * step
    return grid.tolist()


def table_rows(expr: Union[Expr, str], var: str, start, stop, step,
               unit: AngleUnit = AngleUnit.RADIANS) -> Iterator[TableRow]:
    expr = as_tree(expr)

    for x in sample_points(start, stop, step):
        point = eval_dual(expr, var, Dual.variable(x), unit)
        yield TableRow(x, point.real, point.dibbl)


def _cell(value) -> str:
    if isinstance(value, Fraction) and value.denominator == 1:
        return str(value.numerator)

    return format_number(value, 17)


def write_csv(rows: Iterable[TableRow], stream: IO[str]) -> None:
    writer = csv.writer(stream, delimiter=',', lineterminator='\n')
    writer.writerow(HEADER)

    for row in rows:
        writer.writerow([_cell(cell) for cell in row])


def write_json(rows: Iterable[TableRow], stream: IO[str]) -> None:
    json.dump([{key: json_number(value) for key, value in row._asdict().items()} for row in rows], stream)
    stream.write('\n')
