import json
import logging
import os
import sys
from argparse import ArgumentParser
from threading import BoundedSemaphore

from dibbl.corpus import BUNDLED_CORPUS, load_corpus, verify
from dibbl.duals import AngleUnit, unit_scale
from dibbl.exceptions import DibblException, InvalidArgumentError, MathDomainError, UnknownVariableError
from dibbl.expressions import eval_numeric, parse, substitute, variables
from dibbl.slopes import derivative_at, estimate_A, tangent_line
from dibbl.tables import table_rows, write_csv, write_json
from dibbl.utils import CustomHelpFormatter, binding, format_exact, format_number, json_number, number


EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

lock = BoundedSemaphore()


def main(argv=None) -> int:
    """
    Main entry point of the application
    :return: Exit code
    """
    args = ArgumentParser(
        prog='dibbl',
        usage='dibbl <action> [expression or corpus] [arguments]',
        formatter_class=CustomHelpFormatter,
        description=(
            'Slopes of curves by dibbl arithmetic. The default angular unit, '
            'variable name and worker count are set using the DIBBL_UNIT, '
            'DIBBL_VAR and DIBBL_THREADS environment variables. To verify '
            'another corpus than the bundled one, set the DIBBL_CORPUS '
            'environment variable.'))

    args.add_argument('action', action='store', choices=sorted(ACTIONS), metavar='action', help=(
        'Action to perform: eval, deriv, tangent, table, units or verify.'))

    args.add_argument('expression', action='store', nargs='?', default=None, help=(
        'Expression to work on, e.g. "5x^17" or "sin(x)". For verify: the '
        'corpus file, defaults to the bundled corpus.'))

    args.add_argument('--at', type=number, default=None, help=(
        'Point to evaluate or differentiate at.'))

    args.add_argument('--from', dest='start', type=number, default=None, help='First table row.')
    args.add_argument('--to', dest='stop', type=number, default=None, help='Last table row (inclusive).')
    args.add_argument('--step', type=number, default=None, help=(
        'Table spacing, or the step used to estimate A.'))

    args.add_argument('--estimate-A', dest='estimate_a', action='store_true', help=(
        'Estimate A from the secant slope of the sine at 0.'))

    args.add_argument('--unit', default=os.getenv('DIBBL_UNIT', 'rad'), help=(
        'Angular unit: rad, deg or grad (default: rad).'))

    args.add_argument('--format', choices=('csv', 'json', 'text'), default=None, help=(
        'Output format, csv for tables and text otherwise by default.'))

    args.add_argument('--var', default=os.getenv('DIBBL_VAR', 'x'), help=(
        'Variable the expression is a function of (default: x).'))

    args.add_argument('--let', dest='bindings', type=binding, action='append', default=[], help=(
        'Bind a parameter, NAME=VALUE, may be repeated.'))

    args.add_argument('-t', '--threads', type=int, default=os.getenv('DIBBL_THREADS', '8'))
    args.add_argument('-v', '--verbose', action='store_true', help='Log debug messages.')

    args = args.parse_args(argv)

    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, format='%(name)s: %(message)s')

    try:
        return ACTIONS[args.action](args, AngleUnit.parse(args.unit))

    except MathDomainError as e:
        log(e, prefix='!', stream=sys.stderr)
        return EXIT_DOMAIN

    except DibblException as e:
        log(e, prefix='!', stream=sys.stderr)
        return EXIT_USAGE


def log(message, *, prefix='*', stream=None):
    lock.acquire()
    print(f'[{prefix}] {message}', file=stream or sys.stdout)
    lock.release()


FLAGS = {'start': '--from', 'stop': '--to', 'step': '--step', 'at': '--at', 'expression': 'an expression'}


def require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise InvalidArgumentError('{} requires {}'.format(args.action, FLAGS[name]))


def expression(args):
    """Parse the expression argument, apply --let and check its variables"""
    require(args, 'expression')
    tree = substitute(parse(args.expression), dict(args.bindings))
    unknown = sorted(variables(tree) - {args.var})

    if unknown:
        raise UnknownVariableError('Unknown variable {!r}, bind it with --let {}=VALUE'.format(
            unknown[0], unknown[0]))

    return tree


def cmd_eval(args, unit):
    require(args, 'at')
    value = eval_numeric(expression(args), args.var, args.at, unit)

    if args.format == 'json':
        print(json.dumps({'x': json_number(args.at), 'value': json_number(value)}))
    else:
        print(format_number(value))

    return EXIT_OK


def cmd_deriv(args, unit):
    require(args, 'at')
    slope = derivative_at(expression(args), args.var, args.at, unit)

    if args.format == 'json':
        print(json.dumps({'x': json_number(args.at), 'slope': json_number(slope)}))
    else:
        print(format_number(slope))

    return EXIT_OK


def cmd_tangent(args, unit):
    require(args, 'at')
    line = tangent_line(expression(args), args.var, args.at, unit)

    if args.format == 'json':
        print(json.dumps({'intercept': json_number(line.intercept), 'slope': json_number(line.slope)}))
    else:
        print(format_exact(line.intercept), format_exact(line.slope))

    return EXIT_OK


def cmd_table(args, unit):
    require(args, 'start', 'stop', 'step')
    rows = list(table_rows(expression(args), args.var, args.start, args.stop, args.step, unit))

    if args.format == 'json':
        write_json(rows, sys.stdout)
    else:
        write_csv(rows, sys.stdout)

    return EXIT_OK


def cmd_units(args, unit):
    if not args.estimate_a:
        print(format_number(unit_scale(unit)))
        return EXIT_OK

    require(args, 'step')
    print('{:#.6g}'.format(estimate_A(unit, args.step)))
    return EXIT_OK


def cmd_verify(args, unit):
    path = args.expression or os.getenv('DIBBL_CORPUS') or BUNDLED_CORPUS
    reports = verify(load_corpus(path), threads=args.threads)

    prefixes = {'pass': '+', 'fail': '-', 'error': '!'}

    for report in reports:
        if report.status == 'error':
            log(f'{report.id}: error: {report.message}', prefix='!')
            continue

        log('{}: {} actual={} expected={} delta={}'.format(
            report.id, report.status,
            ','.join(format_number(value) for value in report.actual),
            ','.join(format_number(value) for value in report.expected),
            format_number(report.delta, 3) if report.delta is not None else '-'),
            prefix=prefixes[report.status])

    passed = sum(report.passed for report in reports)
    errors = sum(report.status == 'error' for report in reports)
    log(f'{len(reports)} cases: {passed} passed, {len(reports) - passed - errors} failed, {errors} errors')

    return EXIT_OK if passed == len(reports) else EXIT_FAILED


ACTIONS = {
    'eval': cmd_eval,
    'deriv': cmd_deriv,
    'tangent': cmd_tangent,
    'table': cmd_table,
    'units': cmd_units,
    'verify': cmd_verify,
}


if __name__ == '__main__':
    sys.exit(main())
