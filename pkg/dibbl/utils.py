from argparse import ArgumentTypeError, HelpFormatter
from fractions import Fraction
from typing import Tuple

from dibbl.duals import range_checked


class CustomHelpFormatter(HelpFormatter):
    def __init__(self, prog):
        super().__init__(prog, indent_increment=2, max_help_position=7, width=None)

    # noinspection PyProtectedMember
    def _format_action(self, action):
        result = super(CustomHelpFormatter, self)._format_action(action) + "\n"

        if 'show this help message and exit' in result:
            result = result.replace('show', 'Show', 1)

        return result


def number(text: str) -> Fraction:
    """
    Command line numbers are read exactly: "2", "0.2", "1/5" and "1e-6"
    all become fractions so the rational path survives up to the output
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ArgumentTypeError('not a number: {!r}'.format(text))


def binding(text: str) -> Tuple[str, Fraction]:
    """Parse NAME=VALUE from --let"""
    name, separator, value = text.partition('=')

    if not separator or not name.strip().isidentifier():
        raise ArgumentTypeError('expected NAME=VALUE, got: {!r}'.format(text))

    return name.strip(), number(value)


@range_checked
def format_number(value, digits: int = 12) -> str:
    """Locale independent, `digits` significant digits, never '-0'"""
    return '{:.{}g}'.format(float(value) + 0.0, digits)


def format_exact(value) -> str:
    """Fractions print exactly (-128/7), floats with 12 significant digits"""
    if isinstance(value, Fraction):
        return str(value)

    return format_number(value)


@range_checked
def json_number(value):
    """Integral fractions become ints, everything else a float"""
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator

    return float(value) + 0.0
