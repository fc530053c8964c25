from fractions import Fraction
from unittest import TestCase

from hypothesis import assume, given, settings, strategies as st

from dibbl.corpus import load_corpus
from dibbl.duals import AngleUnit, Dual
from dibbl.exceptions import (
    DomainError, InvalidArgumentError, MathDomainError, ParseError,
    UnknownVariableError, ZeroDivisionRealPartError)
from dibbl.expressions import (
    Add, Constant, Cos, Div, Mul, Neg, Pow, Sin, Sub, Variable, eval_numeric,
    parse, substitute, tokenize, unparse, variables)
from dibbl.slopes import eval_dual


NAMES = ('x', 't', 'theta')

constants = st.fractions(min_value=-50, max_value=50, max_denominator=12)
exponents = st.fractions(min_value=-6, max_value=6, max_denominator=7)


@st.composite
def trees(draw, depth=6):
    """Any tree of the language, at most `depth` levels deep"""
    if depth == 0 or draw(st.integers(min_value=0, max_value=3)) == 0:
        return draw(st.one_of(st.builds(Variable, st.sampled_from(NAMES)), st.builds(Constant, constants)))

    child = trees(depth - 1)
    kind = draw(st.sampled_from(('binary', 'neg', 'pow', 'function')))

    if kind == 'binary':
        return draw(st.sampled_from((Add, Sub, Mul, Div)))(draw(child), draw(child))

    if kind == 'neg':
        return Neg(draw(child))

    if kind == 'pow':
        return Pow(draw(child), draw(exponents))

    return draw(st.sampled_from((Sin, Cos)))(draw(child))


@st.composite
def safe_trees(draw, depth=5):
    """Trees over x that stay inside the real domain for every x"""
    if depth == 0 or draw(st.integers(min_value=0, max_value=3)) == 0:
        return draw(st.one_of(st.just(Variable('x')), st.builds(Constant, st.fractions(
            min_value=-5, max_value=5, max_denominator=4))))

    child = safe_trees(depth - 1)
    kind = draw(st.sampled_from(('binary', 'neg', 'div', 'root', 'square', 'function')))

    if kind == 'binary':
        return draw(st.sampled_from((Add, Sub, Mul)))(draw(child), draw(child))

    if kind == 'neg':
        return Neg(draw(child))

    if kind == 'div':
        return Div(draw(child), Add(Constant(1), Pow(draw(child), 2)))

    if kind == 'root':
        power = draw(st.sampled_from((Fraction(-2), Fraction(-1, 2), Fraction(1, 3), Fraction(2, 7), Fraction(5, 3), Fraction(2))))
        return Pow(Add(Constant(1), Pow(draw(child), 2)), power)

    if kind == 'square':
        return Pow(draw(child), draw(st.sampled_from((1, 2))))

    return draw(st.sampled_from((Sin, Cos)))(draw(child))


class ParseTestCase(TestCase):

    def test_juxtaposition(self):
        self.assertEqual(parse('5x^17'), Mul(Constant(5), Pow(Variable('x'), 17)))
        self.assertEqual(parse('6x^5 + 4x^4'), Add(
            Mul(Constant(6), Pow(Variable('x'), 5)),
            Mul(Constant(4), Pow(Variable('x'), 4))))

    def test_atom(self):
        self.assertEqual(parse('x'), Variable('x'))
        self.assertEqual(parse(' 2.5 '), Constant(Fraction(5, 2)))
        self.assertEqual(parse(b'x^2'), parse('x^2'))

    def test_nested(self):
        t = Variable('t')
        self.assertEqual(
            parse('(t^(5/3)/(5+6t^(5/3)))^(2/7)'),
            Pow(Div(Pow(t, Fraction(5, 3)), Add(Constant(5), Mul(Constant(6), Pow(t, Fraction(5, 3))))), Fraction(2, 7)))

    def test_precedence(self):
        self.assertEqual(eval_numeric(parse('2+3*4^2'), 'x', 0), 50)
        self.assertEqual(eval_numeric(parse('-x^2'), 'x', 3), -9)
        self.assertEqual(parse('-x^2'), Neg(Pow(Variable('x'), 2)))
        self.assertEqual(parse('8-3-2'), Sub(Sub(Constant(8), Constant(3)), Constant(2)))
        self.assertEqual(eval_numeric(parse('12/3/2'), 'x', 0), 2)
        self.assertEqual(parse('-x*y'), Mul(Neg(Variable('x')), Variable('y')))

    def test_exponents(self):
        x = Variable('x')
        self.assertEqual(parse('x^-1'), Pow(x, -1))
        self.assertEqual(parse('x^(-2/7)'), Pow(x, Fraction(-2, 7)))
        self.assertEqual(parse('x^0.5'), Pow(x, Fraction(1, 2)))
        self.assertEqual(parse('x**2'), Pow(x, 2))
        self.assertEqual(parse('x^2^3'), Pow(x, 8))
        self.assertEqual(parse('x^-2^2'), Pow(x, -4))
        self.assertEqual(parse('x^2^-1'), Pow(x, Fraction(1, 2)))
        self.assertEqual(parse('x^-2^-1'), Pow(x, Fraction(-1, 2)))
        self.assertEqual(eval_numeric(parse('x^-2^2'), 'x', 2), Fraction(1, 16))
        self.assertEqual(parse('(x^2)^3'), Pow(Pow(x, 2), 3))

    def test_rational_literal(self):
        self.assertEqual(parse('(1/7)*x^5'), Mul(Constant(Fraction(1, 7)), Pow(Variable('x'), 5)))
        self.assertEqual(parse('(-128/7)'), Constant(Fraction(-128, 7)))
        self.assertEqual(parse('(1.0/7)'), Div(Constant(1), Constant(7)))
        self.assertEqual(parse('(x)'), Variable('x'))

    def test_functions(self):
        self.assertEqual(parse('sin(x)^2 + cos(x)^2'), Add(
            Pow(Sin(Variable('x')), 2), Pow(Cos(Variable('x')), 2)))

    def test_errors(self):
        cases = {
            '': 0,
            '   ': 0,
            'x $ 2': 2,
            'x^y': 2,
            '(x+1': 4,
            'x+1)': 3,
            'sin x': 4,
            '2*': 2,
            'x^(1/0)': 5,
            'x y': 2,
            '5(x+1)': 1,
        }

        for text, position in cases.items():
            with self.subTest(text=text), self.assertRaises(ParseError) as context:
                parse(text)

            self.assertEqual(context.exception.position, position, text)
            self.assertLessEqual(context.exception.position, len(text) + 1)
            self.assertIn('position', str(context.exception))

    def test_error_messages(self):
        with self.assertRaises(ParseError) as context:
            parse('x^t')

        self.assertIn('Variable exponent', context.exception.message)

        with self.assertRaises(ParseError) as context:
            parse('(x+1')

        self.assertIn('Unbalanced', context.exception.message)

    def test_tokenize(self):
        self.assertEqual([token.kind for token in tokenize('3.5e-2x**2')], ['number', 'name', 'op', 'number', 'end'])


class UnparseTestCase(TestCase):

    def test_canonical(self):
        self.assertEqual(unparse(Mul(Constant(5), Pow(Variable('x'), 17))), '5*x^17')
        self.assertEqual(unparse(Constant(Fraction(-128, 7))), '(-128/7)')
        self.assertEqual(unparse(parse('8 + 12t - 5t^2')), '8+12*t-5*t^2')
        self.assertEqual(unparse(parse('x - (y - z)')), 'x-(y-z)')
        self.assertEqual(unparse(Pow(Div(Constant(1), Constant(7)), 2)), '(1.0/7)^2')
        self.assertEqual(unparse(Pow(Variable('x'), Fraction(-1, 2))), 'x^(-1/2)')

    def test_corpus_round_trip(self):
        for entry in load_corpus():
            if entry.get('expression'):
                with self.subTest(case=entry['id']):
                    tree = parse(entry['expression'])
                    self.assertEqual(parse(unparse(tree)), tree)

    @settings(max_examples=500, deadline=None)
    @given(trees())
    def test_round_trip(self, tree):
        self.assertEqual(parse(unparse(tree)), tree)


class EvaluateTestCase(TestCase):

    def test_examples(self):
        self.assertEqual(eval_numeric(parse('3t^3'), 't', 2), 24)
        self.assertEqual(eval_numeric(parse('x^2'), 'x', Fraction(1, 5)), Fraction(1, 25))
        self.assertAlmostEqual(eval_numeric(parse('x^2'), 'x', 0.2), 0.04)
        self.assertAlmostEqual(eval_numeric(parse('sin(x)'), 'x', 90, AngleUnit.DEGREES), 1, places=15)
        self.assertAlmostEqual(eval_numeric(parse('cos(x)'), 'x', 200, 'grad'), -1, places=15)

    def test_exact(self):
        value = eval_numeric(parse('(1/7)*x^5 - x/3'), 'x', 2)
        self.assertEqual(value, Fraction(32, 7) - Fraction(2, 3))
        self.assertIsInstance(value, Fraction)

    def test_errors(self):
        with self.assertRaises(ZeroDivisionRealPartError):
            eval_numeric(parse('1/x'), 'x', 0)

        with self.assertRaises(DomainError):
            eval_numeric(parse('x^(1/2)'), 'x', -1)

        with self.assertRaises(UnknownVariableError):
            eval_numeric(parse('x + y'), 'x', 1)

    @settings(max_examples=1000, deadline=None)
    @given(safe_trees(), st.fractions(min_value=-2, max_value=2, max_denominator=16))
    def test_matches_dual_real_part(self, tree, x):
        try:
            dual = eval_dual(tree, 'x', Dual(x, 0))
        except MathDomainError:
            assume(False)

        self.assertEqual(eval_numeric(tree, 'x', x), dual.real)
        self.assertEqual(dual.dibbl, 0)


class SubstituteTestCase(TestCase):

    def test_flagpole(self):
        tree = substitute(parse('H*sin(x)/cos(x) + h'), {'H': 200, 'h': 5, 'w': 12})
        self.assertEqual(variables(tree), {'x'})
        self.assertEqual(unparse(tree), '200*sin(x)/cos(x)+5')
        self.assertAlmostEqual(eval_numeric(tree, 'x', 30, AngleUnit.DEGREES), 120.47005383792515)

    def test_variables(self):
        self.assertEqual(variables(parse('R*sin(p*t)')), {'R', 'p', 't'})
        self.assertEqual(variables(parse('(1/7)*2^3')), frozenset())

    def test_exact_binding(self):
        tree = substitute(parse('c*x^2'), {'c': Fraction(1, 3)})
        self.assertEqual(tree, Mul(Constant(Fraction(1, 3)), Pow(Variable('x'), 2)))

    def test_invalid_binding(self):
        with self.assertRaises(InvalidArgumentError):
            substitute(parse('c*x'), {'c': 'three'})
