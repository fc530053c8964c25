from tests.test_cli import CommandLineTestCase
from tests.test_corpus import ExerciseCaseTestCase, LoadCorpusTestCase, RunCaseTestCase, VerifyTestCase
from tests.test_duals import AngleUnitTestCase, DualArithmeticTestCase, DualTrigonometryTestCase
from tests.test_expressions import EvaluateTestCase, ParseTestCase, SubstituteTestCase, UnparseTestCase
from tests.test_oracle import BinomialTestCase, ConvergenceTestCase, DifferenceTestCase
from tests.test_slopes import (
    AngleConstantTestCase, DerivativeTestCase, EvalDualTestCase, PythagoreanTestCase,
    QuadraticTestCase, SecantTestCase, TangentTestCase)
from tests.test_tables import SamplePointsTestCase, TableRowsTestCase, WriterTestCase
