import numpy as np
from django.test import SimpleTestCase

from Linearization.exceptions import (
    EvaluationError,
    ExpressionSyntaxError,
    MalformedExponentError,
    UnknownIdentifierError,
)
from Linearization.expr import (
    DualScalar,
    ExprNode,
    NativeMap,
    RecenteredMap,
    evaluate,
    evaluate_with_jacobian,
    parse,
)
from Linearization.linalg2 import Mat2
from Linearization.tests.helpers import finite_difference_jacobian, random_points

EXAMPLE_B = '(asinh((sinh(x) + sinh(y))/2), asinh((3*sinh(x) - sinh(y))/2))'


class ParseTest(SimpleTestCase):
    def test_example_a1_evaluates(self):
        planar_map = parse('(x - y^3, -y)')
        self.assertEqual(evaluate(planar_map, (1.0, 2.0)), (-7.0, -2.0))

    def test_identity(self):
        self.assertEqual(evaluate(parse('(x, y)'), (3.5, -1.0)), (3.5, -1.0))

    def test_example_b_at_origin(self):
        self.assertEqual(evaluate(parse(EXAMPLE_B), (0.0, 0.0)), (0.0, 0.0))

    def test_whitespace_is_insignificant(self):
        self.assertEqual(evaluate(parse(' ( x-y ^3 ,-y ) '), (1.0, 2.0)), (-7.0, -2.0))

    def test_unary_minus_binds_tighter_than_power(self):
        self.assertEqual(evaluate(parse('(-y^2, 0)'), (0.0, 3.0)), (9.0, 0.0))

    def test_number_literals(self):
        self.assertEqual(evaluate(parse('(1.5e1 + .5, 2. * x)'), (1.0, 0.0)), (15.5, 2.0))

    def test_non_finite_literal_is_rejected(self):
        with self.assertRaises(ExpressionSyntaxError) as context:
            parse('(x + 1e999, y)')
        self.assertEqual(context.exception.position, 5)
        self.assertIn('not finite', str(context.exception))

    def test_stray_operator_offset(self):
        with self.assertRaises(ExpressionSyntaxError) as context:
            parse('(x - , y)')
        self.assertEqual(context.exception.position, 3)

    def test_unknown_identifier(self):
        with self.assertRaises(UnknownIdentifierError) as context:
            parse('(exp(x), y)')
        self.assertEqual(context.exception.position, 1)

    def test_malformed_exponents(self):
        for source in ('(x^2.5, y)', '(x^-1, y)', '(x^y, y)', '(x^, y)'):
            with self.assertRaises(MalformedExponentError):
                parse(source)

    def test_incomplete_pairs(self):
        for source in ('(x, y', 'x, y)', '(x)', '(x, y) z', '(x, y,)', ''):
            with self.assertRaises(ExpressionSyntaxError):
                parse(source)

    def test_unparse_round_trip(self):
        for source in ('(x - y^3, -y)', EXAMPLE_B, '(-(x + y)^2 / 3.25e-1, sqrt(abs(x*y) + 1) - cosh(-y))'):
            planar_map = parse(source)
            again = parse(planar_map.unparse())
            self.assertEqual(again.nodes, planar_map.nodes)
            for p in random_points(7, 1000, -3.0, 3.0):
                self.assertEqual(again.evaluate(p), planar_map.evaluate(p))


class EvaluationTest(SimpleTestCase):
    def test_division_by_zero_reports_point(self):
        planar_map = parse('(1/x, y)')
        with self.assertRaises(EvaluationError) as context:
            planar_map.evaluate((0.0, 2.0))
        self.assertEqual(context.exception.point, (0.0, 2.0))
        with self.assertRaises(EvaluationError):
            planar_map.evaluate_with_jacobian((0.0, 2.0))

    def test_sqrt_of_negative_is_an_evaluation_error(self):
        with self.assertRaises(EvaluationError):
            parse('(sqrt(x), y)').evaluate((-1.0, 0.0))

    def test_overflow_is_an_evaluation_error(self):
        with self.assertRaises(EvaluationError):
            parse('(cosh(x), y)').evaluate((1000.0, 0.0))

    def test_jacobian_example_a1_at_origin(self):
        image, jacobian = evaluate_with_jacobian(parse('(x - y^3, -y)'), (0.0, 0.0))
        self.assertEqual(image, (0.0, 0.0))
        self.assertEqual(jacobian, Mat2(1.0, 0.0, 0.0, -1.0))

    def test_jacobian_identity(self):
        image, jacobian = evaluate_with_jacobian(parse('(x, y)'), (2.0, -4.0))
        self.assertEqual(image, (2.0, -4.0))
        self.assertEqual(jacobian, Mat2.identity())

    def test_jacobian_example_a2(self):
        jacobian = evaluate_with_jacobian(parse('(-x + y^2, -y)'), (0.0, 2.0))[1]
        self.assertEqual(jacobian, Mat2(-1.0, 4.0, 0.0, -1.0))

    def test_constant_component_has_zero_derivative(self):
        image, jacobian = parse('(2, x)').evaluate_with_jacobian((1.0, 1.0))
        self.assertEqual(image, (2.0, 1.0))
        self.assertEqual(jacobian, Mat2(0.0, 0.0, 1.0, 0.0))

    def test_jacobian_matches_finite_differences(self):
        sources = [
            '(x - y^3, -y)',
            '(sqrt(1 + x^2) * cosh(y/5), x*y/(3 + y^2) - x)',
            '(asinh(x*y/10) + abs(x - 2*y), sinh(x/4) - y^2)',
        ]
        for source in sources:
            planar_map = parse(source)
            for p in random_points(11, 300, -10.0, 10.0):
                propagated = np.array(planar_map.evaluate_with_jacobian(p)[1].rows())
                np.testing.assert_allclose(propagated, finite_difference_jacobian(planar_map, p),
                                           rtol=1e-5, atol=1e-8, err_msg='{0} at {1}'.format(source, p))


class DualScalarTest(SimpleTestCase):
    def test_abs_has_zero_slope_at_kink(self):
        value = abs(DualScalar(0.0, 1.0, 2.0))
        self.assertEqual((value.value, value.dx, value.dy), (0.0, 0.0, 0.0))

    def test_quotient_rule(self):
        quotient = DualScalar.seed_x(2.0) / DualScalar.seed_y(4.0)
        self.assertEqual((quotient.value, quotient.dx, quotient.dy), (0.5, 0.25, -0.125))

    def test_reflected_operations(self):
        value = 1.0 - 2.0 / DualScalar.seed_x(4.0)
        self.assertEqual((value.value, value.dx), (0.5, 0.125))


class MapKindsTest(SimpleTestCase):
    def test_node_arity_is_checked(self):
        with self.assertRaises(ValueError):
            ExprNode('add', (ExprNode('variable-x'),))
        with self.assertRaises(ValueError):
            ExprNode('pow-integer', (ExprNode('variable-x'),), exponent=-1)

    def test_native_map_contract(self):
        planar_map = NativeMap('swap', lambda x, y: (y, x))
        self.assertEqual(planar_map.evaluate((1.0, 2.0)), (2.0, 1.0))
        self.assertEqual(planar_map.evaluate_with_jacobian((1.0, 2.0))[1], Mat2(0.0, 1.0, 1.0, 0.0))
        self.assertEqual(planar_map.describe(), 'native:swap')

    def test_native_map_with_constant_component(self):
        planar_map = NativeMap('constant', lambda x, y: (1.0, y))
        self.assertEqual(planar_map.evaluate_with_jacobian((5.0, 2.0)), ((1.0, 2.0), Mat2(0.0, 0.0, 0.0, 1.0)))

    def test_recentered_map_fixes_origin(self):
        planar_map = RecenteredMap(parse('(-x + y^0, -y)'), (0.5, 0.0))
        self.assertEqual(planar_map.evaluate((0.0, 0.0)), (0.0, 0.0))
        self.assertEqual(planar_map.evaluate((1.0, 2.0)), (-1.0, -2.0))
