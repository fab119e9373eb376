from django.test import SimpleTestCase

from Linearization import gallery
from Linearization.exceptions import BasePointError
from Linearization.expr import parse
from Linearization.involution import Orientation, Region
from Linearization.linalg2 import Spectrum, eigenvalues, max_abs_entry, spectrum_distance, subtract
from Linearization.spectral import (
    Condition,
    SpectrumSample,
    base_linear_part,
    check_condition_A,
    check_condition_B,
    sample_spectrum,
    theorem_verdict,
)

WINDOW = Region(-5.0, 5.0, -5.0, 5.0)
SMALL = Region(-2.0, 2.0, -2.0, 2.0, grid_n=11)


class SampleSpectrumTest(SimpleTestCase):
    def test_example_a2_spectrum_is_minus_one(self):
        for sample in sample_spectrum(gallery.get('A2').map, WINDOW):
            self.assertEqual(sample.spectrum.values(), (-1.0, -1.0))

    def test_example_a1_trace_product_is_two(self):
        samples = sample_spectrum(gallery.get('A1').map, WINDOW)
        self.assertEqual(len(samples), WINDOW.grid_n ** 2)
        self.assertTrue(all(sample.trace_product == 2.0 for sample in samples))

    def test_identity_spectrum(self):
        for sample in sample_spectrum(parse('(x, y)'), SMALL):
            self.assertEqual(sample.spectrum.values(), (1.0, 1.0))

    def test_eigenvalue_product_is_determinant(self):
        for name in ('A2', 'A4', 'C', 'minus-identity'):
            entry = gallery.get(name)
            for sample in sample_spectrum(entry.map, entry.window):
                det = entry.map.evaluate_with_jacobian(sample.point)[1].det
                self.assertGreater(det, 0.0)
                product = sample.spectrum.lambda1 * sample.spectrum.lambda2
                self.assertLessEqual(abs(product - det), 1e-9, name)

    def test_spectrum_moves_with_the_jacobian(self):
        for name in ('A1', 'A2', 'A3', 'A4', 'flip-y'):
            planar_map = gallery.get(name).map
            n = WINDOW.grid_n
            jacobians = [planar_map.evaluate_with_jacobian(p)[1] for p in WINDOW.nodes()]
            for i, jacobian in enumerate(jacobians):
                neighbours = ([i + 1] if (i + 1) % n else []) + ([i + n] if i + n < len(jacobians) else [])
                for j in neighbours:
                    gap = spectrum_distance(eigenvalues(jacobian), eigenvalues(jacobians[j]))
                    bound = 10.0 * max_abs_entry(subtract(jacobian, jacobians[j])) + 1e-7
                    self.assertLessEqual(gap, bound, name)

    def test_base_point_is_required(self):
        with self.assertRaises(BasePointError):
            base_linear_part(parse('(-x + 1, -y)'))


class ConditionATest(SimpleTestCase):
    def test_example_a2(self):
        samples = sample_spectrum(gallery.get('A2').map, WINDOW)
        for epsilon in (0.1, 0.5, 1.0):
            verdicts = check_condition_A(samples, epsilon)
            self.assertFalse(verdicts[Condition.A_A].holds)
            self.assertTrue(verdicts[Condition.A_B].holds)
            self.assertTrue(verdicts[Condition.A_C].holds)
        self.assertEqual(verdicts[Condition.A_B].margin, 2.0)
        self.assertIsNotNone(verdicts[Condition.A_A].witness)

    def test_example_a4_at_a_wide_interval(self):
        verdicts = check_condition_A(sample_spectrum(gallery.get('A4').map, WINDOW), 0.5)
        self.assertFalse(verdicts[Condition.A_A].holds)
        self.assertTrue(verdicts[Condition.A_B].holds)
        self.assertTrue(verdicts[Condition.A_C].holds)

    def test_identity(self):
        verdicts = check_condition_A(sample_spectrum(parse('(x, y)'), SMALL))
        self.assertTrue(verdicts[Condition.A_A].holds)
        self.assertIsNone(verdicts[Condition.A_A].witness)
        self.assertFalse(verdicts[Condition.A_B].holds)

    def test_example_c_fails_every_condition(self):
        entry = gallery.get('C')
        verdicts = check_condition_A(sample_spectrum(entry.map, entry.window), 0.1)
        for condition in (Condition.A_A, Condition.A_B, Condition.A_C):
            self.assertFalse(verdicts[condition].holds)
            self.assertIsNotNone(verdicts[condition].witness)
        for value in verdicts[Condition.A_B].witness.spectrum.values():
            self.assertAlmostEqual(value.real, 1.0, places=9)
            self.assertLessEqual(abs(value.imag), 1e-9)
        self.assertLess(verdicts[Condition.A_C].margin, 0.0)

    def test_negative_real_spectrum_never_meets_the_interval(self):
        samples = [SpectrumSample((float(i), 0.0), Spectrum(complex(-i - 1.0), complex(-0.5), True), 0.0)
                   for i in range(5)]
        for epsilon in (1e-3, 0.1, 10.0, 1e6):
            self.assertTrue(check_condition_A(samples, epsilon)[Condition.A_B].holds)

    def test_complex_pair_does_not_count_for_the_interval(self):
        samples = [SpectrumSample((0.0, 0.0), Spectrum(complex(1.05, -0.5), complex(1.05, 0.5), False), 0.0)]
        verdicts = check_condition_A(samples, 0.1)
        self.assertTrue(verdicts[Condition.A_B].holds)
        self.assertFalse(verdicts[Condition.A_C].holds)
        self.assertEqual(verdicts[Condition.A_C].margin, -0.5)

    def test_invalid_arguments(self):
        with self.assertRaises(ValueError):
            check_condition_A([], 0.0)
        with self.assertRaises(ValueError):
            check_condition_A([], 0.1, im_tol=0.0)


class ConditionBTest(SimpleTestCase):
    def test_example_a1_margin(self):
        verdict = check_condition_B(sample_spectrum(gallery.get('A1').map, WINDOW))
        self.assertTrue(verdict.holds)
        self.assertEqual(verdict.margin, 3.0)

    def test_example_b_trace_products_are_positive(self):
        samples = sample_spectrum(gallery.get('B').map, WINDOW)
        self.assertTrue(all(sample.trace_product > 0.0 for sample in samples))
        verdict = check_condition_B(samples)
        self.assertTrue(verdict.holds)
        self.assertGreater(verdict.margin, 1.0)

    def test_flip(self):
        samples = sample_spectrum(parse('(x, -y)'), SMALL)
        self.assertTrue(all(sample.trace_product == 2.0 for sample in samples))
        self.assertTrue(check_condition_B(samples).holds)

    def test_violation_has_witness(self):
        samples = [SpectrumSample((0.0, 0.0), None, 0.5), SpectrumSample((1.0, 0.0), None, -2.0)]
        verdict = check_condition_B(samples)
        self.assertFalse(verdict.holds)
        self.assertEqual(verdict.witness.point, (1.0, 0.0))
        self.assertEqual(verdict.margin, -1.0)


class TheoremVerdictTest(SimpleTestCase):
    def test_example_a3(self):
        verdict = theorem_verdict(gallery.get('A3').map, WINDOW)
        self.assertEqual(verdict.orientation, Orientation.REVERSING)
        self.assertTrue(verdict.text.startswith('Theorem B applies (trace condition, margin 3)'))
        self.assertGreaterEqual(verdict.conditions[0].margin, 2.9)
        self.assertTrue(verdict.text.endswith('on window [-5, 5] x [-5, 5]'))

    def test_example_a4(self):
        verdict = theorem_verdict(gallery.get('A4').map, WINDOW)
        self.assertTrue(verdict.linearizable)
        self.assertEqual(verdict.theorem, 'A(c)')
        self.assertTrue(verdict.text.startswith('Theorem A(c) applies (Spc ⊂ ℝ)'))

    def test_identity(self):
        verdict = theorem_verdict(parse('(x, y)'), SMALL)
        self.assertEqual(verdict.text, 'Theorem A(a) applies (φ = I) on window [-2, 2] x [-2, 2]')

    def test_example_c(self):
        entry = gallery.get('C')
        verdict = theorem_verdict(entry.map, entry.window)
        self.assertFalse(verdict.linearizable)
        self.assertEqual(verdict.theorem, '')
        self.assertTrue(verdict.text.startswith('no hypothesis verified; Theorem A(b) violated at witness'))

    def test_gallery_verdicts(self):
        for name in gallery.list_entries():
            entry = gallery.get(name)
            verdict = theorem_verdict(entry.map, entry.window)
            expected = entry.expected.known_verdict
            if expected == gallery.NO_HYPOTHESIS:
                self.assertFalse(verdict.linearizable, name)
            else:
                self.assertEqual('Theorem ' + verdict.theorem, expected, name)
            self.assertEqual(verdict.orientation, entry.expected.orientation, name)
