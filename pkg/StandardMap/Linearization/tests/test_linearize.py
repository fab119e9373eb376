import math

from django.test import SimpleTestCase

from Linearization import gallery
from Linearization.exceptions import BasePointError, NotApplicableError
from Linearization.expr import parse
from Linearization.involution import Region
from Linearization.linalg2 import Mat2, add, max_abs_entry, multiply, norm, scale, subtract
from Linearization.linearize import (
    Collision,
    auxiliary_map,
    auxiliary_residual,
    conjugacy_residual,
    injectivity_scan,
    spectrum_shift_check,
    standard_map,
    theorem_B_jacobian_check,
)
from Linearization.tests.helpers import random_points

WINDOW = Region(-5.0, 5.0, -5.0, 5.0)


def gallery_entries():
    for name in gallery.list_entries():
        yield gallery.get(name)
    for name in ('A1', 'A2', 'A3', 'A4'):
        for n in (0, 2):
            yield gallery.get(name, n)


class StandardMapTest(SimpleTestCase):
    def test_closed_forms(self):
        for name in ('A1', 'A2'):
            entry = gallery.get(name, 1)
            h, known = standard_map(entry.map), entry.known_standard_map()
            for p in random_points(3, 1000, -5.0, 5.0):
                computed, expected = h.evaluate(p), known.evaluate(p)
                self.assertLessEqual(math.dist(computed, expected), 1e-12, '{0} at {1}'.format(name, p))

    def test_every_known_closed_form(self):
        for entry in gallery_entries():
            known = entry.known_standard_map()
            if known is None:
                continue
            h = standard_map(entry.map)
            for p in random_points(4, 200, -3.0, 3.0):
                self.assertLessEqual(math.dist(h.evaluate(p), known.evaluate(p)), 1e-9, entry.tag)

    def test_minus_identity_gives_identity(self):
        h = standard_map(parse('(-x, -y)'))
        self.assertEqual(h.evaluate((2.0, -3.0)), (2.0, -3.0))
        self.assertEqual(h.linear_part, Mat2.diagonal(-1, -1))

    def test_base_point_must_be_fixed(self):
        with self.assertRaises(BasePointError):
            standard_map(parse('(-x + 1, -y)'))
        with self.assertRaises(BasePointError):
            auxiliary_map(parse('(-x + 1, -y)'))

    def test_conjugacy_identity(self):
        for entry in gallery_entries():
            h = standard_map(entry.map)
            bound = max(abs(v) for v in entry.window.bounds())
            for p in random_points(5, 10000 if entry.parameter_n is None else 1000, -bound, bound):
                self.assertLessEqual(conjugacy_residual(h, p), 1e-9, '{0} at {1}'.format(entry.tag, p))

    def test_auxiliary_map_halves_to_h(self):
        for entry in gallery_entries():
            h = standard_map(entry.map)
            for p in random_points(6, 200, -3.0, 3.0):
                self.assertLessEqual(auxiliary_residual(h, p), 1e-12 * (1.0 + norm(h.evaluate(p))),
                                     '{0} at {1}'.format(entry.tag, p))

    def test_jacobian_of_h(self):
        for entry in gallery_entries():
            h = standard_map(entry.map)
            half_identity = scale(0.5, Mat2.identity())
            for p in random_points(8, 200, -3.0, 3.0):
                jacobian = entry.map.evaluate_with_jacobian(p)[1]
                expected = add(half_identity, scale(0.5, multiply(h.linear_part, jacobian)))
                deviation = max_abs_entry(subtract(h.evaluate_with_jacobian(p)[1], expected))
                self.assertLessEqual(deviation, 1e-10, '{0} at {1}'.format(entry.tag, p))


class InjectivityTest(SimpleTestCase):
    def test_linearizable_examples_have_no_collision(self):
        for name in ('A1', 'A2', 'A3', 'A4', 'B'):
            entry = gallery.get(name)
            certificate = injectivity_scan(standard_map(entry.map), entry.window, scan_n=201)
            self.assertEqual(certificate.status, Collision.NONE, name)
            self.assertIsNone(certificate.witness_pair)

    def test_example_c_collapses_a_ball(self):
        h = standard_map(gallery.get('C').map)
        certificate = injectivity_scan(h, Region(0.0, 6.0, 0.0, 6.0), scan_n=201)
        self.assertEqual(certificate.status, Collision.FOUND)
        first, second = certificate.witness_pair
        self.assertGreaterEqual(math.dist(first, second), certificate.separation_min)
        for witness in (first, second):
            self.assertLessEqual(math.dist(witness, (3.0, 3.0)), 1.0)
            self.assertLessEqual(math.dist(h.evaluate(witness), (3.0, 3.0)), 1e-9)

    def test_scan_size(self):
        with self.assertRaises(ValueError):
            injectivity_scan(standard_map(parse('(x, -y)')), WINDOW, scan_n=1)


class SpectrumShiftTest(SimpleTestCase):
    def test_examples_a2_and_a4(self):
        for name in ('A2', 'A4'):
            self.assertLessEqual(spectrum_shift_check(gallery.get(name).map, WINDOW), 1e-9, name)

    def test_needs_minus_identity_linear_part(self):
        with self.assertRaises(NotApplicableError):
            spectrum_shift_check(gallery.get('A1').map, WINDOW)


class JacobianBoundsTest(SimpleTestCase):
    def test_example_a1(self):
        bounds = theorem_B_jacobian_check(standard_map(gallery.get('A1').map), WINDOW)
        self.assertEqual(bounds.min_trace, 2.0)
        self.assertEqual(bounds.min_det, 1.0)

    def test_example_b(self):
        bounds = theorem_B_jacobian_check(standard_map(gallery.get('B').map), Region(-3.0, 3.0, -3.0, 3.0))
        self.assertGreater(bounds.min_trace, 0.5)
        self.assertGreater(bounds.min_det, 0.0)
