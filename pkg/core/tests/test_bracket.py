import json

from django.core.cache import cache
from django.test import SimpleTestCase

from core.diagram import add_free_circles, disjoint_union, mirror
from core.exceptions import MoveException, ResourceLimitException, ValidationException
from core.laurent import from_text
from core.services.bracket_service import (
    CROSS, OPEN, BracketService, ResolutionState, StateEngine, resolution_pairing,
)
from core.services.construction_service import theta
from .utils import dumbbell, load_fixture


class BracketServiceTests(SimpleTestCase):

    def setUp(self):
        cache.clear()
        self.service = BracketService(threads=1)

    def test_known_brackets(self):
        cases = {
            'theta': "z^-2 + 1",
            'p3-ladder': "z^-3 - z^2 + z^3 - z^4",
            'p3-c': "z^-2 - z^-1 + 1 + z^3",
            'empty-circle': "z^-1 + z",
        }
        for name, expected in cases.items():
            with self.subTest(name=name):
                self.assertEqual(self.service.bracket(load_fixture(name)).to_text(), expected)

    def test_values_at_one(self):
        self.assertEqual(self.service.bracket_at_one(theta()), 2)
        self.assertEqual(self.service.bracket_at_one(load_fixture('p3-ladder')), 0)
        self.assertEqual(self.service.bracket_at_one(load_fixture('p3-c')), 2)
        self.assertEqual(self.service.bracket_at_one(load_fixture('k4')), 2)

    def test_bridge_diagram_vanishes_at_one(self):
        polynomial = self.service.bracket(dumbbell())
        self.assertEqual(polynomial.to_text(), "z^-1 - 1 + z - z^2")
        self.assertEqual(polynomial.eval_at_one(), 0)

    def test_cached_and_uncached_agree(self):
        uncached = BracketService(use_cache=False)
        d = load_fixture('p3-c')
        self.assertEqual(self.service.bracket(d), uncached.bracket(d))
        self.assertEqual(self.service.bracket(d), uncached.bracket(d))

    def test_free_circles_multiply(self):
        d = add_free_circles(theta(), 2)
        expected = from_text("z^-2 + 1") * from_text("z^-2 + 2 + z^2")
        self.assertEqual(self.service.bracket(d), expected)

    def test_factorization_over_components(self):
        d = add_free_circles(disjoint_union(theta(), load_fixture('p3-c')), 1)
        self.assertEqual(self.service.bracket_state_sum(d), self.service.bracket_factored(d))
        self.assertEqual(
            self.service.bracket(d),
            self.service.bracket(theta()) * self.service.bracket(load_fixture('p3-c')) * from_text("z^-1 + z"),
        )

    def test_mirror_invariance(self):
        for name in ('p3-ladder', 'p3-c', 'k4'):
            d = load_fixture(name)
            with self.subTest(name=name):
                self.assertEqual(self.service.bracket(mirror(d)), self.service.bracket(d))

    def test_state_limit(self):
        service = BracketService(state_limit=2, use_cache=False)
        with self.assertRaises(ResourceLimitException) as cm:
            service.bracket(load_fixture('p3-ladder'))
        self.assertEqual(cm.exception.details, {'limit': 2, 'required': 3})
        self.assertEqual(cm.exception.exit_code, 3)

    def test_state_limit_applies_before_cache(self):
        d = load_fixture('p3-ladder')
        self.service.bracket(d)
        with self.assertRaises(ResourceLimitException):
            BracketService(state_limit=2).bracket(d)

    def test_parallel_histogram_matches_serial(self):
        serial = BracketService(threads=1, use_cache=False)
        parallel = BracketService(threads=2, use_cache=False)
        parallel.parallel_min_states = 2
        d = load_fixture('p3-c')
        self.assertEqual(parallel.state_histogram(d), serial.state_histogram(d))


class ResolutionTests(SimpleTestCase):

    def setUp(self):
        self.service = BracketService(use_cache=False)

    def test_resolution_pairing(self):
        # a = succ(e_u), b = succ(a), c = succ(e_v), d = succ(c)
        self.assertEqual(resolution_pairing(theta(), 0, OPEN), ((1, 4), (2, 5)))
        self.assertEqual(resolution_pairing(theta(), 0, CROSS), ((1, 5), (2, 4)))

    def test_resolution_rejects_bad_input(self):
        with self.assertRaises(MoveException):
            resolution_pairing(theta(), 1, OPEN)
        with self.assertRaises(ValidationException):
            resolution_pairing(theta(), 7, OPEN)
        with self.assertRaises(ValidationException):
            resolution_pairing(theta(), 0, 'diagonal')

    def test_theta_circle_counts(self):
        self.assertEqual(self.service.circle_count(theta(), '0'), 2)
        self.assertEqual(self.service.circle_count(theta(), '1'), 1)

    def test_ladder_circle_counts(self):
        d = load_fixture('p3-ladder')
        expected = {
            '000': 3,
            '100': 2, '010': 2, '001': 2,
            '110': 1, '101': 1, '011': 1,
            '111': 1,
        }
        for bits, circles in expected.items():
            with self.subTest(bits=bits):
                self.assertEqual(self.service.circle_count(d, bits), circles)

    def test_c_matching_circle_counts(self):
        d = load_fixture('p3-c')
        expected = {
            '000': 2,
            '100': 2, '010': 1, '001': 1,
            '110': 1, '101': 1, '011': 2,
            '111': 1,
        }
        for bits, circles in expected.items():
            with self.subTest(bits=bits):
                self.assertEqual(self.service.circle_count(d, bits), circles)

    def test_state_width_must_match(self):
        with self.assertRaises(ValidationException):
            self.service.circle_count(theta(), '01')
        with self.assertRaises(ValidationException):
            ResolutionState.from_string('0x1')

    def test_resolution_state_strings(self):
        state = ResolutionState.from_string('101')
        self.assertEqual(state.bits, 5)
        self.assertEqual(state.cross_count, 2)
        self.assertEqual(state.flip(1).to_string(), '111')

    def test_engine_counts_free_circles(self):
        engine = StateEngine(add_free_circles(theta(), 3))
        self.assertEqual(engine.circle_count(0), 5)


class CubeTests(SimpleTestCase):

    def setUp(self):
        self.service = BracketService(use_cache=False)

    def test_cube_totals_bracket(self):
        d = load_fixture('p3-c')
        cube = self.service.cube(d)
        self.assertEqual(cube.k, 3)
        self.assertEqual(len(cube.states), 8)
        self.assertEqual(len(cube.arrows), 12)
        self.assertEqual([len(column) for column in cube.columns()], [1, 3, 3, 1])
        self.assertEqual(cube.total(), self.service.bracket(d))

    def test_json_export(self):
        data = json.loads(self.service.export_cube(self.service.cube(theta()), 'json'))
        self.assertEqual(data['edges'], [0])
        self.assertEqual(data['arrows'], [['0', '1']])
        self.assertEqual(data['states'][0], {'bits': '0', 'crosses': 0, 'circles': 2, 'term': "z^-2 + 2 + z^2"})
        self.assertEqual(data['states'][1]['term'], "-1 - z^2")

    def test_dot_export(self):
        dot = self.service.export_cube(self.service.cube(theta()), 'dot')
        self.assertTrue(dot.startswith('digraph cube {'))
        self.assertIn('rankdir=LR;', dot)
        self.assertIn('"0" -> "1";', dot)

    def test_unknown_format(self):
        with self.assertRaises(ValidationException):
            self.service.export_cube(self.service.cube(theta()), 'svg')
