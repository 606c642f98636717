from unittest import mock

from django.test import SimpleTestCase

from core.diagram import MatchedDiagram, complement_cycles, disjoint_union, find_bridges, genus
from core.exceptions import MoveException, SearchExhaustedException, ValidationException
from core.services.bracket_service import BracketService
from core.services.construction_service import ConstructionService, theta
from core.services.harness_service import GenSpec, HarnessService
from core.services.ihmove_service import (
    BUBBLE_COLLAPSE, IH, REDUCIBLE_LABELS, SEARCH_NONE, SEARCH_RESTRICTED, SEARCH_UNRESTRICTED,
    SMOOTH_VERTICAL, Bubble, IHMoveService, MoveRecord, is_short,
)
from core.validators import ensure_valid
from .utils import dumbbell, load_fixture


class IHMoveTests(SimpleTestCase):

    def setUp(self):
        self.service = IHMoveService(BracketService(use_cache=False))

    def test_theta_becomes_dumbbell(self):
        moved = self.service.ih_move(theta(), 0)
        self.assertEqual(moved, dumbbell())
        self.assertEqual(moved.name, 'ih(theta,0)')
        self.assertEqual(find_bridges(moved), {0})

    def test_ih_twice_restores_bracket(self):
        d = load_fixture('p3-c')
        twice = self.service.ih_move(self.service.ih_move(d, 3), 3)
        brackets = self.service.bracket_service
        self.assertEqual(brackets.bracket(twice), brackets.bracket(d))
        self.assertEqual(complement_cycles(twice).lengths, complement_cycles(d).lengths)

    def test_ih_keeps_edges(self):
        d = load_fixture('p3-ladder')
        moved = self.service.ih_move(d, 1)
        self.assertEqual(moved.edges, d.edges)
        ensure_valid(moved)

    def test_ih_refuses_non_matching_edge(self):
        with self.assertRaises(MoveException):
            self.service.ih_move(theta(), 1)

    def test_smoothings_of_theta(self):
        vertical = self.service.smooth_vertical(theta(), 0)
        horizontal = self.service.smooth_horizontal(theta(), 0)
        self.assertEqual(vertical, MatchedDiagram((), (), free_circles=2))
        self.assertEqual(horizontal, MatchedDiagram((), (), free_circles=1))

    def test_smoothing_merges_edges(self):
        d = load_fixture('p3-ladder')
        result = self.service.smooth_vertical(d, 0)
        ensure_valid(result)
        self.assertEqual(len(result), 4)
        self.assertEqual(result.matching_edges, [1, 2])
        self.assertEqual(len(result.edges), 6)

    def test_ih_relation_on_fixtures(self):
        for name in ('theta', 'p3-ladder', 'p3-c', 'k4'):
            d = load_fixture(name)
            for edge in d.matching_edges:
                with self.subTest(name=name, edge=edge):
                    records = self.service.check_ih_relation(d, edge)
                    self.assertEqual([r.check for r in records], ['ih_relation_polynomial', 'ih_relation_count'])
                    self.assertTrue(all(r.passed for r in records))

    def test_ih_relation_on_theta_values(self):
        polynomial, count = self.service.check_ih_relation(theta(), 0)
        self.assertEqual(polynomial.details['lhs'], "z^-2 - z^-1 + 2 - z + z^2")
        self.assertEqual(polynomial.details['rhs'], polynomial.details['lhs'])
        self.assertEqual(count.details['counts'], [2, 0, 4, 2])
        self.assertEqual(count.instance, 'theta@0')


class BubbleTests(SimpleTestCase):

    def setUp(self):
        self.service = IHMoveService(BracketService(use_cache=False))
        self.construction = ConstructionService()

    def test_detect(self):
        bubbles = self.service.detect_bubbles(self.construction.nested_bubble_theta(1))
        self.assertEqual([b.edges for b in bubbles], [(1, 2), (3, 4)])
        self.assertEqual(bubbles[1].outer, (0, 5))
        self.assertEqual(bubbles[1].vertices, (2, 3))

    def test_theta_bigon_is_not_a_bubble(self):
        self.assertEqual(self.service.detect_bubbles(theta()), [])
        with self.assertRaises(MoveException):
            self.service.find_bubble(theta(), [1, 2])

    def test_collapse_restores_theta(self):
        d = self.construction.nested_bubble_theta(1)
        collapsed = self.service.collapse_bubble(d, self.service.find_bubble(d, [4, 3]))
        self.assertEqual(collapsed, theta())

    def test_collapse_refuses_single_outer_edge(self):
        with self.assertRaises(MoveException):
            self.service.collapse_bubble(theta(), Bubble((1, 2), (0, 0), (0, 1)))

    def test_bubble_check(self):
        d = self.construction.nested_bubble_theta(2)
        bubbles = self.service.detect_bubbles(d)
        self.assertTrue(bubbles)
        for bubble in bubbles:
            with self.subTest(bubble=bubble.edges):
                record = self.service.check_bubble(d, bubble)
                self.assertTrue(record.passed)
                self.assertEqual(record.details['value'], 2 * record.details['collapsed_value'])


class LocalCheckTests(SimpleTestCase):

    def setUp(self):
        self.service = IHMoveService(BracketService(use_cache=False))
        self.construction = ConstructionService()

    def test_bridge_check(self):
        d = self.construction.bridged_double_theta()
        record = self.service.check_bridge(d)
        self.assertTrue(record.passed)
        self.assertEqual(record.details['bridges'], [8])
        self.assertEqual(record.details['value'], 0)

    def test_bridge_check_vacuous(self):
        record = self.service.check_bridge(load_fixture('k4'))
        self.assertTrue(record.passed)
        self.assertTrue(record.vacuous)

    def test_bubble_on_bridge(self):
        bridged = self.construction.bridged_double_theta()
        d = self.construction.insert_bubble(bridged, 8)
        record = self.service.check_bridge(d)
        self.assertTrue(record.passed)
        self.assertEqual(len(record.details['bridges']), 2)

    def test_triangle_check(self):
        record = self.service.check_triangle(load_fixture('p3-ladder'))
        self.assertTrue(record.passed)
        self.assertEqual(record.details['triangles'], [0, 1])
        self.assertTrue(self.service.check_triangle(load_fixture('p3-c')).vacuous)

    def test_classify_k4(self):
        labels = self.service.classify_faces(load_fixture('k4'))
        self.assertEqual(len(labels), 4)
        self.assertEqual({f.label for f in labels}, {(1, 1)})

    def test_face_configuration(self):
        for name in ('p3-c', 'k4', 'theta'):
            with self.subTest(name=name):
                record = self.service.check_face_configuration(load_fixture(name))
                self.assertTrue(record.passed)
                self.assertFalse(record.vacuous)
        self.assertTrue(self.service.check_face_configuration(load_fixture('p3-ladder')).vacuous)

    def test_single_cycle_has_reducible_face(self):
        labels = {f.label for f in self.service.classify_faces(load_fixture('p3-c'))}
        self.assertTrue(labels & REDUCIBLE_LABELS)


class ReductionTests(SimpleTestCase):

    def setUp(self):
        self.service = IHMoveService(BracketService(use_cache=False))

    def test_already_short(self):
        d = load_fixture('p3-ladder')
        result, moves = self.service.reduce_to_short_cycle(d)
        self.assertEqual(result, d)
        self.assertEqual(moves, [])

    def test_reduce_hexagon(self):
        d = load_fixture('p3-c')
        result, moves = self.service.reduce_to_short_cycle(d)
        self.assertTrue(moves)
        self.assertTrue(is_short(result))
        self.assertEqual(self.service.replay_moves(d, moves), result)
        self.assertTrue(all(m.kind == IH for m in moves))

    def test_reduce_k4(self):
        d = load_fixture('k4')
        result, moves = self.service.reduce_to_short_cycle(d)
        self.assertTrue(is_short(result))
        self.assertEqual(self.service.replay_moves(d, moves), result)

    def test_reduction_check(self):
        record = self.service.check_reduction(load_fixture('p3-c'))
        self.assertEqual(record.check, 'short_cycle_reduction')
        self.assertTrue(record.passed)

    def test_reduction_reports_search_phase(self):
        self.assertEqual(self.service.reduce(load_fixture('p3-ladder')).search, SEARCH_NONE)
        reduction = self.service.reduce(load_fixture('p3-c'))
        self.assertEqual(reduction.search, SEARCH_RESTRICTED)
        self.assertTrue(reduction.face_guided)
        record = self.service.check_reduction(load_fixture('p3-c'))
        self.assertEqual(record.details['search'], SEARCH_RESTRICTED)
        self.assertTrue(record.details['face_guided'])

    def test_unrestricted_fallback_fails_the_check(self):
        d = load_fixture('p3-c')
        with mock.patch.object(self.service, 'classify_faces', return_value=[]):
            reduction = self.service.reduce(d)
            record = self.service.check_reduction(d)
        self.assertEqual(reduction.search, SEARCH_UNRESTRICTED)
        self.assertTrue(is_short(reduction.result))
        self.assertFalse(record.passed)
        self.assertFalse(record.details['face_guided'])
        self.assertEqual(record.details['search'], SEARCH_UNRESTRICTED)
        self.assertIsNotNone(record.witness)

    def test_search_exhausted(self):
        service = IHMoveService(BracketService(use_cache=False), search_depth=0)
        with self.assertRaises(SearchExhaustedException) as cm:
            service.reduce_to_short_cycle(load_fixture('p3-c'))
        self.assertEqual(cm.exception.exit_code, 2)
        self.assertFalse(service.check_reduction(load_fixture('p3-c')).passed)

    def test_preconditions(self):
        with self.assertRaises(ValidationException):
            self.service.reduce_to_short_cycle(disjoint_union(theta(), theta()))
        with self.assertRaises(ValidationException):
            self.service.reduce_to_short_cycle(dumbbell())
        with self.assertRaises(ValidationException):
            self.service.reduce_to_short_cycle(load_fixture('empty-circle'))


class MoveRecordTests(SimpleTestCase):

    def setUp(self):
        self.service = IHMoveService(BracketService(use_cache=False))

    def test_from_dict(self):
        record = MoveRecord.from_dict({'kind': 'ih', 'edges': ['3']})
        self.assertEqual(record, MoveRecord(IH, (3,), ''))

    def test_from_dict_errors(self):
        for data in ({'kind': 'ih'}, {'kind': 'twist', 'edges': [0]}, {'kind': 'ih', 'edges': ['x']}):
            with self.subTest(data=data):
                with self.assertRaises(ValidationException):
                    MoveRecord.from_dict(data)

    def test_replay_mixed_moves(self):
        d = ConstructionService().nested_bubble_theta(1)
        records = [MoveRecord(BUBBLE_COLLAPSE, (3, 4)), MoveRecord(SMOOTH_VERTICAL, (0,))]
        self.assertEqual(self.service.replay_moves(d, records), MatchedDiagram((), (), free_circles=2))


def strand_partition(d: MatchedDiagram, edge_id) -> set:
    """The two pairs of strands plugged into the ends of a matching edge."""
    ends = d.edge_by_id[edge_id].ends
    return {
        frozenset(h for h in d.vertex_by_id[w].rotation if h not in ends)
        for w in d.endpoints(edge_id)
    }


class GeneratedIHMoveTests(SimpleTestCase):

    def setUp(self):
        self.harness = HarnessService(threads=1)
        self.service = self.harness.ihmove_service

    def generated(self):
        for seed in range(10):
            yield self.harness.generate(GenSpec(6 + 2 * (seed % 3), seed))

    def test_ih_move_changes_cycle_count_by_one(self):
        for d in self.generated():
            before = complement_cycles(d).count
            for edge in d.matching_edges:
                with self.subTest(name=d.label, edge=edge):
                    moved = ensure_valid(self.service.ih_move(d, edge))
                    self.assertEqual(genus(moved), [0])
                    self.assertEqual(abs(complement_cycles(moved).count - before), 1)

    def test_ih_move_merges_cycles_of_different_ends(self):
        for d in self.generated():
            cycle_of = complement_cycles(d).cycle_of()
            before = complement_cycles(d).count
            for edge in d.matching_edges:
                u, v = d.endpoints(edge)
                expected = before - 1 if cycle_of[u] != cycle_of[v] else before + 1
                with self.subTest(name=d.label, edge=edge):
                    self.assertEqual(complement_cycles(self.service.ih_move(d, edge)).count, expected)

    def test_rung_move_on_triangular_prism(self):
        d = load_fixture('p3-ladder')
        self.assertEqual(complement_cycles(d).lengths, [3, 3])
        for edge in d.matching_edges:
            with self.subTest(edge=edge):
                moved = self.service.ih_move(d, edge)
                self.assertEqual(complement_cycles(moved).lengths, [6])

    def test_double_move_restores_strand_partition(self):
        brackets = self.harness.bracket_service
        for d in self.generated():
            for edge in d.matching_edges:
                with self.subTest(name=d.label, edge=edge):
                    once = self.service.ih_move(d, edge)
                    twice = ensure_valid(self.service.ih_move(once, edge))
                    self.assertNotEqual(strand_partition(once, edge), strand_partition(d, edge))
                    self.assertEqual(strand_partition(twice, edge), strand_partition(d, edge))
                    self.assertEqual(sorted(complement_cycles(twice).lengths),
                                     sorted(complement_cycles(d).lengths))
                    self.assertEqual(brackets.bracket(twice), brackets.bracket(d))


class BubbleOrderTests(SimpleTestCase):

    def setUp(self):
        self.service = IHMoveService(BracketService(use_cache=False))

    def collapse_in_order(self, d, first, second):
        once = self.service.collapse_bubble(d, self.service.find_bubble(d, first.edges))
        remaining = {b.edges for b in self.service.detect_bubbles(once)}
        if second.edges not in remaining:
            return None
        return self.service.collapse_bubble(once, self.service.find_bubble(once, second.edges))

    def test_collapse_order_does_not_matter(self):
        compared = 0
        for depth in (1, 2, 3):
            d = ConstructionService().nested_bubble_theta(depth)
            bubbles = self.service.detect_bubbles(d)
            for i, first in enumerate(bubbles):
                for second in bubbles[i + 1:]:
                    with self.subTest(depth=depth, first=first.edges, second=second.edges):
                        forward = self.collapse_in_order(d, first, second)
                        backward = self.collapse_in_order(d, second, first)
                        self.assertEqual(forward is None, backward is None)
                        if forward is None:
                            continue
                        compared += 1
                        self.assertEqual(forward, backward)
                        at_one = self.service.bracket_service.bracket_at_one
                        self.assertEqual(at_one(d), 4 * at_one(forward))
        self.assertTrue(compared > 0)
