from dataclasses import replace

import networkx as nx
from django.test import SimpleTestCase

from core.diagram import (
    Edge, MatchedDiagram, Vertex, add_free_circles, complement_cycles, connected_components,
    diagram_from_dict, diagram_to_dict, disjoint_union, faces, find_bridges, fingerprint,
    genus, mirror, with_matching,
)
from core.exceptions import InvalidDiagramException, ValidationException
from core.services.construction_service import ConstructionService, theta
from core.services.harness_service import GenSpec, HarnessService
from core.services.ihmove_service import IHMoveService
from core.validators import ensure_valid, validate
from .utils import dumbbell, load_fixture


def twisted_theta() -> MatchedDiagram:
    """Theta drawn on the torus: one face."""
    d = theta()
    return replace(d, vertices=(d.vertices[0], Vertex(1, (3, 4, 5))), name='twisted-theta')


class DiagramStructureTests(SimpleTestCase):

    def test_fixture_lookup_tables(self):
        d = load_fixture('theta')
        self.assertEqual(d.name, 'theta')
        self.assertEqual(d.matching_edges, [0])
        self.assertEqual(d.twin[1], 4)
        self.assertEqual(d.succ[5], 4)
        self.assertEqual(d.endpoints(0), (0, 1))
        self.assertEqual(d.next_half_edge_id(), 6)

    def test_face_counts(self):
        self.assertEqual(len(faces(theta())), 3)
        self.assertEqual(len(faces(load_fixture('k4'))), 4)
        self.assertEqual(len(faces(load_fixture('p3-ladder'))), 5)

    def test_genus(self):
        self.assertEqual(genus(load_fixture('k4')), [0])
        self.assertEqual(genus(twisted_theta()), [1])

    def test_complement_cycles(self):
        self.assertEqual(complement_cycles(theta()).lengths, [2])
        self.assertEqual(complement_cycles(load_fixture('p3-ladder')).lengths, [3, 3])
        self.assertEqual(complement_cycles(load_fixture('p3-c')).lengths, [6])
        self.assertEqual(complement_cycles(load_fixture('k4')).lengths, [4])

        empty = complement_cycles(load_fixture('empty-circle'))
        self.assertEqual(empty.count, 0)
        self.assertEqual(empty.free_circles, 1)

    def test_complement_cycle_loops(self):
        cycles = complement_cycles(dumbbell())
        self.assertEqual(cycles.lengths, [1, 1])
        self.assertTrue(cycles.has_odd_cycle())
        self.assertEqual(cycles.shortest(), 1)

    def test_bridges(self):
        self.assertEqual(find_bridges(theta()), set())
        self.assertEqual(find_bridges(load_fixture('p3-c')), set())
        self.assertEqual(find_bridges(dumbbell()), {0})

    def test_disjoint_union_and_components(self):
        union = disjoint_union(theta(), load_fixture('k4'))
        self.assertEqual(len(union), 6)
        self.assertEqual(union.matching_edges, [0, 3, 4])
        ensure_valid(union)

        parts = connected_components(union)
        self.assertEqual([len(p) for p in parts], [2, 4])
        self.assertEqual(parts[0], theta())

    def test_mirror_reverses_rotations(self):
        d = mirror(load_fixture('k4'))
        self.assertEqual(d.vertex_by_id[0].rotation, (8, 4, 0))
        ensure_valid(d)

    def test_with_matching(self):
        d = with_matching(load_fixture('p3-ladder'), [2, 3, 6])
        self.assertEqual(d, load_fixture('p3-c'))
        with self.assertRaises(ValidationException):
            with_matching(theta(), [9])

    def test_fingerprint_ignores_name(self):
        self.assertEqual(fingerprint(theta()), fingerprint(replace(theta(), name='other')))
        self.assertNotEqual(fingerprint(theta()), fingerprint(add_free_circles(theta())))


class DiagramCodecTests(SimpleTestCase):

    def test_dict_roundtrip(self):
        d = load_fixture('p3-c')
        self.assertEqual(diagram_from_dict(diagram_to_dict(d)), d)

    def test_missing_fields(self):
        with self.assertRaises(ValidationException) as cm:
            diagram_from_dict({'vertices': []})
        self.assertIn('edges', cm.exception.details['field_errors'])

    def test_negative_free_circles(self):
        with self.assertRaises(ValidationException) as cm:
            diagram_from_dict({'vertices': [], 'edges': [], 'free_circles': -1})
        self.assertIn('free_circles', cm.exception.details['field_errors'])

    def test_not_an_object(self):
        with self.assertRaises(ValidationException):
            diagram_from_dict([1, 2, 3])

    def test_bad_rotation_entry(self):
        with self.assertRaises(ValidationException):
            diagram_from_dict({'vertices': [{'id': 0}], 'edges': []})


class DiagramValidatorTests(SimpleTestCase):

    def codes(self, d):
        return [v.code for v in validate(d).violations]

    def test_fixtures_are_valid(self):
        for name in ('theta', 'p3-ladder', 'p3-c', 'k4', 'empty-circle'):
            with self.subTest(name=name):
                self.assertTrue(validate(load_fixture(name)).is_valid)

    def test_dumbbell_is_valid(self):
        self.assertTrue(validate(dumbbell()).is_valid)

    def test_missing_matching(self):
        report = validate(with_matching(theta(), []))
        self.assertEqual([v.code for v in report.violations], ['matching', 'matching'])
        self.assertEqual(report.messages()[0], "vertex 0 has no matching half-edge")

    def test_matching_loop(self):
        self.assertIn('matching_loop', self.codes(with_matching(dumbbell(), [1])))

    def test_duplicate_ids(self):
        d = theta()
        doubled = replace(d, vertices=d.vertices + (Vertex(0, (6, 7, 8)),))
        self.assertIn('duplicate_vertex', self.codes(doubled))

    def test_wrong_degree(self):
        d = theta()
        broken = replace(d, vertices=(Vertex(0, (0, 1)), d.vertices[1]))
        codes = self.codes(broken)
        self.assertIn('degree', codes)
        self.assertIn('half_edge_rotation', codes)

    def test_dangling_edge_end(self):
        d = theta()
        broken = replace(d, edges=d.edges[:2] + (Edge(2, (2, 9)),))
        codes = self.codes(broken)
        self.assertIn('half_edge_edge', codes)
        self.assertIn('half_edge_rotation', codes)

    def test_non_spherical(self):
        self.assertEqual(self.codes(twisted_theta()), ['euler'])

    def test_toroidal_k4(self):
        d = load_fixture('k4')
        twisted = replace(d, vertices=(Vertex(0, (0, 8, 4)),) + d.vertices[1:])
        self.assertEqual(self.codes(twisted), ['euler'])
        self.assertEqual(genus(twisted), [1])

    def test_ensure_valid_raises_with_violations(self):
        with self.assertRaises(InvalidDiagramException) as cm:
            ensure_valid(twisted_theta())
        self.assertEqual(cm.exception.details['violations'][0]['code'], 'euler')


def components_without(d: MatchedDiagram, removed=None) -> int:
    graph = nx.MultiGraph()
    graph.add_nodes_from(v.id for v in d.vertices)
    graph.add_edges_from(d.endpoints(e.id) for e in d.edges if e.id != removed)
    return nx.number_connected_components(graph)


def naive_bridges(d: MatchedDiagram) -> set:
    """Edges whose deletion adds a component."""
    base = components_without(d)
    return {e.id for e in d.edges if components_without(d, e.id) > base}


class BridgeOracleTests(SimpleTestCase):

    def diagrams(self):
        harness = HarnessService(threads=1)
        moves = IHMoveService(harness.bracket_service, harness.factor_service)
        for seed in range(12):
            d = harness.generate(GenSpec(6 + 2 * (seed % 4), seed))
            yield d
            for edge in d.matching_edges:
                yield moves.ih_move(d, edge)
        yield from ConstructionService().purpose_built()
        yield dumbbell()

    def test_find_bridges_matches_edge_deletion(self):
        bridged = 0
        for d in self.diagrams():
            with self.subTest(name=d.label):
                expected = naive_bridges(d)
                self.assertEqual(find_bridges(d), expected)
                bridged += bool(expected)
        self.assertTrue(bridged > 0)
