from django.test import SimpleTestCase

from core.services.closure_service import BOUNDARY, ClosureService, closure_gadget, closure_pairings


def find_pairing(pairs):
    wanted = {tuple(sorted(p)) for p in pairs}
    return next(p for p in closure_pairings() if set(p) == wanted)


class ClosurePairingTests(SimpleTestCase):

    def test_fifteen_pairings(self):
        pairings = closure_pairings()
        self.assertEqual(len(pairings), 15)
        self.assertEqual(len(set(pairings)), 15)
        self.assertEqual(pairings[0], ((12, 13), (14, 15), (16, 17)))
        for pairing in pairings:
            self.assertEqual(sorted(h for pair in pairing for h in pair), list(BOUNDARY))

    def test_gadget_shape(self):
        d = closure_gadget(closure_pairings()[0])
        self.assertEqual(len(d), 6)
        self.assertEqual(d.matching_edges, [0, 1, 2])
        self.assertEqual(len(d.edges), 9)
        self.assertEqual(d.name, 'closure[12-13,14-15,16-17]')


class ClosureIdentityTests(SimpleTestCase):

    def setUp(self):
        self.service = ClosureService()

    def test_lollipops(self):
        result = self.service.evaluate(closure_pairings()[0])
        self.assertEqual(result.pattern(), '1;1,1,1;1,1,1;1')
        self.assertEqual(result.value, 0)

    def test_shifted_arcs(self):
        # p_i joined to q_(i+1)
        result = self.service.evaluate(find_pairing([(12, 15), (14, 17), (16, 13)]))
        self.assertEqual(result.columns, ((1,), (1, 1, 1), (2, 2, 2), (3,)))
        self.assertEqual(result.value, 0)

    def test_crossed_pair(self):
        result = self.service.evaluate(find_pairing([(13, 14), (15, 12), (16, 17)]))
        self.assertEqual([sorted(column) for column in result.columns], [[2], [1, 1, 2], [1, 1, 2], [2]])
        self.assertEqual(result.value, 0)

    def test_identity_holds_for_every_pairing(self):
        results, records = self.service.triangle_closure_identity()
        self.assertEqual(len(results), 15)
        self.assertEqual({r.check for r in records}, {'triangle_closure'})
        self.assertTrue(all(r.passed for r in records))
        self.assertEqual({r.value for r in results}, {0})

    def test_result_dict(self):
        data = self.service.evaluate(closure_pairings()[0]).to_dict()
        self.assertEqual(data, {
            'pairing': [[12, 13], [14, 15], [16, 17]],
            'pattern': '1;1,1,1;1,1,1;1',
            'value': 0,
        })
