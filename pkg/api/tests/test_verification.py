import json

from django.urls import reverse
from rest_framework import status
from rest_framework.test import APITestCase

from core.models import CheckOutcome, VerificationRun
from core.tests.utils import fixture_path


def graph(name):
    return json.loads(fixture_path(name).read_text())


class VerificationAPITests(APITestCase):

    def create_run(self, name='p3-c', **extra):
        return self.client.post(reverse('verification-runs'), {'graph': graph(name), **extra}, format='json')

    def test_create_run(self):
        response = self.create_run()
        self.assertEqual(response.status_code, status.HTTP_201_CREATED)
        self.assertTrue(response.data['passed'])
        self.assertEqual(response.data['source'], 'api:p3-c')
        self.assertEqual(response.data['failed_checks'], 0)
        self.assertEqual(len(response.data['outcomes']), response.data['total_checks'])
        self.assertIn('tait_identity', {o['check'] for o in response.data['outcomes']})

    def test_create_run_all_matchings(self):
        response = self.create_run('k4', all_matchings=True)
        self.assertEqual(response.status_code, status.HTTP_201_CREATED)
        instances = {o['instance'] for o in response.data['outcomes']}
        self.assertIn('k4/m2', instances)

    def test_create_run_invalid_graph(self):
        broken = graph('theta')
        broken['edges'][0]['matching'] = False
        response = self.client.post(reverse('verification-runs'), {'graph': broken}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertFalse(VerificationRun.objects.exists())

    def test_list_and_detail(self):
        run_id = self.create_run('theta').data['id']
        self.create_run('k4')

        listing = self.client.get(reverse('verification-runs'))
        self.assertEqual(listing.status_code, status.HTTP_200_OK)
        self.assertEqual(listing.data['count'], 2)
        self.assertNotIn('outcomes', listing.data['results'][0])

        detail = self.client.get(reverse('verification-run-detail', args=[run_id]))
        self.assertEqual(detail.status_code, status.HTTP_200_OK)
        self.assertEqual(detail.data['source'], 'api:theta')
        self.assertTrue(detail.data['outcomes'])

    def test_missing_run(self):
        response = self.client.get(reverse('verification-run-detail', args=[999]))
        self.assertEqual(response.status_code, status.HTTP_404_NOT_FOUND)
        self.assertEqual(response.data['error']['code'], 'RESOURCE_NOT_FOUND')

    def test_filter_outcomes(self):
        self.create_run('p3-ladder')
        response = self.client.get(reverse('verification-outcomes'), {'check_name': 'triangle'})
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data['count'], 1)
        outcome = response.data['results'][0]
        self.assertEqual(outcome['check'], 'triangle')
        self.assertTrue(outcome['passed'])
        self.assertFalse(outcome['vacuous'])

    def test_filter_vacuous(self):
        self.create_run('k4')
        response = self.client.get(reverse('verification-outcomes'), {'vacuous': 'true'})
        expected = CheckOutcome.objects.filter(vacuous=True).count()
        self.assertEqual(response.data['count'], expected)
        self.assertTrue(expected > 0)
