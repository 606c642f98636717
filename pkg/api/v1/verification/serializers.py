from rest_framework import serializers

from core.models import VerificationRun, CheckOutcome
from api.v1.diagrams.serializers import DiagramRequestSerializer


class CheckOutcomeSerializer(serializers.ModelSerializer):
    check = serializers.CharField(source='check_name', read_only=True)

    class Meta:
        model = CheckOutcome
        fields = ['id', 'run', 'check', 'instance', 'passed', 'vacuous', 'details', 'witness']
        read_only_fields = fields


class VerificationRunSerializer(serializers.ModelSerializer):
    passed = serializers.BooleanField(read_only=True)

    class Meta:
        model = VerificationRun
        fields = ['id', 'source', 'seed', 'parameters', 'total_checks', 'failed_checks', 'passed', 'created_at']
        read_only_fields = fields


class VerificationRunDetailSerializer(VerificationRunSerializer):
    outcomes = CheckOutcomeSerializer(many=True, read_only=True)

    class Meta(VerificationRunSerializer.Meta):
        fields = VerificationRunSerializer.Meta.fields + ['outcomes']
        read_only_fields = fields


class VerificationRequestSerializer(DiagramRequestSerializer):
    all_matchings = serializers.BooleanField(default=False)
