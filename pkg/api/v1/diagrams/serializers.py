from rest_framework import serializers

from core.diagram import diagram_from_dict
from core.services.ihmove_service import IH, SMOOTH_HORIZONTAL, SMOOTH_VERTICAL
from core.validators import ensure_valid


class DiagramRequestSerializer(serializers.Serializer):
    """A graph document in the bundled JSON format."""

    graph = serializers.JSONField()

    def validate_graph(self, value):
        # Malformed documents raise the domain exceptions, rendered by the
        # project exception handler with their violation lists.
        return ensure_valid(diagram_from_dict(value))


class FactorRequestSerializer(DiagramRequestSerializer):
    enumerate = serializers.BooleanField(default=False)


class TaitRequestSerializer(DiagramRequestSerializer):
    oracle = serializers.BooleanField(default=False)


class MoveRequestSerializer(DiagramRequestSerializer):
    edge = serializers.IntegerField(min_value=0)
    move = serializers.ChoiceField(choices=[IH, SMOOTH_VERTICAL, SMOOTH_HORIZONTAL], default=IH)


class PolynomialSerializer(serializers.Serializer):
    text = serializers.CharField()
    terms = serializers.DictField(child=serializers.IntegerField())
    value_at_one = serializers.IntegerField()

    def to_representation(self, instance):
        return {
            'text': instance.to_text(),
            'terms': instance.to_json(),
            'value_at_one': instance.eval_at_one(),
        }


class BracketResponseSerializer(serializers.Serializer):
    name = serializers.CharField()
    matching_edges = serializers.ListField(child=serializers.IntegerField())
    bracket = PolynomialSerializer()


class FactorResponseSerializer(serializers.Serializer):
    name = serializers.CharField()
    formula = serializers.IntegerField()
    cycle_lengths = serializers.ListField(child=serializers.IntegerField())
    free_circles = serializers.IntegerField()
    enumerated = serializers.IntegerField(required=False)
    two_factors = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()), required=False)


class TaitResponseSerializer(serializers.Serializer):
    name = serializers.CharField()
    matchings = serializers.IntegerField()
    tait = PolynomialSerializer()
    colorings = serializers.IntegerField(required=False)


class MoveResponseSerializer(serializers.Serializer):
    move = serializers.CharField()
    edge = serializers.IntegerField()
    graph = serializers.JSONField()
