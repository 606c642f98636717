import json
import logging

from rest_framework.decorators import api_view, permission_classes
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from drf_spectacular.utils import extend_schema

from core.diagram import complement_cycles, diagram_to_dict
from core.services.bracket_service import BracketService
from core.services.factor_service import FactorService
from core.services.ihmove_service import IHMoveService, SMOOTH_HORIZONTAL, SMOOTH_VERTICAL
from .serializers import (
    DiagramRequestSerializer, FactorRequestSerializer, TaitRequestSerializer, MoveRequestSerializer,
    BracketResponseSerializer, FactorResponseSerializer, TaitResponseSerializer, MoveResponseSerializer,
    PolynomialSerializer,
)

logger = logging.getLogger('api')


@extend_schema(
    summary="2-factor bracket",
    description="State-sum bracket of a matched diagram, with its value at z = 1",
    request=DiagramRequestSerializer,
    responses={200: BracketResponseSerializer}
)
@api_view(['POST'])
@permission_classes([AllowAny])
def bracket(request):
    serializer = DiagramRequestSerializer(data=request.data)
    serializer.is_valid(raise_exception=True)
    d = serializer.validated_data['graph']

    polynomial = BracketService().bracket(d)
    return Response({
        'name': d.label,
        'matching_edges': d.matching_edges,
        'bracket': PolynomialSerializer(polynomial).data,
    })


@extend_schema(
    summary="Cube of resolutions",
    description="All resolution states with circle counts, terms and single-bit-flip arrows",
    request=DiagramRequestSerializer,
)
@api_view(['POST'])
@permission_classes([AllowAny])
def cube(request):
    serializer = DiagramRequestSerializer(data=request.data)
    serializer.is_valid(raise_exception=True)

    service = BracketService()
    result = service.cube(serializer.validated_data['graph'])
    return Response(json.loads(service.export_cube(result, 'json')))


@extend_schema(
    summary="2-factor count",
    description="Closed-form count of 2-factors through the matching, optionally checked by enumeration",
    request=FactorRequestSerializer,
    responses={200: FactorResponseSerializer}
)
@api_view(['POST'])
@permission_classes([AllowAny])
def factors(request):
    serializer = FactorRequestSerializer(data=request.data)
    serializer.is_valid(raise_exception=True)
    d = serializer.validated_data['graph']

    service = FactorService()
    data = {
        'name': d.label,
        'formula': service.two_factor_count_formula(d),
        'cycle_lengths': complement_cycles(d).lengths,
        'free_circles': d.free_circles,
    }
    if serializer.validated_data['enumerate']:
        found = service.two_factor_enumerate(d)
        data['enumerated'] = len(found)
        data['two_factors'] = [list(f) for f in found]
    return Response(data)


@extend_schema(
    summary="Planar Tait polynomial",
    description="Sum of brackets over every perfect matching; the oracle flag adds a brute-force coloring count",
    request=TaitRequestSerializer,
    responses={200: TaitResponseSerializer}
)
@api_view(['POST'])
@permission_classes([AllowAny])
def tait(request):
    serializer = TaitRequestSerializer(data=request.data)
    serializer.is_valid(raise_exception=True)
    d = serializer.validated_data['graph']

    service = FactorService()
    data = {
        'name': d.label,
        'matchings': len(service.enumerate_perfect_matchings(d)),
        'tait': PolynomialSerializer(service.tait_polynomial(d)).data,
    }
    if serializer.validated_data['oracle']:
        data['colorings'] = service.tait_colorings_count(d)
    return Response(data)


@extend_schema(
    summary="Local move",
    description="IH-move or smoothing at a matching edge; returns the rewritten graph",
    request=MoveRequestSerializer,
    responses={200: MoveResponseSerializer}
)
@api_view(['POST'])
@permission_classes([AllowAny])
def moves(request):
    serializer = MoveRequestSerializer(data=request.data)
    serializer.is_valid(raise_exception=True)
    d = serializer.validated_data['graph']
    edge = serializer.validated_data['edge']
    move = serializer.validated_data['move']

    service = IHMoveService()
    if move == SMOOTH_VERTICAL:
        result = service.smooth_vertical(d, edge)
    elif move == SMOOTH_HORIZONTAL:
        result = service.smooth_horizontal(d, edge)
    else:
        result = service.ih_move(d, edge)

    logger.info(f"{move} on edge {edge} of {d.label}")
    return Response({'move': move, 'edge': edge, 'graph': diagram_to_dict(result)})
