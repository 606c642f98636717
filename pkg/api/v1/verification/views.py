from rest_framework import status, generics
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from drf_spectacular.utils import extend_schema

from core.models import VerificationRun, CheckOutcome
from core.services.harness_service import HarnessService
from .serializers import (
    VerificationRunSerializer, VerificationRunDetailSerializer, CheckOutcomeSerializer,
    VerificationRequestSerializer,
)


class VerificationRunListCreateView(generics.ListAPIView):
    serializer_class = VerificationRunSerializer
    permission_classes = [AllowAny]
    queryset = VerificationRun.objects.all()
    ordering_fields = ['created_at', 'failed_checks']

    @extend_schema(
        summary="Verification runs",
        description="Stored verification runs, newest first",
    )
    def get(self, request, *args, **kwargs):
        return super().get(request, *args, **kwargs)

    @extend_schema(
        summary="Verify a diagram",
        description="Runs every applicable identity check on the graph and stores the outcome",
        request=VerificationRequestSerializer,
        responses={201: VerificationRunDetailSerializer}
    )
    def post(self, request, *args, **kwargs):
        serializer = VerificationRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        d = serializer.validated_data['graph']

        service = HarnessService()
        report = service.verify_instance(d, all_matchings=serializer.validated_data['all_matchings'])
        run = service.persist_report(report, source=f"api:{d.label}")
        return Response(VerificationRunDetailSerializer(run).data, status=status.HTTP_201_CREATED)


class VerificationRunDetailView(generics.RetrieveAPIView):
    serializer_class = VerificationRunDetailSerializer
    permission_classes = [AllowAny]
    queryset = VerificationRun.objects.prefetch_related('outcomes')


class CheckOutcomeListView(generics.ListAPIView):
    serializer_class = CheckOutcomeSerializer
    permission_classes = [AllowAny]
    queryset = CheckOutcome.objects.select_related('run')
    filterset_fields = ['check_name', 'passed', 'vacuous', 'run']

    @extend_schema(
        summary="Check outcomes",
        description="Per-check outcomes, filterable by check name, result and run",
    )
    def get(self, request, *args, **kwargs):
        return super().get(request, *args, **kwargs)
