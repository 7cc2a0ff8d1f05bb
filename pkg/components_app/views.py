import logging

from django.utils import timezone
from rest_framework import status
from rest_framework.decorators import api_view, permission_classes
from rest_framework.permissions import AllowAny
from rest_framework.response import Response

from .dispatch import execute
from .exceptions import ComponentError
from .harness import verify_suite
from .runconfig import RunConfig
from .serializers import (
    ComputeRequestSerializer,
    VerdictReportSerializer,
    VerifyRequestSerializer,
)

logger = logging.getLogger(__name__)

_OVERRIDES = ("n", "prime", "trials", "seed", "no_timing")


def _run_config(validated: dict) -> RunConfig:
    return RunConfig.from_settings().override({key: validated.get(key) for key in _OVERRIDES})


def _error_response(exc: ComponentError) -> Response:
    return Response(
        {"error": str(exc), "type": type(exc).__name__},
        status=exc.http_status,
    )


@api_view(["GET"])
@permission_classes([AllowAny])
def health_check(request):
    """Returns 200 if the service is up."""
    return Response({"status": "ok", "timestamp": timezone.now().isoformat()})


@api_view(["POST"])
@permission_classes([AllowAny])
def compute(request):
    """
    Run one subcommand, exactly as `manage.py mseg` would.

    Malformed multisegments are a 400, precondition violations a 422 and
    randomized trials without a majority a 503, so clients can retry only
    the last kind.
    """
    serializer = ComputeRequestSerializer(data=request.data)
    serializer.is_valid(raise_exception=True)
    data = serializer.validated_data

    try:
        report = execute(data["command"], data["inputs"], data["options"], _run_config(data))
    except ComponentError as exc:
        return _error_response(exc)

    return Response(VerdictReportSerializer(report.to_json()).data, status=status.HTTP_200_OK)


@api_view(["POST"])
@permission_classes([AllowAny])
def verify(request):
    """Run one verification suite and return per-case results."""
    serializer = VerifyRequestSerializer(data=request.data)
    serializer.is_valid(raise_exception=True)
    data = serializer.validated_data

    try:
        config = _run_config(data)
        params = dict(data["params"])
        if config.n is not None:
            params["n"] = config.n
        report = verify_suite(data["suite"], params, config.trial_config)
    except ComponentError as exc:
        return _error_response(exc)

    return Response({**report.to_json(), "ok": report.ok}, status=status.HTTP_200_OK)
