"""
DRF serializers for request/response data.
"""

from rest_framework import serializers

from .dispatch import COMMANDS
from .field import PRIME_CEILING
from .harness import SUITES


class RunOverridesSerializer(serializers.Serializer):
    """Optional per-request overrides of the MSEG_* defaults."""
    n = serializers.IntegerField(min_value=1, required=False)
    prime = serializers.IntegerField(min_value=2, max_value=PRIME_CEILING - 1, required=False)
    trials = serializers.IntegerField(min_value=1, max_value=101, required=False)
    seed = serializers.IntegerField(min_value=0, max_value=2**64 - 1, required=False)
    no_timing = serializers.BooleanField(required=False)


class ComputeRequestSerializer(RunOverridesSerializer):
    """Payload for POST /compute/."""
    command = serializers.ChoiceField(choices=sorted(c for c in COMMANDS if c != "verify"))
    inputs = serializers.ListField(
        child=serializers.CharField(max_length=2000, trim_whitespace=True),
        max_length=2,
        required=False,
        default=list,
        help_text="Multisegment texts, e.g. ['[1,1]+[3,4]+[4,7]', '[2,4]+[5,6]+[8,8]']",
    )
    options = serializers.DictField(required=False, default=dict)

    def validate(self, attrs):
        arity, _ = COMMANDS[attrs["command"]]
        if len(attrs["inputs"]) != arity:
            raise serializers.ValidationError(
                {"inputs": f"'{attrs['command']}' takes {arity} input(s)."}
            )
        return attrs


class VerifyRequestSerializer(RunOverridesSerializer):
    """Payload for POST /verify/."""
    suite = serializers.ChoiceField(choices=SUITES)
    params = serializers.DictField(child=serializers.IntegerField(min_value=0), required=False, default=dict)


class VerdictReportSerializer(serializers.Serializer):
    command = serializers.CharField()
    inputs = serializers.ListField(child=serializers.CharField())
    value = serializers.JSONField()
    trials = serializers.IntegerField()
    error_bound = serializers.CharField(allow_null=True)
    elapsed_ms = serializers.IntegerField()
