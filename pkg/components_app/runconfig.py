"""
Run configuration shared by the CLI and the HTTP mirror.

Defaults come from settings.MULTISEGMENT_DEFAULTS (themselves read from
MSEG_* environment variables); explicit flags or request fields win.
"""

from dataclasses import dataclass, replace
from typing import Any, Mapping, Optional

from django.conf import settings

from .engine import TrialConfig
from .exceptions import PreconditionError
from .field import PRIME_CEILING, PrimeField


@dataclass(frozen=True)
class RunConfig:
    n: Optional[int] = None
    prime: int = 2305843009213693951
    trials: int = 5
    seed: int = 0
    json: bool = False
    workers: int = 1
    no_timing: bool = False
    enumeration_limit: int = 1_000_000

    def __post_init__(self):
        if self.n is not None and self.n < 1:
            raise PreconditionError(f"--n must be at least 1, got {self.n}.")
        if self.trials < 1:
            raise PreconditionError(f"--trials must be at least 1, got {self.trials}.")
        if self.workers < 1:
            raise PreconditionError(f"--workers must be at least 1, got {self.workers}.")
        if not 0 <= self.seed < 2**64:
            raise PreconditionError(f"--seed must be a 64-bit unsigned value, got {self.seed}.")
        if self.prime >= PRIME_CEILING:
            raise PreconditionError(f"--prime must be below 2^62, got {self.prime}.")
        PrimeField(self.prime)

    @classmethod
    def from_settings(cls) -> "RunConfig":
        defaults = getattr(settings, "MULTISEGMENT_DEFAULTS", {})
        return cls(
            prime=defaults.get("PRIME", cls.prime),
            trials=defaults.get("TRIALS", cls.trials),
            seed=defaults.get("SEED", cls.seed),
            json=defaults.get("JSON", cls.json),
            workers=defaults.get("WORKERS", cls.workers),
            no_timing=defaults.get("NO_TIMING", cls.no_timing),
            enumeration_limit=defaults.get("ENUMERATION_LIMIT", cls.enumeration_limit),
        )

    def override(self, values: Mapping[str, Any]) -> "RunConfig":
        """Replace fields whose override is not None."""
        changes = {key: value for key, value in values.items() if value is not None}
        return replace(self, **changes)

    @property
    def trial_config(self) -> TrialConfig:
        return TrialConfig(prime=self.prime, trials=self.trials, seed=self.seed, workers=self.workers)
