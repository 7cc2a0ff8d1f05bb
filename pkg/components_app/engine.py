"""
Randomized engine: generic invariants of irreducible components.

Every operation samples generic points over a large prime field, computes an
exact answer at those points, repeats over independent trials and folds the
trial outcomes into a RandomizedVerdict:

    hom / ext        minimum over trials (an unlucky draw only over-counts)
    star / mw / factor  strict majority, otherwise NoMajorityError

Trial i draws from numpy.random.default_rng([seed, i]), so serial and
threaded execution give identical verdicts.
"""

import functools
import logging
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Generic, Optional, Sequence, TypeVar

import numpy as np

from .activity_log import log_activity
from .exceptions import NoMajorityError, PreconditionError
from .field import MERSENNE_61, PrimeField
from .multisegments import DimVector, Multisegment, index_sets, require_same_ambient
from .preprojective import (
    ext1_dimension,
    hom_dimension,
    hom_dimension_fast,
    is_surjective,
    kernel_profile,
    random_extension,
    random_morphism,
    sample_generic,
)
from .quiver import multisegment_from_ranks, rank_profile

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass(frozen=True)
class TrialConfig:
    prime: int = MERSENNE_61
    trials: int = 5
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise PreconditionError(f"At least one trial is required, got {self.trials}.")
        if self.workers < 1:
            raise PreconditionError(f"At least one worker is required, got {self.workers}.")
        if self.seed < 0:
            raise PreconditionError(f"Seeds are non-negative, got {self.seed}.")
        PrimeField(self.prime)

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.prime)

    def stream(self, trial: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, trial])


@dataclass(frozen=True)
class RandomizedVerdict(Generic[T]):
    value: T
    trials: int
    error_bound: Fraction
    outcomes: tuple = ()


def run_trials(config: TrialConfig, trial: Callable[[PrimeField, np.random.Generator], T]) -> list[T]:
    """Run `trial` once per trial index, in parallel when workers > 1."""
    field = config.field

    def _one(index: int) -> T:
        outcome = trial(field, config.stream(index))
        logger.debug("trial %d -> %s", index, outcome)
        return outcome

    if config.workers > 1 and config.trials > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            return list(pool.map(_one, range(config.trials)))
    return [_one(index) for index in range(config.trials)]


def _per_trial_bound(exposure: int, prime: int) -> Fraction:
    return min(Fraction(1), Fraction(max(exposure, 1), prime))


def _minimum_bound(exposure: int, config: TrialConfig) -> Fraction:
    return _per_trial_bound(exposure, config.prime) ** config.trials


def _majority_bound(exposure: int, config: TrialConfig) -> Fraction:
    needed = config.trials // 2 + 1
    bound = math.comb(config.trials, needed) * _per_trial_bound(exposure, config.prime) ** needed
    return min(Fraction(1), bound)


def _minimum(outcomes: Sequence[int], exposure: int, config: TrialConfig, label: str) -> RandomizedVerdict:
    if len(set(outcomes)) > 1:
        logger.warning("%s: trials disagree %s, keeping the minimum", label, list(outcomes))
        log_activity("trial_disagreement", {"operation": label, "outcomes": list(outcomes)})
    return RandomizedVerdict(
        value=min(outcomes),
        trials=config.trials,
        error_bound=_minimum_bound(exposure, config),
        outcomes=tuple(outcomes),
    )


def _majority(outcomes: Sequence, exposure: int, config: TrialConfig, label: str) -> RandomizedVerdict:
    counts = Counter(outcomes)
    value, count = counts.most_common(1)[0]
    if len(counts) > 1:
        logger.warning("%s: trials disagree (%d distinct outcomes)", label, len(counts))
        log_activity("trial_disagreement", {
            "operation": label,
            "outcomes": [str(o) for o in outcomes],
        })
    if 2 * count <= len(outcomes):
        raise NoMajorityError(
            f"{label}: no strict majority among {len(outcomes)} trials; "
            "retry with more trials or a larger prime.",
            outcomes=outcomes,
        )
    return RandomizedVerdict(
        value=value,
        trials=config.trials,
        error_bound=_majority_bound(exposure, config),
        outcomes=tuple(outcomes),
    )


def _degree_zero(d1: DimVector, d2: DimVector) -> int:
    return sum(a * b for a, b in zip(d1, d2))


def _cochains(d1: DimVector, d2: DimVector) -> int:
    n = len(d1)
    return sum(
        d1.at(s) * d2.at(s + 1) + d1.at(s + 1) * d2.at(s) for s in range(1, n)
    )


def _profile_exposure(dims: DimVector, degree: int) -> int:
    n = len(dims)
    return sum(
        (b - a) * degree * min(dims.at(a), dims.at(b))
        for a in range(1, n + 1) for b in range(a + 1, n + 1)
    )


def _points(m: Multisegment, n: Multisegment, same_point: bool, field, rng):
    x1 = sample_generic(m, field, rng)
    if same_point:
        return x1, x1
    return x1, sample_generic(n, field, rng)


def hom_pi(m: Multisegment, n: Multisegment, config: TrialConfig, fast: bool = False) -> RandomizedVerdict[int]:
    """
    Generic dim Hom_Pi between points of the components of m and n.

    For m == n this is dim End_Pi(x) of one generic point x.
    """
    require_same_ambient(m, n)
    solver = hom_dimension_fast if fast else hom_dimension
    same_point = m == n

    def trial(field, rng):
        x1, x2 = _points(m, n, same_point, field, rng)
        return solver(field, x1, x2)

    exposure = len(index_sets(m, n).V)
    return _minimum(run_trials(config, trial), exposure, config, "hom")


def _ext1(m: Multisegment, n: Multisegment, config: TrialConfig, same_point: bool) -> RandomizedVerdict[int]:
    require_same_ambient(m, n)

    def trial(field, rng):
        x1, x2 = _points(m, n, same_point, field, rng)
        return ext1_dimension(field, x1, x2)

    exposure = len(index_sets(m, n).V) + _cochains(m.grdim(), n.grdim())
    return _minimum(run_trials(config, trial), exposure, config, "ext1")


def ext1_pi(m: Multisegment, n: Multisegment, config: TrialConfig) -> RandomizedVerdict[int]:
    """Generic dim Ext^1_Pi(x1, x2); x1 = x2 when m == n."""
    return _ext1(m, n, config, same_point=m == n)


def is_rigid(m: Multisegment, config: TrialConfig) -> RandomizedVerdict[bool]:
    ext = _ext1(m, m, config, same_point=True)
    return RandomizedVerdict(ext.value == 0, ext.trials, ext.error_bound, ext.outcomes)


def strongly_commute(m: Multisegment, n: Multisegment, config: TrialConfig) -> RandomizedVerdict[bool]:
    """Ext^1 between independent generic points, also when m == n."""
    ext = _ext1(m, n, config, same_point=False)
    return RandomizedVerdict(ext.value == 0, ext.trials, ext.error_bound, ext.outcomes)


def star(m: Multisegment, n: Multisegment, config: TrialConfig) -> RandomizedVerdict[Multisegment]:
    """Parameter of the closure of generic extensions with quotient in C_m and sub in C_n."""
    require_same_ambient(m, n)

    def trial(field, rng):
        x1 = sample_generic(m, field, rng)
        x2 = sample_generic(n, field, rng)
        t_plus = random_extension(field, x1, x2, rng)
        return multisegment_from_ranks(rank_profile(t_plus, field))

    cochains = _cochains(m.grdim(), n.grdim())
    exposure = cochains + _profile_exposure(m.grdim() + n.grdim(), cochains + 1)
    verdict = _majority(run_trials(config, trial), exposure, config, "star")
    logger.info("star(%s, %s) = %s", m, n, verdict.value)
    return verdict


def commute(m: Multisegment, n: Multisegment, config: TrialConfig) -> RandomizedVerdict[bool]:
    left = star(m, n, config)
    right = star(n, m, config)
    return RandomizedVerdict(
        value=left.value == right.value,
        trials=config.trials,
        error_bound=min(Fraction(1), left.error_bound + right.error_bound),
        outcomes=(left.value, right.value),
    )


def mw_involution(m: Multisegment, config: TrialConfig) -> RandomizedVerdict[Multisegment]:
    """Q-dual parameter of the component of m, from the T- ranks of a generic point."""
    return _mw_cached(m, config)


@functools.lru_cache(maxsize=4096)
def _mw_cached(m: Multisegment, config: TrialConfig) -> RandomizedVerdict[Multisegment]:
    def trial(field, rng):
        x = sample_generic(m, field, rng)
        return multisegment_from_ranks(rank_profile(x.t_minus, field))

    exposure = _profile_exposure(m.grdim(), 1)
    return _majority(run_trials(config, trial), exposure, config, "mw")


def factor(
    m_c: Multisegment,
    m_1: Multisegment,
    config: TrialConfig,
    check_rigid: bool = True,
) -> RandomizedVerdict[Optional[Multisegment]]:
    """
    The unique m_2 with star(m_1, m_2) = m_c, or None when no such factor exists.

    Each trial draws a single random phi in Hom_Pi(x, x_1); when phi is
    onto, the kernel of phi is a generic point of the second factor.
    """
    require_same_ambient(m_c, m_1)
    if check_rigid and not is_rigid(m_1, config).value:
        raise PreconditionError(f"{m_1} is not rigid; factorization needs a rigid factor.")

    if not m_1.grdim().dominated_by(m_c.grdim()):
        return RandomizedVerdict(None, config.trials, Fraction(0), ())

    target_dims = list(m_1.grdim())

    def trial(field, rng):
        x = sample_generic(m_c, field, rng)
        x1 = sample_generic(m_1, field, rng)
        phi = random_morphism(field, x, x1, rng)
        if not is_surjective(field, phi, target_dims):
            return None
        return multisegment_from_ranks(kernel_profile(field, x, phi))

    outcomes = run_trials(config, trial)
    present = [o for o in outcomes if o is not None]
    exposure = len(index_sets(m_c, m_1).V) + _profile_exposure(m_c.grdim(), len(index_sets(m_c, m_1).V) + 1)
    if not present:
        return RandomizedVerdict(None, config.trials, _minimum_bound(exposure, config), tuple(outcomes))
    verdict = _majority(present, exposure, config, "factor")
    return RandomizedVerdict(verdict.value, config.trials, verdict.error_bound, tuple(outcomes))
