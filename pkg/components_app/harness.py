"""
Enumeration, random sampling and the batch verification suites.

Each suite draws its cases up front from numpy.random.default_rng(seed),
then evaluates them on a thread pool; results are merged in case order,
so a suite report depends only on (suite, params, seed, prime, trials).
"""

import itertools
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field, replace
from typing import Any, Callable, Iterator, Mapping, Optional, Sequence

import numpy as np

from .activity_log import log_activity
from .engine import (
    TrialConfig,
    ext1_pi,
    factor,
    hom_pi,
    is_rigid,
    mw_involution,
    star,
    strongly_commute,
)
from .exceptions import ComponentError, EnumerationLimitError, PreconditionError
from .matching import hom_pi_lamina, matching_condition
from .multisegments import DimVector, Multisegment, Segment, parse_multisegment
from .patterns import (
    avoids_1324_2143,
    is_balanced,
    is_ladder,
    is_regular,
    multisegment_of_permutation,
)
from .recipes import balanced_peel, star_balanced, star_segment

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_LIMIT = 1_000_000

SUITES = (
    "lm-sweep",
    "balanced-vs-rigid",
    "mw-involution",
    "duality-star",
    "matching-vs-star",
    "recipes-vs-randomized",
    "worked-examples",
)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def segment_catalog(n: int) -> list[Segment]:
    """All segments on n sites, shortest first, then by begin."""
    return sorted(
        (Segment(a, b) for a in range(1, n + 1) for b in range(a, n + 1)),
        key=lambda s: (len(s), s.begin),
    )


def _count_multisets(kinds: int, max_size: int) -> int:
    return sum(math.comb(kinds + size - 1, size) for size in range(max_size + 1))


def _passes(m: Multisegment, regular: bool, ladder: bool) -> bool:
    if regular and not is_regular(m):
        return False
    if ladder and not is_ladder(m):
        return False
    return True


def _by_dimension(catalog: Sequence[Segment], dims: DimVector, limit: int) -> list[tuple[int, ...]]:
    found: list[tuple[int, ...]] = []
    remaining = list(dims.counts)

    def _extend(start: int, chosen: list[int]) -> None:
        if not any(remaining):
            found.append(tuple(chosen))
            if len(found) > limit:
                raise EnumerationLimitError(
                    f"More than {limit} multisegments have dimension {dims.counts}."
                )
            return
        for index in range(start, len(catalog)):
            segment = catalog[index]
            if all(remaining[site - 1] > 0 for site in segment.sites()):
                for site in segment.sites():
                    remaining[site - 1] -= 1
                chosen.append(index)
                _extend(index, chosen)
                chosen.pop()
                for site in segment.sites():
                    remaining[site - 1] += 1

    _extend(0, [])
    return sorted(found, key=lambda combo: (len(combo), combo))


def enumerate_multisegments(
    n: Optional[int] = None,
    max_segments: Optional[int] = None,
    dims: Optional[DimVector] = None,
    regular: bool = False,
    ladder: bool = False,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> Iterator[Multisegment]:
    """
    Stream every multisegment within the bound exactly once.

    The bound is either (n, max_segments) or an exact dimension vector.
    Output is ordered by number of segments, then by the positions of the
    segments in segment_catalog(n).
    """
    if dims is not None:
        n = len(dims)
        catalog = segment_catalog(n)
        combos = _by_dimension(catalog, dims, limit)
    else:
        if n is None or max_segments is None:
            raise PreconditionError("Enumeration needs either dims or both n and max_segments.")
        if n < 1 or max_segments < 0:
            raise PreconditionError("Enumeration bounds must be positive.")
        catalog = segment_catalog(n)
        total = _count_multisets(len(catalog), max_segments)
        if total > limit:
            raise EnumerationLimitError(
                f"n={n} with up to {max_segments} segments gives {total} multisegments; "
                f"the limit is {limit}."
            )
        combos = (
            combo
            for size in range(max_segments + 1)
            for combo in itertools.combinations_with_replacement(range(len(catalog)), size)
        )

    for combo in combos:
        m = Multisegment(n, tuple(catalog[i] for i in combo))
        if _passes(m, regular, ladder):
            yield m


# ---------------------------------------------------------------------------
# Random sampling
# ---------------------------------------------------------------------------

def random_segment(rng: np.random.Generator, n: int) -> Segment:
    a, b = sorted(int(x) for x in rng.integers(1, n + 1, size=2))
    return Segment(a, b)


def random_multisegment(rng: np.random.Generator, n: int, max_segments: int) -> Multisegment:
    size = int(rng.integers(0, max_segments + 1))
    return Multisegment(n, tuple(random_segment(rng, n) for _ in range(size)))


def random_regular(
    rng: np.random.Generator,
    n: int,
    max_segments: int,
    min_segments: int = 1,
) -> Multisegment:
    """Distinct begins and ends paired at random; pairings with a begin past its end are redrawn."""
    upper = min(max_segments, n)
    while True:
        size = int(rng.integers(min_segments, upper + 1))
        begins = rng.choice(np.arange(1, n + 1), size=size, replace=False)
        ends = rng.permutation(rng.choice(np.arange(1, n + 1), size=size, replace=False))
        if all(b <= e for b, e in zip(begins, ends)):
            return Multisegment(n, tuple(Segment(int(b), int(e)) for b, e in zip(begins, ends)))


def random_ladder(
    rng: np.random.Generator,
    n: int,
    max_segments: int,
    min_segments: int = 1,
) -> Multisegment:
    upper = min(max_segments, n)
    while True:
        size = int(rng.integers(min_segments, upper + 1))
        begins = np.sort(rng.choice(np.arange(1, n + 1), size=size, replace=False))
        ends = np.sort(rng.choice(np.arange(1, n + 1), size=size, replace=False))
        if all(b <= e for b, e in zip(begins, ends)):
            return Multisegment(n, tuple(Segment(int(b), int(e)) for b, e in zip(begins, ends)))


def random_balanced(rng: np.random.Generator, n: int, max_segments: int) -> Multisegment:
    while True:
        m = random_regular(rng, n, max_segments)
        if is_balanced(m):
            return m


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CaseResult:
    label: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"case": self.label, "passed": self.passed, "detail": self.detail}


@dataclass
class SuiteReport:
    suite: str
    params: dict
    cases: list[CaseResult] = dataclass_field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for case in self.cases if case.passed)

    @property
    def failed(self) -> int:
        return len(self.cases) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "passed": self.passed,
            "failed": self.failed,
            "total": len(self.cases),
            "cases": [case.to_json() for case in self.cases],
        }

    def summary(self) -> str:
        return f"{self.suite}: {self.passed}/{len(self.cases)} passed"


Check = Callable[[TrialConfig], tuple[bool, str]]


def _expect(actual: Any, expected: Any) -> tuple[bool, str]:
    return actual == expected, f"got {actual}, expected {expected}"


def _lm_sweep(rng, params) -> list[tuple[str, Check]]:
    """Every permutation of size 2 through k."""
    k = int(params.get("k", 4))
    cases = []
    sweep = itertools.chain.from_iterable(
        itertools.permutations(range(1, size + 1)) for size in range(2, k + 1)
    )
    for w in sweep:
        m = multisegment_of_permutation(w)
        expected = avoids_1324_2143(w)
        label = "".join(str(x) for x in w) if k < 10 else ",".join(str(x) for x in w)
        cases.append((label, lambda cfg, m=m, e=expected: _expect(is_rigid(m, cfg).value, e)))
    return cases


def _balanced_vs_rigid(rng, params) -> list[tuple[str, Check]]:
    samples = int(params.get("samples", 200))
    n = int(params.get("n", 8))
    max_segments = int(params.get("max_segments", 6))
    cases = []
    for _ in range(samples):
        m = random_regular(rng, n, max_segments)
        cases.append((m.to_text(), lambda cfg, m=m: _expect(is_rigid(m, cfg).value, is_balanced(m))))
    return cases


def _mw_round_trip(m: Multisegment, cfg: TrialConfig) -> tuple[bool, str]:
    image = mw_involution(m, cfg).value
    back = mw_involution(image, cfg).value
    ok = back == m and image.grdim() == m.grdim()
    return ok, f"mw = {image}, mw(mw) = {back}"


def _mw_involution(rng, params) -> list[tuple[str, Check]]:
    samples = int(params.get("samples", 500))
    n = int(params.get("n", 8))
    max_segments = int(params.get("max_segments", 5))
    cases = []
    for _ in range(samples):
        m = random_multisegment(rng, n, max_segments)
        cases.append((m.to_text(), lambda cfg, m=m: _mw_round_trip(m, cfg)))
    return cases


def _duality_check(m: Multisegment, k: Multisegment, cfg: TrialConfig) -> tuple[bool, str]:
    left = star(m, k, cfg).value.dual()
    right = star(k.dual(), m.dual(), cfg).value
    return _expect(left, right)


def _duality_star(rng, params) -> list[tuple[str, Check]]:
    samples = int(params.get("samples", 200))
    n = int(params.get("n", 7))
    max_segments = int(params.get("max_segments", 3))
    cases = []
    for _ in range(samples):
        m = random_multisegment(rng, n, max_segments)
        k = random_multisegment(rng, n, max_segments)
        cases.append((f"{m} * {k}", lambda cfg, m=m, k=k: _duality_check(m, k, cfg)))
    return cases


def _matching_check(m: Multisegment, k: Multisegment, cfg: TrialConfig) -> tuple[bool, str]:
    holds = matching_condition(k, m).holds
    concatenates = star(m, k, cfg).value == m + k
    lamina = hom_pi_lamina(m, k)
    hom = hom_pi(m, k, cfg).value
    ok = holds == concatenates and lamina == hom
    return ok, f"matching={holds}, star concatenates={concatenates}, lamina hom={lamina}, hom={hom}"


def _matching_vs_star(rng, params) -> list[tuple[str, Check]]:
    samples = int(params.get("samples", 300))
    n = int(params.get("n", 6))
    max_segments = int(params.get("max_segments", 3))
    cases = []
    for index in range(samples):
        ladder = random_ladder(rng, n, max_segments)
        other = random_multisegment(rng, n, max_segments)
        m, k = (ladder, other) if index % 2 == 0 else (other, ladder)
        cases.append((f"{m} * {k}", lambda cfg, m=m, k=k: _matching_check(m, k, cfg)))
    return cases


def _recipes_vs_randomized(rng, params) -> list[tuple[str, Check]]:
    segment_samples = int(params.get("segment_samples", params.get("samples", 300)))
    balanced_samples = int(params.get("balanced_samples", 200))
    n = int(params.get("n", 6))
    max_segments = int(params.get("max_segments", 3))
    cases = []
    for _ in range(segment_samples):
        delta = random_segment(rng, n)
        k = random_multisegment(rng, n, max_segments)
        single = Multisegment(n, (delta,))
        cases.append((
            f"segment {delta} * {k}",
            lambda cfg, d=delta, s=single, k=k: _expect(star_segment(d, k, cfg), star(s, k, cfg).value),
        ))
    for _ in range(balanced_samples):
        m = random_balanced(rng, n, max_segments)
        k = random_multisegment(rng, n, max_segments)
        cases.append((
            f"balanced {m} * {k}",
            lambda cfg, m=m, k=k: _expect(star_balanced(m, k, cfg), star(m, k, cfg).value),
        ))
    return cases


def _ms(text: str, n: int) -> Multisegment:
    return parse_multisegment(text, n)


def _worked_examples(rng, params) -> list[tuple[str, Check]]:
    nonrigid = _ms("[4,5]+[2,4]+[3,3]+[1,2]", 5)
    cc = _ms("[4,7]+[5,6]+[2,5]+[3,4]+[1,3]", 7)
    cc_square = _ms("[4,7]+[2,7]+[5,6]+[3,6]+[4,5]+[1,5]+[2,4]+[3,3]+[1,3]", 7)
    m1 = _ms("[1,1]+[3,4]+[4,7]", 8)
    m2 = _ms("[2,4]+[5,6]+[8,8]", 8)
    product = _ms("[1,4]+[3,6]+[4,8]", 8)
    return [
        ("nonrigid hom", lambda cfg: _expect(hom_pi(nonrigid, nonrigid, cfg).value, 3)),
        ("nonrigid ext1", lambda cfg: _expect(ext1_pi(nonrigid, nonrigid, cfg).value, 2)),
        ("nonrigid rigid", lambda cfg: _expect(is_rigid(nonrigid, cfg).value, False)),
        ("nonrigid strongly commutes", lambda cfg: _expect(strongly_commute(nonrigid, nonrigid, cfg).value, True)),
        ("nonrigid square", lambda cfg: _expect(star(nonrigid, nonrigid, cfg).value, nonrigid + nonrigid)),
        ("cc square", lambda cfg: _expect(star(cc, cc, cfg).value, cc_square)),
        ("cc rigid", lambda cfg: _expect(is_rigid(cc, cfg).value, False)),
        ("cc square rigid", lambda cfg: _expect(is_rigid(cc_square, cfg).value, True)),
        ("ladders star", lambda cfg: _expect(star(m1, m2, cfg).value, product)),
        ("ladders factor", lambda cfg: _expect(factor(product, m1, cfg).value, m2)),
        ("ladders star_balanced", lambda cfg: _expect(star_balanced(m1, m2, cfg), product)),
        ("quasi-lamina rigid", lambda cfg: _expect(is_rigid(product, cfg).value, True)),
        ("dual", lambda cfg: _expect(_ms("[4,5]", 5).dual(), _ms("[1,2]", 5))),
        ("mw segment", lambda cfg: _expect(
            mw_involution(_ms("[1,3]", 3), cfg).value, _ms("[1,1]+[2,2]+[3,3]", 3))),
        ("segment concatenation", lambda cfg: _expect(
            star_segment(Segment(3, 4), _ms("[1,2]", 4), cfg), _ms("[1,2]+[3,4]", 4))),
        ("peel", lambda cfg: _expect(
            balanced_peel(_ms("[1,2]+[2,3]", 3)).remainder, _ms("[1,2]", 3))),
    ]


_BUILDERS: Mapping[str, Callable] = {
    "lm-sweep": _lm_sweep,
    "balanced-vs-rigid": _balanced_vs_rigid,
    "mw-involution": _mw_involution,
    "duality-star": _duality_star,
    "matching-vs-star": _matching_vs_star,
    "recipes-vs-randomized": _recipes_vs_randomized,
    "worked-examples": _worked_examples,
}


def _run_case(label: str, check: Check, config: TrialConfig) -> CaseResult:
    try:
        passed, detail = check(config)
    except ComponentError as exc:
        return CaseResult(label, False, f"{type(exc).__name__}: {exc}")
    if not passed:
        logger.warning("case %s failed: %s", label, detail)
    return CaseResult(label, passed, "" if passed else detail)


def verify_suite(
    name: str,
    params: Optional[Mapping[str, Any]] = None,
    config: Optional[TrialConfig] = None,
) -> SuiteReport:
    """Run one acceptance battery; cases are sharded over config.workers threads."""
    if name not in _BUILDERS:
        raise PreconditionError(f"Unknown suite '{name}'. Choose from: {', '.join(SUITES)}.")
    params = dict(params or {})
    config = config or TrialConfig()
    rng = np.random.default_rng(config.seed)
    cases = _BUILDERS[name](rng, params)

    started = time.perf_counter()
    if config.workers > 1:
        inner = replace(config, workers=1)
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(lambda case: _run_case(case[0], case[1], inner), cases))
    else:
        results = [_run_case(label, check, config) for label, check in cases]

    report = SuiteReport(suite=name, params=params, cases=results)
    log_activity("suite_finished", {
        "suite": name,
        "passed": report.passed,
        "failed": report.failed,
        "seconds": round(time.perf_counter() - started, 3),
    })
    return report
