"""
Combinatorial recipes for the star product.

star_segment and star_cosegment compute C * D when C is a basic component
Z(Delta) or L(Delta); star_balanced reduces a balanced first argument to
basic ones by peeling. The recipes switch between the Q and Q-dual
parameterizations through the randomized MW involution, so they are exact
as long as those involution verdicts are.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from .basic import L_KIND, Z_KIND, BasicRep
from .engine import TrialConfig, factor, hom_pi, mw_involution
from .exceptions import NoMajorityError, PreconditionError
from .multisegments import (
    Multisegment,
    Segment,
    concatenation_applies,
    hom_vanishes,
    require_same_ambient,
)
from .patterns import is_balanced, is_regular

logger = logging.getLogger(__name__)


def _mw(m: Multisegment, config: TrialConfig) -> Multisegment:
    if m.is_empty():
        return m
    return mw_involution(m, config).value


def star_segment(delta: Segment, n: Multisegment, config: TrialConfig) -> Multisegment:
    """Z(delta) * lambda_Q(n)."""
    single = Multisegment(n.n, (delta,))
    if n.is_empty() or concatenation_applies(single, n):
        return single + n

    dual_n = _mw(n, config)
    top = dual_n.max_site()
    upper = Multisegment(n.n, tuple(s for s in dual_n if s.end == top))
    lower = Multisegment(n.n, tuple(s for s in dual_n if s.end != top))

    partial = star_segment(delta, _mw(lower, config), config)
    return _mw(_mw(partial, config) + upper, config)


def star_segment_right(n: Multisegment, delta: Segment, config: TrialConfig) -> Multisegment:
    """lambda_Q(n) * Z(delta), through (C1 * C2)^v = C2^v * C1^v."""
    return star_segment(delta.dual(n.n), n.dual(), config).dual()


def star_cosegment(delta: Segment, n: Multisegment, config: TrialConfig) -> Multisegment:
    """L(delta) * lambda_Q(n); L(delta) has Q-dual parameter delta."""
    if n.is_empty() or n.min_site() >= delta.begin:
        return _mw(Multisegment(n.n, (delta,)) + _mw(n, config), config)

    bottom = n.min_site()
    lower = Multisegment(n.n, tuple(s for s in n if s.begin == bottom))
    rest = Multisegment(n.n, tuple(s for s in n if s.begin != bottom))
    return star_cosegment(delta, rest, config) + lower


def star_basic(sigma: BasicRep, n: Multisegment, config: TrialConfig) -> Multisegment:
    if sigma.kind == Z_KIND:
        return star_segment(sigma.segment, n, config)
    return star_cosegment(sigma.segment, n, config)


@dataclass(frozen=True)
class Peel:
    sigma: BasicRep
    remainder: Multisegment
    case: int

    def to_json(self) -> dict:
        return {
            "sigma": self.sigma.to_json(),
            "remainder": self.remainder.to_text(),
            "case": self.case,
        }


def _require_balanced(m: Multisegment) -> None:
    if not is_regular(m):
        raise PreconditionError(f"{m} is not regular.")
    if not is_balanced(m):
        raise PreconditionError(f"{m} is not balanced.")


def balanced_peel(m: Multisegment) -> Peel:
    """
    Split a balanced m as C_sigma * lambda_Q(m') with m' balanced and sigma-reduced.

    Segments are ordered by decreasing begin. `top` closes the initial
    run of strictly decreasing ends and `low` opens the precedence chain
    ending at `top`; the peel depends on whether a later end falls
    strictly between two consecutive ends of that chain.
    """
    if m.is_empty():
        raise PreconditionError("Cannot peel the empty multisegment.")
    _require_balanced(m)

    segs = sorted(m, key=lambda s: -s.begin)
    k = len(segs)

    top = 0
    while top + 1 < k and segs[top + 1].end < segs[top].end:
        top += 1
    low = top
    while low > 0 and segs[low].precedes(segs[low - 1]):
        low -= 1

    straddles = any(
        segs[i + 1].end < segs[j].end < segs[i].end
        for i in range(low, top)
        for j in range(top + 1, k)
    )
    if not straddles:
        chosen = segs[low]
        return Peel(BasicRep(Z_KIND, chosen), m.without(chosen), case=1)

    start = top
    while start > 0 and segs[start - 1].begin == segs[start].begin + 1:
        start -= 1
    sigma = BasicRep(L_KIND, Segment(segs[top].begin, segs[start].begin))
    kept = []
    for index, segment in enumerate(segs):
        if start <= index <= top:
            segment = segment.truncate()
        if segment is not None:
            kept.append(segment)
    return Peel(sigma, Multisegment(m.n, tuple(kept)), case=2)


@dataclass(frozen=True)
class SigmaDecomposition:
    sigma: BasicRep
    subcomponents: tuple[Segment, ...]
    pieces: tuple[Segment, ...]
    saturated_part: Multisegment
    reduced_part: Multisegment
    is_reduced: bool

    def to_json(self) -> dict:
        return {
            "sigma": self.sigma.to_json(),
            "subcomponents": [str(s) for s in self.subcomponents],
            "pieces": [str(s) for s in self.pieces],
            "saturated_part": self.saturated_part.to_text(),
            "reduced_part": self.reduced_part.to_text(),
            "is_reduced": self.is_reduced,
        }


def is_sigma_reduced(m: Multisegment, sigma: BasicRep, config: TrialConfig) -> bool:
    target = sigma.parameter(m.n)
    if hom_vanishes(m, target):
        return True
    return hom_pi(m, target, config).value == 0


def sigma_machinery(m: Multisegment, sigma: BasicRep, config: TrialConfig) -> SigmaDecomposition:
    """
    Factor m = (sigma-saturated) * (sigma-reduced).

    Subcomponents are tried largest first; every successful factor strictly
    lowers the total dimension, which bounds the number of rounds.
    """
    if sigma.segment.end > m.n:
        raise PreconditionError(f"{sigma} does not fit in n={m.n}.")
    subcomponents = tuple(sigma.subcomponents())
    reduced = is_sigma_reduced(m, sigma, config)

    current = m
    pieces: list[Segment] = []
    rounds = m.grdim().total
    while not (current.is_empty() or is_sigma_reduced(current, sigma, config)):
        if rounds == 0:
            raise NoMajorityError(
                f"Decomposition of {m} along {sigma} did not settle; retry with more trials."
            )
        rounds -= 1
        remainder: Optional[Multisegment] = None
        for piece in subcomponents:
            verdict = factor(current, sigma.segment_parameter(piece, m.n), config, check_rigid=False)
            if verdict.value is not None:
                remainder = verdict.value
                pieces.append(piece)
                break
        if remainder is None:
            raise NoMajorityError(
                f"No subcomponent of {sigma} factors out of {current}; retry with more trials."
            )
        current = remainder

    saturated = Multisegment.empty(m.n)
    for piece in pieces:
        saturated = saturated + sigma.segment_parameter(piece, m.n)
    logger.debug("sigma decomposition of %s along %s: %s | %s", m, sigma, saturated, current)
    return SigmaDecomposition(
        sigma=sigma,
        subcomponents=subcomponents,
        pieces=tuple(pieces),
        saturated_part=saturated,
        reduced_part=current,
        is_reduced=reduced,
    )


def _star_balanced_left(m: Multisegment, n: Multisegment, config: TrialConfig) -> Multisegment:
    if m.is_empty():
        return n
    if len(m) == 1:
        return star_segment(m[0], n, config)

    peel = balanced_peel(m)
    decomposition = sigma_machinery(n, peel.sigma, config)
    result = _star_balanced_left(peel.remainder, decomposition.reduced_part, config)
    result = star_basic(peel.sigma, result, config)
    for piece in decomposition.pieces:
        result = star_basic(BasicRep(peel.sigma.kind, piece), result, config)
    return result


def _balanced(m: Multisegment) -> bool:
    return is_regular(m) and is_balanced(m)


def star_balanced(m: Multisegment, n: Multisegment, config: TrialConfig) -> Multisegment:
    """lambda_Q(m) * lambda_Q(n) when m, or failing that n, is balanced."""
    require_same_ambient(m, n)
    if _balanced(m):
        return _star_balanced_left(m, n, config)
    if _balanced(n.dual()):
        return _star_balanced_left(n.dual(), m.dual(), config).dual()
    raise PreconditionError(f"Neither {m} nor {n} is balanced.")
