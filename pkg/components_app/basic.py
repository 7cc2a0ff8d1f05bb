"""
Basic irreducible components Z(Delta) and L(Delta).

Z(Delta) is the component of the single segment Delta; L(Delta) is the
component whose Q-parameter is the sum of the singletons of Delta (its
Q-dual parameter is Delta itself).
"""

import math
from dataclasses import dataclass
from typing import Union

from .exceptions import MultisegmentSyntaxError, PreconditionError
from .multisegments import Multisegment, Segment

Z_KIND = "Z"
L_KIND = "L"


@dataclass(frozen=True)
class BasicRep:
    kind: str
    segment: Segment

    def __post_init__(self):
        if self.kind not in (Z_KIND, L_KIND):
            raise PreconditionError(f"Unknown basic kind '{self.kind}', expected Z or L.")

    def __str__(self) -> str:
        return f"{self.kind}({self.segment})"

    @property
    def saturation_site(self) -> int:
        """The endpoint every subcomponent shares with the segment."""
        return self.segment.end if self.kind == Z_KIND else self.segment.begin

    def subcomponents(self) -> list[Segment]:
        """Sub-segments sharing the saturation endpoint, largest first."""
        a, b = self.segment.begin, self.segment.end
        if self.kind == Z_KIND:
            return [Segment(c, b) for c in range(a, b + 1)]
        return [Segment(a, d) for d in range(b, a - 1, -1)]

    def segment_parameter(self, segment: Segment, n: int) -> Multisegment:
        """Q-parameter of the basic component of the same kind on `segment`."""
        if self.kind == Z_KIND:
            return Multisegment.of(n, [segment])
        return Multisegment.of(n, [(r, r) for r in segment.sites()])

    def parameter(self, n: int) -> Multisegment:
        return self.segment_parameter(self.segment, n)

    def to_json(self) -> dict:
        return {"kind": self.kind, "segment": [self.segment.begin, self.segment.end]}


def parse_basic(text: str) -> BasicRep:
    """Parse "Z[2,3]", "L[1,4]" or "Z([2,3])"."""
    cleaned = "".join(text.split()).replace("(", "").replace(")", "")
    if len(cleaned) < 2 or cleaned[0].upper() not in (Z_KIND, L_KIND):
        raise MultisegmentSyntaxError(f"Bad basic component '{text}', expected Z[a,b] or L[a,b].")
    body = cleaned[1:].strip("[]")
    try:
        a, b = (int(part) for part in body.split(","))
    except ValueError:
        raise MultisegmentSyntaxError(f"Bad basic component '{text}', expected Z[a,b] or L[a,b].") from None
    return BasicRep(cleaned[0].upper(), Segment(a, b))


def sigma_index(m: Multisegment, sigma: BasicRep) -> Union[int, float]:
    """
    Multiplicity of the saturation site in the support of m.

    Returns -inf when some site of m falls outside the segment of sigma.
    """
    span = sigma.segment
    if any(not span.covers(s) for s in m):
        return -math.inf
    return m.grdim().at(sigma.saturation_site)
