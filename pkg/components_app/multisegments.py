"""
Segments, multisegments and their text codec.

Text grammar:
    0                      (the empty multisegment)
    [a,b]+[c,d]+...        (repeated segments accumulate multiplicity)

Multisegments always carry their ambient size n (the number of quiver
vertices); duality and shifts depend on it.
"""

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

from .exceptions import MultisegmentSyntaxError, PreconditionError

_SEGMENT_PATTERN = re.compile(r"\[(-?\d+),(-?\d+)\]")
_MULTISEGMENT_PATTERN = re.compile(r"^\[-?\d+,-?\d+\](?:\+\[-?\d+,-?\d+\])*$")


@dataclass(frozen=True, order=True)
class Segment:
    begin: int   # site a
    end: int     # site b

    def __post_init__(self):
        if self.begin < 1:
            raise MultisegmentSyntaxError(
                f"Segment [{self.begin},{self.end}] starts below site 1."
            )
        if self.begin > self.end:
            raise MultisegmentSyntaxError(
                f"Segment [{self.begin},{self.end}] has begin > end."
            )

    def __len__(self) -> int:
        return self.end - self.begin + 1

    def __contains__(self, site: int) -> bool:
        return self.begin <= site <= self.end

    def __str__(self) -> str:
        return f"[{self.begin},{self.end}]"

    def sites(self) -> range:
        return range(self.begin, self.end + 1)

    def precedes(self, other: "Segment") -> bool:
        """Linking order: a+1 <= c <= b+1 <= d for self=[a,b], other=[c,d]."""
        return self.begin + 1 <= other.begin <= self.end + 1 <= other.end

    def shifted(self) -> "Segment":
        """Formal right shift [a+1,b+1], ignoring the ambient bound."""
        return Segment(self.begin + 1, self.end + 1)

    def right_shift(self, n: int) -> Optional["Segment"]:
        if self.end + 1 > n:
            return None
        return self.shifted()

    def truncate(self) -> Optional["Segment"]:
        """Drop the first site; a single-site segment becomes empty."""
        if self.begin == self.end:
            return None
        return Segment(self.begin + 1, self.end)

    def dual(self, n: int) -> "Segment":
        return Segment(n + 1 - self.end, n + 1 - self.begin)

    def covers(self, other: "Segment") -> bool:
        return self.begin <= other.begin and other.end <= self.end


def precedes(delta: Segment, gamma: Segment) -> bool:
    return delta.precedes(gamma)


def _canonical_key(segment: Segment) -> tuple[int, int]:
    # begin descending, then end descending
    return (-segment.begin, -segment.end)


@dataclass(frozen=True)
class DimVector:
    counts: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.counts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.counts)

    def __add__(self, other: "DimVector") -> "DimVector":
        if len(self) != len(other):
            raise PreconditionError("Dimension vectors of different lengths.")
        return DimVector(tuple(a + b for a, b in zip(self.counts, other.counts)))

    def at(self, site: int) -> int:
        """Dimension at a 1-based site; zero outside 1..n."""
        if 1 <= site <= len(self.counts):
            return self.counts[site - 1]
        return 0

    def reversed(self) -> "DimVector":
        return DimVector(tuple(reversed(self.counts)))

    def dominated_by(self, other: "DimVector") -> bool:
        return len(self) == len(other) and all(
            a <= b for a, b in zip(self.counts, other.counts)
        )

    @property
    def total(self) -> int:
        return sum(self.counts)


SegmentLike = Union[Segment, tuple[int, int]]


@dataclass(frozen=True)
class Multisegment:
    n: int
    segments: tuple[Segment, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise MultisegmentSyntaxError(f"Ambient size must be at least 1, got {self.n}.")
        ordered = tuple(sorted(self.segments, key=_canonical_key))
        for segment in ordered:
            if segment.end > self.n:
                raise MultisegmentSyntaxError(
                    f"Segment {segment} exceeds the ambient size n={self.n}."
                )
        object.__setattr__(self, "segments", ordered)

    @classmethod
    def of(cls, n: int, segments: Iterable[SegmentLike] = ()) -> "Multisegment":
        built = [s if isinstance(s, Segment) else Segment(*s) for s in segments]
        return cls(n, tuple(built))

    @classmethod
    def empty(cls, n: int) -> "Multisegment":
        return cls(n, ())

    @classmethod
    def from_json(cls, data: dict) -> "Multisegment":
        return cls.of(int(data["n"]), [tuple(pair) for pair in data["segments"]])

    def __len__(self) -> int:
        return len(self.segments)

    def __iter__(self) -> Iterator[Segment]:
        return iter(self.segments)

    def __getitem__(self, index: int) -> Segment:
        return self.segments[index]

    def __add__(self, other: "Multisegment") -> "Multisegment":
        require_same_ambient(self, other)
        return Multisegment(self.n, self.segments + other.segments)

    def __str__(self) -> str:
        return self.to_text()

    def is_empty(self) -> bool:
        return not self.segments

    def without(self, segment: Segment) -> "Multisegment":
        """Remove one copy of `segment`."""
        remaining = list(self.segments)
        try:
            remaining.remove(segment)
        except ValueError:
            raise PreconditionError(f"{segment} does not occur in {self}.") from None
        return Multisegment(self.n, tuple(remaining))

    def multiplicity(self, segment: Segment) -> int:
        return self.segments.count(segment)

    def counter(self) -> Counter:
        return Counter(self.segments)

    def with_n(self, n: int) -> "Multisegment":
        return Multisegment(n, self.segments)

    def grdim(self) -> DimVector:
        counts = [0] * self.n
        for segment in self.segments:
            for site in segment.sites():
                counts[site - 1] += 1
        return DimVector(tuple(counts))

    def dual(self) -> "Multisegment":
        return Multisegment(self.n, tuple(s.dual(self.n) for s in self.segments))

    def max_site(self) -> Optional[int]:
        return max((s.end for s in self.segments), default=None)

    def min_site(self) -> Optional[int]:
        return min((s.begin for s in self.segments), default=None)

    def to_text(self) -> str:
        if not self.segments:
            return "0"
        return "+".join(str(s) for s in self.segments)

    def to_json(self) -> dict:
        return {"n": self.n, "segments": [[s.begin, s.end] for s in self.segments]}


def require_same_ambient(m: Multisegment, n: Multisegment) -> None:
    if m.n != n.n:
        raise PreconditionError(
            f"Multisegments live on different ambient sizes ({m.n} and {n.n})."
        )


def parse_multisegment(text: str, n: Optional[int] = None) -> Multisegment:
    """
    Parse multisegment text into its canonical Multisegment.

    The ambient size defaults to the largest end (1 for "0"); pass `n`
    to override it. Raises MultisegmentSyntaxError on malformed text or
    out-of-range sites.
    """
    if text is None or not text.strip():
        raise MultisegmentSyntaxError("Multisegment text is empty.")

    compact = "".join(text.split())
    if compact == "0":
        return Multisegment.empty(n if n is not None else 1)

    if not _MULTISEGMENT_PATTERN.match(compact):
        raise MultisegmentSyntaxError(
            f"Bad multisegment: '{text}'. Expected 0 or [a,b]+[c,d]+..."
        )

    segments = [Segment(int(a), int(b)) for a, b in _SEGMENT_PATTERN.findall(compact)]
    ambient = n if n is not None else max(s.end for s in segments)
    return Multisegment(ambient, tuple(segments))


def format_multisegment(m: Multisegment) -> str:
    return m.to_text()


def dual(m: Multisegment) -> Multisegment:
    return m.dual()


def grdim(m: Multisegment) -> DimVector:
    return m.grdim()


@dataclass(frozen=True)
class IndexSets:
    """Pairs (i, j) of canonical segment indices of (m, n)."""
    U: tuple[tuple[int, int], ...]
    V: tuple[tuple[int, int], ...]


def index_sets(m: Multisegment, n: Multisegment) -> IndexSets:
    """U = {(i,j): n_j precedes m_i}; V = {(i,j): n_j precedes the shift of m_i}."""
    require_same_ambient(m, n)
    u_pairs = []
    v_pairs = []
    for i, delta in enumerate(m.segments):
        shifted = delta.shifted()
        for j, gamma in enumerate(n.segments):
            if gamma.precedes(delta):
                u_pairs.append((i, j))
            if gamma.precedes(shifted):
                v_pairs.append((i, j))
    return IndexSets(U=tuple(u_pairs), V=tuple(v_pairs))


@dataclass(frozen=True)
class QuiverDims:
    hom: int
    ext: int


def quiver_dims(m: Multisegment, n: Multisegment) -> QuiverDims:
    """dim Hom_Q and dim Ext^1_Q between the quiver representations of m and n."""
    sets = index_sets(m, n)
    ext = sum(1 for delta in m for gamma in n if delta.precedes(gamma))
    return QuiverDims(hom=len(sets.V), ext=ext)


def concatenation_applies(m1: Multisegment, m2: Multisegment) -> bool:
    """True when Ext^1_Q(m1, m2) vanishes, so the star product is plain m1 + m2."""
    return quiver_dims(m1, m2).ext == 0


def hom_vanishes(m: Multisegment, n: Multisegment) -> bool:
    """True when no segment of n precedes the shift of a segment of m."""
    return not index_sets(m, n).V
