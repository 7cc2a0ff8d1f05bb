"""
Graded maps on type-A quiver spaces and orbit recovery from ranks.

A graded space has dimension vector d; a GradedMap of degree +1 (resp. -1)
sends V_s to V_{s+1} (resp. V_{s-1}). The isomorphism class of a nilpotent
degree +1 map is a multisegment, read off from the ranks of its composites.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Hashable, Mapping, Optional, Sequence

from .exceptions import InconsistentProfileError, PreconditionError
from .field import Matrix, PrimeField
from .multisegments import DimVector, Multisegment

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GradedMap:
    dims: DimVector
    degree: int
    blocks: tuple[Matrix, ...]   # blocks[s-1]: V_s -> V_{s+degree}

    def __post_init__(self):
        if self.degree not in (1, -1):
            raise PreconditionError(f"Graded maps have degree +1 or -1, got {self.degree}.")
        if len(self.blocks) != len(self.dims):
            raise PreconditionError("One block per site is required.")
        for site, block in enumerate(self.blocks, start=1):
            expected = (self.dims.at(site + self.degree), self.dims.at(site))
            if block.shape != expected:
                raise PreconditionError(
                    f"Block at site {site} has shape {block.shape}, expected {expected}."
                )

    @classmethod
    def zero(cls, dims: DimVector, degree: int) -> "GradedMap":
        return cls(dims, degree, tuple(
            Matrix.zeros(dims.at(s + degree), dims.at(s)) for s in range(1, len(dims) + 1)
        ))

    @property
    def n(self) -> int:
        return len(self.dims)

    def block(self, site: int) -> Matrix:
        return self.blocks[site - 1]

    def reversed(self) -> "GradedMap":
        """Relabel sites s -> n+1-s; the degree changes sign."""
        return GradedMap(self.dims.reversed(), -self.degree, tuple(reversed(self.blocks)))

    def is_zero(self) -> bool:
        return all(block.is_zero() for block in self.blocks)


class ChainBasis:
    """Graded basis f_{i,r}: segment index i of m, site r in that segment."""

    def __init__(self, m: Multisegment):
        self.m = m
        self.members: list[list[int]] = [[] for _ in range(m.n)]
        for i, segment in enumerate(m):
            for site in segment.sites():
                self.members[site - 1].append(i)
        self._position = {
            (i, site): pos
            for site in range(1, m.n + 1)
            for pos, i in enumerate(self.members[site - 1])
        }

    @property
    def dims(self) -> DimVector:
        return DimVector(tuple(len(group) for group in self.members))

    def at(self, site: int) -> list[int]:
        if 1 <= site <= self.m.n:
            return self.members[site - 1]
        return []

    def position(self, i: int, site: int) -> int:
        return self._position[(i, site)]

    def has(self, i: int, site: int) -> bool:
        return (i, site) in self._position


def _block_from_entries(rows: int, cols: int, entries: Mapping[tuple[int, int], int]) -> Matrix:
    grid = [[0] * cols for _ in range(rows)]
    for (r, c), value in entries.items():
        grid[r][c] = value
    return Matrix(rows, cols, tuple(tuple(row) for row in grid))


def normal_form(m: Multisegment) -> GradedMap:
    """T+ with f_{i,r} -> f_{i,r+1} inside each segment and 0 at segment ends."""
    basis = ChainBasis(m)
    dims = basis.dims
    blocks = []
    for site in range(1, m.n + 1):
        entries = {
            (basis.position(i, site + 1), basis.position(i, site)): 1
            for i in basis.at(site)
            if basis.has(i, site + 1)
        }
        blocks.append(_block_from_entries(dims.at(site + 1), dims.at(site), entries))
    return GradedMap(dims, 1, tuple(blocks))


@dataclass(frozen=True)
class RankProfile:
    """N(a, b) for 1 <= a <= b <= n; zero outside that range."""
    dims: DimVector
    table: Mapping[tuple[int, int], int] = dataclass_field(hash=False)

    @property
    def n(self) -> int:
        return len(self.dims)

    def rank(self, a: int, b: int) -> int:
        if a < 1 or b > self.n or a > b:
            return 0
        return self.table[(a, b)]


def rank_profile(
    t: GradedMap,
    field: PrimeField,
    sources: Optional[Mapping[int, Matrix]] = None,
) -> RankProfile:
    """
    Ranks of every composite of t.

    For degree -1 the profile is computed on the reversed grading and
    relabelled back, so N(a, b) is the rank of V_b -> V_a. With `sources`,
    ranks are taken on the subspaces spanned by the given columns at each
    site (a t-stable graded subspace), which yields the profile of the
    restriction of t.
    """
    if t.degree == -1:
        flipped_sources = None
        if sources is not None:
            flipped_sources = {t.n + 1 - site: basis for site, basis in sources.items()}
        forward = rank_profile(t.reversed(), field, flipped_sources)
        n = t.n
        table = {(a, b): forward.rank(n + 1 - b, n + 1 - a)
                 for a in range(1, n + 1) for b in range(a, n + 1)}
        return RankProfile(DimVector(tuple(forward.dims.counts[::-1])), table)

    table = {}
    dims = []
    for a in range(1, t.n + 1):
        composite = sources[a] if sources is not None else Matrix.identity(t.dims.at(a))
        current = field.rank(composite)
        dims.append(current)
        table[(a, a)] = current
        for b in range(a + 1, t.n + 1):
            if current == 0:
                table[(a, b)] = 0
                continue
            composite = field.matmul(t.block(b - 1), composite)
            current = field.rank(composite)
            table[(a, b)] = current
    return RankProfile(DimVector(tuple(dims)), table)


def multisegment_from_ranks(profile: RankProfile) -> Multisegment:
    """Count Jordan chains covering exactly [a, b] by inclusion-exclusion."""
    n = profile.n
    segments = []
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            count = (
                profile.rank(a, b)
                - profile.rank(a - 1, b)
                - profile.rank(a, b + 1)
                + profile.rank(a - 1, b + 1)
            )
            if count < 0:
                raise InconsistentProfileError(
                    f"Rank profile gives multiplicity {count} for [{a},{b}]."
                )
            segments.extend([(a, b)] * count)
    result = Multisegment.of(n, segments)
    if result.grdim() != profile.dims:
        raise InconsistentProfileError(
            f"Recovered {result} has dimension {result.grdim().counts}, "
            f"expected {profile.dims.counts}."
        )
    return result


@dataclass(frozen=True)
class BlockVar:
    offset: int
    rows: int
    cols: int

    def index(self, row: int, col: int) -> int:
        return self.offset + row * self.cols + col


class LinearSystem:
    """Homogeneous linear equations whose unknowns are blocks of matrices."""

    def __init__(self):
        self.size = 0
        self._equations: dict[Hashable, dict[int, int]] = {}

    def allocate(self, rows: int, cols: int) -> BlockVar:
        var = BlockVar(self.size, rows, cols)
        self.size += rows * cols
        return var

    def _add(self, key: Hashable, index: int, coeff: int) -> None:
        row = self._equations.setdefault(key, {})
        row[index] = row.get(index, 0) + coeff

    def left(self, key: Hashable, a: Matrix, x: BlockVar, sign: int = 1) -> None:
        """Add sign * (a @ x) to the equation block `key`."""
        for alpha in range(a.rows):
            for u in range(a.cols):
                coeff = a.entries[alpha][u]
                if coeff:
                    for beta in range(x.cols):
                        self._add((key, alpha, beta), x.index(u, beta), sign * coeff)

    def right(self, key: Hashable, x: BlockVar, b: Matrix, sign: int = 1) -> None:
        """Add sign * (x @ b) to the equation block `key`."""
        for v in range(b.rows):
            for beta in range(b.cols):
                coeff = b.entries[v][beta]
                if coeff:
                    for alpha in range(x.rows):
                        self._add((key, alpha, beta), x.index(alpha, v), sign * coeff)

    def matrix(self, field: PrimeField) -> Matrix:
        rows = []
        for coefficients in self._equations.values():
            row = [0] * self.size
            for index, coeff in coefficients.items():
                row[index] = coeff % field.p
            if any(row):
                rows.append(tuple(row))
        return Matrix(len(rows), self.size, tuple(rows))


def graded_hom_dimension(
    field: PrimeField,
    sources: Sequence[GradedMap],
    targets: Sequence[GradedMap],
) -> int:
    """
    dim of degree-0 graded phi with phi A = B phi for every pair (A, B).

    Unknowns are all block entries of phi, so this is the unrestricted
    solve used to cross-check the closed-form counts.
    """
    src_dims, dst_dims = sources[0].dims, targets[0].dims
    system = LinearSystem()
    phi = {
        s: system.allocate(dst_dims.at(s), src_dims.at(s))
        for s in range(1, len(src_dims) + 1)
    }
    for index, (a, b) in enumerate(zip(sources, targets)):
        for s in range(1, len(src_dims) + 1):
            t = s + a.degree
            if t not in phi:
                continue
            system.right((index, s), phi[t], a.block(s), 1)
            system.left((index, s), b.block(s), phi[s], -1)
    return system.size - field.rank(system.matrix(field))


def quiver_hom_dimension(field: PrimeField, m: Multisegment, n: Multisegment) -> int:
    return graded_hom_dimension(field, [normal_form(m)], [normal_form(n)])


def quiver_ext_dimension(field: PrimeField, m: Multisegment, n: Multisegment) -> int:
    """Ext^1_Q as degree +1 maps modulo the image of phi -> phi T1 - T2 phi."""
    d1, d2 = m.grdim(), n.grdim()
    cochains = sum(d1.at(s) * d2.at(s + 1) for s in range(1, m.n + 1))
    degree_zero = sum(d1.at(s) * d2.at(s) for s in range(1, m.n + 1))
    return cochains - (degree_zero - quiver_hom_dimension(field, m, n))
