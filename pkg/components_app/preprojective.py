"""
Generic points of preprojective-algebra components and their linear algebra.

A point of the component of m is the normal-form T+ of m together with a
T- assembled from coordinates x_{i,j}, (i,j) in U_m:

    T- f_{i,r+1} = sum of x_{i,j} f_{j,r} over j with r in Delta_j, (i,j) in U_m

which commutes with T+ for every choice of coordinates. Uniform random
coordinates give a generic point of the component.
"""

import logging
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from .field import FieldScalar, Matrix, PrimeField, Vector
from .multisegments import Multisegment, index_sets, require_same_ambient
from .quiver import (
    BlockVar,
    ChainBasis,
    GradedMap,
    LinearSystem,
    RankProfile,
    normal_form,
    rank_profile,
)

logger = logging.getLogger(__name__)

Pair = tuple[int, int]


@dataclass(frozen=True)
class GenericModule:
    m: Multisegment
    coords: Mapping[Pair, FieldScalar]
    t_plus: GradedMap
    t_minus: GradedMap

    @property
    def dims(self):
        return self.t_plus.dims

    @property
    def basis(self) -> ChainBasis:
        return ChainBasis(self.m)


def module_from_coordinates(
    m: Multisegment,
    coords: Mapping[Pair, FieldScalar],
    field: PrimeField,
) -> GenericModule:
    basis = ChainBasis(m)
    dims = basis.dims
    t_plus = normal_form(m)
    by_source: dict[int, list[tuple[int, FieldScalar]]] = {}
    for (i, j), value in sorted(coords.items()):
        by_source.setdefault(i, []).append((j, field.reduce(value)))

    blocks = []
    for site in range(1, m.n + 1):
        grid = [[0] * dims.at(site) for _ in range(dims.at(site - 1))]
        for i in basis.at(site):
            for j, value in by_source.get(i, ()):
                if basis.has(j, site - 1):
                    grid[basis.position(j, site - 1)][basis.position(i, site)] = value
        blocks.append(Matrix(dims.at(site - 1), dims.at(site), tuple(tuple(r) for r in grid)))
    t_minus = GradedMap(dims, -1, tuple(blocks))
    return GenericModule(m=m, coords=dict(coords), t_plus=t_plus, t_minus=t_minus)


def sample_generic(m: Multisegment, field: PrimeField, rng: np.random.Generator) -> GenericModule:
    """Draw one coordinate per pair of U_m, uniformly from the field."""
    pairs = index_sets(m, m).U
    coords = {pair: field.random_element(rng) for pair in pairs}
    return module_from_coordinates(m, coords, field)


def commutation_defect(module: GenericModule, field: PrimeField) -> list[Matrix]:
    """T+T- - T-T+ on every site; all blocks vanish for a valid module."""
    n = module.m.n
    defects = []
    for site in range(1, n + 1):
        d = module.dims.at(site)
        up_down = Matrix.zeros(d, d)
        down_up = Matrix.zeros(d, d)
        if site > 1:
            up_down = field.matmul(module.t_plus.block(site - 1), module.t_minus.block(site))
        if site < n:
            down_up = field.matmul(module.t_minus.block(site + 1), module.t_plus.block(site))
        defects.append(field.add(up_down, down_up, sign=-1))
    return defects


@dataclass(frozen=True)
class TMatrix:
    row_index: tuple[Pair, ...]
    col_index: tuple[Pair, ...]
    matrix: Matrix


def t_matrix(field: PrimeField, source: GenericModule, target: GenericModule) -> TMatrix:
    """
    Rows U_{m;n}, columns V_{m;n}; its kernel is Hom_Pi(source, target).

    Column b_{i,j} carries +x_{k,i} in row (k,j) for (k,i) in U_m and
    -y_{j,k} in row (i,k) for (j,k) in U_n.
    """
    m, n = source.m, target.m
    require_same_ambient(m, n)
    sets = index_sets(m, n)
    rows = {pair: r for r, pair in enumerate(sets.U)}
    grid = [[0] * len(sets.V) for _ in sets.U]
    p = field.p
    for col, (i, j) in enumerate(sets.V):
        for (k, i2), x in source.coords.items():
            if i2 == i and (k, j) in rows:
                r = rows[(k, j)]
                grid[r][col] = (grid[r][col] + x) % p
        for (j2, k), y in target.coords.items():
            if j2 == j and (i, k) in rows:
                r = rows[(i, k)]
                grid[r][col] = (grid[r][col] - y) % p
    return TMatrix(sets.U, sets.V, Matrix(len(sets.U), len(sets.V), tuple(tuple(r) for r in grid)))


def t_dual_matrix(field: PrimeField, source: GenericModule, target: GenericModule) -> TMatrix:
    """
    The dual map in the hatted bases: rows V_{m;n}, columns U_{m;n}.

    Column c_{i,j} carries +x_{i,k} in row (k,j) for (i,k) in U_m and
    -y_{k,j} in row (i,k) for (k,j) in U_n.
    """
    m, n = source.m, target.m
    require_same_ambient(m, n)
    sets = index_sets(m, n)
    rows = {pair: r for r, pair in enumerate(sets.V)}
    grid = [[0] * len(sets.U) for _ in sets.V]
    p = field.p
    for col, (i, j) in enumerate(sets.U):
        for (i2, k), x in source.coords.items():
            if i2 == i and (k, j) in rows:
                r = rows[(k, j)]
                grid[r][col] = (grid[r][col] + x) % p
        for (k, j2), y in target.coords.items():
            if j2 == j and (i, k) in rows:
                r = rows[(i, k)]
                grid[r][col] = (grid[r][col] - y) % p
    return TMatrix(sets.V, sets.U, Matrix(len(sets.V), len(sets.U), tuple(tuple(r) for r in grid)))


@dataclass(frozen=True)
class GradedMorphism:
    """Degree-0 graded map; blocks[s-1]: V_s -> W_s."""
    blocks: tuple[Matrix, ...]

    def block(self, site: int) -> Matrix:
        return self.blocks[site - 1]


def quiver_hom_basis(source: GenericModule, target: GenericModule) -> list[GradedMorphism]:
    """
    Basis b_{i,j}, (i,j) in V_{m;n}, of Hom_Q between the normal forms.

    b_{i,j} sends f_{i,r} to g_{j,r} for r in [b(Delta_i), e(Gamma_j)].
    """
    m, n = source.m, target.m
    src, dst = ChainBasis(m), ChainBasis(n)
    morphisms = []
    for i, j in index_sets(m, n).V:
        lo, hi = m[i].begin, n[j].end
        blocks = []
        for site in range(1, m.n + 1):
            grid = [[0] * src.dims.at(site) for _ in range(dst.dims.at(site))]
            if lo <= site <= hi:
                grid[dst.position(j, site)][src.position(i, site)] = 1
            blocks.append(Matrix(dst.dims.at(site), src.dims.at(site), tuple(tuple(r) for r in grid)))
        morphisms.append(GradedMorphism(tuple(blocks)))
    return morphisms


def _flatten(matrix: Matrix) -> list[int]:
    return [x for row in matrix.entries for x in row]


def hom_system(field: PrimeField, source: GenericModule, target: GenericModule) -> Matrix:
    """
    Coefficients c_v of phi = sum c_v b_v must satisfy phi T = T phi for T+ and T-.

    One column per Hom_Q basis element; rows are the flattened commutators.
    """
    basis = quiver_hom_basis(source, target)
    columns = []
    for phi in basis:
        column = []
        for src_map, dst_map in ((source.t_plus, target.t_plus), (source.t_minus, target.t_minus)):
            for site in range(1, source.m.n + 1):
                t = site + src_map.degree
                if not 1 <= t <= source.m.n:
                    continue
                lhs = field.matmul(phi.block(t), src_map.block(site))
                rhs = field.matmul(dst_map.block(site), phi.block(site))
                column.extend(_flatten(field.add(lhs, rhs, sign=-1)))
        columns.append(column)
    height = len(columns[0]) if columns else 0
    return Matrix.from_columns(height, columns)


def hom_dimension(field: PrimeField, source: GenericModule, target: GenericModule) -> int:
    system = hom_system(field, source, target)
    return system.cols - field.rank(system)


def hom_dimension_fast(field: PrimeField, source: GenericModule, target: GenericModule) -> int:
    tm = t_matrix(field, source, target).matrix
    return tm.cols - field.rank(tm)


def random_morphism(
    field: PrimeField,
    source: GenericModule,
    target: GenericModule,
    rng: np.random.Generator,
) -> GradedMorphism:
    basis = quiver_hom_basis(source, target)
    sites = source.m.n
    if not basis:
        return GradedMorphism(tuple(
            Matrix.zeros(target.dims.at(s), source.dims.at(s)) for s in range(1, sites + 1)
        ))
    coefficients = field.random_kernel_element(hom_system(field, source, target), rng)
    blocks = []
    for s in range(1, sites + 1):
        acc = Matrix.zeros(target.dims.at(s), source.dims.at(s))
        for coeff, phi in zip(coefficients, basis):
            if coeff:
                scaled = Matrix(acc.rows, acc.cols, tuple(
                    tuple((coeff * x) % field.p for x in row) for row in phi.block(s).entries
                ))
                acc = field.add(acc, scaled)
        blocks.append(acc)
    return GradedMorphism(tuple(blocks))


@dataclass(frozen=True)
class CocycleLayout:
    """Unknown blocks T12+ at V1_s -> V2_{s+1} and T12- at V1_{s+1} -> V2_s."""
    plus: Mapping[int, BlockVar]
    minus: Mapping[int, BlockVar]
    size: int


def cocycle_system(
    field: PrimeField,
    quotient: GenericModule,
    sub: GenericModule,
) -> tuple[Matrix, CocycleLayout]:
    """
    Linear equations for extensions of `quotient` by `sub`:

        T2+ T12- + T12+ T1- = T2- T12+ + T12- T1+
    """
    require_same_ambient(quotient.m, sub.m)
    n = quotient.m.n
    d1, d2 = quotient.dims, sub.dims
    system = LinearSystem()
    plus = {s: system.allocate(d2.at(s + 1), d1.at(s)) for s in range(1, n)}
    minus = {s: system.allocate(d2.at(s), d1.at(s + 1)) for s in range(1, n)}
    for s in range(1, n + 1):
        if s >= 2:
            system.left(s, sub.t_plus.block(s - 1), minus[s - 1], 1)
            system.right(s, plus[s - 1], quotient.t_minus.block(s), 1)
        if s <= n - 1:
            system.left(s, sub.t_minus.block(s + 1), plus[s], -1)
            system.right(s, minus[s], quotient.t_plus.block(s), -1)
    return system.matrix(field), CocycleLayout(plus=plus, minus=minus, size=system.size)


def ext1_dimension(
    field: PrimeField,
    quotient: GenericModule,
    sub: GenericModule,
    hom: Optional[int] = None,
) -> int:
    """dim Z - dim B, with dim B = dim Hom_0(V1, V2) - dim Hom_Pi(quotient, sub)."""
    matrix, layout = cocycle_system(field, quotient, sub)
    cocycles = layout.size - field.rank(matrix)
    if hom is None:
        hom = hom_dimension(field, quotient, sub)
    d1, d2 = quotient.dims, sub.dims
    degree_zero = sum(d1.at(s) * d2.at(s) for s in range(1, quotient.m.n + 1))
    return cocycles - (degree_zero - hom)


def _unpack(vector: Vector, var: BlockVar) -> Matrix:
    return Matrix(var.rows, var.cols, tuple(
        tuple(vector[var.index(r, c)] for c in range(var.cols)) for r in range(var.rows)
    ))


def random_extension(
    field: PrimeField,
    quotient: GenericModule,
    sub: GenericModule,
    rng: np.random.Generator,
) -> GradedMap:
    """
    T+ of a random extension 0 -> sub -> x -> quotient -> 0.

    Sites are ordered (V1_s, V2_s); T+ is [[T1+, 0], [T12+, T2+]].
    """
    matrix, layout = cocycle_system(field, quotient, sub)
    vector = field.random_kernel_element(matrix, rng)
    n = quotient.m.n
    d1, d2 = quotient.dims, sub.dims
    blocks = []
    for s in range(1, n + 1):
        if s < n:
            glue = _unpack(vector, layout.plus[s])
        else:
            glue = Matrix.zeros(0, d1.at(s))
        blocks.append(Matrix.blocks([
            [quotient.t_plus.block(s), Matrix.zeros(d1.at(s + 1), d2.at(s))],
            [glue, sub.t_plus.block(s)],
        ]))
    return GradedMap(quotient.dims + sub.dims, 1, tuple(blocks))


def kernel_profile(
    field: PrimeField,
    module: GenericModule,
    phi: GradedMorphism,
) -> RankProfile:
    """Rank profile of T+ restricted to Ker phi, a T+-stable graded subspace."""
    sources = {}
    for s in range(1, module.m.n + 1):
        kernel = field.nullspace(phi.block(s))
        sources[s] = Matrix.from_columns(module.dims.at(s), kernel)
    return rank_profile(module.t_plus, field, sources)


def is_surjective(field: PrimeField, phi: GradedMorphism, target_dims: Sequence[int]) -> bool:
    return all(field.rank(block) == d for block, d in zip(phi.blocks, target_dims))
