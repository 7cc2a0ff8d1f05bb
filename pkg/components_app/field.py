"""
Exact linear algebra over a fixed prime field.

Scalars are plain Python ints kept in [0, p). Matrices are small and dense,
so row reduction works on lists of ints with modular inverses; no symbolic
or rational arithmetic is involved.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from sympy import isprime

from .exceptions import PreconditionError

logger = logging.getLogger(__name__)

MERSENNE_61 = 2**61 - 1
PRIME_CEILING = 2**62

FieldScalar = int
Vector = tuple[FieldScalar, ...]


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple[tuple[FieldScalar, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise PreconditionError(
                f"Matrix entries do not match the declared shape {self.rows}x{self.cols}."
            )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, size: int) -> "Matrix":
        return cls(size, size, tuple(
            tuple(1 if i == j else 0 for j in range(size)) for i in range(size)
        ))

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Sequence[FieldScalar]]) -> "Matrix":
        return cls(rows, len(columns), tuple(
            tuple(col[i] for col in columns) for i in range(rows)
        ))

    @classmethod
    def blocks(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble a block matrix; every row of blocks must agree on heights."""
        entries = []
        for block_row in grid:
            height = block_row[0].rows
            for i in range(height):
                line = []
                for block in block_row:
                    line.extend(block.entries[i])
                entries.append(tuple(line))
        cols = sum(block.cols for block in grid[0]) if grid else 0
        return cls(len(entries), cols, tuple(entries))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def entry(self, i: int, j: int) -> FieldScalar:
        return self.entries[i][j]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(
            tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)
        ))

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)

    def permuted(self, row_order: Sequence[int], col_order: Sequence[int]) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(
            tuple(self.entries[i][j] for j in col_order) for i in row_order
        ))


@dataclass(frozen=True)
class PrimeField:
    p: int = MERSENNE_61

    def __post_init__(self):
        if not (2 <= self.p < PRIME_CEILING) or not isprime(self.p):
            raise PreconditionError(f"Field modulus {self.p} must be a prime below 2^62.")

    def reduce(self, value: int) -> FieldScalar:
        return value % self.p

    def inv(self, value: FieldScalar) -> FieldScalar:
        if value % self.p == 0:
            raise ZeroDivisionError("Zero has no inverse in a field.")
        return pow(value, -1, self.p)

    def random_element(self, rng: np.random.Generator) -> FieldScalar:
        return int(rng.integers(0, self.p))

    def matrix(self, rows: int, cols: int, entries: Sequence[Sequence[int]]) -> Matrix:
        return Matrix(rows, cols, tuple(tuple(x % self.p for x in r) for r in entries))

    def matmul(self, a: Matrix, b: Matrix) -> Matrix:
        if a.cols != b.rows:
            raise PreconditionError(f"Cannot multiply {a.shape} by {b.shape}.")
        p = self.p
        columns = list(zip(*b.entries)) if b.rows else [()] * b.cols
        return Matrix(a.rows, b.cols, tuple(
            tuple(sum(x * y for x, y in zip(row, col)) % p for col in columns)
            for row in a.entries
        ))

    def apply(self, a: Matrix, v: Sequence[FieldScalar]) -> Vector:
        p = self.p
        return tuple(sum(x * y for x, y in zip(row, v)) % p for row in a.entries)

    def add(self, a: Matrix, b: Matrix, sign: int = 1) -> Matrix:
        if a.shape != b.shape:
            raise PreconditionError(f"Cannot add {a.shape} and {b.shape}.")
        p = self.p
        return Matrix(a.rows, a.cols, tuple(
            tuple((x + sign * y) % p for x, y in zip(ra, rb))
            for ra, rb in zip(a.entries, b.entries)
        ))

    def _echelon(self, entries: Sequence[Sequence[int]], cols: int, reduced: bool):
        """Gauss-Jordan on a copy; returns (nonzero rows, pivot columns)."""
        p = self.p
        rows = [list(r) for r in entries]
        pivots = []
        r = 0
        for c in range(cols):
            if r == len(rows):
                break
            pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            inv = pow(rows[r][c], -1, p)
            head = [(x * inv) % p for x in rows[r][c:]]
            rows[r][c:] = head
            start = 0 if reduced else r + 1
            for i in range(start, len(rows)):
                if i == r:
                    continue
                factor = rows[i][c]
                if factor:
                    row = rows[i]
                    row[c:] = [(x - factor * y) % p for x, y in zip(row[c:], head)]
            pivots.append(c)
            r += 1
        return rows[:r], pivots

    def rank(self, a: Matrix) -> int:
        if a.rows == 0 or a.cols == 0:
            return 0
        _, pivots = self._echelon(a.entries, a.cols, reduced=False)
        return len(pivots)

    def nullspace(self, a: Matrix) -> list[Vector]:
        """Basis of {v : a v = 0}, one vector per free column."""
        if a.rows == 0:
            return [tuple(1 if i == j else 0 for i in range(a.cols)) for j in range(a.cols)]
        rows, pivots = self._echelon(a.entries, a.cols, reduced=True)
        pivot_set = set(pivots)
        basis = []
        for free in range(a.cols):
            if free in pivot_set:
                continue
            v = [0] * a.cols
            v[free] = 1
            for row, pc in zip(rows, pivots):
                v[pc] = (-row[free]) % self.p
            basis.append(tuple(v))
        return basis

    def combine(self, basis: Sequence[Vector], coefficients: Sequence[int], length: int) -> Vector:
        p = self.p
        out = [0] * length
        for coeff, vec in zip(coefficients, basis):
            if coeff:
                for i, x in enumerate(vec):
                    if x:
                        out[i] = (out[i] + coeff * x) % p
        return tuple(out)

    def random_kernel_element(self, a: Matrix, rng: np.random.Generator) -> Vector:
        basis = self.nullspace(a)
        coefficients = [self.random_element(rng) for _ in basis]
        return self.combine(basis, coefficients, a.cols)


def schwartz_zippel_bound(degree: int, rows: int, cols: int, prime: int) -> Fraction:
    """Probability that one uniform evaluation underestimates a generic rank."""
    return Fraction(degree * min(rows, cols), prime)
