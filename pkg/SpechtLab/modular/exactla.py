"""
Exact dense linear algebra over the prime field GF(p).

Subspaces are kept in reduced row echelon form and stored on the columns their
basis actually touches (``support``), so a subspace of a 4^8-dimensional word
space costs memory proportional to the weight space it lives in. Two subspaces
are equal as sets exactly when their supports and bases are identical.

Wide eliminations (more than ``SPARSE_THRESHOLD`` live columns) go through
sympy's sparse domain matrices instead of numpy; both paths return the same
canonical basis.
"""
import logging
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np
from sympy import GF
from sympy.polys.matrices.sdm import SDM

from .exceptions import DimensionMismatchError
from .partitions import require_prime

logger = logging.getLogger(__name__)

SPARSE_THRESHOLD = 4096

INDEX = np.int64


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        require_prime(self.p)

    def __call__(self, value: int) -> int:
        return int(value) % self.p

    def inverse(self, value: int) -> int:
        value = self(value)
        if value == 0:
            raise ZeroDivisionError(f'0 has no inverse modulo {self.p}')
        return pow(value, self.p - 2, self.p)


class FieldVector:
    """A vector over GF(p), stored as its nonzero coefficients."""

    __slots__ = ('ambient', 'p', 'coefficients')

    def __init__(self, coefficients: Mapping[int, int], ambient: int, p: int):
        cleaned = {}
        for index, value in coefficients.items():
            if not 0 <= index < ambient:
                raise DimensionMismatchError(f'index {index} outside ambient {ambient}')
            value %= p
            if value:
                cleaned[int(index)] = value
        self.ambient = ambient
        self.p = p
        self.coefficients = MappingProxyType(dict(sorted(cleaned.items())))

    @classmethod
    def from_dense(cls, values, p: int) -> 'FieldVector':
        values = np.asarray(values, dtype=INDEX) % p
        return cls({int(i): int(values[i]) for i in np.nonzero(values)[0]}, len(values), p)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self.ambient, dtype=INDEX)
        for index, value in self.coefficients.items():
            dense[index] = value
        return dense

    def support(self) -> list[int]:
        return list(self.coefficients)

    def _check(self, other: 'FieldVector'):
        if (self.ambient, self.p) != (other.ambient, other.p):
            raise DimensionMismatchError('vectors live in different spaces')

    def __add__(self, other: 'FieldVector') -> 'FieldVector':
        self._check(other)
        total = dict(self.coefficients)
        for index, value in other.coefficients.items():
            total[index] = total.get(index, 0) + value
        return FieldVector(total, self.ambient, self.p)

    def __sub__(self, other: 'FieldVector') -> 'FieldVector':
        return self + other.scale(-1)

    def scale(self, factor: int) -> 'FieldVector':
        return FieldVector(
            {index: value * factor for index, value in self.coefficients.items()},
            self.ambient, self.p,
        )

    def dot(self, other: 'FieldVector') -> int:
        self._check(other)
        return sum(
            value * other.coefficients.get(index, 0)
            for index, value in self.coefficients.items()
        ) % self.p

    def is_zero(self) -> bool:
        return not self.coefficients

    def __eq__(self, other):
        if not isinstance(other, FieldVector):
            return NotImplemented
        return (self.ambient, self.p, dict(self.coefficients)) == (
            other.ambient, other.p, dict(other.coefficients))

    def __hash__(self):
        return hash((self.ambient, self.p, tuple(self.coefficients.items())))

    def __repr__(self):
        return f'FieldVector({dict(self.coefficients)}, ambient={self.ambient}, p={self.p})'


def _rref_dense(block: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    reduced = np.array(block, dtype=INDEX) % p
    height, width = reduced.shape
    pivots = []
    row = 0
    for column in range(width):
        if row == height:
            break
        candidates = np.nonzero(reduced[row:, column])[0]
        if candidates.size == 0:
            continue
        found = row + int(candidates[0])
        if found != row:
            reduced[[row, found]] = reduced[[found, row]]
        reduced[row] = reduced[row] * pow(int(reduced[row, column]), p - 2, p) % p
        factors = reduced[:, column].copy()
        factors[row] = 0
        targets = np.nonzero(factors)[0]
        if targets.size:
            reduced[targets] = (
                reduced[targets] - np.outer(factors[targets], reduced[row])
            ) % p
        pivots.append(column)
        row += 1
    return reduced[:row], pivots


def _rref_sparse(block: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    field = GF(p)
    entries: dict[int, dict[int, object]] = {}
    for i, j in zip(*np.nonzero(block % p)):
        entries.setdefault(int(i), {})[int(j)] = field(int(block[i, j]))
    reduced, pivots = SDM(entries, block.shape, field).rref()
    out = np.zeros((len(pivots), block.shape[1]), dtype=INDEX)
    rows = sorted(reduced.values(), key=min)
    for i, row in enumerate(rows):
        for j, value in row.items():
            out[i, j] = field.to_int(value) % p
    return out, sorted(int(pivot) for pivot in pivots)


def _rref_block(block: np.ndarray, p: int, sparse: bool | None = None) -> tuple[np.ndarray, list[int]]:
    if block.shape[0] == 0 or block.shape[1] == 0:
        return np.zeros((0, block.shape[1]), dtype=INDEX), []
    if sparse is None:
        sparse = block.shape[1] > SPARSE_THRESHOLD
    if sparse:
        logger.debug('sparse elimination on %d x %d block', *block.shape)
        return _rref_sparse(block, p)
    return _rref_dense(block, p)


class Subspace:
    """
    A subspace of GF(p)^ambient in canonical reduced row echelon form.

    ``rows`` has one row per basis vector and one column per entry of
    ``support``; every other coordinate of every basis vector is zero.
    """

    __slots__ = ('ambient', 'p', 'support', 'rows')

    def __init__(self, ambient: int, p: int, support: np.ndarray, rows: np.ndarray):
        self.ambient = ambient
        self.p = p
        self.support = support
        self.rows = rows

    @classmethod
    def span(cls, block, columns, ambient: int, p: int, sparse: bool | None = None) -> 'Subspace':
        """Row space of ``block``, whose columns are the coordinates ``columns``."""
        columns = np.asarray(columns, dtype=INDEX)
        if columns.size == 0:
            return cls.zero(ambient, p)
        block = np.asarray(block, dtype=INDEX).reshape(-1, len(columns)) % p
        if columns.min() < 0 or columns.max() >= ambient:
            raise DimensionMismatchError(f'columns outside ambient dimension {ambient}')
        order = np.argsort(columns, kind='stable')
        columns, block = columns[order], block[:, order]
        if columns.size > 1 and np.any(columns[1:] == columns[:-1]):
            raise DimensionMismatchError('repeated column index')
        live = np.any(block != 0, axis=0)
        columns, block = columns[live], block[:, live]
        reduced, _ = _rref_block(block, p, sparse)
        live = np.any(reduced != 0, axis=0)
        return cls(ambient, p, columns[live], reduced[:, live])

    @classmethod
    def from_dense(cls, matrix, p: int, sparse: bool | None = None) -> 'Subspace':
        matrix = np.atleast_2d(np.asarray(matrix, dtype=INDEX))
        return cls.span(matrix, np.arange(matrix.shape[1]), matrix.shape[1], p, sparse)

    @classmethod
    def from_vectors(cls, vectors: Iterable[FieldVector], ambient: int, p: int) -> 'Subspace':
        vectors = list(vectors)
        for vector in vectors:
            if (vector.ambient, vector.p) != (ambient, p):
                raise DimensionMismatchError('vector does not belong to this space')
        columns = sorted({index for vector in vectors for index in vector.coefficients})
        position = {column: k for k, column in enumerate(columns)}
        block = np.zeros((len(vectors), len(columns)), dtype=INDEX)
        for i, vector in enumerate(vectors):
            for index, value in vector.coefficients.items():
                block[i, position[index]] = value
        return cls.span(block, columns, ambient, p)

    @classmethod
    def zero(cls, ambient: int, p: int) -> 'Subspace':
        return cls(ambient, p, np.zeros(0, dtype=INDEX), np.zeros((0, 0), dtype=INDEX))

    @classmethod
    def full(cls, ambient: int, p: int) -> 'Subspace':
        return cls(ambient, p, np.arange(ambient, dtype=INDEX), np.eye(ambient, dtype=INDEX))

    @property
    def dim(self) -> int:
        return self.rows.shape[0]

    @property
    def pivots(self) -> list[int]:
        return [int(self.support[np.argmax(row != 0)]) for row in self.rows]

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.dim, self.ambient), dtype=INDEX)
        dense[:, self.support] = self.rows
        return dense

    def vectors(self) -> list[FieldVector]:
        return [
            FieldVector(dict(zip(self.support.tolist(), row.tolist())), self.ambient, self.p)
            for row in self.rows
        ]

    def on_columns(self, columns: np.ndarray) -> np.ndarray:
        """Basis rows written on ``columns``, a sorted superset of the support."""
        block = np.zeros((self.dim, len(columns)), dtype=INDEX)
        if self.dim:
            block[:, np.searchsorted(columns, self.support)] = self.rows
        return block

    def _check(self, other: 'Subspace'):
        if (self.ambient, self.p) != (other.ambient, other.p):
            raise DimensionMismatchError(
                f'GF({self.p})^{self.ambient} and GF({other.p})^{other.ambient} do not match'
            )

    def reduce(self, block: np.ndarray, columns) -> tuple[np.ndarray, np.ndarray]:
        """
        Residues of the rows of ``block`` modulo this subspace.

        Returns the residues and the column list they are written on. A row lies in
        the subspace exactly when its residue is zero.
        """
        columns = np.asarray(columns, dtype=INDEX)
        union = np.union1d(columns, self.support)
        vectors = np.zeros((block.shape[0], len(union)), dtype=INDEX)
        vectors[:, np.searchsorted(union, columns)] = np.asarray(block, dtype=INDEX) % self.p
        if self.dim:
            basis = self.on_columns(union)
            coefficients = vectors[:, np.searchsorted(union, self.pivots)]
            vectors = (vectors - coefficients @ basis) % self.p
        return vectors, union

    def contains(self, other: 'Subspace') -> bool:
        self._check(other)
        if other.dim == 0:
            return True
        residues, _ = self.reduce(other.rows, other.support)
        return not residues.any()

    def contains_vector(self, vector: FieldVector) -> bool:
        columns = np.array(vector.support(), dtype=INDEX)
        values = np.array([list(vector.coefficients.values())], dtype=INDEX)
        residues, _ = self.reduce(values.reshape(1, -1), columns)
        return not residues.any()

    def __add__(self, other: 'Subspace') -> 'Subspace':
        self._check(other)
        union = np.union1d(self.support, other.support)
        return Subspace.span(
            np.vstack([self.on_columns(union), other.on_columns(union)]), union, self.ambient, self.p
        )

    def intersection(self, other: 'Subspace') -> 'Subspace':
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient, self.p)
        union = np.union1d(self.support, other.support)
        mine = self.on_columns(union)
        stacked = np.vstack([mine, other.on_columns(union)])
        # x*A + y*B = 0 gives x*A in both spaces
        relations = kernel(stacked.T, self.p)
        if relations.dim == 0:
            return Subspace.zero(self.ambient, self.p)
        coefficients = relations.to_dense()[:, :self.dim]
        return Subspace.span(coefficients @ mine % self.p, union, self.ambient, self.p)

    def __le__(self, other: 'Subspace') -> bool:
        return other.contains(self)

    def __lt__(self, other: 'Subspace') -> bool:
        return other.contains(self) and self.dim < other.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            (self.ambient, self.p) == (other.ambient, other.p)
            and np.array_equal(self.support, other.support)
            and np.array_equal(self.rows, other.rows)
        )

    def __hash__(self):
        return hash((self.ambient, self.p, self.support.tobytes(), self.rows.tobytes()))

    def __repr__(self):
        return f'Subspace(dim={self.dim}, ambient={self.ambient}, p={self.p})'


def rref(matrix, p: int, sparse: bool | None = None) -> tuple[Subspace, int]:
    subspace = Subspace.from_dense(matrix, p, sparse)
    return subspace, subspace.dim


def rank(matrix, p: int) -> int:
    return rref(matrix, p)[1]


def kernel(matrix, p: int) -> Subspace:
    """Right kernel ``{v : A v = 0}`` as a subspace of GF(p)^columns."""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=INDEX)) % p
    width = matrix.shape[1]
    reduced, pivots = _rref_block(matrix, p)
    pivot_set = set(pivots)
    free = [column for column in range(width) if column not in pivot_set]
    if not free:
        return Subspace.zero(width, p)
    basis = np.zeros((len(free), width), dtype=INDEX)
    for k, column in enumerate(free):
        basis[k, column] = 1
        basis[k, pivots] = -reduced[:len(pivots), column] % p
    return Subspace.from_dense(basis, p)


def subspace_ops(a: Subspace, b: Subspace) -> dict:
    return {
        'sum': a + b,
        'intersection': a.intersection(b),
        'contains': a.contains(b),
        'equal': a == b,
    }


def preimage_of_rows(images: np.ndarray, columns, target: Subspace) -> Subspace:
    """
    ``{x : x @ images in target}``; row ``i`` of ``images`` is the image of the
    ``i``-th source basis vector, written on the target coordinates ``columns``.
    """
    residues, _ = target.reduce(np.asarray(images, dtype=INDEX), columns)
    return kernel(residues.T, target.p)


def preimage(matrix, target: Subspace) -> Subspace:
    """Preimage of ``target`` under the map ``x -> matrix @ x``."""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=INDEX))
    if matrix.shape[0] != target.ambient:
        raise DimensionMismatchError(
            f'map lands in dimension {matrix.shape[0]}, subspace lives in {target.ambient}'
        )
    return preimage_of_rows(matrix.T, np.arange(matrix.shape[0]), target)
