"""
The word space F_n^r, its place-permutation action and Specht modules.

A word ``w = (w(1), ..., w(r))`` with letters in ``1..n`` stands for the monomial
``x_1^{w(1)} ... x_r^{w(r)}`` (equivalently the simple tensor
``v_{w(1)} (x) ... (x) v_{w(r)}``). Words are indexed lexicographically with
letter 1 smallest, so word ``(1, ..., 1)`` has index 0.

Permutations are tuples in one-line notation, ``pi[t - 1] = pi(t)``, and act on
words by ``(pi . w)(pi(t)) = w(t)``.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import factorial, prod
from typing import Iterable

import numpy as np
from django.conf import settings
from sympy.combinatorics import Permutation
from sympy.utilities.iterables import multiset_permutations

from .exactla import INDEX, FieldVector, Subspace, kernel
from .exceptions import (
    CacheFormatError, DimensionMismatchError, InvalidPartitionError,
    ResourceGuardError, SingularPartitionError, SpechtError,
)
from .partitions import (
    Partition, as_partition, conjugate, enumerate_partitions, is_p_regular, require_prime,
)

logger = logging.getLogger(__name__)

DEFAULT_WORD_LIMIT = 2 ** 24
# entries of one dense elimination block (int64)
DEFAULT_BLOCK_LIMIT = 2 ** 26
WEIGHT_CHUNK = 2 ** 16
FORMAT_VERSION = 'specht-gmodule v1'

Word = tuple[int, ...]
Perm = tuple[int, ...]


def word_limit() -> int:
    if settings.configured:
        return int(getattr(settings, 'SPECHT_WORD_LIMIT', DEFAULT_WORD_LIMIT))
    return DEFAULT_WORD_LIMIT


def check_guard(n: int, r: int, override: bool = False):
    if not override and n ** r > word_limit():
        raise ResourceGuardError(
            f'{n}^{r} words exceed the limit of {word_limit()}; pass the guard override to proceed'
        )


# permutations

def identity(r: int) -> Perm:
    return tuple(range(1, r + 1))


def compose(pi: Perm, rho: Perm) -> Perm:
    """The product ``pi rho``: apply ``rho`` first."""
    r = max(len(pi), len(rho))
    pi, rho = pi + identity(r)[len(pi):], rho + identity(r)[len(rho):]
    return tuple(pi[rho[t] - 1] for t in range(r))


def inverse(pi: Perm) -> Perm:
    result = [0] * len(pi)
    for t, image in enumerate(pi, start=1):
        result[image - 1] = t
    return tuple(result)


def transposition(i: int, j: int, r: int) -> Perm:
    images = list(identity(r))
    images[i - 1], images[j - 1] = j, i
    return tuple(images)


def adjacent(i: int, r: int) -> Perm:
    return transposition(i, i + 1, r)


def cycle(entries: Iterable[int], r: int) -> Perm:
    """The cycle ``(a b c ...)`` sending a -> b -> c -> ... -> a."""
    entries = list(entries)
    images = list(identity(r))
    for k, entry in enumerate(entries):
        images[entry - 1] = entries[(k + 1) % len(entries)]
    return tuple(images)


def sign(pi: Perm) -> int:
    return Permutation([image - 1 for image in pi]).signature() if pi else 1


# words

def _place_values(r: int, n: int) -> np.ndarray:
    return n ** np.arange(r - 1, -1, -1, dtype=INDEX)


def word_digits(indices: np.ndarray, r: int, n: int) -> np.ndarray:
    """Letters minus one of the words at ``indices``, one row per index."""
    indices = np.asarray(indices, dtype=INDEX)
    return indices[:, None] // _place_values(r, n)[None, :] % n


def word_index(word: Word, n: int) -> int:
    index = 0
    for letter in word:
        if not 1 <= letter <= n:
            raise DimensionMismatchError(f'letter {letter} outside 1..{n}')
        index = index * n + (letter - 1)
    return index


def word_at(index: int, r: int, n: int) -> Word:
    letters = []
    for _ in range(r):
        index, digit = divmod(index, n)
        letters.append(digit + 1)
    return tuple(reversed(letters))


def weight(word: Word, n: int) -> tuple[int, ...]:
    return tuple(sum(1 for letter in word if letter == i) for i in range(1, n + 1))


def tabloid_of(word: Word, n: int) -> tuple[frozenset, ...]:
    """Row ``i`` holds the places carrying letter ``i``."""
    return tuple(
        frozenset(t for t, letter in enumerate(word, start=1) if letter == i)
        for i in range(1, n + 1)
    )


def permute_indices(pi: Perm, indices: np.ndarray, n: int) -> np.ndarray:
    """Indices of ``pi . w`` for the words ``w`` at ``indices``; only those words are expanded."""
    r = len(pi)
    digits = word_digits(indices, r, n)
    moved = np.empty_like(digits)
    moved[:, [image - 1 for image in pi]] = digits
    return moved @ _place_values(r, n)


@lru_cache(maxsize=64)
def place_permutation(pi: Perm, n: int) -> np.ndarray:
    """``images[i]`` is the index of ``pi . w_i`` over the whole word space."""
    return permute_indices(pi, np.arange(n ** len(pi), dtype=INDEX), n)


def act(pi: Perm, vector: FieldVector, n: int) -> FieldVector:
    if n ** len(pi) != vector.ambient:
        raise DimensionMismatchError('permutation degree does not match the word length')
    indices = np.array(vector.support(), dtype=INDEX)
    images = permute_indices(tuple(pi), indices, n)
    return FieldVector(
        {int(image): value for image, value in zip(images, vector.coefficients.values())},
        vector.ambient, vector.p,
    )


def act_on_subspace(pi: Perm, subspace: Subspace, n: int) -> Subspace:
    images = permute_indices(tuple(pi), subspace.support, n)
    return Subspace.span(subspace.rows, images, subspace.ambient, subspace.p)


def block_limit() -> int:
    if settings.configured:
        return int(getattr(settings, 'SPECHT_BLOCK_LIMIT', DEFAULT_BLOCK_LIMIT))
    return DEFAULT_BLOCK_LIMIT


def _stack(pieces: list[tuple[np.ndarray, np.ndarray]], ambient: int, p: int) -> Subspace:
    columns = np.unique(np.concatenate([cols for _, cols in pieces]))
    height = sum(rows.shape[0] for rows, _ in pieces)
    if height * len(columns) > block_limit():
        raise ResourceGuardError(
            f'a {height} x {len(columns)} elimination block exceeds SPECHT_BLOCK_LIMIT={block_limit()}'
        )
    block = np.zeros((height, len(columns)), dtype=INDEX)
    start = 0
    for rows, cols in pieces:
        block[start:start + rows.shape[0], np.searchsorted(columns, cols)] = rows
        start += rows.shape[0]
    return Subspace.span(block, columns, ambient, p)


def orbit_closure(subspace: Subspace, r: int, n: int) -> Subspace:
    """Smallest G(r)-invariant subspace containing ``subspace``."""
    generators = [adjacent(i, r) for i in range(1, r)]
    current = subspace
    rounds = 0
    while current.dim and generators:
        pieces = [(current.rows, current.support)]
        pieces += [(current.rows, permute_indices(pi, current.support, n)) for pi in generators]
        grown = _stack(pieces, current.ambient, current.p)
        rounds += 1
        logger.debug('closure round %d: dim %d -> %d', rounds, current.dim, grown.dim)
        if grown.dim == current.dim:
            break
        current = grown
    return current


def is_invariant(subspace: Subspace, r: int, n: int) -> bool:
    for i in range(1, r):
        images = permute_indices(adjacent(i, r), subspace.support, n)
        residues, _ = subspace.reduce(subspace.rows, images)
        if residues.any():
            return False
    return True


class GModule:
    """A subspace of F_n^r closed under the place-permutation action of G(r)."""

    __slots__ = ('carrier', 'r', 'n', 'p', 'label', 'shape', 'closed')

    def __init__(self, carrier: Subspace, r: int, n: int, p: int,
                 label: str = '', shape: Partition | None = None, closed: bool = False):
        if carrier.ambient != n ** r or carrier.p != p:
            raise DimensionMismatchError(f'carrier does not live in F_{n}^{r} over GF({p})')
        self.carrier = carrier
        self.r = r
        self.n = n
        self.p = p
        self.label = label
        self.shape = shape
        self.closed = closed

    @classmethod
    def generated_by(cls, subspace: Subspace, r: int, n: int, label: str = '',
                     shape: Partition | None = None) -> 'GModule':
        return cls(orbit_closure(subspace, r, n), r, n, subspace.p, label, shape, closed=True)

    @classmethod
    def zero(cls, r: int, n: int, p: int) -> 'GModule':
        return cls(Subspace.zero(n ** r, p), r, n, p, '0', closed=True)

    @classmethod
    def full(cls, r: int, n: int, p: int) -> 'GModule':
        return cls(Subspace.full(n ** r, p), r, n, p, f'F_{n}^{r}', closed=True)

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def certify(self) -> 'GModule':
        if not is_invariant(self.carrier, self.r, self.n):
            raise SpechtError(f'{self.label or "subspace"} is not closed under G({self.r})')
        self.closed = True
        return self

    def is_closed(self) -> bool:
        return is_invariant(self.carrier, self.r, self.n)

    def _check(self, other: 'GModule'):
        if (self.r, self.n, self.p) != (other.r, other.n, other.p):
            raise DimensionMismatchError('modules live in different word spaces')

    def contains(self, other: 'GModule') -> bool:
        self._check(other)
        return self.carrier.contains(other.carrier)

    def __le__(self, other: 'GModule') -> bool:
        return other.contains(self)

    def __add__(self, other: 'GModule') -> 'GModule':
        self._check(other)
        return GModule(self.carrier + other.carrier, self.r, self.n, self.p, closed=True)

    def intersection(self, other: 'GModule') -> 'GModule':
        self._check(other)
        return GModule(self.carrier.intersection(other.carrier), self.r, self.n, self.p, closed=True)

    def __eq__(self, other):
        if not isinstance(other, GModule):
            return NotImplemented
        return (self.r, self.n, self.p) == (other.r, other.n, other.p) and self.carrier == other.carrier

    def __hash__(self):
        return hash((self.r, self.n, self.p, self.carrier))

    def __repr__(self):
        return f'GModule({self.label or "?"}, dim={self.dim}, r={self.r}, n={self.n}, p={self.p})'

    def dumps(self) -> str:
        lines = [
            FORMAT_VERSION,
            f'n={self.n}',
            f'r={self.r}',
            f'p={self.p}',
            f'label={self.label}',
            f'shape={self.shape.format() if self.shape is not None else "-"}',
            f'ambient={self.carrier.ambient}',
            f'dim={self.dim}',
        ]
        for row in self.carrier.rows:
            pairs = ' '.join(
                f'{column}:{value}' for column, value in zip(self.carrier.support.tolist(), row.tolist())
                if value
            )
            lines.append(f'row {pairs}')
        return '\n'.join(lines) + '\n'

    @classmethod
    def loads(cls, text: str) -> 'GModule':
        lines = text.splitlines()
        if not lines or lines[0] != FORMAT_VERSION:
            raise CacheFormatError(f'expected {FORMAT_VERSION!r} header')
        header = {}
        rows = []
        for line in lines[1:]:
            if line.startswith('row'):
                rows.append(dict(
                    (int(column), int(value))
                    for column, value in (pair.split(':') for pair in line[3:].split())
                ))
            elif '=' in line:
                key, value = line.split('=', 1)
                header[key] = value
        try:
            n, r, p = int(header['n']), int(header['r']), int(header['p'])
            ambient, dim = int(header['ambient']), int(header['dim'])
        except (KeyError, ValueError) as exc:
            raise CacheFormatError(f'incomplete header: {exc}') from exc
        if len(rows) != dim or ambient != n ** r:
            raise CacheFormatError('row count or ambient does not match the header')
        vectors = [FieldVector(row, ambient, p) for row in rows]
        carrier = Subspace.from_vectors(vectors, ambient, p)
        if carrier.dim != dim:
            raise CacheFormatError('stored rows are not independent')
        shape = None if header.get('shape', '-') == '-' else Partition.parse(header['shape'])
        return cls(carrier, r, n, p, header.get('label', ''), shape, closed=True)


@dataclass(frozen=True)
class Tableau:
    """A filling of the diagram of ``shape`` recorded column by column."""

    shape: Partition
    columns: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        heights = conjugate(self.shape)
        if len(self.columns) != len(heights):
            raise InvalidPartitionError(f'{self.shape} has {len(heights)} columns')
        for column, height in zip(self.columns, heights):
            if len(column) != height:
                raise InvalidPartitionError(f'column {column} should have length {height}')
        entries = sorted(entry for column in self.columns for entry in column)
        if entries != list(range(1, self.shape.size + 1)):
            raise InvalidPartitionError('tableau entries must be exactly 1..r')

    @classmethod
    def column_superstandard(cls, shape) -> 'Tableau':
        shape = as_partition(shape)
        columns, start = [], 1
        for height in conjugate(shape):
            columns.append(tuple(range(start, start + height)))
            start += height
        return cls(shape, tuple(columns))

    def act(self, pi: Perm) -> 'Tableau':
        return Tableau(self.shape, tuple(tuple(pi[entry - 1] for entry in column) for column in self.columns))


def _bracket_terms(column: tuple[int, ...]) -> list[tuple[int, dict[int, int]]]:
    terms = []
    for sigma in permutations(range(1, len(column) + 1)):
        terms.append((sign(sigma), dict(zip(column, sigma))))
    return terms


def column_bracket_product(tableau: Tableau, n: int, p: int) -> FieldVector:
    """Expand the product of alternating brackets over the columns of ``tableau``."""
    if any(len(column) > n for column in tableau.columns):
        raise InvalidPartitionError(f'a column of {tableau.shape} is longer than n={n}')
    r = tableau.shape.size
    coefficients: dict[int, int] = {}
    for choice in product(*(_bracket_terms(column) for column in tableau.columns)):
        letters = [0] * r
        coefficient = 1
        for term_sign, assignment in choice:
            coefficient *= term_sign
            for place, letter in assignment.items():
                letters[place - 1] = letter
        index = word_index(tuple(letters), n)
        coefficients[index] = coefficients.get(index, 0) + coefficient
    return FieldVector(coefficients, n ** r, p)


def _validate_shape(lam, n: int) -> Partition:
    lam = as_partition(lam)
    if len(lam) > n:
        raise InvalidPartitionError(f'{lam} has more than n={n} parts')
    return lam


def specht_module(lam, n: int, p: int, override_guard: bool = False) -> GModule:
    lam = _validate_shape(lam, n)
    require_prime(p)
    r = lam.size
    check_guard(n, r, override_guard)
    generator = column_bracket_product(Tableau.column_superstandard(lam), n, p)
    seed = Subspace.from_vectors([generator], n ** r, p)
    module = GModule.generated_by(seed, r, n, label=f'S^({lam})', shape=lam)
    logger.debug('built %r', module)
    return module


def gram_matrix(module: GModule) -> np.ndarray:
    rows = module.carrier.rows
    return rows @ rows.T % module.p


def gram_radical(module: GModule) -> GModule:
    """Radical of the orthonormal word form restricted to a Specht module."""
    if module.shape is None:
        raise SpechtError('the radical is only defined here for Specht modules')
    if not is_p_regular(module.shape, module.p):
        raise SingularPartitionError(f'{module.shape} is {module.p}-singular')
    carrier = module.carrier
    null = kernel(gram_matrix(module), module.p)
    if null.dim == 0:
        radical = Subspace.zero(carrier.ambient, module.p)
    else:
        radical = Subspace.span(null.to_dense() @ carrier.rows % module.p, carrier.support,
                                carrier.ambient, module.p)
    result = GModule(radical, module.r, module.n, module.p, f'P^({module.shape})', module.shape)
    return result.certify()


def dim_irreducible(lam, n: int, p: int, override_guard: bool = False) -> int:
    lam = _validate_shape(lam, n)
    if not is_p_regular(lam, p):
        raise SingularPartitionError(f'{lam} is {p}-singular')
    specht = specht_module(lam, n, p, override_guard)
    return specht.dim - gram_radical(specht).dim


def irreducible_table(r: int, n: int, p: int) -> dict[Partition, int]:
    return {
        lam: dim_irreducible(lam, n, p)
        for lam in enumerate_partitions(r, n) if is_p_regular(lam, p)
    }


def multinomial(r: int, composition: Iterable[int]) -> int:
    return factorial(r) // prod(factorial(part) for part in composition)


@lru_cache(maxsize=32)
def _weight_counts(r: int, n: int) -> dict[tuple[int, ...], int]:
    """Number of words of each weight, counted over the index range in chunks."""
    tally: Counter = Counter()
    for start in range(0, n ** r, WEIGHT_CHUNK):
        digits = word_digits(np.arange(start, min(start + WEIGHT_CHUNK, n ** r), dtype=INDEX), r, n)
        counts = np.stack([(digits == letter).sum(axis=1) for letter in range(n)], axis=1)
        keys, sizes = np.unique(counts, axis=0, return_counts=True)
        tally.update({tuple(int(x) for x in key): int(size) for key, size in zip(keys, sizes)})
    return dict(tally)


def _validate_composition(r: int, n: int, composition) -> tuple[int, ...]:
    composition = tuple(int(part) for part in composition)
    if len(composition) != n or any(part < 0 for part in composition):
        raise DimensionMismatchError(f'{composition} is not a composition with {n} entries')
    if sum(composition) != r:
        raise DimensionMismatchError(f'{composition} does not sum to {r}')
    return composition


def weight_space_dim(r: int, n: int, composition) -> int:
    composition = _validate_composition(r, n, composition)
    check_guard(n, r)
    return _weight_counts(r, n).get(composition, 0)


def weight_space(r: int, n: int, composition, p: int) -> GModule:
    """The span of all words of the given weight (the permutation module on tabloids)."""
    composition = _validate_composition(r, n, composition)
    check_guard(n, r)
    letters = [letter for letter, count in enumerate(composition, start=1) for _ in range(count)]
    columns = np.array(sorted(word_index(tuple(word), n) for word in multiset_permutations(letters)),
                       dtype=INDEX)
    carrier = Subspace(n ** r, p, columns, np.eye(len(columns), dtype=INDEX))
    return GModule(carrier, r, n, p, f'M^({",".join(map(str, composition))})', closed=True)
