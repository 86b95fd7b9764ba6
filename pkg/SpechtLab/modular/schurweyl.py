"""
The Schur-Weyl map sigma_r : KG(r) -> End(E^(x)r) and its kernel.

Group algebra elements are indexed by the lexicographic rank of the permutation
(its Lehmer code read as a factorial-base number), so KG(r) is GF(p)^(r!).
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Mapping

import numpy as np
from django.conf import settings
from sympy.combinatorics import Permutation

from .exactla import INDEX, Subspace, kernel
from .exceptions import DimensionMismatchError, ResourceGuardError
from .partitions import require_prime
from .wordspace import Perm, adjacent, compose, identity, place_permutation, sign

logger = logging.getLogger(__name__)

DEFAULT_SIGMA_WORD_LIMIT = 2 ** 12
DEFAULT_SIGMA_MAX_RANK = 7


def _limits() -> tuple[int, int]:
    if settings.configured:
        return (
            int(getattr(settings, 'SPECHT_SIGMA_WORD_LIMIT', DEFAULT_SIGMA_WORD_LIMIT)),
            int(getattr(settings, 'SPECHT_SIGMA_MAX_RANK', DEFAULT_SIGMA_MAX_RANK)),
        )
    return DEFAULT_SIGMA_WORD_LIMIT, DEFAULT_SIGMA_MAX_RANK


def check_sigma_guard(r: int, n: int):
    word_limit, max_rank = _limits()
    if n ** r > word_limit or r > max_rank:
        raise ResourceGuardError(
            f'sigma_{r} on {n}^{r} words is beyond the limits ({word_limit} words, r <= {max_rank})'
        )


def lehmer_rank(pi: Perm) -> int:
    return Permutation([image - 1 for image in pi]).rank()


def unrank(rank: int, r: int) -> Perm:
    return tuple(image + 1 for image in Permutation.unrank_lex(r, rank).array_form)


@lru_cache(maxsize=16)
def all_permutations(r: int) -> tuple[Perm, ...]:
    """G(r) in rank order."""
    return tuple(permutations(range(1, r + 1)))


@lru_cache(maxsize=64)
def _multiplication_table(r: int, generator: Perm, side: str) -> np.ndarray:
    """``table[rank(x)] = rank(g x)`` for side 'left', ``rank(x g)`` for 'right'."""
    index = {pi: k for k, pi in enumerate(all_permutations(r))}
    if side == 'left':
        return np.array([index[compose(generator, pi)] for pi in all_permutations(r)], dtype=INDEX)
    return np.array([index[compose(pi, generator)] for pi in all_permutations(r)], dtype=INDEX)


class GroupAlgebraElement:
    """An element of GF(p) G(r), kept sparse on its permutation support."""

    __slots__ = ('r', 'p', 'coefficients')

    def __init__(self, coefficients: Mapping[Perm, int], r: int, p: int):
        self.r = r
        self.p = p
        cleaned = {}
        for pi, value in coefficients.items():
            pi = tuple(pi) + identity(r)[len(pi):]
            if len(pi) != r:
                raise DimensionMismatchError(f'{pi} does not fix everything beyond {r}')
            value = (cleaned.get(pi, 0) + value) % p
            if value:
                cleaned[pi] = value
            else:
                cleaned.pop(pi, None)
        self.coefficients = dict(sorted(cleaned.items(), key=lambda item: lehmer_rank(item[0])))

    @classmethod
    def alternating(cls, k: int, r: int, p: int) -> 'GroupAlgebraElement':
        """The signed sum over G(k), viewed inside G(r)."""
        if k > r:
            raise DimensionMismatchError(f'G({k}) does not embed in G({r})')
        return cls({pi: sign(pi) for pi in permutations(range(1, k + 1))}, r, p)

    @classmethod
    def from_vector(cls, vector, r: int, p: int) -> 'GroupAlgebraElement':
        perms = all_permutations(r)
        return cls({perms[k]: int(vector[k]) for k in np.nonzero(np.asarray(vector) % p)[0]}, r, p)

    def to_vector(self) -> np.ndarray:
        vector = np.zeros(factorial(self.r), dtype=INDEX)
        for pi, value in self.coefficients.items():
            vector[lehmer_rank(pi)] = value
        return vector

    def __mul__(self, other: 'GroupAlgebraElement') -> 'GroupAlgebraElement':
        if (self.r, self.p) != (other.r, other.p):
            raise DimensionMismatchError('elements of different group algebras')
        product: dict[Perm, int] = {}
        for pi, a in self.coefficients.items():
            for rho, b in other.coefficients.items():
                key = compose(pi, rho)
                product[key] = product.get(key, 0) + a * b
        return GroupAlgebraElement(product, self.r, self.p)

    def __add__(self, other: 'GroupAlgebraElement') -> 'GroupAlgebraElement':
        total = dict(self.coefficients)
        for pi, value in other.coefficients.items():
            total[pi] = total.get(pi, 0) + value
        return GroupAlgebraElement(total, self.r, self.p)

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return (self.r, self.p, self.coefficients) == (other.r, other.p, other.coefficients)

    def __repr__(self):
        return f'GroupAlgebraElement({len(self.coefficients)} terms, r={self.r}, p={self.p})'


class SigmaMatrix:
    """sigma_r(pi) as n^r x n^r permutation matrices, assembled on demand."""

    def __init__(self, r: int, n: int):
        self.r = r
        self.n = n

    def images(self, pi: Perm) -> np.ndarray:
        return place_permutation(tuple(pi), self.n)

    def __getitem__(self, pi: Perm) -> np.ndarray:
        size = self.n ** self.r
        matrix = np.zeros((size, size), dtype=INDEX)
        matrix[self.images(pi), np.arange(size)] = 1
        return matrix


def sigma(pi: Perm, r: int, n: int) -> np.ndarray:
    """Column ``w`` of the matrix is the word ``w o pi^-1``."""
    if len(pi) != r:
        raise DimensionMismatchError(f'{pi} is not in G({r})')
    return SigmaMatrix(r, n)[pi]


def sigma_of(element: GroupAlgebraElement, n: int) -> np.ndarray:
    """sigma_r extended linearly to the group algebra."""
    matrices = SigmaMatrix(element.r, n)
    size = n ** element.r
    total = np.zeros((size, size), dtype=INDEX)
    for pi, value in element.coefficients.items():
        total = total + value * matrices[pi]
    return total % element.p


def _sigma_block(r: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """
    One row per permutation, flattened sigma_r(pi) restricted to the pairs
    (source word, target word) that some permutation connects.
    """
    size = n ** r
    perms = all_permutations(r)
    images = np.stack([place_permutation(pi, n) for pi in perms])
    flat = images * size + np.arange(size)[None, :]
    columns = np.unique(flat)
    block = np.zeros((len(perms), len(columns)), dtype=INDEX)
    rows = np.repeat(np.arange(len(perms)), size)
    block[rows, np.searchsorted(columns, flat.ravel())] = 1
    return block, columns


def image_rank(r: int, n: int, p: int) -> int:
    require_prime(p)
    check_sigma_guard(r, n)
    block, columns = _sigma_block(r, n)
    return Subspace.span(block, columns, (n ** r) ** 2, p).dim


def sigma_kernel(r: int, n: int, p: int) -> Subspace:
    """Ker sigma_r inside GF(p)^(r!)."""
    require_prime(p)
    check_sigma_guard(r, n)
    block, _ = _sigma_block(r, n)
    return kernel(block.T, p)


def two_sided_ideal(element: GroupAlgebraElement) -> Subspace:
    """Span of pi * element * rho over pi, rho in G(r), grown by Coxeter generators."""
    r, p = element.r, element.p
    tables = [
        _multiplication_table(r, adjacent(i, r), side)
        for i in range(1, r) for side in ('left', 'right')
    ]
    size = factorial(r)
    columns = np.arange(size, dtype=INDEX)
    current = Subspace.from_dense(element.to_vector().reshape(1, -1), p)
    rounds = 0
    while current.dim and tables:
        block = current.to_dense()
        moved = np.zeros((len(tables) * current.dim, size), dtype=INDEX)
        for k, table in enumerate(tables):
            moved[k * current.dim:(k + 1) * current.dim][:, table] = block
        grown = Subspace.span(np.vstack([block, moved]), columns, size, p)
        rounds += 1
        logger.debug('ideal round %d: dim %d -> %d', rounds, current.dim, grown.dim)
        if grown.dim == current.dim:
            break
        current = grown
    return current


@dataclass
class KernelReport:
    r: int
    n: int
    p: int
    group_order: int
    image_rank: int
    kernel_dim: int
    ideal_dim: int | None
    equal: bool

    @property
    def passed(self) -> bool:
        return self.equal and self.image_rank + self.kernel_dim == self.group_order


def kernel_ideal_check(r: int, n: int, p: int) -> KernelReport:
    """Compare Ker sigma_r with the ideal generated by the signed sum over G(n+1)."""
    require_prime(p)
    check_sigma_guard(r, n)
    rank = image_rank(r, n, p)
    null = sigma_kernel(r, n, p)
    if r <= n:
        return KernelReport(r, n, p, factorial(r), rank, null.dim, None, null.dim == 0)
    ideal = two_sided_ideal(GroupAlgebraElement.alternating(n + 1, r, p))
    return KernelReport(r, n, p, factorial(r), rank, null.dim, ideal.dim, ideal == null)
