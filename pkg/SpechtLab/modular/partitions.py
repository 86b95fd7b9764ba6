"""
Partition combinatorics used throughout the toolkit.

Partitions are stored trimmed of trailing zeros. Every function that takes an
ambient length ``n`` pads explicitly, so ``(3, 1)`` and ``(3, 1, 0)`` are the same
value and only differ in how they are printed for a given ``n``.
"""
from collections import Counter
from dataclasses import dataclass
from functools import reduce
from itertools import accumulate
from math import factorial
from operator import mul
from typing import Iterable, Iterator

from sympy import isprime
from sympy.ntheory import digits as sympy_digits

from .exceptions import InvalidPartitionError, NotPrimeError, RegionError

# Shapes up to this size are also counted by exhaustive enumeration.
BACKTRACK_LIMIT = 10


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(part) for part in self.parts)
        if any(part < 0 for part in parts):
            raise InvalidPartitionError(f'negative part in {parts}')
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise InvalidPartitionError(f'{parts} is not weakly decreasing')
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, 'parts', parts)

    @classmethod
    def parse(cls, text: str) -> 'Partition':
        """Read the comma-separated syntax used by the CLI, e.g. ``"3,1"``."""
        text = text.strip()
        if not text:
            return cls(())
        try:
            parts = tuple(int(chunk) for chunk in text.split(','))
        except ValueError:
            raise InvalidPartitionError(f'malformed partition {text!r}') from None
        return cls(parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, index: int) -> int:
        return self.parts[index] if index < len(self.parts) else 0

    def padded(self, n: int) -> tuple[int, ...]:
        if len(self.parts) > n:
            raise InvalidPartitionError(f'{self} has more than {n} parts')
        return self.parts + (0,) * (n - len(self.parts))

    def format(self, n: int | None = None) -> str:
        parts = self.parts if n is None else self.padded(n)
        return ','.join(str(part) for part in parts) or '0'

    def __str__(self):
        return self.format()


@dataclass(frozen=True)
class PAdicExpansion:
    digits: tuple[int, ...]
    p: int

    def __post_init__(self):
        if any(not 0 <= digit < self.p for digit in self.digits):
            raise ValueError(f'digits {self.digits} out of range for p={self.p}')
        if self.digits and self.digits[-1] == 0:
            raise ValueError('trailing digit must be nonzero')

    @property
    def value(self) -> int:
        return sum(digit * self.p ** s for s, digit in enumerate(self.digits))

    def digit(self, s: int) -> int:
        return self.digits[s] if s < len(self.digits) else 0


def as_partition(value) -> Partition:
    if isinstance(value, Partition):
        return value
    if isinstance(value, str):
        return Partition.parse(value)
    return Partition(tuple(value))


def require_prime(p: int) -> int:
    if not isprime(p):
        raise NotPrimeError(f'{p} is not prime')
    return p


def conjugate(lam) -> Partition:
    lam = as_partition(lam)
    if not lam.parts:
        return lam
    return Partition(tuple(
        sum(1 for part in lam.parts if part >= j) for j in range(1, lam.parts[0] + 1)
    ))


def dominates(lam, mu) -> bool:
    """Partial sums of ``lam`` majorize those of ``mu``. Equal size is not required."""
    lam, mu = as_partition(lam), as_partition(mu)
    length = max(len(lam), len(mu))
    return all(
        a >= b for a, b in zip(accumulate(lam.padded(length)), accumulate(mu.padded(length)))
    )


def is_p_regular(lam, p: int) -> bool:
    counts = Counter(part for part in as_partition(lam) if part > 0)
    return all(count < p for count in counts.values())


def shift(lam, i: int, n: int) -> Partition:
    """The partition lam + (i^n); negative ``i`` removes full columns."""
    parts = tuple(part + i for part in as_partition(lam).padded(n))
    if any(part < 0 for part in parts):
        raise InvalidPartitionError(f'shift by {i} makes a negative part')
    return Partition(parts)


def is_degenerate(lam, n: int) -> bool:
    return as_partition(lam).padded(n)[n - 1] == 0


def in_C0(lam, p: int, n: int) -> bool:
    if n >= p:
        raise RegionError(f'the alcove C0 needs n < p (got n={n}, p={p})')
    parts = as_partition(lam).padded(n)
    return parts[0] - parts[n - 1] <= p - n


def p_adic(m: int, p: int) -> PAdicExpansion:
    if m < 0:
        raise ValueError('p-adic expansion of a negative integer')
    if m == 0:
        return PAdicExpansion((), p)
    # sympy lists the base first, then digits most significant first
    return PAdicExpansion(tuple(reversed(sympy_digits(m, p)[1:])), p)


def hook_lengths(lam) -> list[int]:
    lam = as_partition(lam)
    columns = conjugate(lam)
    return [
        (row_length - j) + (columns[j] - i) - 1
        for i, row_length in enumerate(lam.parts)
        for j in range(row_length)
    ]


def hook_length_count(lam) -> int:
    lam = as_partition(lam)
    return factorial(lam.size) // reduce(mul, hook_lengths(lam), 1)


def young_lattice_children(lam) -> list[Partition]:
    """Shapes obtained by deleting one removable box."""
    parts = as_partition(lam).parts
    children = []
    for i, part in enumerate(parts):
        below = parts[i + 1] if i + 1 < len(parts) else 0
        if part > below:
            child = list(parts)
            child[i] -= 1
            children.append(Partition(tuple(child)))
    return children


def standard_tableaux(lam) -> Iterator[list[list[int]]]:
    """
    Yield every standard Young tableau of shape ``lam`` as a list of rows.

    The largest entry always sits in a removable box, so the tableaux are built by
    peeling boxes off down Young's lattice and writing entries back on the way up.
    """
    lam = as_partition(lam)
    if lam.size == 0:
        yield []
        return
    for child in young_lattice_children(lam):
        row = next(i for i in range(len(lam)) if lam[i] != child[i])
        for tableau in standard_tableaux(child):
            rows = [list(entries) for entries in tableau]
            if row == len(rows):
                rows.append([])
            rows[row].append(lam.size)
            yield rows


def backtracking_count(lam) -> int:
    return sum(1 for _ in standard_tableaux(lam))


def count_standard_tableaux(lam) -> int:
    lam = as_partition(lam)
    by_hooks = hook_length_count(lam)
    if lam.size <= BACKTRACK_LIMIT:
        by_search = backtracking_count(lam)
        if by_search != by_hooks:
            raise ArithmeticError(
                f'hook formula gives {by_hooks} but enumeration finds {by_search} for {lam}'
            )
    return by_hooks


def _partitions_into(remaining: int, largest: int, slots: int) -> Iterable[tuple[int, ...]]:
    if remaining == 0:
        yield ()
        return
    if slots == 0:
        return
    for first in range(min(remaining, largest), 0, -1):
        if first * slots < remaining:
            break
        for rest in _partitions_into(remaining - first, first, slots - 1):
            yield (first,) + rest


def enumerate_partitions(r: int, n: int) -> list[Partition]:
    """All partitions of ``r`` into at most ``n`` parts, decreasing lexicographically."""
    if r < 0 or n < 1:
        raise ValueError('need r >= 0 and n >= 1')
    return [Partition(parts) for parts in _partitions_into(r, r, n)]
