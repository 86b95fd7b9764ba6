"""
Certificates for Condition 1 and the arithmetic around them.

Two routes are available: the fundamental alcove route for n < p, and the
two-part route for n = 2, which tracks the difference m = lambda_1 - lambda_2
through the tensor transitions of the SL_2 tilting modules.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import ceil

from .exceptions import InvalidPartitionError, RegionError
from .partitions import (
    Partition, as_partition, enumerate_partitions, in_C0, p_adic, require_prime,
)

logger = logging.getLogger(__name__)


class Route(str, Enum):
    ALCOVE = 'alcove'
    TWO_PART = 'two-part'


class DigitCase(str, Enum):
    TOP = 'i0=p-1'
    LOW = 'i0<=p-3'
    CARRY = 'i0=p-2'


@dataclass(frozen=True)
class DeltaCandidateSet:
    m: int
    p: int
    case: DigitCase
    candidates: frozenset[int]
    t: int | None = None
    sigma: int | None = None

    def __post_init__(self):
        if not self.candidates or min(self.candidates) < 0:
            raise ValueError(f'bad candidate set {sorted(self.candidates)} for m={self.m}')


@dataclass(frozen=True)
class ConditionOneCertificate:
    shape: Partition
    n: int
    p: int
    a: int
    route: Route
    k: int | None = None

    def __post_init__(self):
        if self.a < 0:
            raise ValueError('a must be nonnegative')
        r = self.shape.size
        if self.route is Route.ALCOVE:
            if self.n >= self.p or r + self.a * self.n < lemma1_threshold(self.n, self.p):
                raise ValueError('alcove certificate does not meet r + a n >= (n-1)(p-n)+1')
        else:
            if self.n != 2 or self.k is None:
                raise ValueError('two-part certificates need n = 2 and k')
            m = self.shape[0] - self.shape[1]
            if not m < self.p ** self.k - 1:
                raise ValueError(f'm={m} is not below p^k - 1 = {self.p ** self.k - 1}')
            if self.a != max(0, self.p ** self.k - 1 - r):
                raise ValueError('a must equal max(0, p^k - 1 - r)')

    def as_dict(self) -> dict:
        return {
            'route': self.route.value,
            'lambda': self.shape.format(self.n),
            'p': self.p,
            'n': self.n,
            'a': self.a,
            'k': self.k,
        }


def lemma1_threshold(n: int, p: int) -> int:
    return (n - 1) * (p - n) + 1


def delta_candidates(m: int, p: int) -> DeltaCandidateSet:
    """Possible values of mu_1 - mu_2 after tensoring with E, for m = lambda_1 - lambda_2."""
    if m < 0:
        raise ValueError('m must be nonnegative')
    require_prime(p)
    expansion = p_adic(m, p)
    i0 = expansion.digit(0)
    if i0 == p - 1:
        return DeltaCandidateSet(m, p, DigitCase.TOP, frozenset({m + 1}))
    if p > 2 and i0 <= p - 3:
        return DeltaCandidateSet(m, p, DigitCase.LOW, frozenset(c for c in (m + 1, m - 1) if c >= 0))

    t = 1
    while expansion.digit(t) == p - 1:
        t += 1
    sigma = sum(expansion.digit(s) * p ** (s - t - 1) for s in range(t + 1, len(expansion.digits)))
    i_t = expansion.digit(t)
    if m + 2 != (i_t + 1) * p ** t + sigma * p ** (t + 1):
        raise ArithmeticError(f'carry digits of m={m} in base {p} do not recompose m + 2')

    if p > 2:
        candidates = {m + 1, m + 1 - 2 * p ** (t - 1)}
        if (i_t == 1 and sigma > 0) or i_t >= 2:
            candidates.add(m + 1 - 2 * p ** t)
    else:
        candidates = {m + 1, m + 1 - 2 ** (t - 1)}
        if sigma > 0:
            candidates.add(m + 1 - 2 ** t)
    return DeltaCandidateSet(
        m, p, DigitCase.CARRY, frozenset(c for c in candidates if c >= 0), t, sigma
    )


@dataclass
class SweepReport:
    route: str
    p: int
    n: int | None
    k: int | None
    swept_range: tuple[int, int]
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    # per-R (alcove) or per-case (two-part) tallies
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def as_dict(self) -> dict:
        return {
            'route': self.route,
            'p': self.p,
            'n': self.n,
            'k': self.k,
            'swept_range': list(self.swept_range),
            'checked': self.checked,
            'counterexamples': self.counterexamples,
        }


def invariant_preserved(p: int, k: int, m_max: int) -> SweepReport:
    """Every transition from m >= p^k - 1 stays at or above p^k - 1."""
    if k < 1:
        raise ValueError('k must be positive')
    floor = p ** k - 1
    report = SweepReport(Route.TWO_PART.value, p, 2, k, (floor, m_max))
    tally = {case: [0, 0] for case in DigitCase}
    for m in range(floor, m_max + 1):
        step = delta_candidates(m, p)
        report.checked += 1
        tally[step.case][0] += 1
        low = [c for c in sorted(step.candidates) if c < floor]
        if low:
            tally[step.case][1] += 1
            report.counterexamples.append({'m': m, 'case': step.case.value, 'candidates': low})
    report.rows = [
        {'case': case.value, 'checked': checked, 'counterexamples': bad}
        for case, (checked, bad) in tally.items() if checked
    ]
    if report.counterexamples:
        logger.warning('%d counterexamples for p=%d k=%d', len(report.counterexamples), p, k)
    return report


def certificate_two_part(lam, p: int) -> ConditionOneCertificate:
    lam = as_partition(lam)
    if len(lam) > 2:
        raise InvalidPartitionError(f'{lam} has more than two parts')
    require_prime(p)
    m = lam[0] - lam[1]
    k = 1
    while not m < p ** k - 1:
        k += 1
    a = max(0, p ** k - 1 - lam.size)
    return ConditionOneCertificate(lam, 2, p, a, Route.TWO_PART, k)


def certificate_alcove(lam, n: int, p: int) -> ConditionOneCertificate:
    lam = as_partition(lam)
    require_prime(p)
    if not in_C0(lam, p, n):
        raise RegionError(f'{lam.format(n)} is not in C0({lam.size}) for p={p}')
    shortfall = lemma1_threshold(n, p) - lam.size
    a = max(0, -(-shortfall // n))
    return ConditionOneCertificate(lam, n, p, a, Route.ALCOVE)


def certificate(lam, n: int, p: int, route: str = 'auto') -> ConditionOneCertificate:
    lam = as_partition(lam)
    if route == Route.ALCOVE.value:
        return certificate_alcove(lam, n, p)
    if route == Route.TWO_PART.value:
        if n != 2:
            raise RegionError('the two-part route needs n = 2')
        return certificate_two_part(lam, p)
    if n < p and in_C0(lam, p, n):
        return certificate_alcove(lam, n, p)
    if n == 2:
        return certificate_two_part(lam, p)
    raise RegionError(f'no certificate route covers {lam.format(n)} with n={n}, p={p}')


def theorem1_bound(r: int, n: int, a: int) -> int:
    """Smallest k with k >= r^2/n + (2r+1)a + a^2 n."""
    return ceil(Fraction(r * r, n) + (2 * r + 1) * a + a * a * n)


def theorem2_applies(lam, n: int, p: int) -> bool:
    """n < p, lam in C0(r) and lam_n >= (n-1)(p-n)+2."""
    lam = as_partition(lam)
    if n >= p or len(lam) > n:
        return False
    return in_C0(lam, p, n) and lam.padded(n)[n - 1] >= lemma1_threshold(n, p) + 1


def lemma1_sweep(p: int, n: int, r_start: int | None = None, r_stop: int | None = None) -> SweepReport:
    """No degenerate partition of R >= (n-1)(p-n)+1 lies in C0(R)."""
    require_prime(p)
    if not 2 <= n < p:
        raise RegionError(f'the sweep needs 2 <= n < p (got n={n}, p={p})')
    start = lemma1_threshold(n, p) if r_start is None else r_start
    stop = start + 20 if r_stop is None else r_stop
    report = SweepReport(Route.ALCOVE.value, p, n, None, (start, stop))
    for size in range(start, stop + 1):
        checked = bad = 0
        for mu in enumerate_partitions(size, n - 1):
            checked += 1
            if in_C0(mu, p, n):
                bad += 1
                report.counterexamples.append({'R': size, 'mu': mu.format(n)})
        report.checked += checked
        report.rows.append({'R': size, 'checked': checked, 'counterexamples': bad})
    return report
