"""
The acceptance battery behind ``manage.py specht suite``.

Each check is a plain function of the profile returning ``(cases, failures)``.
The ``quick`` profile runs reduced ranges; ``full`` runs the complete ranges.
Checks may run on a thread pool, but results are always reported in
declaration order.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import factorial
from typing import Callable

import numpy as np

from .condition1 import (
    certificate_alcove, certificate_two_part, delta_candidates, invariant_preserved,
    lemma1_sweep, theorem1_bound, theorem2_applies,
)
from .exactla import Subspace
from .exceptions import SpechtError
from .partitions import count_standard_tableaux, enumerate_partitions, is_p_regular
from .schurweyl import image_rank, kernel_ideal_check
from .updown import radical, specht, verify_radical_identities, verify_updown_laws
from .wordspace import (
    GModule, dim_irreducible, multinomial, specht_module, weight_space_dim, word_limit,
)

logger = logging.getLogger(__name__)

PROFILES = ('quick', 'full')

# dim D^lambda for every p-regular lambda with |lambda| <= 7; tests/test_wordspace.py
# checks the entries up to |lambda| = 5 against an independent Gram-rank oracle
FROZEN_IRREDUCIBLE_DIMS = {
    2: {
        (1,): 1, (2,): 1, (3,): 1, (2, 1): 2,
        (4,): 1, (3, 1): 2,
        (5,): 1, (4, 1): 4, (3, 2): 4,
        (6,): 1, (5, 1): 4, (4, 2): 4, (3, 2, 1): 16,
        (7,): 1, (6, 1): 6, (5, 2): 14, (4, 3): 8, (4, 2, 1): 20,
    },
    3: {
        (1,): 1, (2,): 1, (1, 1): 1, (3,): 1, (2, 1): 1,
        (4,): 1, (3, 1): 3, (2, 2): 1, (2, 1, 1): 3,
        (5,): 1, (4, 1): 4, (3, 2): 1, (3, 1, 1): 6, (2, 2, 1): 4,
        (6,): 1, (5, 1): 4, (4, 2): 9, (4, 1, 1): 6, (3, 3): 1, (3, 2, 1): 4, (2, 2, 1, 1): 9,
        (7,): 1, (6, 1): 6, (5, 2): 13, (5, 1, 1): 15, (4, 3): 1, (4, 2, 1): 20,
        (3, 3, 1): 6, (3, 2, 2): 15, (3, 2, 1, 1): 13,
    },
    5: {
        (1,): 1, (2,): 1, (1, 1): 1, (3,): 1, (2, 1): 2, (1, 1, 1): 1,
        (4,): 1, (3, 1): 3, (2, 2): 2, (2, 1, 1): 3, (1, 1, 1, 1): 1,
        (5,): 1, (4, 1): 3, (3, 2): 5, (3, 1, 1): 3, (2, 2, 1): 5, (2, 1, 1, 1): 1,
        (6,): 1, (5, 1): 5, (4, 2): 8, (4, 1, 1): 10, (3, 3): 5, (3, 2, 1): 8,
        (3, 1, 1, 1): 10, (2, 2, 2): 5, (2, 2, 1, 1): 1, (2, 1, 1, 1, 1): 5,
        (7,): 1, (6, 1): 6, (5, 2): 8, (5, 1, 1): 15, (4, 3): 13, (4, 2, 1): 35,
        (4, 1, 1, 1): 20, (3, 3, 1): 8, (3, 2, 2): 13, (3, 2, 1, 1): 35,
        (3, 1, 1, 1, 1): 15, (2, 2, 2, 1): 1, (2, 2, 1, 1, 1): 6,
    },
}


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and not self.failures

    def as_row(self) -> dict:
        return {
            'check': self.name,
            'passed': self.passed,
            'cases': self.cases,
            'failures': len(self.failures) + (self.error is not None),
        }


def compositions(r: int, n: int):
    """Weak compositions of ``r`` into ``n`` parts, by stars and bars."""
    for bars in combinations(range(r + n - 1), n - 1):
        edges = (-1,) + bars + (r + n - 1,)
        yield tuple(edges[i + 1] - edges[i] - 1 for i in range(n))


def _fits(n: int, r: int) -> bool:
    return n ** r <= word_limit()


def check_specht_dimensions(profile: str) -> tuple[int, list]:
    max_r, max_n, primes = (5, 3, (2, 3)) if profile == 'quick' else (8, 4, (2, 3, 5))
    cases, failures = 0, []
    for p in primes:
        for n in range(1, max_n + 1):
            for r in range(1, max_r + 1):
                if not _fits(n, r):
                    continue
                for lam in enumerate_partitions(r, n):
                    cases += 1
                    dim, expected = specht_module(lam, n, p).dim, count_standard_tableaux(lam)
                    if dim != expected:
                        failures.append(f'S^({lam}) n={n} p={p}: {dim} != {expected}')
    return cases, failures


def check_weight_spaces(profile: str) -> tuple[int, list]:
    max_r = 6 if profile == 'quick' else 10
    cases, failures = 0, []
    for n in range(1, 5):
        for r in range(max_r + 1):
            for composition in compositions(r, n):
                cases += 1
                dim, expected = weight_space_dim(r, n, composition), multinomial(r, composition)
                if dim != expected:
                    failures.append(f'{composition}: {dim} != {expected}')
    return cases, failures


def _random_closed(r: int, n: int, p: int, seed: int) -> GModule:
    values = np.random.default_rng(seed).integers(0, p, size=n ** r)
    seed_space = Subspace.from_dense(values.reshape(1, -1), p)
    return GModule.generated_by(seed_space, r, n, label=f'random{seed}')


def check_updown_laws(profile: str) -> tuple[int, list]:
    ranks, primes = ((2, 3), (2,)) if profile == 'quick' else ((2, 3, 4), (2, 3))
    n = 2
    cases, failures = 0, []
    for p in primes:
        for r in ranks:
            modules = [GModule.zero(r, n, p), _random_closed(r, n, p, seed=r * p)]
            for lam in enumerate_partitions(r, n):
                modules.append(specht(lam, n, p))
                if is_p_regular(lam, p):
                    modules.append(radical(lam, n, p))
            for module in modules:
                cases += 1
                report = verify_updown_laws(module)
                if not report.passed:
                    failures.append(f'{module!r}: {report.dims}')
    return cases, failures


def check_restriction_identity(profile: str) -> tuple[int, list]:
    max_size, primes = (6, (2, 3)) if profile == 'quick' else (8, (2, 3, 5))
    n = 2
    cases, failures = 0, []
    for p in primes:
        for size in range(n, max_size + 1):
            for nu in enumerate_partitions(size, n):
                if len(nu) < n or not is_p_regular(nu, p):
                    continue
                cases += 1
                report = verify_radical_identities(nu, n, p)
                if not report.passed:
                    failures.append(f'P^({nu}) p={p}: {report.dims}')
    return cases, failures


def check_eq3(profile: str) -> tuple[int, list]:
    shapes = [(3, 3)] if profile == 'quick' else [(3, 3), (4, 3)]
    cases, failures = 0, []
    for shape in shapes:
        cases += 1
        report = verify_radical_identities(shape, 2, 3, check_induction=True)
        if not report.passed:
            failures.append(
                f'P^({report.lowered_shape}) up != P^({report.shape}) '
                f'(regime={theorem2_applies(shape, 2, 3)}): {report.dims}'
            )
    return cases, failures


def check_schur_weyl_kernel(profile: str) -> tuple[int, list]:
    if profile == 'quick':
        pairs, primes = [(2, 3), (2, 4), (3, 4)], (2, 3)
    else:
        pairs, primes = [(2, 3), (2, 4), (2, 5), (3, 4), (3, 5)], (2, 3, 5)
    cases, failures = 0, []
    for p in primes:
        for n, r in pairs:
            cases += 1
            report = kernel_ideal_check(r, n, p)
            if not report.passed:
                failures.append(f'n={n} r={r} p={p}: kernel {report.kernel_dim}, ideal {report.ideal_dim}')
        for n in (2, 3):
            for r in range(1, n + 1):
                cases += 1
                rank = image_rank(r, n, p)
                if rank != factorial(r):
                    failures.append(f'image rank n={n} r={r} p={p}: {rank} != {factorial(r)}')
    return cases, failures


def check_example2_invariant(profile: str) -> tuple[int, list]:
    m_max = 1000 if profile == 'quick' else 10 ** 4
    cases, failures = 0, []
    for p in (2, 3, 5):
        for k in (1, 2, 3):
            report = invariant_preserved(p, k, m_max)
            cases += report.checked
            failures.extend(f'p={p} k={k}: {item}' for item in report.counterexamples)
    return cases, failures


def check_lemma1_sweep(profile: str) -> tuple[int, list]:
    cases, failures = 0, []
    for p in (3, 5, 7):
        for n in range(2, p):
            report = lemma1_sweep(p, n)
            cases += report.checked
            failures.extend(f'p={p} n={n}: {item}' for item in report.counterexamples)
    return cases, failures


def check_certificates(profile: str) -> tuple[int, list]:
    expected = [
        (lambda: certificate_two_part((1, 0), 2), (2, 2)),
        (lambda: certificate_two_part((3, 1), 2), (2, 0)),
        (lambda: certificate_two_part((2, 2), 3), (1, 0)),
        (lambda: certificate_alcove((3, 2), 2, 5), (None, 0)),
        (lambda: certificate_alcove((1, 1, 1), 3, 5), (None, 1)),
        (lambda: certificate_alcove((0, 0), 2, 3), (None, 1)),
    ]
    failures = []
    for build, (k, a) in expected:
        cert = build()
        if (cert.k, cert.a) != (k, a):
            failures.append(f'{cert.as_dict()} != k={k} a={a}')
    bounds = {(2, 2, 1): 9, (2, 2, 0): 2, (5, 2, 2): 43}
    for args, value in bounds.items():
        if theorem1_bound(*args) != value:
            failures.append(f'bound{args} = {theorem1_bound(*args)} != {value}')
    deltas = {(2, 3): {3}, (3, 3): {4, 2}, (2, 2): {3, 1}}
    for (m, p), value in deltas.items():
        found = set(delta_candidates(m, p).candidates)
        if found != value:
            failures.append(f'delta(m={m}, p={p}) = {sorted(found)} != {sorted(value)}')
    return len(expected) + len(bounds) + len(deltas), failures


def check_irreducible_dims(profile: str) -> tuple[int, list]:
    cases, failures = 0, []
    for p, table in FROZEN_IRREDUCIBLE_DIMS.items():
        for shape, value in table.items():
            if profile == 'quick' and sum(shape) > 5:
                continue
            cases += 1
            dim = dim_irreducible(shape, max(2, len(shape)), p)
            if dim != value:
                failures.append(f'D^{shape} p={p}: {dim} != {value}')
    return cases, failures


CHECKS: list[tuple[str, Callable[[str], tuple[int, list]]]] = [
    ('specht-dimensions', check_specht_dimensions),
    ('weight-spaces', check_weight_spaces),
    ('updown-laws', check_updown_laws),
    ('restriction-identity', check_restriction_identity),
    ('eq3', check_eq3),
    ('schur-weyl-kernel', check_schur_weyl_kernel),
    ('example2-invariant', check_example2_invariant),
    ('lemma1-sweep', check_lemma1_sweep),
    ('certificates', check_certificates),
    ('irreducible-dims', check_irreducible_dims),
]


def run_check(name: str, func: Callable[[str], tuple[int, list]], profile: str) -> CheckResult:
    result = CheckResult(name)
    try:
        result.cases, result.failures = func(profile)
    except (SpechtError, ArithmeticError, AssertionError) as exc:
        result.error = f'{type(exc).__name__}: {exc}'
    if not result.passed:
        logger.warning('suite check %s failed', name)
    return result


def run_suite(profile: str = 'quick', jobs: int = 1, checks=None) -> list[CheckResult]:
    if profile not in PROFILES:
        raise ValueError(f'unknown profile {profile!r}')
    checks = CHECKS if checks is None else checks
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        return list(pool.map(lambda item: run_check(item[0], item[1], profile), checks))


def suite_outputs(results: list[CheckResult]) -> dict:
    return {
        'rows': [result.as_row() for result in results],
        'failed': [result.name for result in results if not result.passed],
        'details': {
            result.name: result.failures + ([result.error] if result.error else [])
            for result in results if not result.passed
        },
    }
