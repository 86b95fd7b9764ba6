"""
The induction operator U -> U(up) and restriction operator V -> V(down).

``up`` multiplies by the alternating bracket on the ``n`` new places
``r+1 .. r+n`` and closes under G(r+n); ``down`` collects the polynomials
whose bracket multiple lands in V.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .exactla import INDEX, Subspace, preimage_of_rows
from .exceptions import DimensionMismatchError, InvalidPartitionError, SingularPartitionError
from .partitions import as_partition, is_degenerate, is_p_regular, shift
from .wordspace import (
    GModule, Tableau, check_guard, column_bracket_product, gram_radical, orbit_closure,
    specht_module,
)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=16)
def _tail_bracket(n: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """The bracket [x_1, ..., x_n] on F_n^n as (columns, values)."""
    bracket = column_bracket_product(Tableau.column_superstandard((1,) * n), n, p)
    columns = np.array(bracket.support(), dtype=INDEX)
    values = np.array(list(bracket.coefficients.values()), dtype=INDEX)
    return columns, values


@dataclass(frozen=True)
class MultiplicationMap:
    """f -> f [x_{r+1}, ..., x_{r+n}] from F_n^r to F_n^{r+n}."""

    r: int
    n: int
    p: int

    @property
    def source_dim(self) -> int:
        return self.n ** self.r

    @property
    def target_dim(self) -> int:
        return self.n ** (self.r + self.n)

    def apply(self, rows: np.ndarray, support: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Images of the rows of a block written on ``support``."""
        tail_columns, tail_values = _tail_bracket(self.n, self.p)
        width = self.n ** self.n
        columns = (np.asarray(support, dtype=INDEX)[:, None] * width + tail_columns[None, :]).ravel()
        images = (rows[:, :, None] * tail_values[None, None, :]).reshape(rows.shape[0], -1) % self.p
        return images, columns

    def image(self, subspace: Subspace) -> Subspace:
        if subspace.ambient != self.source_dim:
            raise DimensionMismatchError('subspace is not in the source word space')
        if subspace.dim == 0:
            return Subspace.zero(self.target_dim, self.p)
        images, columns = self.apply(subspace.rows, subspace.support)
        return Subspace.span(images, columns, self.target_dim, self.p)

    def matrix(self) -> np.ndarray:
        """Dense matrix of the map, rows indexed by source words."""
        images, columns = self.apply(
            np.eye(self.source_dim, dtype=INDEX), np.arange(self.source_dim, dtype=INDEX)
        )
        dense = np.zeros((self.source_dim, self.target_dim), dtype=INDEX)
        dense[:, columns] = images
        return dense

    def preimage(self, target: Subspace) -> Subspace:
        if target.ambient != self.target_dim:
            raise DimensionMismatchError('subspace is not in the target word space')
        images, columns = self.apply(
            np.eye(self.source_dim, dtype=INDEX), np.arange(self.source_dim, dtype=INDEX)
        )
        return preimage_of_rows(images, columns, target)


def up(module: GModule, steps: int = 1, override_guard: bool = False) -> GModule:
    for _ in range(steps):
        module = _up_once(module, override_guard)
    return module


def up_chain(module: GModule, steps: int, override_guard: bool = False) -> list[GModule]:
    """The intermediate modules U(up), U(up)^2, ..., U(up)^steps."""
    chain = []
    for _ in range(steps):
        module = _up_once(module, override_guard)
        chain.append(module)
    return chain


def _up_once(module: GModule, override_guard: bool) -> GModule:
    r, n, p = module.r + module.n, module.n, module.p
    check_guard(n, r, override_guard)
    image = MultiplicationMap(module.r, n, p).image(module.carrier)
    result = GModule(orbit_closure(image, r, n), r, n, p, f'{module.label or "U"}^', closed=True)
    logger.debug('up: dim %d at r=%d -> dim %d at r=%d', module.dim, module.r, result.dim, r)
    return result


def down(module: GModule, steps: int = 1) -> GModule:
    for _ in range(steps):
        module = _down_once(module)
    return module


def _down_once(module: GModule) -> GModule:
    n, p = module.n, module.p
    r = module.r - n
    if r < 0:
        raise DimensionMismatchError(f'cannot restrict from r={module.r} with n={n}')
    carrier = MultiplicationMap(r, n, p).preimage(module.carrier)
    result = GModule(carrier, r, n, p, f'{module.label or "V"}v')
    result.closed = result.is_closed()
    if not result.closed:
        logger.warning('restriction of %r is not G(%d)-closed', module, r)
    return result


def is_strictly_lowered(module: GModule) -> bool:
    """Whether V(down)(up) is a proper subspace of V."""
    lowered = up(down(module))
    return module.contains(lowered) and lowered.dim < module.dim


@dataclass
class UpDownReport:
    label: str
    r: int
    down_up_within: bool
    within_up_down: bool
    down_up_down_stable: bool
    strictly_lowered: bool
    dims: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.down_up_within and self.within_up_down and self.down_up_down_stable


def verify_updown_laws(module: GModule, override_guard: bool = False) -> UpDownReport:
    """Check U(down)(up) <= U <= U(up)(down) and U(down)(up)(down) = U(down)."""
    if module.r < module.n:
        raise DimensionMismatchError(f'the laws need r >= n (got r={module.r}, n={module.n})')
    lowered = down(module)
    down_up = up(lowered, override_guard=override_guard)
    up_down = down(up(module, override_guard=override_guard))
    down_up_down = down(down_up)
    return UpDownReport(
        label=module.label,
        r=module.r,
        down_up_within=module.contains(down_up),
        within_up_down=up_down.contains(module),
        down_up_down_stable=down_up_down == lowered,
        strictly_lowered=module.contains(down_up) and down_up.dim < module.dim,
        dims={
            'U': module.dim,
            'down': lowered.dim,
            'down_up': down_up.dim,
            'up_down': up_down.dim,
        },
    )


def radical(lam, n: int, p: int, store=None, override_guard: bool = False) -> GModule:
    """P^lam, read from ``store`` when one is given."""
    lam = as_partition(lam)
    if not is_p_regular(lam, p):
        raise SingularPartitionError(f'{lam} is {p}-singular')

    def build():
        return gram_radical(specht_module(lam, n, p, override_guard))

    if store is None:
        return build()
    return store.get_or_build('radical', lam, n, p, build)


def specht(lam, n: int, p: int, store=None, override_guard: bool = False) -> GModule:
    lam = as_partition(lam)

    def build():
        return specht_module(lam, n, p, override_guard)

    if store is None:
        return build()
    return store.get_or_build('specht', lam, n, p, build)


@dataclass
class RadicalReport:
    shape: str
    n: int
    p: int
    lowered_shape: str
    restriction_holds: bool
    induction_checked: bool = False
    induction_holds: bool | None = None
    dims: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.restriction_holds and self.induction_holds is not False


def verify_radical_identities(nu, n: int, p: int, check_induction: bool = False,
                              store=None, override_guard: bool = False) -> RadicalReport:
    """
    For nondegenerate p-regular ``nu`` compare P^nu(down) with P^(nu - 1^n), and
    optionally P^(nu - 1^n)(up) with P^nu.
    """
    nu = as_partition(nu)
    if len(nu) > n:
        raise InvalidPartitionError(f'{nu} has more than n={n} parts')
    if is_degenerate(nu, n):
        raise InvalidPartitionError(f'{nu.format(n)} is degenerate')
    if not is_p_regular(nu, p):
        raise SingularPartitionError(f'{nu} is {p}-singular')
    lowered_shape = shift(nu, -1, n)
    top = radical(nu, n, p, store, override_guard)
    bottom = radical(lowered_shape, n, p, store, override_guard)
    restricted = down(top)
    report = RadicalReport(
        shape=nu.format(n),
        n=n,
        p=p,
        lowered_shape=lowered_shape.format(n),
        restriction_holds=restricted == bottom,
        dims={'P_top': top.dim, 'P_bottom': bottom.dim, 'P_top_down': restricted.dim},
    )
    if check_induction:
        induced = up(bottom, override_guard=override_guard)
        report.induction_checked = True
        report.induction_holds = induced == top
        report.dims['P_bottom_up'] = induced.dim
    return report


def verify_radical_chain(lam, n: int, p: int, steps: int, store=None,
                         override_guard: bool = False) -> list[RadicalReport]:
    """P^(lam + (k-1)^n)(up) = P^(lam + k^n) for k = 1 .. steps."""
    lam = as_partition(lam)
    return [
        verify_radical_identities(shift(lam, k, n), n, p, check_induction=True,
                                  store=store, override_guard=override_guard)
        for k in range(1, steps + 1)
    ]
