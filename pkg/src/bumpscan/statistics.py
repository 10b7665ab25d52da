"""Scan, penalised scan and condensed average likelihood ratio statistics.

Every statistic takes a :class:`~bumpscan.transform.SortedSample` (or a
sorted array of PIT values) and depends on the data only through it, so
its null law is the same for every continuous null CDF.
"""

import enum
import hashlib
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .errors import GridMismatch, SampleTooSmall
from .grids import MIN_N, GridKind, IntervalIdx, build_grid
from .transform import SortedSample


class StatKind(enum.Enum):
    SCAN_FULL = "scan-full"
    SCAN_RESTRICTED = "scan"
    SCAN_GRID = "scan-grid"
    PEN_SCAN = "pen-scan"
    PEN_SCAN_FIXED = "pen-scan-fixed"
    PEN_SCAN_ALL = "pen-scan-all"
    COND_ALR = "cond-alr"

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        try:
            return cls(text)
        except ValueError:
            names = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown statistic {text!r} (expected one of {names})") from None

    @property
    def grid_kind(self) -> Optional[GridKind]:
        """Default approximating set, or None for statistics over all pairs."""
        return _GRID_KINDS.get(self)


_GRID_KINDS = {
    StatKind.SCAN_GRID: GridKind.SCAN_DATA_DEPENDENT,
    StatKind.PEN_SCAN: GridKind.SCAN_DATA_DEPENDENT,
    StatKind.PEN_SCAN_FIXED: GridKind.SCAN_FIXED_QUANTILE,
    StatKind.COND_ALR: GridKind.ALR_DATA_DEPENDENT,
}


@dataclass(frozen=True)
class StatisticResult:
    """Value of one statistic.

    For ``COND_ALR`` the value is the log of the average likelihood ratio
    and ``argmax`` is None. ``grid_hash`` identifies the approximating set,
    or the pair restriction for the all-pairs statistics.
    """

    kind: StatKind
    value: float
    argmax: Optional[IntervalIdx]
    n: int
    grid_hash: str


def _as_u(sample):
    if isinstance(sample, SortedSample):
        u = sample.u
    else:
        u = np.ascontiguousarray(sample, dtype=np.float64)
    if u.size < MIN_N:
        raise SampleTooSmall(f"sample too small: n={u.size}, need at least {MIN_N}")
    return u


def restricted_lengths(n):
    """Range of ``k - j`` with ``ln n <= k - j <= n/2``."""
    return math.ceil(math.log(n)), n // 2


def restriction_hash(kind, n):
    """Identifier standing in for a grid hash for the all-pairs statistics."""
    if kind is StatKind.SCAN_FULL:
        text = f"all-pairs:n={n}"
    else:
        lo, hi = restricted_lengths(n)
        text = f"lengths:{lo}..{hi}:n={n}"
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _grid_for(kind, n, grid):
    if grid is None:
        return build_grid(n, kind)
    if grid.n != n:
        raise GridMismatch(f"grid built for n={grid.n}, sample has n={n}")
    if grid.kind is not kind:
        raise GridMismatch(f"expected a {kind.value!r} grid, got {grid.kind.value!r}")
    return grid


def _idx(j, k, level=0, half_open=False):
    if j < 0:
        return None
    return IntervalIdx(int(j) + 1, int(k) + 1, level, half_open)


def _level_of(grid, j, k):
    if j is None:
        return 0
    span = k - j
    for spec in grid.levels:
        if spec.m < span <= 2 * spec.m:
            return spec.ell
    return 0


def penalty_jk(n, j, k):
    """Scale penalty ``sqrt(2 log(e n^2 / ((k-j)(n-k+j))))`` for the pair (j, k)."""
    span = k - j
    return math.sqrt(2.0 * math.log(math.e * n * n / (span * (n - span))))


def penalty_mass(f):
    """Scale penalty ``sqrt(2 log(e / (F (1 - min(F, 1/2)))))`` for empirical mass F."""
    if not 0.0 < f <= 1.0:
        raise ValueError(f"mass must lie in (0, 1], got {f!r}")
    return math.sqrt(2.0 * math.log(math.e / (f * (1.0 - min(f, 0.5)))))


def scan(sample, restricted=True):
    """Maximum one-sided log likelihood ratio over order-statistic intervals.

    With ``restricted`` only pairs with ``ln n <= k - j <= n/2`` count.
    Runs in O(n^2) worst case, though most lengths are pruned in practice.
    """
    u = _as_u(sample)
    n = u.size
    lo, hi = restricted_lengths(n) if restricted else (1, n - 1)
    value, j, k = _kernels.scan_all_lengths(u, lo, hi, False)
    kind = StatKind.SCAN_RESTRICTED if restricted else StatKind.SCAN_FULL
    return StatisticResult(kind, float(value), _idx(j, k), n, restriction_hash(kind, n))


def scan_on_grid(sample, grid=None):
    """Unpenalised scan evaluated over the penalised scan's approximating set."""
    u = _as_u(sample)
    grid = _grid_for(GridKind.SCAN_DATA_DEPENDENT, u.size, grid)
    value, j, k = _kernels.scan_grid(u, *grid.params(), False)
    argmax = _idx(j, k, _level_of(grid, j, k))
    return StatisticResult(StatKind.SCAN_GRID, float(value), argmax, u.size, grid.hash)


def penalized_scan(sample, grid=None):
    """Maximum of ``sqrt(2 logLR) - penalty_jk`` over the data-dependent grid."""
    u = _as_u(sample)
    grid = _grid_for(GridKind.SCAN_DATA_DEPENDENT, u.size, grid)
    value, j, k = _kernels.scan_grid(u, *grid.params(), True)
    argmax = _idx(j, k, _level_of(grid, j, k))
    return StatisticResult(StatKind.PEN_SCAN, float(value), argmax, u.size, grid.hash)


def penalized_scan_fixed(sample, grid=None):
    """Penalised scan over the intervals ``(j/n, k/n]`` fixed by the null quantiles.

    The argmax carries the lattice indices; the interval on the PIT scale
    is ``(j/n, k/n]``.
    """
    u = _as_u(sample)
    grid = _grid_for(GridKind.SCAN_FIXED_QUANTILE, u.size, grid)
    value, j, k = _kernels.scan_grid_fixed(u, *grid.params())
    argmax = _idx(j, k, _level_of(grid, j, k))
    return StatisticResult(StatKind.PEN_SCAN_FIXED, float(value), argmax, u.size, grid.hash)


def penalized_scan_all(sample):
    """Penalised scan over every pair with ``ln n <= k - j <= n/2``."""
    u = _as_u(sample)
    n = u.size
    lo, hi = restricted_lengths(n)
    value, j, k = _kernels.scan_all_lengths(u, lo, hi, True)
    kind = StatKind.PEN_SCAN_ALL
    return StatisticResult(kind, float(value), _idx(j, k), n, restriction_hash(kind, n))


def condensed_alr(sample, grid=None):
    """Log of the average likelihood ratio over half-open grid intervals.

    Returned in the log domain because single likelihood ratios overflow
    under strong alternatives.
    """
    u = _as_u(sample)
    grid = _grid_for(GridKind.ALR_DATA_DEPENDENT, u.size, grid)
    value, _ = _kernels.alr_grid(u, *grid.params())
    return StatisticResult(StatKind.COND_ALR, float(value), None, u.size, grid.hash)


_DISPATCH = {
    StatKind.SCAN_FULL: lambda s, g: scan(s, restricted=False),
    StatKind.SCAN_RESTRICTED: lambda s, g: scan(s, restricted=True),
    StatKind.SCAN_GRID: scan_on_grid,
    StatKind.PEN_SCAN: penalized_scan,
    StatKind.PEN_SCAN_FIXED: penalized_scan_fixed,
    StatKind.PEN_SCAN_ALL: lambda s, g: penalized_scan_all(s),
    StatKind.COND_ALR: condensed_alr,
}


def evaluate(kind, sample, grid=None):
    """Evaluate the statistic ``kind``; ``grid`` is ignored by all-pairs statistics."""
    kind = StatKind.parse(kind)
    return _DISPATCH[kind](sample, grid)


def statistic_hash(kind, n, grid=None):
    kind = StatKind.parse(kind)
    if kind.grid_kind is None:
        return restriction_hash(kind, n)
    return (grid or build_grid(n, kind.grid_kind)).hash


class Evaluator:
    """Value-only evaluation with the grid built once; used in Monte Carlo loops."""

    def __init__(self, kind, n, grid=None):
        self.kind = StatKind.parse(kind)
        self.n = int(n)
        if self.n < MIN_N:
            raise SampleTooSmall(f"sample too small: n={self.n}, need at least {MIN_N}")
        self.grid = None
        if self.kind.grid_kind is not None:
            self.grid = _grid_for(self.kind.grid_kind, self.n, grid)
            self._m, self._d = self.grid.params()
        self.grid_hash = statistic_hash(self.kind, self.n, self.grid)

    def __call__(self, u):
        kind = self.kind
        if kind is StatKind.SCAN_RESTRICTED or kind is StatKind.PEN_SCAN_ALL:
            lo, hi = restricted_lengths(self.n)
            return _kernels.scan_all_lengths(u, lo, hi, kind is StatKind.PEN_SCAN_ALL)[0]
        if kind is StatKind.SCAN_FULL:
            return _kernels.scan_all_lengths(u, 1, self.n - 1, False)[0]
        if kind is StatKind.PEN_SCAN or kind is StatKind.SCAN_GRID:
            return _kernels.scan_grid(u, self._m, self._d, kind is StatKind.PEN_SCAN)[0]
        if kind is StatKind.PEN_SCAN_FIXED:
            return _kernels.scan_grid_fixed(u, self._m, self._d)[0]
        return _kernels.alr_grid(u, self._m, self._d)[0]
