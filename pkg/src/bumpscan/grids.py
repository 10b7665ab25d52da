"""Sparse multiscale families of order-statistic intervals.

Level ``ell`` holds the index pairs ``(j, k)`` with both endpoints on the
lattice ``{1, 1 + d, 1 + 2d, ...}`` and ``m < k - j <= 2m`` where
``m = n / 2**ell``. The lattice spacing ``d`` grows with the interval
length, which keeps the whole family near-linear in ``n``.
"""

import enum
import hashlib
import json
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .errors import InvalidLevel, SampleTooSmall

MIN_N = 26


class GridKind(enum.Enum):
    SCAN_DATA_DEPENDENT = "scan"
    SCAN_FIXED_QUANTILE = "scan-fixed"
    ALR_DATA_DEPENDENT = "alr"

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        aliases = {"scan0": "scan-fixed", "fixed": "scan-fixed", "cond-alr": "alr"}
        try:
            return cls(aliases.get(text, text))
        except ValueError:
            names = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown grid kind {text!r} (expected one of {names})") from None


class IntervalIdx(NamedTuple):
    j: int
    k: int
    level: int
    half_open: bool


@dataclass(frozen=True)
class LevelSpec:
    ell: int
    m: float
    d: int


def ell_max(n):
    """``floor(log2(n / ln n))``."""
    return int(math.floor(math.log2(n / math.log(n))))


def spacing(n, ell, kind):
    m = n * 2.0 ** -ell
    if kind is GridKind.ALR_DATA_DEPENDENT:
        return max(1, math.ceil(math.sqrt(m) * ell ** 0.8 / math.log(n)))
    return max(1, math.ceil(m / (6.0 * math.sqrt(ell))))


@dataclass(frozen=True)
class ApproxSet:
    """Immutable description of an approximating set; pairs are generated lazily."""

    n: int
    kind: GridKind
    ell_max: int
    levels: tuple

    @property
    def half_open(self):
        return self.kind is GridKind.ALR_DATA_DEPENDENT

    def level(self, ell):
        for spec in self.levels:
            if spec.ell == ell:
                return spec
        raise InvalidLevel(f"level {ell!r} not in 2..{self.ell_max}")

    def describe(self):
        """JSON-ready summary, including exact per-level counts."""
        return {
            "kind": self.kind.value,
            "n": self.n,
            "ell_max": self.ell_max,
            "levels": [
                {"ell": s.ell, "m": s.m, "d": s.d, "count": level_cardinality(self, s.ell)}
                for s in self.levels
            ],
        }

    @property
    def hash(self):
        payload = {
            "kind": self.kind.value,
            "n": self.n,
            "levels": [[s.ell, s.m, s.d] for s in self.levels],
        }
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def params(self):
        """Level parameters as arrays ``(m, d)`` for the compiled kernels."""
        m = np.array([s.m for s in self.levels], dtype=np.float64)
        d = np.array([s.d for s in self.levels], dtype=np.int64)
        return m, d


def build_grid(n, kind):
    """Construct the approximating set of the given kind for sample size ``n``."""
    kind = GridKind.parse(kind)
    n = int(n)
    if n < MIN_N:
        raise SampleTooSmall(f"sample too small: n={n}, need at least {MIN_N}")
    top = ell_max(n)
    levels = tuple(
        LevelSpec(ell, n * 2.0 ** -ell, spacing(n, ell, kind)) for ell in range(2, top + 1)
    )
    return ApproxSet(n=n, kind=kind, ell_max=top, levels=levels)


def _delta_range(spec):
    """Admissible lattice steps: ``m < delta * d <= 2m``."""
    lo = math.floor(spec.m / spec.d) + 1
    hi = math.floor(2.0 * spec.m / spec.d)
    return lo, hi


def _n_positions(n, d):
    return (n - 1) // d + 1


def enumerate_level(grid, ell) -> Iterator[IntervalIdx]:
    """Yield the level's pairs ``(j, k)`` (1-based) in lexicographic order."""
    spec = grid.level(ell)
    d = spec.d
    npos = _n_positions(grid.n, d)
    lo, hi = _delta_range(spec)
    half_open = grid.half_open
    for i in range(npos):
        j = 1 + i * d
        for delta in range(lo, min(hi, npos - 1 - i) + 1):
            yield IntervalIdx(j, j + delta * d, ell, half_open)


def enumerate_grid(grid):
    for spec in grid.levels:
        yield from enumerate_level(grid, spec.ell)


def level_pairs(grid, ell):
    """The level's pairs as two int arrays of 1-based indices."""
    spec = grid.level(ell)
    npos = _n_positions(grid.n, spec.d)
    lo, hi = _delta_range(spec)
    js, ks = [], []
    for delta in range(lo, min(hi, npos - 1) + 1):
        i = np.arange(npos - delta)
        js.append(1 + i * spec.d)
        ks.append(1 + (i + delta) * spec.d)
    if not js:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    j = np.concatenate(js)
    k = np.concatenate(ks)
    order = np.lexsort((k, j))
    return j[order], k[order]


def level_cardinality(grid, ell):
    spec = grid.level(ell)
    npos = _n_positions(grid.n, spec.d)
    lo, hi = _delta_range(spec)
    hi = min(hi, npos - 1)
    if hi < lo:
        return 0
    # sum over delta of (npos - delta)
    terms = hi - lo + 1
    return terms * npos - (lo + hi) * terms // 2


def grid_cardinality(grid):
    return sum(level_cardinality(grid, s.ell) for s in grid.levels)
