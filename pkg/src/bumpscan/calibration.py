"""Monte Carlo null distributions, critical values and p-values.

Under the null every statistic is distribution free, so its law at a
given ``n`` is simulated once from uniform samples. Replicate ``b`` draws
from its own counter-based stream keyed by ``(seed, b)``, so results do
not depend on how replicates are spread over threads.
"""

import hashlib
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import (
    CorruptTable,
    DomainError,
    GridMismatch,
    SampleTooSmall,
    UnsupportedStat,
    VersionMismatch,
)
from .grids import MIN_N
from .statistics import Evaluator, StatKind

TABLE_VERSION = 1
DEFAULT_ALPHAS = (0.10, 0.05, 0.01)
SKETCH_LEVELS = (0.5, 0.9, 0.95, 0.99)
DEFAULT_B = 10_000
MAX_ALL_PAIRS_N = 20_000


def replicate_rng(seed, *key):
    """Independent Philox stream for one replicate, keyed by ``(seed, *key)``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=key)))


def default_threads():
    return os.cpu_count() or 1


def run_replicates(func, count, threads=None, chunk=64):
    """Evaluate ``func(b)`` for ``b in range(count)`` into a float array.

    Chunks run on a thread pool; results land at their own index so the
    output is independent of ``threads``.
    """
    out = np.empty(count)
    threads = threads or default_threads()

    def work(start):
        for b in range(start, min(start + chunk, count)):
            out[b] = func(b)

    starts = range(0, count, chunk)
    if threads <= 1 or count <= chunk:
        for s in starts:
            work(s)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(work, starts))
    return out


@dataclass(frozen=True, eq=False)
class NullSample:
    kind: StatKind
    n: int
    grid_hash: str
    B: int
    seed: int
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", np.sort(np.asarray(self.values, dtype=float)))
        if self.values.size != self.B:
            raise ValueError("values must hold B entries")


def simulate_null(kind, n, B, seed, threads=None, allow_large=False):
    """Simulate ``B`` null values of a statistic at sample size ``n``."""
    kind = StatKind.parse(kind)
    if B < 1:
        raise DomainError(f"B must be at least 1, got {B!r}")
    if n < MIN_N:
        raise SampleTooSmall(f"sample too small: n={n}, need at least {MIN_N}")
    if kind is StatKind.PEN_SCAN_ALL and n > MAX_ALL_PAIRS_N and not allow_large:
        raise UnsupportedStat(
            f"{kind.value} is quadratic in n; refusing n={n} > {MAX_ALL_PAIRS_N} "
            "without allow_large"
        )
    stat = Evaluator(kind, n)

    def one(b):
        return stat(np.sort(replicate_rng(seed, b).random(n)))

    values = run_replicates(one, B, threads)
    return NullSample(kind, n, stat.grid_hash, B, seed, values)


def _order_stat_index(level, B):
    # smallest k with k >= level * B; guard against 0.95 * 100 = 95.00000000000001
    return max(1, math.ceil(level * B - 1e-9))


def critical_value(null, alpha):
    """The ``ceil((1 - alpha) B)``-th order statistic of the null values.

    This is the smallest null value ``c`` with ``#{values > c} / B <= alpha``;
    reject when the observed statistic exceeds it.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    values = null.values if isinstance(null, NullSample) else np.sort(null)
    return float(values[_order_stat_index(1.0 - alpha, values.size) - 1])


def p_value(observed, null):
    """Monte Carlo p-value ``(1 + #{values >= observed}) / (B + 1)``."""
    values = null.values if isinstance(null, NullSample) else np.sort(null)
    exceed = values.size - np.searchsorted(values, observed, side="left")
    return (1.0 + exceed) / (values.size + 1.0)


@dataclass(eq=False)
class CriticalValueTable:
    kind: StatKind
    n: int
    grid_hash: str
    B: int
    seed: int
    alphas: dict
    grid: Optional[dict] = None
    quantiles_sketch: list = field(default_factory=list)
    null: Optional[NullSample] = None
    version: int = TABLE_VERSION

    def critical_value(self, alpha):
        for key, value in self.alphas.items():
            if math.isclose(key, alpha, rel_tol=0, abs_tol=1e-12):
                return value
        if self.null is not None:
            return critical_value(self.null, alpha)
        raise DomainError(f"table has no critical value for alpha={alpha!r}")

    def p_value(self, observed):
        if self.null is None:
            return None
        return p_value(observed, self.null)

    def check(self, kind, n, grid_hash):
        if StatKind.parse(kind) is not self.kind:
            raise GridMismatch(f"table is for {self.kind.value!r}, not {StatKind.parse(kind).value!r}")
        if n != self.n:
            raise GridMismatch(f"table calibrated for n={self.n}, sample has n={n}")
        if grid_hash != self.grid_hash:
            raise GridMismatch(f"table grid hash {self.grid_hash} does not match {grid_hash}")

    def to_dict(self):
        doc = {
            "version": self.version,
            "kind": self.kind.value,
            "n": self.n,
            "grid_hash": self.grid_hash,
            "grid": self.grid,
            "B": self.B,
            "seed": self.seed,
            "alphas": {repr(float(a)): v for a, v in self.alphas.items()},
            "quantiles_sketch": [list(p) for p in self.quantiles_sketch],
        }
        if self.null is not None:
            doc["null_values"] = self.null.values.tolist()
        return doc


def make_table(null, alphas=DEFAULT_ALPHAS, grid=None):
    """Summarise a null sample into a table; ``grid`` is the describe() dict."""
    if grid is None:
        kind = null.kind
        if kind.grid_kind is not None:
            grid = Evaluator(kind, null.n).grid.describe()
    alphas = {float(a): critical_value(null, a) for a in sorted(alphas, reverse=True)}
    sketch = [
        (q, float(null.values[_order_stat_index(q, null.B) - 1])) for q in SKETCH_LEVELS
    ]
    return CriticalValueTable(
        kind=null.kind,
        n=null.n,
        grid_hash=null.grid_hash,
        B=null.B,
        seed=null.seed,
        alphas=alphas,
        grid=grid,
        quantiles_sketch=sketch,
        null=null,
    )


def _checksum(doc):
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def dumps_table(table):
    doc = table.to_dict()
    doc["checksum"] = _checksum(doc)
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def save_table(table, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(dumps_table(table))
    os.replace(tmp, path)
    return path


def load_table(path):
    try:
        doc = json.loads(Path(path).read_text())
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise CorruptTable(f"{path}: not a valid table file ({exc})") from None
    if not isinstance(doc, dict):
        raise CorruptTable(f"{path}: not a valid table file")
    if doc.get("version") != TABLE_VERSION:
        raise VersionMismatch(f"{path}: table version {doc.get('version')!r}, expected {TABLE_VERSION}")
    stored = doc.pop("checksum", None)
    if stored != _checksum(doc):
        raise CorruptTable(f"{path}: checksum mismatch")
    try:
        kind = StatKind.parse(doc["kind"])
        null = None
        if "null_values" in doc:
            null = NullSample(kind, doc["n"], doc["grid_hash"], doc["B"], doc["seed"], doc["null_values"])
        return CriticalValueTable(
            kind=kind,
            n=int(doc["n"]),
            grid_hash=doc["grid_hash"],
            B=int(doc["B"]),
            seed=int(doc["seed"]),
            alphas={float(a): float(v) for a, v in doc["alphas"].items()},
            grid=doc.get("grid"),
            quantiles_sketch=[tuple(p) for p in doc.get("quantiles_sketch", [])],
            null=null,
            version=doc["version"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptTable(f"{path}: malformed table ({exc})") from None


def table_dir(cache_dir=None):
    if cache_dir is not None:
        return Path(cache_dir)
    env = os.environ.get("BUMPSCAN_TABLE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "bumpscan"


def table_path(kind, n, B, seed, cache_dir=None):
    kind = StatKind.parse(kind)
    grid_hash = Evaluator(kind, n).grid_hash
    return table_dir(cache_dir) / f"{kind.value}-n{n}-{grid_hash}-B{B}-s{seed}.json"


def cached_table(kind, n, B=DEFAULT_B, seed=0, cache_dir=None, threads=None, alphas=DEFAULT_ALPHAS):
    """Load a calibration table from the cache, simulating and storing it if absent."""
    path = table_path(kind, n, B, seed, cache_dir)
    if path.exists():
        try:
            return load_table(path)
        except (CorruptTable, VersionMismatch):
            pass
    table = make_table(simulate_null(kind, n, B, seed, threads=threads), alphas)
    save_table(table, path)
    return table
