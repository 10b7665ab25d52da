"""Bump alternatives, detectability and the power study.

On the PIT scale the alternative has density proportional to ``r`` on an
interval ``I`` of length ``len`` and to 1 elsewhere in ``[0, 1]``.
"""

import configparser
import csv
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .calibration import DEFAULT_B, cached_table, replicate_rng, run_replicates
from .errors import DomainError, MissingTable, ParseError, SampleTooSmall
from .grids import MIN_N
from .statistics import Evaluator, StatKind
from .transform import SortedSample


def effect_mass(r, length):
    """Probability the alternative puts on its bump: ``r*len / (r*len + 1 - len)``."""
    if not r >= 1.0:
        raise DomainError(f"r must be at least 1, got {r!r}")
    if not 0.0 < length < 1.0:
        raise DomainError(f"interval length must lie in (0, 1), got {length!r}")
    if math.isinf(r):
        return 1.0
    return r * length / (r * length + 1.0 - length)


@dataclass(frozen=True)
class AlternativeSpec:
    """Bump model; ``interval_start=None`` draws the start uniformly per sample."""

    r: float
    interval_len: float
    n: int
    interval_start: Optional[float] = None

    def __post_init__(self):
        effect_mass(self.r, self.interval_len)
        if self.n < 1:
            raise DomainError(f"n must be positive, got {self.n!r}")
        start = self.interval_start
        if start is not None and not 0.0 <= start <= 1.0 - self.interval_len:
            raise DomainError(f"interval start {start!r} puts the bump outside [0, 1]")


def draw_alternative(spec, rng):
    """Sorted draw from the alternative using ``rng``; returns ``(u, start)``."""
    length = spec.interval_len
    start = spec.interval_start
    if start is None:
        start = rng.random() * (1.0 - length)
    inside = rng.random(spec.n) < effect_mass(spec.r, length)
    u = rng.random(spec.n)
    # outside the bump: uniform on [0, 1 - len], then shift past the bump
    out = u[~inside] * (1.0 - length)
    out[out >= start] += length
    u[~inside] = out
    u[inside] = start + length * u[inside]
    u.sort()
    return u, start


def sample_alternative(spec, seed):
    """Sorted sample of size ``spec.n`` from the alternative, reproducible from ``seed``."""
    rng = seed if isinstance(seed, np.random.Generator) else replicate_rng(seed)
    u, _ = draw_alternative(spec, rng)
    return SortedSample(u)


def detectability_margin(n, r, length):
    """Distance of a bump from the detection boundary.

    ``sqrt(n) (F1 - len) / sqrt(F1) - sqrt(2 log(e / F1))`` with ``F1`` the
    effect mass; positive means the bump is beyond the boundary.
    """
    f1 = effect_mass(r, length)
    return math.sqrt(n) * (f1 - length) / math.sqrt(f1) - math.sqrt(2.0 * math.log(math.e / f1))


@dataclass(frozen=True)
class PowerRow:
    n: int
    interval_len: float
    r: float
    statistic: str
    alpha: float
    reps: int
    power: float
    se: float
    seed: int

    FIELDS = ("n", "len", "r", "statistic", "alpha", "reps", "power", "se", "seed")

    def as_csv_row(self):
        return [
            self.n, repr(self.interval_len), repr(self.r), self.statistic,
            repr(self.alpha), self.reps, repr(self.power), repr(self.se), self.seed,
        ]


@dataclass
class PowerConfig:
    n: int
    interval_len: float
    r_values: list
    statistics: list = field(default_factory=lambda: ["scan", "pen-scan", "cond-alr"])
    reps: int = 500
    alpha: float = 0.05
    seed: int = 1
    interval_start: Optional[float] = None
    calibration_B: int = DEFAULT_B
    calibration_seed: int = 0
    auto_calibrate: bool = True
    cache_dir: Optional[str] = None
    name: str = ""


def power_study(config, tables=None, threads=None):
    """Estimate rejection rates of several statistics on shared samples.

    Parameters
    ----------
    config : PowerConfig
    tables : dict, optional
        Statistic name (or :class:`StatKind`) to
        :class:`~bumpscan.calibration.CriticalValueTable`. Missing entries
        are calibrated through the table cache when ``config.auto_calibrate``
        is set, otherwise :class:`MissingTable` is raised.
    threads : int, optional
        Worker threads; output does not depend on it.

    Returns
    -------
    list of PowerRow
        One row per ``(r, statistic)``, ordered as in the config.
    """
    if config.n < MIN_N:
        raise SampleTooSmall(f"sample too small: n={config.n}, need at least {MIN_N}")
    kinds = [StatKind.parse(s) for s in config.statistics]
    tables = {StatKind.parse(k): t for k, t in (tables or {}).items()}
    evaluators = [Evaluator(kind, config.n) for kind in kinds]
    crits = []
    for kind, stat in zip(kinds, evaluators):
        table = tables.get(kind)
        if table is None:
            if not config.auto_calibrate:
                raise MissingTable(f"no critical-value table for {kind.value} at n={config.n}")
            table = cached_table(
                kind, config.n, config.calibration_B, config.calibration_seed,
                cache_dir=config.cache_dir, threads=threads,
            )
        table.check(kind, config.n, stat.grid_hash)
        crits.append(table.critical_value(config.alpha))

    rows = []
    for r_index, r in enumerate(config.r_values):
        spec = AlternativeSpec(float(r), config.interval_len, config.n, config.interval_start)

        def one(b, spec=spec, r_index=r_index):
            u, _ = draw_alternative(spec, replicate_rng(config.seed, r_index, b))
            # bit mask over statistics, exact in a float64
            mask = 0
            for s, (stat, crit) in enumerate(zip(evaluators, crits)):
                if stat(u) > crit:
                    mask |= 1 << s
            return mask

        masks = run_replicates(one, config.reps, threads).astype(np.int64)
        for s, kind in enumerate(kinds):
            power = float(np.mean((masks >> s) & 1))
            se = math.sqrt(power * (1.0 - power) / config.reps)
            rows.append(PowerRow(
                config.n, config.interval_len, float(r), kind.value,
                config.alpha, config.reps, power, se, config.seed,
            ))
    return rows


def write_power_csv(rows, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(PowerRow.FIELDS)
    for row in rows:
        writer.writerow(row.as_csv_row())


def _floats(text):
    return [float(v) for v in text.replace(",", " ").split()]


_STUDY_DEFAULTS = {
    "statistics": "scan pen-scan cond-alr",
    "reps": "500",
    "alpha": "0.05",
    "seed": "1",
    "start": "random",
    "calibration_b": str(DEFAULT_B),
    "calibration_seed": "0",
}


def load_power_config(path):
    """Read a study file into one :class:`PowerConfig` per panel.

    The ``[study]`` section holds shared settings (``n``, ``statistics``,
    ``reps``, ``alpha``, ``seed``, ``calibration_B``, ``calibration_seed``);
    every other section is a panel with at least ``len`` and ``r`` and may
    override any shared setting.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    if not parser.read(path):
        raise ParseError(f"cannot read power config {path}")
    if not parser.has_section("study"):
        raise ParseError(f"{path}: missing [study] section")
    configs = []
    for name in parser.sections():
        if name == "study":
            continue
        opts = {**_STUDY_DEFAULTS, **parser["study"], **parser[name]}
        try:
            start = opts["start"].strip()
            configs.append(PowerConfig(
                n=int(opts["n"]),
                interval_len=float(opts["len"]),
                r_values=_floats(opts["r"]),
                statistics=opts["statistics"].replace(",", " ").split(),
                reps=int(opts["reps"]),
                alpha=float(opts["alpha"]),
                seed=int(opts["seed"]),
                interval_start=None if start == "random" else float(start),
                calibration_B=int(opts["calibration_b"]),
                calibration_seed=int(opts["calibration_seed"]),
                name=name,
            ))
        except (KeyError, ValueError) as exc:
            raise ParseError(f"{path}: bad setting in [{name}] ({exc})") from None
    if not configs:
        raise ParseError(f"{path}: no panels defined")
    return configs
