"""Detect an interval where a known density or Poisson intensity is elevated.

Scan, penalised scan and condensed average likelihood ratio statistics
with Monte Carlo calibration, evaluated over sparse multiscale interval
grids.
"""

from .calibration import (
    CriticalValueTable,
    NullSample,
    cached_table,
    critical_value,
    load_table,
    make_table,
    p_value,
    save_table,
    simulate_null,
)
from .errors import (
    BumpScanError,
    CdfOutOfRange,
    CorruptTable,
    DomainError,
    EmptySample,
    GridMismatch,
    InvalidLevel,
    MissingTable,
    ParseError,
    SampleTooSmall,
    UnsupportedStat,
    VersionMismatch,
)
from .grids import (
    ApproxSet,
    GridKind,
    IntervalIdx,
    LevelSpec,
    build_grid,
    enumerate_grid,
    enumerate_level,
    grid_cardinality,
)
from .likelihood import (
    lemma_tail_bound,
    log_lr_left,
    log_lr_right,
    log_lr_two,
    sqrt2_log_lr,
    subgaussian_bound,
)
from .simulation import (
    AlternativeSpec,
    PowerConfig,
    PowerRow,
    detectability_margin,
    effect_mass,
    power_study,
    sample_alternative,
)
from .statistics import (
    StatisticResult,
    StatKind,
    condensed_alr,
    evaluate,
    penalized_scan,
    penalized_scan_all,
    penalized_scan_fixed,
    penalty_jk,
    penalty_mass,
    scan,
    scan_on_grid,
)
from .transform import NullCdf, RawSample, SortedSample, load_sample, pit_transform

__version__ = "0.1.0"
