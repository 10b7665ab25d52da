import math

import numpy as np
import pytest

import oracles
from bumpscan import (
    AlternativeSpec,
    GridMismatch,
    NullCdf,
    SampleTooSmall,
    SortedSample,
    StatKind,
    build_grid,
    condensed_alr,
    enumerate_grid,
    evaluate,
    penalized_scan,
    penalized_scan_all,
    penalized_scan_fixed,
    penalty_jk,
    penalty_mass,
    pit_transform,
    sample_alternative,
    scan,
    scan_on_grid,
    simulate_null,
)
from bumpscan import _kernels
from bumpscan.statistics import Evaluator


def uniform_sample(n, seed):
    return SortedSample.from_uniforms(np.random.default_rng(seed).random(n))


def test_three_point_scan_by_exhaustion():
    # below the package minimum n, so exercised on the kernel over all pairs
    u = np.array([0.1, 0.2, 0.9])
    value, j, k = _kernels.scan_all_lengths(u, 1, 2, False)
    # mpmath: 3 (2/3 ln(20/3) + 1/3 ln(10/27))
    assert value == pytest.approx(2.80098819676147921, rel=1e-14)
    assert (j, k) == (0, 1)
    ref, argmax = oracles.scan(u, restricted=False)
    assert ref == pytest.approx(value, rel=1e-14)
    assert argmax == (1, 2)


def test_penalty_examples():
    assert penalty_jk(100, 1, 11) == pytest.approx(2.61072618581569062, rel=1e-14)
    for n in (100, 1000, 10**6):
        assert penalty_jk(n, 1, 1 + n // 2) == pytest.approx(2.18462553364181415, rel=1e-13)
    spans = np.arange(1, 100)
    pens = [penalty_jk(100, 0, s) for s in spans]
    assert spans[int(np.argmin(pens))] == 50
    assert penalty_mass(0.5) == pytest.approx(2.18462553364181415, rel=1e-14)
    assert penalty_mass(0.9) == pytest.approx(1.89657991986510899, rel=1e-14)
    assert penalty_mass(1e-300) > 37


def test_too_small():
    with pytest.raises(SampleTooSmall):
        scan(np.linspace(0.01, 0.99, 25))
    with pytest.raises(SampleTooSmall):
        Evaluator("pen-scan", 10)


def test_grid_mismatch():
    sample = uniform_sample(200, 0)
    with pytest.raises(GridMismatch):
        penalized_scan(sample, build_grid(201, "scan"))
    with pytest.raises(GridMismatch):
        condensed_alr(sample, build_grid(200, "scan"))


@pytest.mark.parametrize("seed", range(3))
def test_restricted_scan_matches_double_loop(seed):
    u = uniform_sample(200, seed).u
    res = scan(u)
    value, argmax = oracles.scan(u)
    assert res.value == pytest.approx(value, abs=1e-12)
    assert (res.argmax.j, res.argmax.k) == argmax
    assert res.kind is StatKind.SCAN_RESTRICTED


@pytest.mark.parametrize("seed", range(3))
def test_full_scan_matches_and_dominates(seed):
    u = uniform_sample(120, seed).u
    full = scan(u, restricted=False)
    value, argmax = oracles.scan(u, restricted=False)
    assert full.value == pytest.approx(value, abs=1e-12)
    assert (full.argmax.j, full.argmax.k) == argmax
    assert full.value >= scan(u).value


def test_scans_nonnegative_on_even_spacing():
    n = 300
    u = np.arange(1, n + 1) / (n + 1)
    assert scan(u).value >= 0
    assert scan(u, restricted=False).value >= 0


@pytest.mark.parametrize("seed", range(3))
def test_penalized_scan_matches_grid_oracle(seed):
    u = uniform_sample(500, seed).u
    res = penalized_scan(u)
    value, argmax = oracles.pen_scan(u)
    assert res.value == pytest.approx(value, abs=1e-12)
    assert (res.argmax.j, res.argmax.k) == argmax
    assert 2 <= res.argmax.level <= build_grid(500, "scan").ell_max


def test_penalized_scan_lower_bound():
    u = uniform_sample(400, 9).u
    grid = build_grid(400, "scan")
    worst = max(-penalty_jk(400, p.j, p.k) for p in enumerate_grid(grid))
    assert penalized_scan(u, grid).value >= worst


@pytest.mark.parametrize("seed", range(3))
def test_fixed_scan_matches_grid_oracle(seed):
    u = uniform_sample(500, seed).u
    res = penalized_scan_fixed(u)
    value, argmax = oracles.pen_scan_fixed(u)
    assert res.value == pytest.approx(value, abs=1e-12)
    assert (res.argmax.j, res.argmax.k) == argmax


def test_fixed_scan_when_empirical_equals_null_mass():
    n = 400
    # one point at each grid quantile i/n, so F_n(I) = F0(I) on every interval
    u = np.arange(1, n + 1) / n
    res = penalized_scan_fixed(u)
    grid = build_grid(n, "scan-fixed")
    best_pen = max(
        -penalty_mass((p.k - p.j) / n) for p in enumerate_grid(grid)
    )
    assert res.value == pytest.approx(best_pen, abs=1e-9)
    assert res.value < 0


def test_fixed_scan_skips_empty_intervals():
    # all points crammed near 0: most grid intervals are empty
    u = np.sort(np.random.default_rng(3).random(300)) * 0.05
    res = penalized_scan_fixed(u)
    assert math.isfinite(res.value)
    assert res.argmax.j / 300 < 0.05


@pytest.mark.parametrize("seed", range(3))
def test_pen_scan_all_matches_double_loop(seed):
    u = uniform_sample(300, seed).u
    res = penalized_scan_all(u)
    value, argmax = oracles.pen_all(u)
    assert res.value == pytest.approx(value, abs=1e-12)
    assert (res.argmax.j, res.argmax.k) == argmax
    # every scan-grid pair satisfies the length restriction, so P_all dominates P_n
    assert res.value >= penalized_scan(u).value


@pytest.mark.parametrize("seed", range(3))
def test_condensed_alr_matches_naive_mean(seed):
    u = uniform_sample(500, seed).u
    res = condensed_alr(u)
    assert res.argmax is None
    assert math.exp(res.value) == pytest.approx(oracles.cond_alr_mean(u), abs=1e-12)


def test_condensed_alr_all_zero_terms():
    n = 400
    u = np.arange(1, n + 1) / (n + 1)
    # every half-open interval then has null mass (k-j)/(n+1) < (k-j)/n
    assert condensed_alr(u).value > 0
    v = np.arange(0, n) / n
    assert condensed_alr(v).value == pytest.approx(0.0, abs=1e-12)


def test_condensed_alr_survives_overflow():
    spec = AlternativeSpec(r=200.0, interval_len=0.05, n=5000, interval_start=0.4)
    res = condensed_alr(sample_alternative(spec, 1))
    assert math.isfinite(res.value) and res.value > 700  # exp would overflow


def test_scan_on_grid_bounded_by_full_scan():
    u = uniform_sample(600, 4).u
    assert scan_on_grid(u).value <= scan(u).value + 1e-12


def test_statistics_ignore_input_order():
    rng = np.random.default_rng(5)
    x = rng.exponential(2.0, size=700)
    f0 = NullCdf.exponential(0.5)
    a = pit_transform(x, f0)
    b = pit_transform(rng.permutation(x), f0)
    for kind in StatKind:
        assert evaluate(kind, a) == evaluate(kind, b)


def test_values_are_finite_and_evaluator_agrees():
    sample = uniform_sample(1000, 6)
    for kind in StatKind:
        res = evaluate(kind, sample)
        assert math.isfinite(res.value)
        assert Evaluator(kind, 1000)(sample.u) == res.value
        assert res.n == 1000


def test_ties_are_skipped_not_fatal():
    u = np.sort(np.round(np.random.default_rng(2).random(400), 2))
    for kind in StatKind:
        assert math.isfinite(evaluate(kind, u).value)


def test_planted_bump_is_located():
    spec = AlternativeSpec(r=10.0, interval_len=0.05, n=10**4, interval_start=0.6)
    sample = sample_alternative(spec, 3)
    res = penalized_scan(sample)
    lo, hi = sample.u[res.argmax.j - 1], sample.u[res.argmax.k - 1]
    assert lo < 0.65 and hi > 0.6


def test_pen_scan_all_null_quantile_is_moderate():
    null = simulate_null("pen-scan-all", 1000, 500, seed=77)
    q95 = null.values[math.ceil(0.95 * 500) - 1]
    assert math.isfinite(q95) and q95 < 4


@pytest.mark.slow
def test_pen_scan_power_small_bump(null_table):
    crit = null_table("pen-scan", 10**4).critical_value(0.05)
    rng = np.random.default_rng(41)
    stat = Evaluator("pen-scan", 10**4)
    hits = sum(
        stat(sample_alternative(AlternativeSpec(4.0, 0.01, 10**4), rng).u) > crit
        for _ in range(200)
    )
    assert hits >= 190


@pytest.mark.slow
def test_cond_alr_power_large_bump(null_table):
    crit = null_table("cond-alr", 10**4).critical_value(0.05)
    rng = np.random.default_rng(42)
    stat = Evaluator("cond-alr", 10**4)
    hits = sum(
        stat(sample_alternative(AlternativeSpec(1.13, 0.3, 10**4), rng).u) > crit
        for _ in range(200)
    )
    assert hits >= 186
