import math

import numpy as np
import pytest
from scipy import stats

from bumpscan import (
    CdfOutOfRange,
    EmptySample,
    NullCdf,
    ParseError,
    RawSample,
    load_sample,
    pit_transform,
)


def test_uniform_is_identity_up_to_sorting():
    out = pit_transform([0.3, 0.1, 0.7], NullCdf.uniform())
    np.testing.assert_array_equal(out.u, [0.1, 0.3, 0.7])
    np.testing.assert_array_equal(out.x, [0.1, 0.3, 0.7])


def test_exponential_values():
    out = pit_transform([math.log(2)], NullCdf.exponential(1.0))
    assert out.u[0] == pytest.approx(0.5, abs=1e-15)
    out = pit_transform([2.0, 1.0], NullCdf.parse("exp:1"))
    # mpmath: 1 - exp(-1), 1 - exp(-2)
    np.testing.assert_allclose(out.u, [0.632120558828557678, 0.864664716763387308], rtol=1e-15)
    np.testing.assert_array_equal(out.x, [1.0, 2.0])


def test_output_is_sorted_permutation(rng):
    x = rng.normal(2.0, 3.0, size=500)
    f0 = NullCdf.normal(2.0, 3.0)
    out = pit_transform(x, f0)
    assert np.all(np.diff(out.u) >= 0)
    np.testing.assert_array_equal(out.u, np.sort(f0(x)))
    np.testing.assert_array_equal(f0(out.x), out.u)


def test_stable_sort_keeps_ties():
    table = NullCdf.table([0.0, 1.0, 2.0, 3.0], [0.0, 0.5, 0.5, 1.0])
    out = pit_transform([1.5, 1.2, 0.5], table)
    np.testing.assert_array_equal(out.u, [0.25, 0.5, 0.5])
    np.testing.assert_array_equal(out.x, [0.5, 1.5, 1.2])


def test_boundary_clamp_and_out_of_range():
    f = NullCdf(lambda x: x, "id")
    out = pit_transform([1.0 + 5e-13, -5e-13], f)
    np.testing.assert_array_equal(out.u, [0.0, 1.0])
    with pytest.raises(CdfOutOfRange):
        pit_transform([1.001], f)
    with pytest.raises(CdfOutOfRange):
        pit_transform([-1.0], NullCdf.exponential(2.0))


def test_empty_sample():
    with pytest.raises(EmptySample):
        pit_transform([], NullCdf.uniform())
    with pytest.raises(EmptySample):
        RawSample([])


def test_table_cdf_interpolates_and_is_flat_outside(tmp_path):
    path = tmp_path / "cdf.csv"
    path.write_text("x,F0\n0,0\n2,0.5\n4,1\n")
    f0 = NullCdf.parse(f"table:{path}")
    np.testing.assert_allclose(f0([-1.0, 1.0, 3.0, 9.0]), [0.0, 0.25, 0.75, 1.0])


def test_table_cdf_rejects_bad_knots():
    with pytest.raises(ParseError):
        NullCdf.table([0.0, 0.0, 1.0], [0.0, 0.5, 1.0])
    with pytest.raises(ParseError):
        NullCdf.table([0.0, 1.0], [0.5, 0.2])


@pytest.mark.parametrize("text", ["weibull:2", "normal:1", "exp:abc", "uniform:3"])
def test_parse_rejects_unknown(text):
    with pytest.raises(ParseError):
        NullCdf.parse(text)


def test_load_csv(tmp_path):
    path = tmp_path / "s.csv"
    path.write_text("0.5\n0.25\n")
    np.testing.assert_array_equal(load_sample(path).values, [0.5, 0.25])
    path.write_text("value\n0.5\n\n0.25\n")
    np.testing.assert_array_equal(load_sample(path).values, [0.5, 0.25])


def test_load_csv_parse_error_line(tmp_path):
    path = tmp_path / "s.csv"
    path.write_text("0.5\nabc\n")
    with pytest.raises(ParseError) as info:
        load_sample(path)
    assert info.value.line == 2


def test_load_empty(tmp_path):
    path = tmp_path / "s.csv"
    path.write_text("")
    with pytest.raises(EmptySample):
        load_sample(path)


def test_load_jsonl(tmp_path):
    path = tmp_path / "s.jsonl"
    path.write_text("1.5\n2\n-3e-1\n")
    np.testing.assert_array_equal(load_sample(path).values, [1.5, 2.0, -0.3])
    path.write_text('1.5\n"x"\n')
    with pytest.raises(ParseError) as info:
        load_sample(path, "jsonl")
    assert info.value.line == 2


def test_pit_of_null_draws_is_uniform():
    # KS at the 0.1% level should accept in >= 99% of batches.
    rng = np.random.default_rng(11)
    f0 = NullCdf.exponential(0.7)
    accepted = 0
    for _ in range(1000):
        u = pit_transform(rng.exponential(1 / 0.7, size=1000), f0).u
        accepted += stats.kstest(u, "uniform").pvalue > 0.001
    assert accepted >= 990
