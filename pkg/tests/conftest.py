import os
from pathlib import Path

import numpy as np
import pytest

# Calibration tables are expensive at n >= 1e4; keep them between runs.
CACHE_DIR = Path(os.environ.get("BUMPSCAN_TABLE_DIR", Path(__file__).parent.parent / ".table-cache"))

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def table_cache():
    CACHE_DIR.mkdir(parents=True, exist_ok=True)
    return CACHE_DIR


@pytest.fixture
def rng():
    return np.random.default_rng(20130401)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def criterion():
    """Record one pass/fail line for the terminal summary, then assert."""

    def record(number, title, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        ACCEPTANCE_LINES.append((number, f"[{status}] {number}. {title}: {detail}"))
        assert ok, f"criterion {number} ({title}) failed: {detail}"

    return record


CALIBRATION_SEED = 2013
CALIBRATION_B = 10_000


@pytest.fixture(scope="session")
def null_table(table_cache):
    """Cached critical-value table for (kind, n), simulated on first use."""
    from bumpscan.calibration import cached_table

    def get(kind, n, B=CALIBRATION_B, seed=CALIBRATION_SEED):
        return cached_table(kind, n, B, seed, cache_dir=table_cache)

    return get
