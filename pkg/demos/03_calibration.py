"""Monte Carlo critical values, p-values and the table cache.

Replicate b draws from its own Philox stream keyed by (seed, b), so the
simulated null values are the same whatever the thread count.
"""

import tempfile
from pathlib import Path

import numpy as np

from bumpscan import cached_table, critical_value, load_table, save_table, simulate_null
from bumpscan.calibration import make_table

null = simulate_null("pen-scan", 2000, B=2000, seed=3, threads=1)
again = simulate_null("pen-scan", 2000, B=2000, seed=3, threads=4)
print("thread count changes nothing:", np.array_equal(null.values, again.values))

for alpha in (0.10, 0.05, 0.01):
    print(f"alpha={alpha:.2f}  critical value {critical_value(null, alpha):.4f}")

table = make_table(null)
for obs in (0.0, 1.0, 2.0, 3.0):
    print(f"observed {obs:.1f} -> p = {table.p_value(obs):.4f}")

with tempfile.TemporaryDirectory() as tmp:
    path = save_table(table, Path(tmp) / "pen-scan-2000.json")
    back = load_table(path)
    print("round trip keeps the critical values:", back.alphas == table.alphas)

    # the cache keys tables by statistic, n, grid hash, B and seed
    t1 = cached_table("cond-alr", 500, B=300, seed=1, cache_dir=tmp)
    t2 = cached_table("cond-alr", 500, B=300, seed=1, cache_dir=tmp)
    print("cached:", sorted(p.name for p in Path(tmp).glob("cond-alr*")), t1.alphas == t2.alphas)
