"""How sparse are the interval grids?

All pairs of order statistics would be n(n-1)/2 intervals. The multiscale
grids keep about n log n of them: coarse endpoint spacing for long
intervals, fine spacing for short ones.
"""

import time

import numpy as np

from bumpscan import build_grid, enumerate_level, grid_cardinality, penalized_scan

for n in (10**3, 10**4, 10**5, 10**6):
    counts = {kind: grid_cardinality(build_grid(n, kind)) for kind in ("scan", "alr")}
    print(f"n={n:>8}  all pairs {n * (n - 1) // 2:>14,}  "
          f"scan grid {counts['scan']:>11,}  alr grid {counts['alr']:>11,}  "
          f"scan / (n ln n) {counts['scan'] / (n * np.log(n)):.2f}")

grid = build_grid(10**4, "scan")
print("\nlevels of the n = 10^4 scan grid")
for level in grid.describe()["levels"]:
    print(f"  ell={level['ell']:>2}  m={level['m']:8.1f}  d={level['d']:>4}  count={level['count']:>7,}")

first = next(enumerate_level(grid, 2))
print(f"first interval at level 2: j={first.j}, k={first.k}")

# cost grows close to linearly
for n in (10**5, 10**6):
    u = np.sort(np.random.default_rng(0).random(n))
    penalized_scan(u)
    t = time.perf_counter()
    penalized_scan(u)
    print(f"penalized scan at n={n:>8}: {1e3 * (time.perf_counter() - t):6.0f} ms")
