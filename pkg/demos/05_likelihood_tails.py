"""The log likelihood ratio of one interval and its tail bounds.

For a fixed interval, sqrt(2 logLR) has a tail no heavier than a standard
normal one. The two-term Taylor sandwich shows why: logLR behaves like a
chi-square statistic with a variance that shrinks with the interval mass.
"""

import math

import numpy as np

from bumpscan import lemma_tail_bound, log_lr_left, subgaussian_bound

n, mass = 1000, 0.2
counts = np.random.default_rng(5).binomial(n, mass, size=100_000)
root = np.array([math.sqrt(2 * log_lr_left(mass, c / n, n)) for c in counts])
for t in (1, 2, 3):
    print(f"t={t}: P(sqrt(2 logLR) > t) = {np.mean(root > t):.4f}  bound {subgaussian_bound(t):.4f}")

print("\nTaylor sandwich at a = 0.1, n = 100")
for b in (0.11, 0.15, 0.3, 0.6):
    lr = log_lr_left(0.1, b, 100)
    lo = 100 * (b - 0.1) ** 2 / (2 * b)
    hi = 100 * (b - 0.1) ** 2 / (0.1 * 0.9)
    print(f"  b={b:.2f}: {lo:8.4f} <= {lr:8.4f} <= {hi:8.4f}")

# a spacing of k - j uniform order statistics plugged in as the null mass
print("\nbounds for a random spacing with mean 0.1, n = 1000")
for t in (2.0, 3.0, 4.0):
    bounds = [lemma_tail_bound(0.1, 0.1, t, 1000, side) for side in ("left", "right", "two_sqrt")]
    print(f"  t={t:.0f}: left {bounds[0]:.4f}  right {bounds[1]:.4f}  sqrt two-sided {bounds[2]:.4f}")
