"""Brute-force reference implementations written from the definitions.

Nothing here imports bumpscan: grids are re-derived from their defining
formulas and every candidate pair is checked explicitly.
"""

import math

import numpy as np


def loglr(a, b, n):
    """One-sided log likelihood ratio, vectorised, natural log."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    out = np.zeros(np.broadcast(a, b).shape)
    a, b = np.broadcast_arrays(a, b)
    pos = b > a
    with np.errstate(divide="ignore", invalid="ignore"):
        t1 = np.where(b > 0, b * np.log(b / a), 0.0)
        t2 = np.where(b < 1, (1 - b) * np.log((1 - b) / (1 - a)), 0.0)
    out[pos] = n * np.maximum(t1[pos] + t2[pos], 0.0)
    return out


def all_pairs(n, lo, hi):
    j, k = np.triu_indices(n, k=1)
    span = k - j
    keep = (span >= lo) & (span <= hi)
    return j[keep], k[keep]  # 0-based


def pick(values, j, k):
    """Max with lexicographically smallest (j, k), 1-based in the result."""
    best = values.max()
    hits = np.flatnonzero(values == best)
    order = np.lexsort((k[hits], j[hits]))
    i = hits[order[0]]
    return float(best), (int(j[i]) + 1, int(k[i]) + 1)


def scan(u, restricted=True):
    n = u.size
    lo, hi = (math.log(n), n / 2) if restricted else (1, n - 1)
    j, k = all_pairs(n, lo, hi)
    a = u[k] - u[j]
    ok = (a > 0) & (a < 1)
    j, k, a = j[ok], k[ok], a[ok]
    return pick(loglr(a, (k - j + 1) / n, n), j, k)


def pen_all(u):
    n = u.size
    j, k = all_pairs(n, math.log(n), n / 2)
    a = u[k] - u[j]
    ok = (a > 0) & (a < 1)
    j, k, a = j[ok], k[ok], a[ok]
    span = k - j
    pen = np.sqrt(2 * np.log(math.e * n**2 / (span * (n - span))))
    return pick(np.sqrt(2 * loglr(a, (span + 1) / n, n)) - pen, j, k)


def grid_pairs(n, kind):
    """All (j, k), 1-based, of the approximating set, by checking every lattice pair."""
    top = math.floor(math.log2(n / math.log(n)))
    pairs = []
    for ell in range(2, top + 1):
        m = n * 2.0**-ell
        if kind == "alr":
            d = math.ceil(math.sqrt(m) * ell**0.8 / math.log(n))
        else:
            d = math.ceil(m / (6 * math.sqrt(ell)))
        lattice = np.arange(1, n + 1, d)
        jj, kk = np.meshgrid(lattice, lattice, indexing="ij")
        keep = (kk - jj > m) & (kk - jj <= 2 * m)
        pairs.append(np.column_stack([jj[keep], kk[keep], np.full(keep.sum(), ell)]))
    return np.concatenate(pairs)


def pen_scan(u):
    n = u.size
    g = grid_pairs(n, "scan")
    j, k = g[:, 0] - 1, g[:, 1] - 1
    a = u[k] - u[j]
    ok = (a > 0) & (a < 1)
    j, k, a = j[ok], k[ok], a[ok]
    span = k - j
    pen = np.sqrt(2 * np.log(math.e * n**2 / (span * (n - span))))
    return pick(np.sqrt(2 * loglr(a, (span + 1) / n, n)) - pen, j, k)


def pen_scan_fixed(u):
    n = u.size
    g = grid_pairs(n, "scan")
    j, k = g[:, 0], g[:, 1]
    lo, hi = j / n, k / n
    # count points in (j/n, k/n] one interval at a time
    fn = np.array([np.count_nonzero((u > a) & (u <= b)) for a, b in zip(lo, hi)]) / n
    ok = fn > 0
    j, k, fn = j[ok], k[ok], fn[ok]
    pen = np.sqrt(2 * np.log(math.e / (fn * (1 - np.minimum(fn, 0.5)))))
    vals = np.sqrt(2 * loglr((k - j) / n, fn, n)) - pen
    best, (j1, k1) = pick(vals, j - 1, k - 1)
    return best, (j1, k1)


def cond_alr_mean(u):
    """Plain average of exp(logLR) over the half-open grid; no log-sum-exp."""
    n = u.size
    g = grid_pairs(n, "alr")
    j, k = g[:, 0] - 1, g[:, 1] - 1
    a = u[k] - u[j]
    ok = (a > 0) & (a < 1)
    j, k, a = j[ok], k[ok], a[ok]
    return float(np.mean(np.exp(loglr(a, (k - j) / n, n))))
