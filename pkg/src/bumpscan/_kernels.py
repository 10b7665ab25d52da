"""Compiled inner loops for the scan statistics.

All kernels take a sorted float64 array ``u`` on the PIT scale and use
0-based indices internally; callers convert to 1-based order statistics.
They release the GIL so replicates can run on worker threads.
"""

import math

import numba
import numpy as np

_jit = numba.njit(cache=True, nogil=True)


@numba.njit(cache=True, nogil=True, inline="always")
def log_lr(a, b, n):
    if b <= a:
        return 0.0
    t = 0.0
    if b > 0.0:
        t += b * math.log(b / a)
    if b < 1.0:
        t += (1.0 - b) * math.log((1.0 - b) / (1.0 - a))
    if t < 0.0:
        return 0.0
    return n * t


@numba.njit(cache=True, nogil=True, inline="always")
def penalty_len(n, length):
    return math.sqrt(2.0 * math.log(math.e * n * n / (length * (n - length))))


@numba.njit(cache=True, nogil=True, fastmath=True)
def _min_spacing(u, length):
    """Smallest ``u[j + length] - u[j]``, zero spacings included."""
    m0 = m1 = m2 = m3 = np.inf
    stop = u.size - length
    j = 0
    while j + 4 <= stop:
        m0 = min(m0, u[j + length] - u[j])
        m1 = min(m1, u[j + 1 + length] - u[j + 1])
        m2 = min(m2, u[j + 2 + length] - u[j + 2])
        m3 = min(m3, u[j + 3 + length] - u[j + 3])
        j += 4
    while j < stop:
        m0 = min(m0, u[j + length] - u[j])
        j += 1
    return min(min(m0, m1), min(m2, m3))


@_jit
def _min_valid_spacing(u, length):
    mn = np.inf
    for j in range(u.size - length):
        d = u[j + length] - u[j]
        if 0.0 < d < 1.0 and d < mn:
            mn = d
    return mn


@_jit
def _first_index(u, length, target):
    """First valid j whose spacing equals ``target``, or any valid j if ``target < 0``."""
    for j in range(u.size - length):
        d = u[j + length] - u[j]
        if 0.0 < d < 1.0 and (target < 0.0 or d == target):
            return j
    return -1


# Pruning only discards lengths whose bound falls this far below the best.
_PRUNE_MARGIN = 1e-9


@_jit
def _length_score(mn, length, n, penalized):
    lr = log_lr(mn, (length + 1.0) / n, n)
    if penalized:
        return math.sqrt(2.0 * lr) - penalty_len(n, length)
    return lr


@_jit
def scan_all_lengths(u, lmin, lmax, penalized):
    """Maximise over every pair with ``lmin <= k - j <= lmax``.

    For a fixed length both the log likelihood ratio and its penalised root
    decrease in the null mass, so the maximum over ``j`` sits at the
    smallest spacing. Lengths are skipped when a lower bound on their
    smallest spacing (sum of the minima of two shorter lengths) already
    caps their score below the running best; the result is unchanged.

    Returns ``(value, j, k)`` with the lexicographically smallest
    maximiser, or ``(-inf, -1, -1)`` when no pair is valid.
    """
    n = u.size
    # lower[L] <= every spacing of length L; exact minimum where computed
    lower = np.zeros(lmax + 1)
    for length in range(1, min(lmin, lmax + 1)):
        lower[length] = _min_spacing(u, length)
    best = -np.inf
    best_len = -1
    best_j = -1
    for length in range(lmin, lmax + 1):
        if best > -np.inf and length >= 2:
            half = length // 2
            lb = max(lower[length - 1], lower[half] + lower[length - half])
            lower[length] = lb
            bound = lb * (1.0 - 1e-12)
            if bound > 0.0 and _length_score(bound, length, n, penalized) < best - _PRUNE_MARGIN:
                continue
        mn = _min_spacing(u, length)
        lower[length] = mn
        if not (0.0 < mn < 1.0):
            mn = _min_valid_spacing(u, length)
            if mn == np.inf:
                continue
        v = _length_score(mn, length, n, penalized)
        if v > best:
            best = v
            best_len = length
            best_j = -1
        elif v == best:
            if best_j < 0:
                best_j = _argmax_j(u, best_len, n)
            j = _argmax_j(u, length, n)
            if j < best_j or (j == best_j and length < best_len):
                best_len = length
                best_j = j
    if best_len < 0:
        return -np.inf, -1, -1
    if best_j < 0:
        best_j = _argmax_j(u, best_len, n)
    return best, best_j, best_j + best_len


@_jit
def _argmax_j(u, length, n):
    mn = _min_valid_spacing(u, length)
    b = (length + 1.0) / n
    if log_lr(mn, b, n) > 0.0:
        return _first_index(u, length, mn)
    # every pair of this length scores the same; take the first valid one
    return _first_index(u, length, -1.0)


@_jit
def _better(v, j, k, best, bj, bk):
    if v > best:
        return True
    if v == best and (j < bj or (j == bj and k < bk)):
        return True
    return False


@_jit
def scan_grid(u, ms, ds, penalized):
    """Maximise over a data-dependent grid of closed intervals.

    ``penalized`` selects ``sqrt(2 logLR) - penalty`` instead of ``logLR``.
    """
    n = u.size
    best = -np.inf
    bj = -1
    bk = -1
    for lev in range(ms.size):
        m = ms[lev]
        d = ds[lev]
        npos = (n - 1) // d + 1
        lo = int(math.floor(m / d)) + 1
        hi = min(int(math.floor(2.0 * m / d)), npos - 1)
        for i in range(npos):
            j = i * d
            top = min(hi, npos - 1 - i)
            for delta in range(lo, top + 1):
                k = j + delta * d
                a = u[k] - u[j]
                if not (0.0 < a < 1.0):
                    continue
                length = k - j
                lr = log_lr(a, (length + 1.0) / n, n)
                if penalized:
                    v = math.sqrt(2.0 * lr) - penalty_len(n, length)
                else:
                    v = lr
                if _better(v, j, k, best, bj, bk):
                    best = v
                    bj = j
                    bk = k
    return best, bj, bk


@_jit
def scan_grid_fixed(u, ms, ds):
    """Penalised scan over intervals ``(j/n, k/n]`` fixed in advance (1-based j, k)."""
    n = u.size
    best = -np.inf
    bj = -1
    bk = -1
    for lev in range(ms.size):
        m = ms[lev]
        d = ds[lev]
        npos = (n - 1) // d + 1
        lo = int(math.floor(m / d)) + 1
        hi = min(int(math.floor(2.0 * m / d)), npos - 1)
        # counts[i] = #{u <= (1 + i*d) / n}
        edges = (1.0 + np.arange(npos) * d) / n
        counts = np.searchsorted(u, edges, side="right")
        for i in range(npos):
            top = min(hi, npos - 1 - i)
            for delta in range(lo, top + 1):
                hits = counts[i + delta] - counts[i]
                if hits == 0:
                    continue
                fn = hits / n
                a = delta * d / n
                lr = log_lr(a, fn, n)
                pen = math.sqrt(2.0 * math.log(math.e / (fn * (1.0 - min(fn, 0.5)))))
                v = math.sqrt(2.0 * lr) - pen
                j = i * d
                k = j + delta * d
                if _better(v, j, k, best, bj, bk):
                    best = v
                    bj = j
                    bk = k
    return best, bj, bk


@_jit
def alr_grid(u, ms, ds):
    """Log of the mean likelihood ratio over half-open grid intervals.

    Streaming log-sum-exp: ``total + comp`` holds ``sum(exp(x - top))``,
    with ``comp`` the Neumaier compensation so that the sum of many terms
    keeps full precision. Returns ``(log_mean, count)``.
    """
    n = u.size
    top = 0.0
    total = 0.0
    comp = 0.0
    unit = 1.0  # exp(-top), the contribution of a zero log ratio
    count = 0
    for lev in range(ms.size):
        m = ms[lev]
        d = ds[lev]
        npos = (n - 1) // d + 1
        lo = int(math.floor(m / d)) + 1
        hi = min(int(math.floor(2.0 * m / d)), npos - 1)
        for i in range(npos):
            j = i * d
            stop = min(hi, npos - 1 - i)
            for delta in range(lo, stop + 1):
                k = j + delta * d
                a = u[k] - u[j]
                if not (0.0 < a < 1.0):
                    continue
                count += 1
                b = (k - j) / n
                x = log_lr(a, b, n) if b > a else 0.0
                if x > top:
                    scale = math.exp(top - x)
                    total *= scale
                    comp *= scale
                    top = x
                    unit = math.exp(-top)
                    term = 1.0
                elif x == 0.0:
                    term = unit
                else:
                    term = math.exp(x - top)
                t = total + term
                if abs(total) >= term:
                    comp += (total - t) + term
                else:
                    comp += (term - t) + total
                total = t
    if count == 0:
        return -np.inf, 0
    return top + math.log((total + comp) / count), count
