"""Binomial log likelihood ratio kernels and their tail bounds.

``a`` is the null mass of an interval and ``b`` its empirical mass; all
logarithms are natural. The compiled counterparts used inside the scans
live in :mod:`bumpscan._kernels`.
"""

import math

from .errors import DomainError


def _check(a, b, n):
    if not 0.0 < a < 1.0:
        raise DomainError(f"null mass must lie in (0, 1), got {a!r}")
    if not 0.0 <= b <= 1.0:
        raise DomainError(f"empirical mass must lie in [0, 1], got {b!r}")
    if n < 1:
        raise DomainError(f"sample size must be positive, got {n!r}")


def _log1pmx(x):
    """``log(1 + x) - x`` without cancellation near zero."""
    if abs(x) < 1e-2:
        # Alternating series; the truncation error is below x**12.
        term, total = x, 0.0
        for k in range(2, 12):
            term *= -x
            total += term / k
        return total
    return math.log1p(x) - x


def log_lr_two(a, b, n):
    """Two-sided statistic ``n*b*log(b/a) + n*(1-b)*log((1-b)/(1-a))``.

    Terms with a zero coefficient are dropped, which is the exact limit of
    ``0 * log 0``. Otherwise the first-order parts of the two logarithms are
    combined analytically into ``(b-a)**2 / (a*(1-a))`` so that the result
    keeps full relative precision when ``b`` is close to ``a``.
    """
    _check(a, b, n)
    if b == 0.0:
        return n * -math.log1p(-a)
    if b == 1.0:
        return n * -math.log(a)
    d = b - a
    x, y = d / a, -d / (1.0 - a)
    if max(abs(x), abs(y)) < 0.5:
        value = d * d / (a * (1.0 - a))
        value += b * _log1pmx(x) + (1.0 - b) * _log1pmx(y)
    else:
        # far from b == a nothing cancels
        value = b * math.log(b / a) + (1.0 - b) * math.log((1.0 - b) / (1.0 - a))
    return n * max(value, 0.0)


def log_lr_left(a, b, n):
    """One-sided statistic for an elevated interval; zero unless ``b > a``."""
    _check(a, b, n)
    return log_lr_two(a, b, n) if b > a else 0.0


def log_lr_right(a, b, n):
    """One-sided statistic for a depleted interval; zero unless ``b < a``."""
    _check(a, b, n)
    return log_lr_two(a, b, n) if b < a else 0.0


def sqrt2_log_lr(a, b, n):
    return math.sqrt(2.0 * log_lr_left(a, b, n))


def subgaussian_bound(t):
    """``exp(-t**2 / 2)``, the tail bound of ``sqrt2_log_lr`` on a fixed interval."""
    if not t > 0:
        raise DomainError(f"t must be positive, got {t!r}")
    return math.exp(-0.5 * t * t)


def lemma_tail_bound(p_jk, p, t, n, side):
    """Upper bound on the tail of the statistic for a random spacing.

    Bounds ``P(stat(U_(k) - U_(j), p) > t)`` where the spacing of ``k - j``
    uniform order statistics is Beta distributed with mean
    ``p_jk = (k - j) / (n + 1)``.

    Parameters
    ----------
    p_jk : float
        Expected spacing, in ``(0, 1)``.
    p : float
        Empirical mass plugged in as the second argument, in ``(0, 1)``.
    t : float
        Threshold, positive.
    n : int
        Sample size.
    side : {"left", "right", "two_sqrt"}
        ``left``/``right`` bound the one-sided log likelihood ratio;
        ``two_sqrt`` bounds ``sqrt(2 * log_lr_two)``.

    Returns
    -------
    float
        The bound, capped at 1.
    """
    if not 0.0 < p_jk < 1.0:
        raise DomainError(f"p_jk must lie in (0, 1), got {p_jk!r}")
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must lie in (0, 1), got {p!r}")
    if not t > 0:
        raise DomainError(f"t must be positive, got {t!r}")
    if n < 1:
        raise DomainError(f"n must be positive, got {n!r}")
    scale = (n + 1) / n
    var = p_jk * (1.0 - p_jk)
    if side == "left":
        drift = n * (p - p_jk) * (p - p_jk * (p_jk > p)) / var
        exponent = -(p_jk / p) * scale * (t - drift)
        factor = 1.0
    elif side == "right":
        drift = n * (p_jk - p) * (1.0 - p - (1.0 - p_jk) * (p_jk < p)) / var
        exponent = -((1.0 - p_jk) / (1.0 - p)) * scale * (t - drift)
        factor = 1.0
    elif side == "two_sqrt":
        ratio = min(p_jk / p, (1.0 - p_jk) / (1.0 - p))
        exponent = -ratio * scale * t * t / 2.0 + n * (p - p_jk) / ((p > p_jk) - p_jk)
        factor = 2.0
    else:
        raise DomainError(f"unknown side {side!r}")
    if exponent >= 0.0:
        return 1.0
    return min(1.0, factor * math.exp(exponent))
