"""Reduce a known-null problem to the uniform case.

Raw observations are mapped through the null CDF ``F0`` (probability
integral transform) and sorted. Every statistic in the package only sees
the resulting :class:`SortedSample`.
"""

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.special import ndtr

from .errors import CdfOutOfRange, EmptySample, ParseError

BOUNDARY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class RawSample:
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).ravel()
        if values.size == 0:
            raise EmptySample("sample contains no observations")
        if not np.all(np.isfinite(values)):
            raise ParseError("sample contains non-finite values")
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.values.size


@dataclass(frozen=True, eq=False)
class SortedSample:
    """Order statistics on the probability-integral-transform scale.

    Attributes
    ----------
    u : ndarray
        ``n`` values in ``[0, 1]``, ascending.
    x : ndarray or None
        The raw observations permuted into the same order as ``u``, kept so
        that detected intervals can be reported on the original scale.
    """

    u: np.ndarray
    x: np.ndarray = field(default=None)

    def __post_init__(self):
        u = np.ascontiguousarray(self.u, dtype=float).ravel()
        if u.size == 0:
            raise EmptySample("sample contains no observations")
        if u[0] < 0.0 or u[-1] > 1.0 or np.any(np.diff(u) < 0):
            raise ValueError("u must be sorted ascending within [0, 1]")
        object.__setattr__(self, "u", u)
        if self.x is not None:
            x = np.asarray(self.x, dtype=float).ravel()
            if x.size != u.size:
                raise ValueError("x and u must have the same length")
            object.__setattr__(self, "x", x)

    @property
    def n(self):
        return self.u.size

    @classmethod
    def from_uniforms(cls, values):
        return cls(np.sort(np.asarray(values, dtype=float)))


class NullCdf:
    """A nondecreasing map from the real line to ``[0, 1]``.

    Parameters
    ----------
    func : callable
        Vectorised CDF, evaluated on a float ndarray.
    name : str
        Text form used in reports, e.g. ``"exp:2.0"``.
    """

    def __init__(self, func, name="custom"):
        self._func = func
        self.name = name

    def __call__(self, x):
        return np.asarray(self._func(np.asarray(x, dtype=float)), dtype=float)

    def __repr__(self):
        return f"NullCdf({self.name!r})"

    @classmethod
    def uniform(cls):
        # No clipping: observations outside [0, 1] are reported, not absorbed.
        return cls(lambda x: x, "uniform")

    @classmethod
    def exponential(cls, rate=1.0):
        if not rate > 0:
            raise ValueError("exponential rate must be positive")
        return cls(lambda x: -np.expm1(-rate * x), f"exp:{rate!r}")

    @classmethod
    def normal(cls, mu=0.0, sigma=1.0):
        if not sigma > 0:
            raise ValueError("normal sigma must be positive")
        return cls(lambda x: ndtr((x - mu) / sigma), f"normal:{mu!r},{sigma!r}")

    @classmethod
    def table(cls, knots, probs, name="table"):
        """Piecewise-linear CDF through ``(knots, probs)``, flat outside."""
        knots = np.asarray(knots, dtype=float)
        probs = np.asarray(probs, dtype=float)
        if knots.ndim != 1 or knots.shape != probs.shape or knots.size < 2:
            raise ParseError("CDF table needs at least two (x, F0(x)) pairs")
        if np.any(np.diff(knots) <= 0):
            raise ParseError("CDF table knots must be strictly increasing")
        if np.any(np.diff(probs) < 0):
            raise ParseError("CDF table values must be nondecreasing")
        if probs[0] < 0 or probs[-1] > 1:
            raise ParseError("CDF table values must lie in [0, 1]")
        return cls(lambda x: np.interp(x, knots, probs), name)

    @classmethod
    def parse(cls, spec):
        """Build a CDF from its text form.

        Accepted forms are ``uniform``, ``exp:<rate>``,
        ``normal:<mu>,<sigma>`` and ``table:<path>``.
        """
        spec = spec.strip()
        family, _, arg = spec.partition(":")
        family = family.lower()
        try:
            if family == "uniform" and not arg:
                return cls.uniform()
            if family == "exp":
                return cls.exponential(float(arg) if arg else 1.0)
            if family == "normal":
                mu, sigma = (float(v) for v in arg.split(","))
                return cls.normal(mu, sigma)
        except ValueError as exc:
            raise ParseError(f"bad null CDF {spec!r}: {exc}") from None
        if family == "table" and arg:
            return load_cdf_table(arg)
        raise ParseError(f"unknown null CDF {spec!r}")


def load_cdf_table(path):
    rows = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or not "".join(row).strip():
                continue
            try:
                x, p = (float(v) for v in row)
            except ValueError:
                if lineno == 1:
                    continue  # header
                raise ParseError(f"expected 'x,F0(x)', got {row!r}", line=lineno) from None
            rows.append((x, p))
    if not rows:
        raise ParseError(f"CDF table {path} is empty")
    knots, probs = zip(*rows)
    return NullCdf.table(knots, probs, name=f"table:{path}")


def pit_transform(raw, f0):
    """Map observations through ``f0`` and sort.

    Values within ``BOUNDARY_TOL`` outside ``[0, 1]`` are clamped; anything
    further out raises :class:`CdfOutOfRange`. Sorting is stable, so ties
    keep input order.
    """
    if not isinstance(raw, RawSample):
        raw = RawSample(raw)
    u = f0(raw.values)
    if u.shape != raw.values.shape or not np.all(np.isfinite(u)):
        raise CdfOutOfRange(f"{f0!r} returned invalid values")
    bad = (u < -BOUNDARY_TOL) | (u > 1 + BOUNDARY_TOL)
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        raise CdfOutOfRange(
            f"F0({raw.values[i]!r}) = {u[i]!r} lies outside [0, 1]"
        )
    u = np.clip(u, 0.0, 1.0)
    order = np.argsort(u, kind="stable")
    return SortedSample(u[order], raw.values[order])


def load_sample(path, format=None):
    """Read one number per record from a CSV or JSONL file.

    The format defaults to the file suffix (``.jsonl`` means JSONL,
    everything else CSV). A CSV header line ``value`` is skipped.
    """
    path = Path(path)
    if format is None:
        format = "jsonl" if path.suffix.lower() in (".jsonl", ".ndjson") else "csv"
    format = format.lower()
    if format not in ("csv", "jsonl"):
        raise ParseError(f"unknown sample format {format!r}")
    values = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            if format == "csv" and lineno == 1 and text.lower() == "value":
                continue
            try:
                value = json.loads(text) if format == "jsonl" else float(text)
            except ValueError:
                raise ParseError(f"not a number: {text!r}", line=lineno) from None
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ParseError(f"not a number: {text!r}", line=lineno)
            if not math.isfinite(value):
                raise ParseError(f"non-finite value: {text!r}", line=lineno)
            values.append(float(value))
    if not values:
        raise EmptySample(f"{path} contains no observations")
    return RawSample(np.array(values))
