"""
Empirical quantiles and Lorenz / generalized Lorenz ordinates of one sample.

The quantile is the left-continuous inverse of the empirical CDF,
``inf{x : F_n(x) >= t}``, i.e. the order statistic ``x_(m)`` with
``m = ceil(n t)`` clamped to ``[1, n]``.  No interpolation is done, so the
indicator sets ``x <= psi_t`` used by the test statistics are exactly the
ones a literal reading of the definitions gives.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class Sample:
    """One group's observations.

    Parameters
    ----------
    values : array_like
        Finite real observations.  Copied and made read-only.
    """

    values: np.ndarray
    sorted_ascending: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        arr = np.array(self.values, dtype=float).ravel()
        if arr.size == 0:
            raise ValueError("empty sample")
        if not np.all(np.isfinite(arr)):
            raise ValueError("sample contains non-finite values")
        arr.setflags(write=False)
        srt = np.sort(arr)
        srt.setflags(write=False)
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "sorted_ascending", srt)

    def __len__(self) -> int:
        return self.values.size

    @property
    def mean(self) -> float:
        return float(np.mean(self.values))

    def scaled(self, c: float) -> "Sample":
        return Sample(self.values * c)


@dataclass(frozen=True)
class TGrid:
    """Strictly increasing probabilities in [0, 1]."""

    points: tuple

    def __post_init__(self):
        pts = tuple(float(t) for t in self.points)
        if not pts:
            raise ValueError("t grid is empty")
        for t in pts:
            check_probability(t)
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError("t grid must be strictly increasing")
        object.__setattr__(self, "points", pts)

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    @classmethod
    def uniform(cls, n: int) -> "TGrid":
        """``n`` points ``1/n, 2/n, ..., 1``."""
        if n < 1:
            raise ValueError("grid size must be positive")
        return cls(tuple(i / n for i in range(1, n + 1)))


def check_probability(t: float) -> float:
    t = float(t)
    if not (0.0 <= t <= 1.0):
        raise ValueError("t must lie in [0,1]")
    return t


def as_sample(s) -> Sample:
    return s if isinstance(s, Sample) else Sample(s)


def quantile_index(n: int, t: float) -> int:
    """1-based order-statistic index ``ceil(n t)`` clamped to [1, n]."""
    # n*t can land a hair above an integer (e.g. 5*0.6); snap before ceil.
    nt = n * t
    r = round(nt)
    m = r if abs(nt - r) <= 1e-9 * max(1.0, nt) else math.ceil(nt)
    return min(max(m, 1), n)


def empirical_quantile(s, t: float) -> float:
    """Left-continuous empirical quantile; ``t = 0`` gives the minimum."""
    s = as_sample(s)
    t = check_probability(t)
    return float(s.sorted_ascending[quantile_index(len(s), t) - 1])


def gl_ordinate(s, t: float) -> float:
    """Empirical generalized Lorenz ordinate ``(1/n) sum x_i I(x_i <= psi_t)``."""
    s = as_sample(s)
    psi = empirical_quantile(s, t)
    x = s.values
    return float(np.sum(np.where(x <= psi, x, 0.0)) / x.size)


def lorenz_ordinate(s, t: float) -> float:
    """Empirical Lorenz ordinate, the GL ordinate divided by the sample mean."""
    s = as_sample(s)
    mu = s.mean
    if mu <= 0:
        raise ValueError("nonpositive mean")
    return gl_ordinate(s, t) / mu


def curve_table(s, grid: Iterable[float] | TGrid) -> list[tuple[float, float, float]]:
    """Rows of ``(t, lorenz, gl)`` over ``grid``."""
    s = as_sample(s)
    if not isinstance(grid, TGrid):
        grid = TGrid(tuple(grid))
    mu = s.mean
    if mu <= 0:
        raise ValueError("nonpositive mean")
    rows = []
    for t in grid:
        gl = gl_ordinate(s, t)
        rows.append((t, gl / mu, gl))
    return rows
