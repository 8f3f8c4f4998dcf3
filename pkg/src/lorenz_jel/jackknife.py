"""
Two-sample kernel, U-statistic of degree (1, 1) and jackknife pseudo-values.

The kernel is ``h(x, y) = x I(x <= psi_x) - y I(y <= psi_y)``.  Because it
separates into an X part and a Y part, the U-statistic is just the difference
of the two truncated means, and every leave-one-out statistic can be written
from the two truncated sums.  That gives all ``n = n1 + n2`` pseudo-values in
O(n) time.

Thresholds are held fixed across deletions; re-estimating the quantile inside
each leave-one-out fit would break the closed forms used here.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import Sample, as_sample, check_probability, empirical_quantile

QUANTILE_MODES = ("per_sample", "pooled")


@dataclass(frozen=True)
class TwoSamples:
    x: Sample
    y: Sample

    def __post_init__(self):
        object.__setattr__(self, "x", as_sample(self.x))
        object.__setattr__(self, "y", as_sample(self.y))
        if len(self.x) < 2 or len(self.y) < 2:
            raise ValueError("jackknife undefined: each sample needs at least 2 observations")

    @property
    def n1(self) -> int:
        return len(self.x)

    @property
    def n2(self) -> int:
        return len(self.y)


@dataclass(frozen=True)
class TruncatedPair:
    """Observations zeroed above their threshold, plus the thresholds used."""

    x_trunc: np.ndarray
    y_trunc: np.ndarray
    psi_x: float
    psi_y: float
    t: float

    @property
    def n1(self) -> int:
        return self.x_trunc.size

    @property
    def n2(self) -> int:
        return self.y_trunc.size


@dataclass(frozen=True)
class PseudoValueSet:
    values: np.ndarray
    u_stat: float
    n1: int
    n2: int
    t: float

    @property
    def n(self) -> int:
        return self.n1 + self.n2


def kernel(x_val: float, y_val: float, psi_x: float, psi_y: float) -> float:
    return (x_val if x_val <= psi_x else 0.0) - (y_val if y_val <= psi_y else 0.0)


def _truncate_at(values: np.ndarray, psi: float) -> np.ndarray:
    out = np.where(values <= psi, values, 0.0)
    out.setflags(write=False)
    return out


def truncate(s: TwoSamples, t: float, quantile_mode: str = "per_sample",
             thresholds: tuple[float, float] | None = None) -> TruncatedPair:
    """Zero out observations above the t-th quantile threshold.

    Parameters
    ----------
    s : TwoSamples
    t : float
        Probability level in [0, 1].
    quantile_mode : {'per_sample', 'pooled'}
        ``per_sample`` uses each sample's own empirical quantile;
        ``pooled`` uses the empirical quantile of the merged sample for both.
        Ignored when `thresholds` is given.
    thresholds : (float, float), optional
        Explicit ``(psi_x, psi_y)``, e.g. population quantiles in simulations.
    """
    t = check_probability(t)
    if thresholds is not None:
        psi_x, psi_y = (float(v) for v in thresholds)
    elif quantile_mode == "per_sample":
        psi_x = empirical_quantile(s.x, t)
        psi_y = empirical_quantile(s.y, t)
    elif quantile_mode == "pooled":
        psi_x = psi_y = empirical_quantile(np.concatenate([s.x.values, s.y.values]), t)
    else:
        raise ValueError(f"unknown quantile mode {quantile_mode!r}")
    return TruncatedPair(_truncate_at(s.x.values, psi_x), _truncate_at(s.y.values, psi_y),
                         psi_x, psi_y, t)


def u_statistic(tp: TruncatedPair) -> float:
    """Average kernel over all cross pairs, equal to the difference of truncated means."""
    return float(np.mean(tp.x_trunc) - np.mean(tp.y_trunc))


def pseudo_values(tp: TruncatedPair) -> PseudoValueSet:
    """Jackknife pseudo-values ``n U - (n-1) U^(-k)`` on the merged sample.

    Deleting ``x_k`` leaves ``(Sx - x_k)/(n1-1) - Sy/n2``; deleting ``y_j``
    leaves ``Sx/n1 - (Sy - y_j)/(n2-1)``.
    """
    n1, n2 = tp.n1, tp.n2
    if n1 < 2 or n2 < 2:
        raise ValueError("jackknife undefined: each sample needs at least 2 observations")
    n = n1 + n2
    xt, yt = tp.x_trunc, tp.y_trunc
    sx, sy = xt.sum(), yt.sum()
    u = sx / n1 - sy / n2
    v_x = n * u - (n - 1) * ((sx - xt) / (n1 - 1) - sy / n2)
    v_y = n * u - (n - 1) * (sx / n1 - (sy - yt) / (n2 - 1))
    values = np.concatenate([v_x, v_y])
    values.setflags(write=False)
    return PseudoValueSet(values, float(u), n1, n2, tp.t)


def projection_pseudo_values(tp: TruncatedPair) -> np.ndarray:
    """Pseudo-values through the two-sample jackknife components.

    Uses ``V_{i,0} = x_i - mean(y)`` and ``V_{0,j} = mean(x) - y_j`` in::

        n(n-1)/(n-2) * [V_{k,0}/n1 (k <= n1) + V_{0,k-n1}/n2 (k > n1)] - n/(n-2) * U

    This agrees with :func:`pseudo_values` only for balanced designs
    (``n1 == n2``); for ``n1 != n2`` the coefficient on each observation is
    ``n(n-1)/((n-2) n1)`` here versus ``(n-1)/(n1-1)`` in the leave-one-out
    definition.
    """
    n1, n2 = tp.n1, tp.n2
    if n1 < 2 or n2 < 2:
        raise ValueError("jackknife undefined: each sample needs at least 2 observations")
    n = n1 + n2
    xbar, ybar = tp.x_trunc.mean(), tp.y_trunc.mean()
    u = xbar - ybar
    v_i0 = tp.x_trunc - ybar
    v_0j = xbar - tp.y_trunc
    scale = n * (n - 1) / (n - 2)
    return np.concatenate([scale * v_i0 / n1, scale * v_0j / n2]) - n / (n - 2) * u


def expected_pseudo_value(theta: float, n1: int, n2: int, k: int) -> float:
    """Mean of the k-th pseudo-value (1-based ``k``) when ``E h = theta``."""
    if n1 < 2 or n2 < 2:
        raise ValueError("jackknife undefined: each sample needs at least 2 observations")
    n = n1 + n2
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}]")
    factor = (n2 - 1) / n1 if k <= n1 else (n1 - 1) / n2
    return n * theta / (n - 2) * factor


def jackknife_pseudo_values(s: TwoSamples, t: float, quantile_mode: str = "per_sample",
                            thresholds: tuple[float, float] | None = None) -> PseudoValueSet:
    """Convenience pipeline: truncate then form pseudo-values."""
    return pseudo_values(truncate(s, t, quantile_mode, thresholds))
