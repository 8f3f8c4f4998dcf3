"""
Empirical likelihood on jackknife pseudo-values.

For constraint values ``g_1..g_m`` the EL weights are
``p_k = 1 / (m (1 + lam g_k))`` where ``lam`` solves

    (1/m) sum g_k / (1 + lam g_k) = 0,

and the log-likelihood-ratio statistic is ``2 sum log(1 + lam g_k)``.
The left-hand side is strictly decreasing in ``lam`` on
``(-1/max g, -1/min g)``, so a Newton iteration kept inside a shrinking
sign-change bracket always converges.

JEL applies this to the pseudo-values directly.  AJEL appends the point
``-a_n * mean(g)`` with ``a_n = max(1, log(n)/2)`` so that zero is always
inside the convex hull.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .jackknife import PseudoValueSet, TwoSamples, jackknife_pseudo_values

METHODS = ("JEL", "AJEL")

RESIDUAL_TOL = 1e-10
WEIGHT_TOL = 1e-12
MAX_ITER = 100


@dataclass(frozen=True)
class ELSolution:
    """Result of the Lagrange dual for one constraint vector.

    ``lam`` is NaN and ``log_lr`` is ``inf`` when zero lies outside the
    convex hull of the constraint values (``hull_ok`` False).
    """

    lam: float
    weights: np.ndarray = field(repr=False)
    log_lr: float
    converged: bool
    hull_ok: bool
    iterations: int
    degenerate: bool = False
    residual: float = 0.0


@dataclass(frozen=True)
class TestResult:
    method: str
    t: float
    statistic: float
    p_value: float
    reject: bool
    alpha: float
    hull_ok: bool
    n1: int
    n2: int
    degenerate: bool = False
    converged: bool = True

    __test__ = False  # not a pytest class

    @property
    def endpoint(self) -> bool:
        """True at t = 0 or 1, where the chi-square limit is not guaranteed."""
        return self.t <= 0.0 or self.t >= 1.0

    def as_dict(self) -> dict:
        return {
            "method": self.method,
            "t": self.t,
            "statistic": self.statistic,
            "p_value": self.p_value,
            "reject": self.reject,
            "alpha": self.alpha,
            "hull_ok": self.hull_ok,
            "degenerate": self.degenerate,
            "converged": self.converged,
            "endpoint": self.endpoint,
            "n1": self.n1,
            "n2": self.n2,
        }


def _hull_failure() -> ELSolution:
    return ELSolution(math.nan, np.empty(0), math.inf, False, False, 0)


def _split(lo: float, hi: float) -> float:
    """Bisection point; geometric when the bracket spans orders of magnitude."""
    if lo > 0 and hi > 16 * lo:
        return math.sqrt(lo) * math.sqrt(hi)
    if hi < 0 and lo < 16 * hi:
        return -math.sqrt(-lo) * math.sqrt(-hi)
    return 0.5 * (lo + hi)


def solve_lambda(g) -> ELSolution:
    """Solve ``(1/m) sum g/(1 + lam g) = 0`` by safeguarded Newton.

    A Newton step is taken only if it stays inside the current sign-change
    bracket and at least halves the previous step; otherwise the bracket is
    bisected.

    Work is done on ``g / max|g|`` so the iteration does not depend on the
    units of ``g``; the returned ``lam`` and residual are in the units of `g`.
    """
    g = np.asarray(g, dtype=float).ravel()
    m = g.size
    if m == 0:
        raise ValueError("empty constraint vector")
    if not np.all(np.isfinite(g)):
        raise ValueError("constraint values must be finite")
    scale = float(np.max(np.abs(g)))
    if scale == 0.0:
        return ELSolution(0.0, np.full(m, 1.0 / m), 0.0, True, True, 0, degenerate=True)
    gmin, gmax = g.min(), g.max()
    if not (gmin < 0.0 < gmax):
        return _hull_failure()

    h = g / scale
    lo, hi = -1.0 / h.max(), -1.0 / h.min()

    # residual target is in the units of g
    tol = RESIDUAL_TOL / max(1.0, scale)
    mu = 0.0
    dx_old = hi - lo
    converged = False
    it = 0
    while it < MAX_ITER:
        it += 1
        d = 1.0 + mu * h
        r = h / d
        f = r.mean()
        fp = -(r * r).mean()
        # sum of weights is 1 - mu * f, so both must be small
        if abs(f) < tol and abs(mu * f) < WEIGHT_TOL:
            converged = True
            # one more Newton step squeezes lam to full precision
            step = mu - f / fp
            if lo < step < hi:
                mu = step
            break
        if f > 0:
            lo = mu
        else:
            hi = mu
        step = mu - f / fp
        if lo < step < hi and abs(step - mu) < 0.5 * dx_old:
            dx_old = abs(step - mu)
            mu = step
        else:
            new = _split(lo, hi)
            dx_old = abs(new - mu)
            mu = new
        if hi - lo <= 4 * np.finfo(float).eps * max(1.0, abs(mu)):
            # bracket collapsed: root is pinned to machine precision
            converged = True
            break

    d = 1.0 + mu * h
    residual = float((h / d).mean()) * scale
    weights = 1.0 / (m * d)
    log_lr = max(0.0, 2.0 * float(np.sum(np.log1p(mu * h))))
    return ELSolution(mu / scale, weights, log_lr, converged, True, it, residual=residual)


def adjustment_level(n: int) -> float:
    """``a_n = max(1, log(n)/2)`` (natural log)."""
    return max(1.0, math.log(n) / 2.0)


def _values(pv) -> np.ndarray:
    return pv.values if isinstance(pv, PseudoValueSet) else np.asarray(pv, dtype=float)


def jel_solution(pv: PseudoValueSet) -> ELSolution:
    return solve_lambda(_values(pv))


def jel_statistic(pv: PseudoValueSet) -> float:
    """JEL statistic under ``theta = 0``; ``inf`` when the hull condition fails."""
    return jel_solution(pv).log_lr


def ajel_solution(pv: PseudoValueSet) -> ELSolution:
    g = _values(pv)
    n = g.size
    gbar = float(g.mean())
    if gbar == 0.0:
        m = n + 1
        return ELSolution(0.0, np.full(m, 1.0 / m), 0.0, True, True, 0,
                          degenerate=bool(np.all(g == 0.0)))
    augmented = np.append(g, -adjustment_level(n) * gbar)
    return solve_lambda(augmented)


def ajel_statistic(pv: PseudoValueSet) -> float:
    """Adjusted JEL statistic; finite for any pseudo-value set."""
    return ajel_solution(pv).log_lr


def chi2_1_p_value(statistic: float) -> float:
    """Upper tail of the chi-square(1) law, ``erfc(sqrt(x/2))``."""
    x = float(statistic)
    if math.isnan(x) or x < 0:
        raise ValueError("statistic must be nonnegative")
    if math.isinf(x):
        return 0.0
    return math.erfc(math.sqrt(x / 2.0))


def result_from_solution(sol: ELSolution, method: str, t: float, alpha: float,
                         n1: int, n2: int) -> TestResult:
    p = chi2_1_p_value(sol.log_lr)
    return TestResult(method, t, sol.log_lr, p, p < alpha, alpha, sol.hull_ok,
                      n1, n2, sol.degenerate, sol.converged or not sol.hull_ok)


def run_test(s: TwoSamples, t: float, method: str = "JEL", alpha: float = 0.05,
             quantile_mode: str = "per_sample",
             thresholds: tuple[float, float] | None = None) -> TestResult:
    """Test ``H0: eta_x(t) = eta_y(t)`` with JEL or AJEL.

    Parameters
    ----------
    s : TwoSamples
    t : float
    method : {'JEL', 'AJEL'}
    alpha : float
        Level for the reject flag; ``reject`` is ``p_value < alpha``.
    quantile_mode : {'per_sample', 'pooled'}
    thresholds : (float, float), optional
        Fixed truncation points, overriding `quantile_mode`.

    Returns
    -------
    TestResult
        A JEL hull failure reports ``statistic = inf``, ``p_value = 0`` and
        ``hull_ok = False``.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0,1)")
    method = method.upper()
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if not isinstance(s, TwoSamples):
        s = TwoSamples(*s)
    pv = jackknife_pseudo_values(s, t, quantile_mode, thresholds)
    sol = jel_solution(pv) if method == "JEL" else ajel_solution(pv)
    return result_from_solution(sol, method, float(t), alpha, s.n1, s.n2)
