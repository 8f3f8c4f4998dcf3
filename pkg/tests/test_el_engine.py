import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from oracles import bisection_lambda
from lorenz_jel.el_engine import (adjustment_level, ajel_solution, ajel_statistic, chi2_1_p_value,
                                  jel_solution, jel_statistic, run_test, solve_lambda)
from lorenz_jel.jackknife import TwoSamples, jackknife_pseudo_values

# 50-digit bisection on the dual, see tests/oracles.py for the float version
LAM_6 = -0.27640972462684283246
LLR_6 = 1.5411863411329894698
LLR_7_AUG = 0.98180622331308196199
LAM_4 = -0.040765579576319825837
LLR_4 = 0.72093561373701187623
LLR_5_AUG = 0.37817139364057046666


def test_zero_mean_gives_zero_lambda():
    sol = solve_lambda([-1.5, 1.5, 1.5, -1.5])
    assert sol.lam == 0.0 and sol.log_lr == 0.0
    assert sol.weights == pytest.approx([0.25] * 4)


def test_frozen_six_point_solution():
    sol = solve_lambda([-3.5, -1, 1.5, 1.5, -1, -3.5])
    assert sol.converged and sol.hull_ok
    assert sol.lam == pytest.approx(LAM_6, rel=1e-12)
    assert sol.log_lr == pytest.approx(LLR_6, rel=1e-12)


def test_float_bisection_agrees_with_frozen():
    lam, llr = bisection_lambda([-3.5, -1, 1.5, 1.5, -1, -3.5])
    assert lam == pytest.approx(LAM_6, rel=1e-12)
    assert llr == pytest.approx(LLR_6, rel=1e-12)


def test_hull_violation():
    sol = solve_lambda([1, 2, 3])
    assert not sol.hull_ok and math.isinf(sol.log_lr) and math.isnan(sol.lam)
    assert not solve_lambda([0, 0, 2]).hull_ok


def test_all_zero_is_degenerate():
    sol = solve_lambda([0.0, 0.0, 0.0])
    assert sol.degenerate and sol.hull_ok and sol.log_lr == 0 and sol.lam == 0


def test_empty_or_nonfinite():
    with pytest.raises(ValueError):
        solve_lambda([])
    with pytest.raises(ValueError):
        solve_lambda([1.0, -np.inf])


def test_jel_statistic_examples():
    assert jel_statistic(jackknife_pseudo_values(TwoSamples([1, 2], [1, 2]), 1.0)) == 0.0
    pv = jackknife_pseudo_values(TwoSamples([1, 2, 3], [2, 3, 4]), 1.0)
    assert jel_statistic(pv) == pytest.approx(LLR_6, rel=1e-12)


def test_jel_spread_sample_hull():
    # truncated values (1, 0) and (10, 0) give pseudo-values -3, -6, -19.5, 10.5
    pv = jackknife_pseudo_values(TwoSamples([1, 2], [10, 20]), 0.5)
    assert pv.values == pytest.approx([-3, -6, -19.5, 10.5])
    sol = jel_solution(pv)
    assert sol.hull_ok
    assert sol.lam == pytest.approx(LAM_4, rel=1e-12)
    assert sol.log_lr == pytest.approx(LLR_4, rel=1e-12)
    assert ajel_statistic(pv) == pytest.approx(LLR_5_AUG, rel=1e-12)


def test_ajel_examples():
    assert ajel_statistic(jackknife_pseudo_values(TwoSamples([1, 2], [1, 2]), 1.0)) == 0.0
    pv = jackknife_pseudo_values(TwoSamples([1, 2, 3], [2, 3, 4]), 1.0)
    # a_6 = 1, so the appended point is -mean = +1
    assert ajel_statistic(pv) == pytest.approx(LLR_7_AUG, rel=1e-12)
    assert ajel_solution(pv).weights.size == 7


def test_ajel_finite_when_jel_hull_fails():
    g = np.array([1.0, 2.0, 3.0, 0.5])
    assert math.isinf(jel_statistic(g))
    assert math.isfinite(ajel_statistic(g)) and ajel_statistic(g) > 0


def test_adjustment_level():
    assert adjustment_level(50) == pytest.approx(1.9560115027140730293, rel=1e-14)
    assert adjustment_level(4) == 1.0


def test_chi2_p_value():
    assert chi2_1_p_value(0.0) == 1.0
    assert chi2_1_p_value(3.841459) == pytest.approx(0.05, abs=1e-5)
    assert chi2_1_p_value(math.inf) == 0.0
    with pytest.raises(ValueError):
        chi2_1_p_value(-0.1)


def test_chi2_p_value_against_scipy():
    for x in np.concatenate([np.linspace(0, 40, 401), [1e-8, 1e-4, 60.0, 100.0]]):
        assert abs(chi2_1_p_value(x) - stats.chi2.sf(x, 1)) < 1e-12
    q = stats.chi2.isf(0.05, 1)
    assert chi2_1_p_value(q) == pytest.approx(0.05, abs=1e-12)


def test_run_test_identical_samples():
    s = TwoSamples([1.0, 3.0, 2.0, 7.0], [1.0, 3.0, 2.0, 7.0])
    for t in (0.0, 0.3, 0.5, 1.0):
        for m in ("JEL", "AJEL"):
            r = run_test(s, t, m)
            assert r.statistic == 0 and r.p_value == 1 and not r.reject


def test_run_test_decision_matches_oracle():
    r = run_test(TwoSamples([1, 2, 3], [2, 3, 4]), 1.0, "JEL", 0.05)
    assert r.statistic == pytest.approx(LLR_6)
    assert r.reject == (LLR_6 > 3.841459)
    assert r.endpoint


def test_run_test_hull_failure_rejects():
    # every x is below every y; at t=1 all pseudo-values are negative
    s = TwoSamples([1.0, 1.0, 1.0], [5.0, 5.0])
    r = run_test(s, 1.0, "JEL")
    assert not r.hull_ok and math.isinf(r.statistic) and r.p_value == 0 and r.reject
    ra = run_test(s, 1.0, "AJEL")
    assert ra.hull_ok and math.isfinite(ra.statistic)


def test_run_test_bad_args():
    s = TwoSamples([1, 2], [3, 4])
    with pytest.raises(ValueError):
        run_test(s, 0.5, "EL")
    with pytest.raises(ValueError):
        run_test(s, 0.5, alpha=1.0)


# magnitudes below 1e-12 other than exact zero do not arise from pseudo-values
_component = st.one_of(st.just(0.0), st.floats(1e-12, 1e3), st.floats(-1e3, -1e-12))
interior = st.lists(_component, min_size=2, max_size=60).filter(
    lambda g: min(g) < 0 < max(g))


@settings(max_examples=300)
@given(interior)
def test_solver_contract(g):
    g = np.array(g)
    sol = solve_lambda(g)
    assert sol.converged and sol.hull_ok
    d = 1 + sol.lam * g
    assert np.all(d > 0)
    scale = max(1.0, np.abs(g).max())
    assert abs(np.mean(g / d)) < 1e-10 * scale
    assert sol.weights.sum() == pytest.approx(1.0, abs=1e-9)
    assert abs(np.sum(sol.weights * g)) <= 1e-9 * scale
    assert sol.log_lr >= 0


@given(interior, st.floats(0, 1), st.floats(0, 1))
def test_dual_strictly_decreasing(g, u1, u2):
    g = np.array(g)
    lo, hi = -1 / g.max(), -1 / g.min()
    a, b = sorted((lo + (hi - lo) * (0.001 + 0.998 * u1), lo + (hi - lo) * (0.001 + 0.998 * u2)))
    if b - a < 1e-9 * (hi - lo):
        return
    f = lambda lam: np.mean(g / (1 + lam * g))
    assert f(a) > f(b)


@settings(max_examples=100)
@given(st.integers(2, 30), st.integers(2, 30), st.sampled_from([0.2, 0.5, 0.9, 1.0]),
       st.integers(0, 2**31))
def test_statistics_nonnegative_and_permutation_invariant(n1, n2, t, seed):
    rng = np.random.default_rng(seed)
    x, y = rng.exponential(2, n1), rng.exponential(1, n2)
    s = TwoSamples(x, y)
    s_perm = TwoSamples(rng.permutation(x), rng.permutation(y))
    for m in ("JEL", "AJEL"):
        a, b = run_test(s, t, m), run_test(s_perm, t, m)
        assert a.statistic >= 0
        assert a.statistic == pytest.approx(b.statistic, rel=1e-12, abs=1e-14) or (
            math.isinf(a.statistic) and math.isinf(b.statistic))
