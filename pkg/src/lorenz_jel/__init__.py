"""Jackknife empirical likelihood tests for equality of two generalized Lorenz curves."""

__version__ = "0.1.0"

from .curves import Sample, TGrid, curve_table, empirical_quantile, gl_ordinate, lorenz_ordinate
from .distributions import DistSpec, SeededStream, analytic_gl, parse_dist, sample
from .el_engine import (ELSolution, TestResult, adjustment_level, ajel_statistic, chi2_1_p_value,
                        jel_statistic, run_test, solve_lambda)
from .ingest import IngestSpec, load_sample, subsample
from .jackknife import (PseudoValueSet, TruncatedPair, TwoSamples, expected_pseudo_value, kernel,
                        pseudo_values, truncate, u_statistic)
from .montecarlo import SimConfig, SimTable, run_simulation, standard_error, table_suite

__all__ = [
    "Sample", "TGrid", "curve_table", "empirical_quantile", "gl_ordinate", "lorenz_ordinate",
    "DistSpec", "SeededStream", "analytic_gl", "parse_dist", "sample",
    "ELSolution", "TestResult", "adjustment_level", "ajel_statistic", "chi2_1_p_value",
    "jel_statistic", "run_test", "solve_lambda",
    "IngestSpec", "load_sample", "subsample",
    "PseudoValueSet", "TruncatedPair", "TwoSamples", "expected_pseudo_value", "kernel",
    "pseudo_values", "truncate", "u_statistic",
    "SimConfig", "SimTable", "run_simulation", "standard_error", "table_suite",
]
