"""
Replicated size and power studies for the JEL and AJEL tests.

Replication ``r`` (1-based) draws both samples from its own stream
``SeededStream(seed, r)``, so a table depends only on ``(config, seed, reps)``
and not on how replications are split across worker processes.
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import distributions as dist
from .distributions import DistSpec, SeededStream
from .el_engine import METHODS, ajel_solution, chi2_1_p_value, jel_solution
from .jackknife import QUANTILE_MODES, TruncatedPair, pseudo_values
from .curves import Sample, empirical_quantile

SIM_QUANTILE_MODES = QUANTILE_MODES + ("true_quantile",)

TABLE_SIZES = ((20, 30), (40, 50), (75, 75), (100, 100))
SIM_T_GRID = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)

# (dist_x, dist_y); exponential parameters are means.
REFERENCE_TABLES = {
    "T1": (DistSpec("chisquare", 4), DistSpec("chisquare", 4)),
    "T2": (DistSpec("exponential", 4), DistSpec("exponential", 4)),
    "T3": (DistSpec("halfnormal", 1), DistSpec("halfnormal", 1)),
    "T4": (DistSpec("chisquare", 4), DistSpec("chisquare", 5.5)),
    "T5": (DistSpec("exponential", 4), DistSpec("exponential", 2)),
    "T6": (DistSpec("halfnormal", 1), DistSpec("halfnormal", 1.5)),
}

CSV_COLUMNS = ("method", "t", "n1", "n2", "rate", "se", "hull_fail_rate")

_REJECT, _HULL_FAIL, _NONCONVERGED = 1, 2, 4


@dataclass(frozen=True)
class SimConfig:
    dist_x: DistSpec
    dist_y: DistSpec
    n1: int
    n2: int
    t_grid: tuple = SIM_T_GRID
    reps: int = 1000
    alpha: float = 0.05
    methods: tuple = METHODS
    seed: int = 0
    quantile_mode: str = "true_quantile"

    def __post_init__(self):
        if self.reps < 1:
            raise ValueError("reps must be at least 1")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0,1)")
        if self.n1 < 2 or self.n2 < 2:
            raise ValueError("sample sizes must be at least 2")
        if self.quantile_mode not in SIM_QUANTILE_MODES:
            raise ValueError(f"unknown quantile mode {self.quantile_mode!r}")
        methods = tuple(m.upper() for m in self.methods)
        if not methods or any(m not in METHODS for m in methods):
            raise ValueError(f"methods must be drawn from {METHODS}")
        grid = tuple(float(t) for t in self.t_grid)
        if not grid or any(not 0.0 <= t <= 1.0 for t in grid):
            raise ValueError("t must lie in [0,1]")
        object.__setattr__(self, "methods", methods)
        object.__setattr__(self, "t_grid", grid)

    def describe(self) -> dict:
        d = asdict(self)
        d["dist_x"] = self.dist_x.label()
        d["dist_y"] = self.dist_y.label()
        d["t_grid"] = list(self.t_grid)
        d["methods"] = list(self.methods)
        return d


@dataclass(frozen=True)
class SimRow:
    method: str
    t: float
    n1: int
    n2: int
    rate: float
    se: float
    hull_fail_rate: float
    nonconverged: int
    reps: int


@dataclass
class SimTable:
    rows: list
    meta: dict = field(default_factory=dict)

    def row(self, method: str, t: float, n1: int | None = None, n2: int | None = None) -> SimRow:
        for r in self.rows:
            if (r.method == method.upper() and math.isclose(r.t, t)
                    and (n1 is None or r.n1 == n1) and (n2 is None or r.n2 == n2)):
                return r
        raise KeyError((method, t, n1, n2))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow([r.method, f"{r.t:g}", r.n1, r.n2,
                        f"{r.rate:.10g}", f"{r.se:.10g}", f"{r.hull_fail_rate:.10g}"])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {"meta": self.meta, "rows": [asdict(r) for r in self.rows]}


def standard_error(rate: float, reps: int) -> float:
    """Binomial standard error ``sqrt(r (1 - r) / reps)``."""
    if reps < 1:
        raise ValueError("reps must be at least 1")
    return math.sqrt(max(rate * (1.0 - rate), 0.0) / reps)


def _thresholds(cfg: SimConfig, x: np.ndarray, y: np.ndarray, t: float, true_psi):
    if cfg.quantile_mode == "true_quantile":
        return true_psi[t]
    if cfg.quantile_mode == "per_sample":
        return empirical_quantile(Sample(x), t), empirical_quantile(Sample(y), t)
    psi = empirical_quantile(Sample(np.concatenate([x, y])), t)
    return psi, psi


def _replicate(cfg: SimConfig, r: int, true_psi) -> np.ndarray:
    rng = SeededStream(cfg.seed, r).generator()
    x = dist.draw(cfg.dist_x, cfg.n1, rng)
    y = dist.draw(cfg.dist_y, cfg.n2, rng)
    out = np.zeros((len(cfg.t_grid), len(cfg.methods)), dtype=np.int8)
    for i, t in enumerate(cfg.t_grid):
        psi_x, psi_y = _thresholds(cfg, x, y, t, true_psi)
        tp = TruncatedPair(np.where(x <= psi_x, x, 0.0), np.where(y <= psi_y, y, 0.0),
                           psi_x, psi_y, t)
        pv = pseudo_values(tp)
        for j, method in enumerate(cfg.methods):
            sol = jel_solution(pv) if method == "JEL" else ajel_solution(pv)
            code = 0
            if chi2_1_p_value(sol.log_lr) < cfg.alpha:
                code |= _REJECT
            if not sol.hull_ok:
                code |= _HULL_FAIL
            elif not sol.converged:
                code |= _NONCONVERGED
            out[i, j] = code
    return out


def _run_chunk(args) -> np.ndarray:
    cfg, start, stop = args
    true_psi = {t: (dist.quantile(cfg.dist_x, t), dist.quantile(cfg.dist_y, t))
                for t in cfg.t_grid}
    return np.stack([_replicate(cfg, r, true_psi) for r in range(start, stop)])


def _chunks(reps: int, workers: int):
    k = max(1, min(workers * 4, reps))
    bounds = np.linspace(1, reps + 1, k + 1).round().astype(int)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def run_simulation(cfg: SimConfig, workers: int = 1) -> SimTable:
    """Estimate rejection rates of each method at each t.

    JEL hull failures are counted as rejections and also reported on their
    own in ``hull_fail_rate``.  Solver non-convergence is counted per row.
    """
    spans = _chunks(cfg.reps, workers)
    jobs = [(cfg, a, b) for a, b in spans]
    if workers <= 1:
        parts = [_run_chunk(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, jobs))
    codes = np.concatenate(parts, axis=0)

    rows = []
    for i, t in enumerate(cfg.t_grid):
        for j, method in enumerate(cfg.methods):
            c = codes[:, i, j]
            rate = float(np.count_nonzero(c & _REJECT)) / cfg.reps
            rows.append(SimRow(
                method=method, t=t, n1=cfg.n1, n2=cfg.n2, rate=rate,
                se=standard_error(rate, cfg.reps),
                hull_fail_rate=float(np.count_nonzero(c & _HULL_FAIL)) / cfg.reps,
                nonconverged=int(np.count_nonzero(c & _NONCONVERGED)),
                reps=cfg.reps,
            ))
    return SimTable(rows, {"configs": [cfg.describe()]})


def table_config(name: str, n1: int, n2: int, reps: int = 1000, seed: int = 0,
                 **kwargs) -> SimConfig:
    try:
        dx, dy = REFERENCE_TABLES[name.upper()]
    except KeyError:
        raise ValueError(f"unknown table {name!r}; expected one of {sorted(REFERENCE_TABLES)}") from None
    return SimConfig(dx, dy, n1, n2, reps=reps, seed=seed, **kwargs)


def table_suite(table: str, reps: int = 1000, seed: int = 0, workers: int = 1,
                sizes=TABLE_SIZES, **kwargs) -> SimTable:
    """Run one of the six reference designs over every size pair."""
    rows, configs = [], []
    for n1, n2 in sizes:
        cfg = table_config(table, n1, n2, reps=reps, seed=seed, **kwargs)
        part = run_simulation(cfg, workers=workers)
        rows.extend(part.rows)
        configs.extend(part.meta["configs"])
    return SimTable(rows, {"table": table.upper(), "configs": configs})
