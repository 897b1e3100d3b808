"""Monte Carlo estimator-comparison harness.

Sweeps simulate data at each grid point, run every requested method on the
same draws, and record per-trial outcomes.  Estimator failures (typed errors,
non-convergence, restriction violations) become failure records rather than
crashes, and wildly divergent estimates are flagged as outliers so summary
statistics stay interpretable.

Trial i always derives its stream from base_seed + i, so record tables are
bit-identical regardless of worker count or execution order (wall-time
columns excepted).
"""
from __future__ import annotations

import enum
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import EmptyRecords, StableError
from .estimators import ESTIMATORS, Method
from .params import StableParams
from .sampling import RngSeed, sample

# estimates further than this from the truth count as failures in summaries
# (the swept parameters both live on ranges of width 2)
OUTLIER_ERROR = 2.0

ENV_THREADS = "STABLE_EST_THREADS"


class Sweep(str, enum.Enum):
    BETA_AT_FIXED_ALPHA = "beta"
    ALPHA_AT_FIXED_BETA = "alpha"
    CONVERGENCE_IN_N = "convergence"


# which parameter a sweep perturbs / measures
_TARGET = {
    Sweep.BETA_AT_FIXED_ALPHA: "beta",
    Sweep.ALPHA_AT_FIXED_BETA: "alpha",
    Sweep.CONVERGENCE_IN_N: "alpha",
}

DEFAULT_CONVERGENCE_SCHEDULE = tuple(range(500, 50_001, 500))


@dataclass(frozen=True)
class BenchScenario:
    true_params: StableParams
    sweep: Sweep
    grid: tuple[float, ...]            # swept values, or the N schedule
    n_per_trial: int = 10_000
    replications: int = 50
    methods: tuple[Method, ...] = (Method.QUANTILE, Method.ECF, Method.MLE)
    base_seed: RngSeed = field(default_factory=lambda: RngSeed(0))

    def __post_init__(self):
        if len(self.grid) == 0:
            raise ValueError("grid must be non-empty")
        if self.replications < 1:
            raise ValueError("replications must be >= 1")

    @classmethod
    def from_json(cls, doc: dict) -> "BenchScenario":
        params = StableParams(doc["alpha"], doc["beta"], doc["nu"], doc["mu"])
        sweep = Sweep(doc["sweep"])
        grid = tuple(doc.get("grid") or
                     (DEFAULT_CONVERGENCE_SCHEDULE
                      if sweep is Sweep.CONVERGENCE_IN_N else ()))
        methods = tuple(Method(m) for m in doc.get(
            "methods", ["quantile", "ecf", "mle"]))
        return cls(true_params=params, sweep=sweep, grid=grid,
                   n_per_trial=int(doc.get("n_per_trial", 10_000)),
                   replications=int(doc.get("replications", 50)),
                   methods=methods,
                   base_seed=RngSeed(int(doc.get("base_seed", 0))))


RECORD_FIELDS = (
    "grid_value", "replication", "method", "n", "seed", "target_param",
    "true_value", "estimate", "abs_error", "failed", "failure_code",
    "outlier", "alpha_hat", "beta_hat", "nu_hat", "mu_hat", "wall_time_s",
)


@dataclass(frozen=True)
class BenchRecord:
    grid_value: float
    replication: int
    method: Method
    n: int
    seed: int
    target_param: str
    true_value: float
    estimate: float          # nan on failure
    abs_error: float         # nan on failure
    failed: bool
    failure_code: str
    outlier: bool
    alpha_hat: float
    beta_hat: float
    nu_hat: float
    mu_hat: float
    wall_time_s: float

    def sort_key(self):
        return (self.grid_value, self.replication, self.method.value)

    def row(self) -> list:
        return [getattr(self, f) if f != "method" else self.method.value
                for f in RECORD_FIELDS]


def _trial_params(scenario: BenchScenario, value: float) -> StableParams:
    p = scenario.true_params
    if scenario.sweep is Sweep.BETA_AT_FIXED_ALPHA:
        return StableParams(p.alpha, value, p.nu, p.mu)
    if scenario.sweep is Sweep.ALPHA_AT_FIXED_BETA:
        return StableParams(value, p.beta, p.nu, p.mu)
    return p


def _measure(method: Method, draws: np.ndarray, params: StableParams,
             target: str, grid_value: float, replication: int,
             seed: int) -> BenchRecord:
    true_value = getattr(params, target)
    t0 = time.perf_counter()
    try:
        result = ESTIMATORS[method](draws)
        fitted = result.params
        elapsed = time.perf_counter() - t0
        est = getattr(fitted, target)
        err = abs(est - true_value)
        return BenchRecord(
            grid_value=grid_value, replication=replication, method=method,
            n=draws.size, seed=seed, target_param=target,
            true_value=true_value, estimate=est, abs_error=err,
            failed=not result.diagnostics.converged,
            failure_code=("NotConverged"
                          if not result.diagnostics.converged else ""),
            outlier=err > OUTLIER_ERROR,
            alpha_hat=fitted.alpha, beta_hat=fitted.beta,
            nu_hat=fitted.nu, mu_hat=fitted.mu,
            wall_time_s=elapsed)
    except StableError as err:
        elapsed = time.perf_counter() - t0
        return BenchRecord(
            grid_value=grid_value, replication=replication, method=method,
            n=draws.size, seed=seed, target_param=target,
            true_value=true_value, estimate=math.nan, abs_error=math.nan,
            failed=True, failure_code=err.code, outlier=False,
            alpha_hat=math.nan, beta_hat=math.nan, nu_hat=math.nan,
            mu_hat=math.nan, wall_time_s=elapsed)


def _sweep_trial(args) -> list[BenchRecord]:
    scenario, trial_index, grid_value, replication = args
    params = _trial_params(scenario, grid_value)
    seed = scenario.base_seed.spawn(trial_index)
    draws = sample(params, scenario.n_per_trial, seed)
    target = _TARGET[scenario.sweep]
    return [_measure(m, draws, params, target, grid_value, replication,
                     seed.seed)
            for m in scenario.methods]


def _convergence_trial(args) -> list[BenchRecord]:
    scenario, trial_index, replication = args
    seed = scenario.base_seed.spawn(trial_index)
    master = sample(scenario.true_params, int(max(scenario.grid)), seed)
    target = _TARGET[Sweep.CONVERGENCE_IN_N]
    out = []
    for n in scenario.grid:
        prefix = master[:int(n)]
        out.extend(_measure(m, prefix, scenario.true_params, target,
                            float(n), replication, seed.seed)
                   for m in scenario.methods)
    return out


def _worker_count() -> int:
    env = os.environ.get(ENV_THREADS)
    if env:
        return max(1, int(env))
    return max(1, min(os.cpu_count() or 1, 8))


def _run_trials(fn, tasks) -> list[BenchRecord]:
    workers = _worker_count()
    records: list[BenchRecord] = []
    if workers == 1 or len(tasks) <= 1:
        for t in tasks:
            records.extend(fn(t))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for batch in pool.map(fn, tasks, chunksize=1):
                records.extend(batch)
    records.sort(key=BenchRecord.sort_key)
    return records


def run_sweep(scenario: BenchScenario) -> list[BenchRecord]:
    """One record per grid point x replication x method; failures are data."""
    if scenario.sweep is Sweep.CONVERGENCE_IN_N:
        return run_convergence(scenario)
    tasks = []
    idx = 0
    for gv in scenario.grid:
        for rep in range(scenario.replications):
            tasks.append((scenario, idx, float(gv), rep))
            idx += 1
    return _run_trials(_sweep_trial, tasks)


def run_convergence(scenario: BenchScenario) -> list[BenchRecord]:
    """Nested-prefix protocol: one master sample per replication, estimated
    on each prefix length of the schedule (larger sets contain smaller ones)."""
    if scenario.sweep is not Sweep.CONVERGENCE_IN_N:
        raise ValueError("scenario.sweep must be CONVERGENCE_IN_N")
    tasks = [(scenario, rep, rep) for rep in range(scenario.replications)]
    return _run_trials(_convergence_trial, tasks)


SUMMARY_FIELDS = ("method", "grid_value", "n_trials", "n_failed", "n_outlier",
                  "failure_rate", "mae", "rmse", "bias")


def summarize(records: list[BenchRecord]) -> list[dict]:
    """Per (method, grid point): MAE, RMSE, bias over clean estimates, and the
    failure channel (failures plus outliers) kept separate."""
    if not records:
        raise EmptyRecords("no records to summarize")
    groups: dict[tuple[str, float], list[BenchRecord]] = {}
    for r in records:
        groups.setdefault((r.method.value, r.grid_value), []).append(r)
    out = []
    for (method, gv) in sorted(groups):
        rs = groups[(method, gv)]
        bad = [r for r in rs if r.failed or r.outlier]
        clean = [r for r in rs if not (r.failed or r.outlier)]
        errs = np.array([r.estimate - r.true_value for r in clean])
        out.append({
            "method": method,
            "grid_value": gv,
            "n_trials": len(rs),
            "n_failed": sum(1 for r in rs if r.failed),
            "n_outlier": sum(1 for r in rs if r.outlier),
            "failure_rate": len(bad) / len(rs),
            "mae": float(np.mean(np.abs(errs))) if clean else math.nan,
            "rmse": float(np.sqrt(np.mean(errs ** 2))) if clean else math.nan,
            "bias": float(np.mean(errs)) if clean else math.nan,
        })
    return out


def write_records_csv(records: list[BenchRecord], path) -> None:
    import csv

    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(RECORD_FIELDS)
        for r in records:
            w.writerow(r.row())


def write_summary_csv(summary: list[dict], path) -> None:
    import csv

    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SUMMARY_FIELDS)
        for row in summary:
            w.writerow([row[f] for f in SUMMARY_FIELDS])
