"""Command-line interface: price ingestion, fitting, sampling, density dumps,
QQ data, and the benchmark harness.

Subcommands write CSV (tables) or JSON (single fits); every failure exits
nonzero with a machine-readable ``{"error": code, "message": ...}`` line on
stderr.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .density import (
    TLocationScaleParams,
    pdf_closed,
    pdf_fft,
    pdf_integral,
    pdf_zolotarev,
    quantile as model_quantile,
)
from .errors import (
    ColumnNotFound,
    InputFileNotFound,
    NotClosedForm,
    StableError,
    TooFewPrices,
)
from .estimators import (
    ESTIMATORS,
    EstimationResult,
    Method,
    estimate_ecf,
    fit_tls,
)
from .harness import BenchScenario, run_sweep, summarize, write_records_csv, write_summary_csv
from .params import StableParams
from .sampling import RngSeed, sample

SIG_DIGITS = 6


def _fmt(x: float) -> str:
    if isinstance(x, float) and (math.isnan(x) or math.isinf(x)):
        return "nan"
    return f"{x:.{SIG_DIGITS}g}"


# ---------------------------------------------------------------------------
# ingestion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReturnSeries:
    """Log-returns with provenance; dropped input rows are counted, not hidden."""

    values: np.ndarray
    source: str
    n_dropped: int


def load_returns(path: str, price_col: str) -> ReturnSeries:
    """r_t = log(p_t / p_{t-1}) over consecutive valid prices.

    Rows whose price is missing, unparseable, or non-positive are skipped
    (the return bridging the gap is still taken) and counted in n_dropped.
    """
    try:
        fh = open(path, newline="")
    except FileNotFoundError as err:
        raise InputFileNotFound(f"no such file: {path}") from err
    with fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or price_col not in reader.fieldnames:
            raise ColumnNotFound(
                f"column {price_col!r} not in header {reader.fieldnames}")
        prices = []
        dropped = 0
        for row in reader:
            raw = (row.get(price_col) or "").strip()
            try:
                p = float(raw)
            except ValueError:
                dropped += 1
                continue
            if not math.isfinite(p) or p <= 0.0:
                dropped += 1
                continue
            prices.append(p)
    if len(prices) < 21:
        raise TooFewPrices(
            f"need at least 21 valid prices, got {len(prices)}")
    arr = np.asarray(prices)
    values = np.log(arr[1:] / arr[:-1])
    return ReturnSeries(values=values, source=f"{path}:{price_col}",
                        n_dropped=dropped)


# ---------------------------------------------------------------------------
# fit report
# ---------------------------------------------------------------------------

STABLE_COLUMNS = ("instrument", "method", "alpha", "beta", "nu", "mu")
TLS_COLUMNS = ("instrument", "method", "mu", "nu", "alpha_star")


@dataclass(frozen=True)
class FitReport:
    instrument: str
    stable_rows: tuple[tuple[str, EstimationResult | StableError], ...]
    tls_row: TLocationScaleParams | StableError | None
    n_dropped: int

    def stable_table(self) -> list[list[str]]:
        rows = [list(STABLE_COLUMNS)]
        for name, res in self.stable_rows:
            if isinstance(res, StableError):
                rows.append([self.instrument, name, "nan", "nan", "nan", "nan"])
            else:
                p = res.params
                rows.append([self.instrument, name, _fmt(p.alpha), _fmt(p.beta),
                             _fmt(p.nu), _fmt(p.mu)])
        return rows

    def tls_table(self) -> list[list[str]]:
        rows = [list(TLS_COLUMNS)]
        if self.tls_row is None:
            return rows
        if isinstance(self.tls_row, StableError):
            rows.append([self.instrument, "tls", "nan", "nan", "nan"])
        else:
            t = self.tls_row
            rows.append([self.instrument, "tls", _fmt(t.mu), _fmt(t.nu),
                         _fmt(t.alpha_star)])
        return rows

    def to_json(self) -> dict:
        doc = {"instrument": self.instrument, "n_dropped": self.n_dropped,
               "stable": {}, "tls": None}
        for name, res in self.stable_rows:
            if isinstance(res, StableError):
                doc["stable"][name] = {"error": res.code, "message": str(res)}
            else:
                p = res.params
                doc["stable"][name] = {
                    "alpha": p.alpha, "beta": p.beta, "nu": p.nu, "mu": p.mu,
                    "converged": res.diagnostics.converged,
                    "iterations": res.diagnostics.iterations,
                    "warnings": list(res.diagnostics.warnings),
                }
        if isinstance(self.tls_row, StableError):
            doc["tls"] = {"error": self.tls_row.code, "message": str(self.tls_row)}
        elif self.tls_row is not None:
            t = self.tls_row
            doc["tls"] = {"mu": t.mu, "nu": t.nu, "alpha_star": t.alpha_star}
        return doc


_METHOD_CHOICES = ("ecf", "ecf-reg", "quantile", "logmoments", "mle", "tls", "all")


def cmd_fit(returns: ReturnSeries, methods: tuple[str, ...],
            instrument: str = "series") -> FitReport:
    """Run the requested estimators; per-method errors become report rows."""
    stable_rows = []
    tls_row = None
    want = set(methods)
    if "all" in want:
        want = {"quantile", "logmoments", "ecf", "ecf-reg", "mle", "tls"}
    order = [m for m in ("quantile", "logmoments", "ecf", "ecf-reg", "mle")
             if m in want]
    for name in order:
        try:
            stable_rows.append((name, ESTIMATORS[Method(name)](returns.values)))
        except StableError as err:
            stable_rows.append((name, err))
    if "tls" in want:
        try:
            tls_row = fit_tls(returns.values)
        except StableError as err:
            tls_row = err
    return FitReport(instrument=instrument, stable_rows=tuple(stable_rows),
                     tls_row=tls_row, n_dropped=returns.n_dropped)


# ---------------------------------------------------------------------------
# subcommand bodies
# ---------------------------------------------------------------------------

def _write_tables(report: FitReport, out):
    w = csv.writer(out)
    for row in report.stable_table():
        w.writerow(row)
    if report.tls_row is not None:
        out.write("\n")
        for row in report.tls_table():
            w.writerow(row)


def _do_fit(args) -> int:
    returns = load_returns(args.csv, args.price_col)
    report = cmd_fit(returns, tuple(args.method),
                     instrument=args.instrument or args.csv)
    if args.json:
        doc = json.dumps(report.to_json(), indent=2)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(doc + "\n")
        else:
            print(doc)
    else:
        if args.out:
            with open(args.out, "w", newline="") as fh:
                _write_tables(report, fh)
        else:
            _write_tables(report, sys.stdout)
    return 0


def _do_sample(args) -> int:
    params = StableParams(args.alpha, args.beta, args.nu, args.mu)
    draws = sample(params, args.n, RngSeed(args.seed))
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["value"])
        for v in draws:
            w.writerow([repr(float(v))])
    return 0


_ROUTES = ("fft", "integral", "zolotarev", "closed", "all")


def _do_density(args) -> int:
    params = StableParams(args.alpha, args.beta, args.nu, args.mu)
    lo, hi = (float(v) for v in args.window.split(","))
    routes = list(_ROUTES[:-1]) if args.route == "all" else [args.route]
    xs = np.linspace(lo, hi, args.points)
    cols: dict[str, np.ndarray] = {}
    if "fft" in routes:
        n = 1 << max(8, int(math.ceil(math.log2(args.points))))
        grid = pdf_fft(params, (lo, hi), max(n, 1 << 12))
        cols["fft"] = grid.evaluate(xs)
    if "integral" in routes:
        cols["integral"] = np.array([pdf_integral(params, s) for s in xs])
    if "zolotarev" in routes:
        cols["zolotarev"] = np.array([pdf_zolotarev(params, s) for s in xs])
    if "closed" in routes:
        try:
            cols["closed"] = np.array([pdf_closed(params, s) for s in xs])
        except NotClosedForm:
            if args.route == "closed":
                raise
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        names = [r for r in _ROUTES[:-1] if r in cols]
        w.writerow(["s"] + names)
        for i, s in enumerate(xs):
            w.writerow([repr(float(s))] + [repr(float(cols[r][i])) for r in names])
    return 0


def _do_qq(args) -> int:
    returns = load_returns(args.csv, args.price_col)
    fitted = estimate_ecf(returns.values).params
    x = np.sort(returns.values)
    probs = (np.arange(x.size) + 0.5) / x.size
    model = model_quantile(fitted, probs)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["probability", "empirical_quantile", "model_quantile"])
        for p, e, m in zip(probs, x, model):
            w.writerow([repr(float(p)), repr(float(e)), repr(float(m))])
    return 0


def _do_bench(args) -> int:
    import os

    with open(args.scenario) as fh:
        doc = json.load(fh)
    scenario = BenchScenario.from_json(doc)
    records = run_sweep(scenario)
    os.makedirs(args.out_dir, exist_ok=True)
    write_records_csv(records, os.path.join(args.out_dir, "records.csv"))
    write_summary_csv(summarize(records), os.path.join(args.out_dir, "summary.csv"))
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="stablefit",
        description="Alpha-stable distribution fitting, sampling, and benchmarks")
    sub = ap.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="estimate parameters from a price CSV")
    fit.add_argument("csv")
    fit.add_argument("--price-col", required=True)
    fit.add_argument("--method", action="append", choices=_METHOD_CHOICES,
                     default=None,
                     help="repeatable; defaults to ecf")
    fit.add_argument("--instrument", default=None)
    fit.add_argument("--json", action="store_true")
    fit.add_argument("--out", default=None)
    fit.set_defaults(fn=_do_fit)

    smp = sub.add_parser("sample", help="draw stable variates to CSV")
    for name, required, default in (("--alpha", True, None), ("--beta", True, None),
                                    ("--nu", True, None), ("--mu", True, None)):
        smp.add_argument(name, type=float, required=required, default=default)
    smp.add_argument("--n", type=int, required=True)
    smp.add_argument("--seed", type=int, default=0)
    smp.add_argument("--out", required=True)
    smp.set_defaults(fn=_do_sample)

    den = sub.add_parser("density", help="tabulate density routes to CSV")
    for name in ("--alpha", "--beta", "--nu", "--mu"):
        den.add_argument(name, type=float, required=True)
    den.add_argument("--route", choices=_ROUTES, default="fft")
    den.add_argument("--window", required=True, help="lo,hi")
    den.add_argument("--points", type=int, default=201)
    den.add_argument("--out", required=True)
    den.set_defaults(fn=_do_density)

    qq = sub.add_parser("qq", help="empirical vs model quantiles")
    qq.add_argument("csv")
    qq.add_argument("--price-col", required=True)
    qq.add_argument("--out", required=True)
    qq.set_defaults(fn=_do_qq)

    ben = sub.add_parser("bench", help="run a benchmark scenario")
    ben.add_argument("--scenario", required=True)
    ben.add_argument("--out-dir", required=True)
    ben.set_defaults(fn=_do_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "method", "missing") is None:
        args.method = ["ecf"]
    try:
        return args.fn(args)
    except StableError as err:
        sys.stderr.write(json.dumps({"error": err.code, "message": str(err)}) + "\n")
        return 1
    except (ValueError, OSError) as err:
        sys.stderr.write(json.dumps({"error": "InvalidInput",
                                     "message": str(err)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
