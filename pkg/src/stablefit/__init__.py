"""Alpha-stable distributions: densities, sampling, estimation, benchmarking."""

from .density import (
    CdfTable,
    DensityGrid,
    LogMoments,
    TLocationScaleParams,
    build_cdf_table,
    cdf,
    cf_eval,
    flom_abs,
    flom_signed,
    log_moments_theoretical,
    pdf_closed,
    pdf_fft,
    pdf_fft_auto,
    pdf_integral,
    pdf_zolotarev,
    quantile,
    tls_pdf,
    tls_variance,
)
from .estimators import (
    Diagnostics,
    EcfConfig,
    EstimationResult,
    Method,
    QuantileStats,
    center,
    deskew,
    ecf_empirical,
    estimate_ecf,
    estimate_ecf_from_cf,
    estimate_ecf_regression,
    estimate_ecf_regression_from_cf,
    estimate_from_quantiles,
    estimate_logmoments,
    estimate_mle,
    estimate_quantile,
    fit_tls,
    quantile_stats,
    symmetrize,
)
from .harness import (
    BenchRecord,
    BenchScenario,
    Sweep,
    run_convergence,
    run_sweep,
    summarize,
)
from .params import (
    StableParams,
    StandardShift,
    ZolotarevParams,
    from_zolotarev,
    general_shift,
    standardize,
    to_zolotarev,
    validate,
    zeta_shift,
)
from .sampling import RngSeed, WeightedSumParams, sample, sample_standard, weighted_sum_params

__version__ = "0.1.0"

__all__ = [
    "BenchRecord", "BenchScenario", "CdfTable", "DensityGrid", "Diagnostics",
    "EcfConfig", "EstimationResult", "LogMoments", "Method", "QuantileStats",
    "RngSeed", "StableParams", "StandardShift", "Sweep", "TLocationScaleParams",
    "WeightedSumParams", "ZolotarevParams", "build_cdf_table", "cdf", "center",
    "cf_eval", "deskew", "ecf_empirical", "estimate_ecf", "estimate_ecf_from_cf",
    "estimate_ecf_regression", "estimate_ecf_regression_from_cf",
    "estimate_from_quantiles", "estimate_logmoments", "estimate_mle",
    "estimate_quantile", "fit_tls", "flom_abs", "flom_signed", "from_zolotarev",
    "general_shift", "log_moments_theoretical", "pdf_closed", "pdf_fft",
    "pdf_fft_auto", "pdf_integral", "pdf_zolotarev", "quantile",
    "quantile_stats", "run_convergence", "run_sweep", "sample",
    "sample_standard", "standardize", "summarize", "symmetrize", "tls_pdf",
    "tls_variance", "to_zolotarev", "validate", "weighted_sum_params",
    "zeta_shift",
]
