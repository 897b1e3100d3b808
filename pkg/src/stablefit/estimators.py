"""Parameter estimation: quantile, log-moment, characteristic-function
(two-point and regression), and maximum-likelihood methods, plus the
t location-scale fit.

All estimators return an :class:`EstimationResult` whose ``params`` always
validate; known method restrictions surface as typed errors or recorded
warnings, never as silent wrong answers.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from . import mcculloch
from .density import PHI0, PHI1, TLocationScaleParams, _fft_grid, _tail_coefficient
from .errors import (
    DegenerateSample,
    EcfDegenerate,
    InitializationFailed,
    InsufficientRegressionPoints,
    LogOfZero,
    MleAlphaRestriction,
    SampleTooSmall,
)
from .params import ALPHA_ONE_EPS, StableParams, is_alpha_one


class Method(str, enum.Enum):
    QUANTILE = "quantile"
    LOG_MOMENTS = "logmoments"
    ECF = "ecf"
    ECF_REGRESSION = "ecf-reg"
    MLE = "mle"


@dataclass(frozen=True)
class Diagnostics:
    converged: bool = True
    iterations: int = 0
    objective: float | None = None
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class EstimationResult:
    params: StableParams
    method: Method
    diagnostics: Diagnostics = field(default_factory=Diagnostics)


def _as_sample(sample) -> np.ndarray:
    x = np.asarray(sample, dtype=float).ravel()
    if not np.isfinite(x).all():
        raise ValueError("sample contains non-finite values")
    return x


# ---------------------------------------------------------------------------
# quantile (McCulloch) method
# ---------------------------------------------------------------------------

_QUANTILE_PROBS = (0.05, 0.25, 0.5, 0.75, 0.95)


@dataclass(frozen=True)
class QuantileStats:
    """The two spread statistics driving the table lookup."""

    v_alpha: float
    v_beta: float


def _five_quantiles(sample: np.ndarray) -> np.ndarray:
    return np.quantile(sample, _QUANTILE_PROBS, method="linear")


def quantile_stats(sample) -> QuantileStats:
    """Spread statistics from type-7 (linear order-statistic) quantiles."""
    x = _as_sample(sample)
    if x.size < 20:
        raise SampleTooSmall(f"need at least 20 observations, got {x.size}")
    q05, q25, q50, q75, q95 = _five_quantiles(x)
    if q75 - q25 <= 0.0:
        raise DegenerateSample("interquartile range is zero")
    return QuantileStats(v_alpha=(q95 - q05) / (q75 - q25),
                         v_beta=(q95 + q05 - 2.0 * q50) / (q95 - q05))


def estimate_from_quantiles(q05: float, q25: float, q50: float,
                            q75: float, q95: float) -> EstimationResult:
    """Quantile-method estimate from five externally supplied quantiles.

    This is the noiseless entry point: feeding exact distribution quantiles
    recovers the generating parameters up to table-interpolation error.
    """
    if q75 - q25 <= 0.0:
        raise DegenerateSample("interquartile range is zero")
    v_alpha = (q95 - q05) / (q75 - q25)
    v_beta = (q95 + q05 - 2.0 * q50) / (q95 - q05)
    warnings = []
    alpha, beta, clamped = mcculloch.lookup_alpha_beta(v_alpha, v_beta)
    if clamped:
        warnings.append("quantile statistics outside the tabulated range; "
                        "estimate clamped to the table boundary")
    theta3, c3 = mcculloch.lookup_scale(alpha, beta)
    nu = (q75 - q25) / theta3
    theta5, c5 = mcculloch.lookup_zeta(alpha, beta)
    if c3 or c5:
        warnings.append("scale/location lookup clamped to the table boundary")
    zeta = q50 + nu * theta5
    if is_alpha_one(alpha):
        mu = zeta
    else:
        # invert zeta = mu + beta nu tan(pi alpha / 2)
        mu = zeta - beta * nu * math.tan(math.pi * alpha / 2.0)
    return EstimationResult(
        params=StableParams(alpha, beta, nu, mu),
        method=Method.QUANTILE,
        diagnostics=Diagnostics(converged=True, warnings=tuple(warnings)))


def estimate_quantile(sample) -> EstimationResult:
    """McCulloch's quantile method on a data sample."""
    x = _as_sample(sample)
    if x.size < 20:
        raise SampleTooSmall(f"need at least 20 observations, got {x.size}")
    q = _five_quantiles(x)
    return estimate_from_quantiles(*q)


# ---------------------------------------------------------------------------
# empirical characteristic function methods
# ---------------------------------------------------------------------------

def ecf_empirical(sample, u):
    """(1/N) sum_j exp(i u s_j); modulus never exceeds 1."""
    x = _as_sample(sample)
    if x.size == 0:
        raise SampleTooSmall("empty sample")
    u_arr = np.atleast_1d(np.asarray(u, dtype=float))
    out = np.exp(1j * u_arr[:, None] * x[None, :]).mean(axis=1)
    return complex(out[0]) if np.ndim(u) == 0 else out


@dataclass(frozen=True)
class EcfConfig:
    """Evaluation points of the CF methods (applied after IQR pre-scaling).

    (u1, u2) feed the two-point modulus system for (alpha, nu); (u3, u4) feed
    the phase system for (beta, mu).  The regression variant uses the grids
    u_k = pi k / 25 (k = 1..m_points) and u_l = pi l / 50 (l = 1..q_points).
    """

    u1: float = 0.5
    u2: float = 2.0
    u3: float = 0.5
    u4: float = 1.5
    m_points: int = 10
    q_points: int = 10

    def __post_init__(self):
        if min(self.u1, self.u2, self.u3, self.u4) <= 0.0:
            raise ValueError("evaluation points must be positive")
        if self.u1 == self.u2 or self.u3 == self.u4:
            raise ValueError("u1 != u2 and u3 != u4 required")


_ECF_MOD_EPS = 1e-12


def _check_modulus(mod: np.ndarray):
    if (mod >= 1.0 - _ECF_MOD_EPS).any() or (mod <= _ECF_MOD_EPS).any():
        raise EcfDegenerate(
            "empirical CF modulus too close to 0 or 1 at an evaluation point")


def _unwrapped_phase(cf_values: np.ndarray) -> np.ndarray:
    """Continuity-unwrapped arctan(Im/Re) along an increasing u-grid from 0."""
    ang = np.angle(cf_values)
    return np.unwrap(np.concatenate([[0.0], ang]))[1:]


def _phase_at(cf_fn, us: tuple[float, ...]) -> np.ndarray:
    """Unwrapped phase at the requested points, tracked on a refining grid."""
    u_max = max(us)
    grid = np.unique(np.concatenate([np.linspace(u_max / 24.0, u_max, 24), us]))
    ph = _unwrapped_phase(cf_fn(grid))
    idx = np.searchsorted(grid, us)
    return ph[idx]


def _two_point_fit(cf_fn, cfg: EcfConfig):
    """Solve the two-point modulus and phase systems against ``cf_fn``.

    Returns (alpha, beta, nu, mu, warnings); cf_fn maps a u-array to CF values.
    """
    warnings: list[str] = []
    u1, u2, u3, u4 = cfg.u1, cfg.u2, cfg.u3, cfg.u4
    mod = np.abs(cf_fn(np.array([u1, u2])))
    _check_modulus(mod)
    y1, y2 = np.log(-np.log(mod))
    alpha = (y1 - y2) / math.log(u1 / u2)
    if alpha > 2.0 or alpha < 0.1:
        warnings.append(f"raw alpha estimate {alpha:.3f} outside (0.1, 2] "
                        "clamped per the method restriction")
        alpha = min(max(alpha, 0.05), 2.0)
    # the modulus system gives log(nu^alpha); divide by alpha for the scale
    log_nu = (math.log(u1) * y2 - math.log(u2) * y1) / math.log(u1 / u2) / alpha
    nu = math.exp(log_nu)

    if abs(alpha - 1.0) < 0.01:
        warnings.append("alpha within 0.01 of 1: phase system ill-conditioned; "
                        "beta/mu taken from the regression fallback")
        beta, mu = _phase_regression(cf_fn, cfg, alpha, nu, warnings)
        return alpha, beta, nu, mu, warnings

    mod34 = np.abs(cf_fn(np.array([u3, u4])))
    _check_modulus(mod34)
    y3, y4 = _phase_at(cf_fn, (u3, u4))
    tan_a = math.tan(math.pi * alpha / 2.0)
    mu = (u4 ** alpha * y3 - u3 ** alpha * y4) / (u3 * u4 ** alpha - u4 * u3 ** alpha)
    beta = ((u4 * y3 - u3 * y4)
            / (nu ** alpha * tan_a * (u4 * u3 ** alpha - u3 * u4 ** alpha)))
    if not -1.0 <= beta <= 1.0:
        warnings.append(f"beta estimate {beta:.3f} clamped to [-1, 1]")
        beta = min(max(beta, -1.0), 1.0)
    return alpha, beta, nu, mu, warnings


def _phase_regression(cf_fn, cfg: EcfConfig, alpha: float, nu: float,
                      warnings: list[str]):
    """Least squares of the unwrapped phase on the (mu, beta) design."""
    q = cfg.q_points
    if q < 2:
        raise InsufficientRegressionPoints("phase regression needs >= 2 points")
    ul = math.pi * np.arange(1, q + 1) / 50.0
    vals = cf_fn(ul)
    _check_modulus(np.abs(vals))
    z = _unwrapped_phase(vals)
    if is_alpha_one(alpha):
        skew_col = -nu * ul * (2.0 / math.pi) * np.log(ul)
    else:
        skew_col = nu ** alpha * ul ** alpha * math.tan(math.pi * alpha / 2.0)
    design = np.column_stack([ul, skew_col])
    (mu, beta), *_ = np.linalg.lstsq(design, z, rcond=None)
    if not -1.0 <= beta <= 1.0:
        warnings.append(f"beta estimate {beta:.3f} clamped to [-1, 1]")
        beta = min(max(beta, -1.0), 1.0)
    return float(beta), float(mu)


def _iqr_scale(x: np.ndarray) -> float:
    q25, q75 = np.quantile(x, [0.25, 0.75])
    s = q75 - q25
    if s <= 0.0:
        raise DegenerateSample("interquartile range is zero")
    return float(s)


def estimate_ecf(sample, cfg: EcfConfig | None = None) -> EstimationResult:
    """Two-point characteristic-function method.

    The sample is pre-scaled by its interquartile range so the fixed
    evaluation points stay informative; estimates map back by affine
    equivariance.
    """
    x = _as_sample(sample)
    if x.size < 100:
        raise SampleTooSmall(f"need at least 100 observations, got {x.size}")
    cfg = cfg or EcfConfig()
    s = _iqr_scale(x)
    xs = x / s
    cf_fn = lambda u: ecf_empirical(xs, u)
    alpha, beta, nu, mu, warnings = _two_point_fit(cf_fn, cfg)
    return EstimationResult(
        params=StableParams(alpha, beta, nu * s, mu * s),
        method=Method.ECF,
        diagnostics=Diagnostics(converged=True, warnings=tuple(warnings)))


def estimate_ecf_from_cf(cf_fn, cfg: EcfConfig | None = None) -> EstimationResult:
    """Two-point method against an exact CF callable (no pre-scaling)."""
    cfg = cfg or EcfConfig()
    alpha, beta, nu, mu, warnings = _two_point_fit(cf_fn, cfg)
    return EstimationResult(
        params=StableParams(alpha, beta, nu, mu),
        method=Method.ECF,
        diagnostics=Diagnostics(converged=True, warnings=tuple(warnings)))


def _regression_fit(cf_fn, cfg: EcfConfig):
    warnings: list[str] = []
    m = cfg.m_points
    if m < 2:
        raise InsufficientRegressionPoints(
            f"slope regression needs >= 2 points, got {m}")
    uk = math.pi * np.arange(1, m + 1) / 25.0
    mod = np.abs(cf_fn(uk))
    _check_modulus(mod)
    yk = np.log(-np.log(mod ** 2))
    xk = np.log(uk)
    slope, intercept = np.polyfit(xk, yk, 1)
    alpha = float(slope)
    if alpha > 2.0 or alpha < 0.1:
        warnings.append(f"raw alpha estimate {alpha:.3f} outside (0.1, 2] "
                        "clamped per the method restriction")
        alpha = min(max(alpha, 0.05), 2.0)
    # intercept = log(2 nu^alpha)
    nu = (math.exp(float(intercept)) / 2.0) ** (1.0 / alpha)
    beta, mu = _phase_regression(cf_fn, cfg, alpha, nu, warnings)
    return alpha, beta, nu, mu, warnings


def estimate_ecf_regression(sample, cfg: EcfConfig | None = None) -> EstimationResult:
    """Log-log regression of the CF modulus plus phase regression."""
    x = _as_sample(sample)
    if x.size < 100:
        raise SampleTooSmall(f"need at least 100 observations, got {x.size}")
    cfg = cfg or EcfConfig()
    s = _iqr_scale(x)
    xs = x / s
    cf_fn = lambda u: ecf_empirical(xs, u)
    alpha, beta, nu, mu, warnings = _regression_fit(cf_fn, cfg)
    return EstimationResult(
        params=StableParams(alpha, beta, nu * s, mu * s),
        method=Method.ECF_REGRESSION,
        diagnostics=Diagnostics(converged=True, warnings=tuple(warnings)))


def estimate_ecf_regression_from_cf(cf_fn, cfg: EcfConfig | None = None) -> EstimationResult:
    """Regression method against an exact CF callable (no pre-scaling)."""
    cfg = cfg or EcfConfig()
    alpha, beta, nu, mu, warnings = _regression_fit(cf_fn, cfg)
    return EstimationResult(
        params=StableParams(alpha, beta, nu, mu),
        method=Method.ECF_REGRESSION,
        diagnostics=Diagnostics(converged=True, warnings=tuple(warnings)))


# ---------------------------------------------------------------------------
# centro-symmetrization and the log-moments method
# ---------------------------------------------------------------------------

def symmetrize(sample) -> np.ndarray:
    """Pair differences x[2k+1] - x[2k]; output is symmetric with zero location."""
    x = _as_sample(sample)
    if x.size < 2:
        raise SampleTooSmall("symmetrize needs at least 2 observations")
    n = x.size - x.size % 2
    return x[1:n:2] - x[0:n:2]


def center(sample) -> np.ndarray:
    """Triple combinations x[3k+2] + x[3k+1] - 2 x[3k]; location cancels."""
    x = _as_sample(sample)
    if x.size < 3:
        raise SampleTooSmall("center needs at least 3 observations")
    n = x.size - x.size % 3
    return x[2:n:3] + x[1:n:3] - 2.0 * x[0:n:3]


def deskew(sample, alpha: float | None = None) -> np.ndarray:
    """Triple combinations x[3k+2] + x[3k+1] - 2^{1/alpha} x[3k]; skew cancels.

    When ``alpha`` is omitted a provisional estimate is taken from the
    symmetrized data's second log moment.
    """
    x = _as_sample(sample)
    if x.size < 3:
        raise SampleTooSmall("deskew needs at least 3 observations")
    if alpha is None:
        alpha = _alpha_from_m2(_log_abs(symmetrize(x), x.size))
    n = x.size - x.size % 3
    return x[2:n:3] + x[1:n:3] - 2.0 ** (1.0 / alpha) * x[0:n:3]


def _log_abs(seq: np.ndarray, orig_n: int) -> np.ndarray:
    """log|values| with exact zeros dropped; more than 0.1% zeros is an error."""
    zeros = seq == 0.0
    n_zero = int(zeros.sum())
    if n_zero > max(1, 0.001 * orig_n):
        raise LogOfZero(
            f"{n_zero} exact zeros in a derived sequence of {seq.size}")
    return np.log(np.abs(seq[~zeros]))


def _alpha_from_m2(logs: np.ndarray) -> float:
    m2 = float(np.var(logs))
    alpha = (max(m2 / PHI1 - 0.5, 1e-6)) ** -0.5
    return min(alpha, 2.0)


def estimate_logmoments(sample) -> EstimationResult:
    """Log-moment method on centro-symmetrized sequences.

    The method is exact only for beta = mu = 0 data; on skewed input the
    sign comes from the sample's max/median/min geometry and the magnitude
    from the centered sequence's second log moment.
    """
    x = _as_sample(sample)
    if x.size < 300:
        raise SampleTooSmall(f"need at least 300 observations, got {x.size}")
    warnings: list[str] = []

    log_sym = _log_abs(symmetrize(x), x.size)
    alpha = _alpha_from_m2(log_sym)
    if alpha >= 2.0:
        warnings.append("second log moment at the Gaussian boundary; alpha capped at 2")

    log_cen = _log_abs(center(x), x.size)
    m2_cen = float(np.var(log_cen))
    theta_sq = (PHI1 / 2.0 - m2_cen) * alpha ** 2 + PHI1
    if theta_sq <= 0.0:
        # skew signal below the sampling noise floor; keep a positive sliver
        # so the max/median/min sign rule still orients the estimate
        warnings.append("skew angle indistinguishable from zero")
        theta_sq = 1e-12
    theta = min(math.sqrt(theta_sq), math.pi / 2.0 * 0.999999)

    if is_alpha_one(alpha):
        beta0 = 0.0
        warnings.append("alpha estimate at 1: skewness magnitude unavailable")
    else:
        beta0 = math.tan(theta) / math.tan(math.pi * alpha / 2.0)
    # undo the centering attenuation; the printed factor is negative above
    # alpha = 1, so only its magnitude applies to |beta|
    if is_alpha_one(alpha):
        correction = 1.0
    else:
        correction = abs((2.0 + 2.0 ** alpha) / (2.0 - 2.0 ** alpha))
    beta_mag = abs(beta0) * correction
    if beta_mag > 1.0:
        warnings.append(f"skewness magnitude {beta_mag:.3f} clamped to 1")
        beta_mag = 1.0
    q_min, q_med, q_max = np.min(x), np.median(x), np.max(x)
    sign = math.copysign(1.0, abs(q_max - q_med) - abs(q_min - q_med))
    beta = sign * beta_mag

    m1_cen = float(np.mean(log_cen))
    nu0 = abs(math.cos(theta)) * math.exp((m1_cen - PHI0) * alpha + PHI0)
    denom = 2.0 - 2.0 ** (1.0 / alpha)
    if abs(denom) < 1e-6:
        warnings.append("alpha near 1 makes the scale/location correction blow up")
        denom = math.copysign(1e-6, denom if denom != 0 else 1.0)
    nu = max(nu0 / abs(denom), 1e-300)

    deskewed = deskew(x, alpha)
    mu = float(np.median(deskewed)) / denom

    return EstimationResult(
        params=StableParams(alpha, beta, nu, mu),
        method=Method.LOG_MOMENTS,
        diagnostics=Diagnostics(converged=True, warnings=tuple(warnings)))


# ---------------------------------------------------------------------------
# maximum likelihood
# ---------------------------------------------------------------------------

_MLE_ALPHA_MIN = 0.4
_MLE_GRID_HALF = 26.0
_MLE_TAIL_SWITCH = 25.0
_MLE_GRID_N = 1 << 13


def _sigmoid(t: float) -> float:
    if t >= 0:
        return 1.0 / (1.0 + math.exp(-t))
    e = math.exp(t)
    return e / (1.0 + e)


def _logit(p: float) -> float:
    p = min(max(p, 1e-12), 1.0 - 1e-12)
    return math.log(p / (1.0 - p))


def _cubic_interp(values: np.ndarray, lo: float, dx: float, z: np.ndarray) -> np.ndarray:
    """Catmull-Rom cubic interpolation on a uniform grid."""
    pos = (z - lo) / dx
    idx = np.clip(np.floor(pos).astype(int), 1, values.size - 3)
    t = pos - idx
    vm1, v0, v1, v2 = (values[idx - 1], values[idx], values[idx + 1], values[idx + 2])
    t2, t3 = t * t, t * t * t
    return (vm1 * (-0.5 * t3 + t2 - 0.5 * t)
            + v0 * (1.5 * t3 - 2.5 * t2 + 1.0)
            + v1 * (-1.5 * t3 + 2.0 * t2 + 0.5 * t)
            + v2 * (0.5 * t3 - 0.5 * t2))


def _std_log_density(alpha: float, beta: float, z: np.ndarray) -> np.ndarray:
    """log density of S(alpha, beta, 1, 0) at z: FFT grid body + matched tails."""
    params = StableParams(alpha, beta, 1.0, 0.0)
    x, d, _ = _fft_grid(params, -_MLE_GRID_HALF, _MLE_GRID_HALF, _MLE_GRID_N)
    dx = x[1] - x[0]
    body = np.abs(z) <= _MLE_TAIL_SWITCH
    dens = np.empty_like(z)
    dens[body] = _cubic_interp(d, float(x[0]), float(dx), z[body])
    if (~body).any():
        zt = z[~body]
        edge_hi = float(_cubic_interp(d, float(x[0]), float(dx),
                                      np.array([_MLE_TAIL_SWITCH]))[0])
        edge_lo = float(_cubic_interp(d, float(x[0]), float(dx),
                                      np.array([-_MLE_TAIL_SWITCH]))[0])
        edge = np.where(zt > 0, edge_hi, edge_lo)
        dens[~body] = edge * (np.abs(zt) / _MLE_TAIL_SWITCH) ** (-alpha - 1.0)
    return np.log(np.clip(dens, 1e-300, None))


def _mle_objective(vec: np.ndarray, x: np.ndarray) -> float:
    alpha = _MLE_ALPHA_MIN + (2.0 - _MLE_ALPHA_MIN) * _sigmoid(vec[0])
    beta = -1.0 + 2.0 * _sigmoid(vec[1])
    nu = math.exp(vec[2])
    mu = vec[3]
    z = (x - mu) / nu
    ll = float(np.sum(_std_log_density(alpha, beta, z))) - x.size * math.log(nu)
    return -ll


def _unpack_mle(vec: np.ndarray) -> tuple[float, float, float, float]:
    return (_MLE_ALPHA_MIN + (2.0 - _MLE_ALPHA_MIN) * _sigmoid(vec[0]),
            -1.0 + 2.0 * _sigmoid(vec[1]),
            math.exp(vec[2]),
            vec[3])


def estimate_mle(sample, init: StableParams | None = None,
                 max_iter: int = 500) -> EstimationResult:
    """Maximize the tabulated-density log likelihood with a Nelder-Mead simplex.

    The density is re-tabulated by FFT for every candidate parameter vector
    and evaluated by cubic interpolation (power-law matched beyond |z| = 25),
    floored at 1e-300.  The search runs over unconstrained coordinates:
    logit for alpha on (0.4, 2], logit for beta on [-1, 1], log for nu.
    """
    x = _as_sample(sample)
    if x.size < 100:
        raise SampleTooSmall(f"need at least 100 observations, got {x.size}")
    if init is None:
        try:
            init = estimate_quantile(x).params
        except Exception as err:
            raise InitializationFailed(
                f"quantile initialization failed: {err}") from err
    if max_iter == 0:
        return EstimationResult(params=init, method=Method.MLE,
                                diagnostics=Diagnostics(converged=False,
                                                        iterations=0))
    # scale conditioning: optimize on IQR-rescaled, median-shifted data
    shift = float(np.median(x))
    scale = _iqr_scale(x)
    xs = (x - shift) / scale
    a0 = min(max(init.alpha, _MLE_ALPHA_MIN + 0.02), 1.995)
    b0 = min(max(init.beta, -0.995), 0.995)
    vec0 = np.array([
        _logit((a0 - _MLE_ALPHA_MIN) / (2.0 - _MLE_ALPHA_MIN)),
        _logit((b0 + 1.0) / 2.0),
        math.log(max(init.nu / scale, 1e-12)),
        (init.mu - shift) / scale,
    ])
    f0 = _mle_objective(vec0, xs)
    res = optimize.minimize(
        _mle_objective, vec0, args=(xs,), method="Nelder-Mead",
        options={"maxiter": max_iter, "fatol": 1e-8 * (1.0 + abs(f0)),
                 "xatol": 1e-6, "disp": False})
    alpha, beta, nu, mu = _unpack_mle(res.x)
    if alpha <= _MLE_ALPHA_MIN + 5e-3:
        raise MleAlphaRestriction(
            f"optimizer pinned alpha at the {_MLE_ALPHA_MIN} lower bound")
    beta = min(max(beta, -1.0), 1.0)
    return EstimationResult(
        params=StableParams(alpha, beta, nu * scale, mu * scale + shift),
        method=Method.MLE,
        diagnostics=Diagnostics(converged=bool(res.success),
                                iterations=int(res.nit),
                                objective=float(-res.fun)))


# ---------------------------------------------------------------------------
# t location-scale fit
# ---------------------------------------------------------------------------

def fit_tls(sample, max_iter: int = 500) -> TLocationScaleParams:
    """Maximum-likelihood t location-scale fit via the same simplex machinery."""
    from .density import tls_log_pdf

    x = _as_sample(sample)
    if x.size < 100:
        raise SampleTooSmall(f"need at least 100 observations, got {x.size}")
    iqr = _iqr_scale(x)

    def objective(vec):
        p = TLocationScaleParams(mu=vec[0], nu=math.exp(vec[1]),
                                 alpha_star=math.exp(vec[2]))
        return -float(np.sum(tls_log_pdf(p, x)))

    vec0 = np.array([float(np.median(x)), math.log(iqr / 1.35), math.log(5.0)])
    res = optimize.minimize(objective, vec0, method="Nelder-Mead",
                            options={"maxiter": max_iter, "xatol": 1e-8,
                                     "fatol": 1e-10 * (1 + abs(objective(vec0)))})
    return TLocationScaleParams(mu=float(res.x[0]), nu=math.exp(res.x[1]),
                                alpha_star=math.exp(res.x[2]))


# method registry used by the harness and the CLI
ESTIMATORS = {
    Method.QUANTILE: estimate_quantile,
    Method.LOG_MOMENTS: estimate_logmoments,
    Method.ECF: estimate_ecf,
    Method.ECF_REGRESSION: estimate_ecf_regression,
    Method.MLE: estimate_mle,
}
