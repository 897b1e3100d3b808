"""Parameter domain types and parameterization conversions.

The four-parameter family S(alpha, beta, nu, mu) is used throughout:
``alpha`` in (0, 2] (shape), ``beta`` in [-1, 1] (skewness), ``nu > 0``
(scale), ``mu`` (location).  Characteristic-function convention::

    alpha != 1:  E exp(iuS) = exp(-nu^a |u|^a (1 - i b sgn(u) tan(pi a/2)) + i mu u)
    alpha == 1:  E exp(iuS) = exp(-nu |u| (1 + i b sgn(u) (2/pi) log|u|) + i mu u)

All types are immutable values; every function here is pure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import AlphaOutOfRange, BetaOutOfRange, LocationNotFinite, NonPositiveScale

# alpha values within this distance of 1 take the alpha == 1 branch everywhere
# in the package (tan(pi*alpha/2) diverges there).  One shared cut avoids
# cross-module disagreement.
ALPHA_ONE_EPS = 1e-9


def is_alpha_one(alpha: float) -> bool:
    return abs(alpha - 1.0) < ALPHA_ONE_EPS


@dataclass(frozen=True)
class StableParams:
    """Validated parameter quadruple; construction rejects out-of-domain values."""

    alpha: float
    beta: float
    nu: float
    mu: float

    def __post_init__(self):
        a, b, nu, mu = (float(self.alpha), float(self.beta),
                        float(self.nu), float(self.mu))
        if not (math.isfinite(a) and 0.0 < a <= 2.0):
            raise AlphaOutOfRange(f"alpha must be in (0, 2], got {self.alpha!r}")
        if not (math.isfinite(b) and -1.0 <= b <= 1.0):
            raise BetaOutOfRange(f"beta must be in [-1, 1], got {self.beta!r}")
        if not (math.isfinite(nu) and nu > 0.0):
            raise NonPositiveScale(f"nu must be finite and > 0, got {self.nu!r}")
        if not math.isfinite(mu):
            raise LocationNotFinite(f"mu must be finite, got {self.mu!r}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "mu", mu)

    @property
    def alpha_is_one(self) -> bool:
        return is_alpha_one(self.alpha)


def validate(alpha, beta, nu, mu) -> StableParams:
    """Construct a validated StableParams; never clamps, always raises on violation."""
    return StableParams(alpha, beta, nu, mu)


@dataclass(frozen=True)
class StandardShift:
    """Affine pair (a, b) with S(alpha,beta,nu,mu) =d a*S(alpha,beta,1,0) + b."""

    a: float
    b: float


@dataclass(frozen=True)
class ZolotarevParams:
    """Converted (beta2, nu2) skew/scale of the polar characteristic-function form."""

    beta2: float
    nu2: float
    k_alpha: float


def k_of_alpha(alpha: float) -> float:
    """K(alpha) = alpha - 1 + sign(1 - alpha): alpha below 1, alpha - 2 above."""
    if is_alpha_one(alpha):
        # the alpha == 1 conversion branch never uses K; keep the one-sided limit
        return -1.0
    return alpha - 1.0 + math.copysign(1.0, 1.0 - alpha)


def standardize(params: StableParams) -> StandardShift:
    """Affine reduction to the standard law S(alpha, beta, 1, 0).

    For alpha == 1 the rescaling picks up the usual logarithmic location
    correction b = mu + nu*beta*(2/pi)*log(nu).
    """
    if params.alpha_is_one:
        b = params.mu + params.nu * params.beta * (2.0 / math.pi) * math.log(params.nu)
        return StandardShift(a=params.nu, b=b)
    return StandardShift(a=params.nu, b=params.mu)


def general_shift(params: StableParams, other: StableParams) -> StandardShift:
    """Affine pair (a, b) with S(params) =d a * S(other) + b.

    Requires matching (alpha, beta).  Verified by characteristic-function
    algebra: a*X + b with X ~ S(alpha,beta,nu',mu') has scale a*nu' and, for
    alpha == 1, location a*mu' - (2/pi)*a*nu'*beta*log(a) + b.
    """
    if params.alpha != other.alpha or params.beta != other.beta:
        raise ValueError("general_shift requires matching alpha and beta")
    a = params.nu / other.nu
    if params.alpha_is_one:
        b = (params.mu - other.mu * a
             + params.nu * params.beta * (2.0 / math.pi) * math.log(a))
    else:
        b = params.mu - other.mu * a
    return StandardShift(a=a, b=b)


def to_zolotarev(params: StableParams) -> ZolotarevParams:
    """Convert (beta, nu) to the polar-form (beta2, nu2)."""
    a, b, nu = params.alpha, params.beta, params.nu
    if params.alpha_is_one:
        return ZolotarevParams(beta2=b, nu2=(2.0 / math.pi) * nu, k_alpha=k_of_alpha(a))
    k = k_of_alpha(a)
    t = b * math.tan(math.pi * a / 2.0)
    if k == 0.0:
        # alpha == 2: the skew term is vacuous and beta2 -> beta in the limit
        return ZolotarevParams(beta2=b, nu2=nu * (1.0 + t * t) ** 0.25, k_alpha=k)
    beta2 = 2.0 / (math.pi * k) * math.atan(t)
    nu2 = nu * (1.0 + t * t) ** (1.0 / (2.0 * a))
    return ZolotarevParams(beta2=beta2, nu2=nu2, k_alpha=k)


def from_zolotarev(alpha: float, zp: ZolotarevParams) -> tuple[float, float]:
    """Invert :func:`to_zolotarev`; returns (beta, nu)."""
    if is_alpha_one(alpha):
        return zp.beta2, zp.nu2 * math.pi / 2.0
    k = k_of_alpha(alpha)
    if k == 0.0:
        t = zp.beta2 * math.tan(math.pi * alpha / 2.0)
        return zp.beta2, zp.nu2 * (1.0 + t * t) ** -0.25
    t = math.tan(math.pi * k * zp.beta2 / 2.0)
    beta = t / math.tan(math.pi * alpha / 2.0)
    nu = zp.nu2 * (1.0 + t * t) ** (-1.0 / (2.0 * alpha))
    return beta, nu


def zeta_shift(params: StableParams) -> float:
    """Shifted location zeta = mu + beta*nu*tan(pi*alpha/2); mu when alpha == 1."""
    if params.alpha_is_one:
        return params.mu
    return params.mu + params.beta * params.nu * math.tan(math.pi * params.alpha / 2.0)
