"""Stable random-variate generation and weighted-sum parameter arithmetic.

Variates come from the angle/exponential transform: with U uniform on the
open interval (-pi/2, pi/2) and E a unit-mean exponential,

    S = A * sin(alpha (U + B)) / cos(U)^{1/alpha}
          * (cos(U - alpha (U + B)) / E)^{(1 - alpha)/alpha},    alpha != 1
    S = (2/pi) ((pi/2 + beta U) tan U
          - beta log((pi/2 E cos U) / (pi/2 + beta U))),          alpha == 1

with A = (1 + beta^2 tan^2(pi alpha/2))^{1/(2 alpha)} and
B = arctan(beta tan(pi alpha/2)) / alpha, giving S(alpha, beta, 1, 0) draws.

Streams are seeded PCG64 generators; the harness derives trial i's stream
from seed = base_seed + i, so trials are reproducible in any execution order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AlphaOutOfRange, BetaOutOfRange
from .params import StableParams, is_alpha_one, k_of_alpha, standardize

_U64 = np.uint64(0xFFFFFFFFFFFFFFFF)


@dataclass(frozen=True)
class RngSeed:
    """64-bit stream seed; identical seeds give bit-identical sample streams."""

    seed: int

    def __post_init__(self):
        object.__setattr__(self, "seed", int(self.seed) & 0xFFFFFFFFFFFFFFFF)

    def spawn(self, offset: int) -> "RngSeed":
        return RngSeed((self.seed + int(offset)) & 0xFFFFFFFFFFFFFFFF)

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


def _as_seed(seed) -> RngSeed:
    return seed if isinstance(seed, RngSeed) else RngSeed(int(seed))


def _draw_angle_exponential(rng: np.random.Generator, n: int):
    """U on the open (-pi/2, pi/2), E = -log(1 - u) rejected away from 0."""
    u1 = rng.random(n)
    u2 = rng.random(n)
    bad = u1 == 0.0  # would map to the closed endpoint -pi/2
    while bad.any():
        u1[bad] = rng.random(int(bad.sum()))
        bad = u1 == 0.0
    bad = u2 == 0.0  # would give E == 0, dividing/logging to infinity
    while bad.any():
        u2[bad] = rng.random(int(bad.sum()))
        bad = u2 == 0.0
    return math.pi * (u1 - 0.5), -np.log1p(-u2)


def sample_standard(alpha: float, beta: float, n: int, seed) -> np.ndarray:
    """n i.i.d. draws from the standard law S(alpha, beta, 1, 0)."""
    if not 0.0 < alpha <= 2.0:
        raise AlphaOutOfRange(f"alpha must be in (0, 2], got {alpha}")
    if not -1.0 <= beta <= 1.0:
        raise BetaOutOfRange(f"beta must be in [-1, 1], got {beta}")
    n = int(n)
    if n == 0:
        return np.empty(0)
    rng = _as_seed(seed).generator()
    u, e = _draw_angle_exponential(rng, n)
    if is_alpha_one(alpha):
        half_pi = math.pi / 2.0
        shifted = half_pi + beta * u
        return (2.0 / math.pi) * (shifted * np.tan(u)
                                  - beta * np.log(half_pi * e * np.cos(u) / shifted))
    t = math.tan(math.pi * alpha / 2.0)
    a_pref = (1.0 + beta * beta * t * t) ** (1.0 / (2.0 * alpha))
    b_ang = math.atan(beta * t) / alpha
    return (a_pref * np.sin(alpha * (u + b_ang)) / np.cos(u) ** (1.0 / alpha)
            * (np.cos(u - alpha * (u + b_ang)) / e) ** ((1.0 - alpha) / alpha))


def sample_standard_polar(alpha: float, beta2: float, n: int, seed) -> np.ndarray:
    """Alternate generator taking the converted polar skewness beta2 (alpha != 1).

    Draws are standard in the polar scale convention; multiplying by the
    (1 + beta^2 tan^2)^{1/(2 alpha)} prefactor recovers :func:`sample_standard`.
    """
    if is_alpha_one(alpha):
        raise AlphaOutOfRange("polar-form generator is defined for alpha != 1")
    if not 0.0 < alpha <= 2.0:
        raise AlphaOutOfRange(f"alpha must be in (0, 2], got {alpha}")
    n = int(n)
    if n == 0:
        return np.empty(0)
    rng = _as_seed(seed).generator()
    u, e = _draw_angle_exponential(rng, n)
    b_ang = math.pi / 2.0 * beta2 * k_of_alpha(alpha) / alpha
    return (np.sin(alpha * (u + b_ang)) / np.cos(u) ** (1.0 / alpha)
            * (np.cos(u - alpha * (u + b_ang)) / e) ** ((1.0 - alpha) / alpha))


def sample(params: StableParams, n: int, seed) -> np.ndarray:
    """n i.i.d. draws from S(alpha, beta, nu, mu) via the standard law."""
    shift = standardize(params)
    draws = sample_standard(params.alpha, params.beta, n, seed)
    return shift.a * draws + shift.b


@dataclass(frozen=True)
class WeightedSumParams:
    """Distribution parameters of sum(a_k * S_k) for i.i.d. S_k."""

    result: StableParams


def weighted_sum_params(params: StableParams, weights) -> WeightedSumParams:
    """Parameters of Z = sum(a_k S_k), alpha != 1, with nu^alpha-additive scales.

    beta_out = beta * sum(a_k^<alpha>) / sum(|a_k|^alpha) with
    x^<p> = sign(x)|x|^p; nu_out = (sum |a_k|^alpha)^{1/alpha} nu;
    mu_out = sum(a_k) mu.
    """
    if params.alpha_is_one:
        raise AlphaOutOfRange("weighted-sum arithmetic is defined for alpha != 1")
    w = np.asarray(weights, dtype=float)
    if w.size == 0 or not np.any(w != 0.0):
        raise ValueError("weights must be non-empty and not all zero")
    a = params.alpha
    abs_pow = np.abs(w) ** a
    signed_pow = np.sign(w) * abs_pow
    denom = abs_pow.sum()
    beta_out = params.beta * signed_pow.sum() / denom
    nu_out = denom ** (1.0 / a) * params.nu
    mu_out = w.sum() * params.mu
    # float fuzz can push |beta| infinitesimally past 1 for extreme weights
    beta_out = min(1.0, max(-1.0, beta_out))
    return WeightedSumParams(result=StableParams(a, beta_out, nu_out, mu_out))
