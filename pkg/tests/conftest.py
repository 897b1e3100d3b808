import numpy as np
import pytest

from stablefit import RngSeed, StableParams, sample


def ks_one_sample(data: np.ndarray, cdf_fn) -> float:
    """Two-sided Kolmogorov-Smirnov distance against a model CDF."""
    x = np.sort(np.asarray(data, dtype=float))
    n = x.size
    f = np.asarray([cdf_fn(v) for v in x])
    lo = np.arange(n) / n
    hi = np.arange(1, n + 1) / n
    return float(max(np.max(hi - f), np.max(f - lo)))


def ks_two_sample(a: np.ndarray, b: np.ndarray) -> float:
    """Two-sample KS distance via the pooled-grid empirical CDFs."""
    a = np.sort(a)
    b = np.sort(b)
    allv = np.concatenate([a, b])
    fa = np.searchsorted(a, allv, side="right") / a.size
    fb = np.searchsorted(b, allv, side="right") / b.size
    return float(np.abs(fa - fb).max())


@pytest.fixture(scope="session")
def draws_15_00():
    return sample(StableParams(1.5, 0.0, 1.0, 0.0), 10_000, RngSeed(1001))


@pytest.fixture(scope="session")
def draws_17_04():
    return sample(StableParams(1.7, 0.4, 1.0, 0.0), 10_000, RngSeed(1002))
