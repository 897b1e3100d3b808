import math

import numpy as np
import pytest

from stablefit import (
    StableParams,
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
from stablefit.density import PHI0, PHI1, PHI3, DensityGrid, cdf_closed
from stablefit.errors import (
    MomentUndefined,
    NotClosedForm,
    VarianceUndefined,
    WindowTooNarrow,
)

GAUSS = StableParams(2, 0, 1 / math.sqrt(2), 0)
CAUCHY = StableParams(1, 0, 1, 0)
LEVY = StableParams(0.5, 1, 1, 0)


class TestCharacteristicFunction:
    def test_gaussian_at_one(self):
        assert cf_eval(StableParams(2, 0, 1, 0), 1.0) == pytest.approx(
            math.exp(-1), abs=1e-12)

    def test_origin_is_one(self):
        for p in (GAUSS, CAUCHY, LEVY, StableParams(1, 0.7, 2, -1)):
            assert cf_eval(p, 0.0) == 1.0 + 0.0j

    def test_skewed_value(self):
        got = cf_eval(StableParams(1.5, 0.5, 1, 0), 1.0)
        assert got == pytest.approx(np.exp(-1 - 0.5j), abs=1e-12)

    @pytest.mark.parametrize("params", [
        StableParams(0.5, 0.9, 2, 1), StableParams(1, 0.9, 2, 1),
        StableParams(1.3, -1, 0.3, 0), StableParams(2, 0, 1, 5),
    ])
    def test_modulus_identity(self, params):
        us = np.linspace(-10, 10, 101)
        mod = np.abs(cf_eval(params, us))
        expected = np.exp(-params.nu ** params.alpha * np.abs(us) ** params.alpha)
        assert np.abs(mod - expected).max() < 1e-12

    def test_negation_conjugation(self):
        p = StableParams(1.6, 0.6, 1.2, 0.4)
        pm = StableParams(1.6, -0.6, 1.2, -0.4)
        us = np.linspace(0.1, 5, 20)
        assert np.abs(cf_eval(p, -us) - cf_eval(pm, us)).max() < 1e-14


class TestClosedForms:
    def test_cauchy_mode(self):
        assert pdf_closed(CAUCHY, 0.0) == pytest.approx(1 / math.pi, abs=1e-14)

    def test_standard_normal_mode(self):
        assert pdf_closed(GAUSS, 0.0) == pytest.approx(
            1 / math.sqrt(2 * math.pi), abs=1e-14)

    def test_levy_at_one(self):
        assert pdf_closed(LEVY, 1.0) == pytest.approx(
            math.sqrt(1 / (2 * math.pi)) * math.exp(-0.5), abs=1e-14)

    def test_levy_left_of_support(self):
        assert pdf_closed(LEVY, 0.0) == 0.0
        assert pdf_closed(LEVY, -3.0) == 0.0

    def test_reflected_levy(self):
        mirrored = StableParams(0.5, -1, 1, 0)
        assert mirrored and pdf_closed(mirrored, -1.0) == pytest.approx(
            pdf_closed(LEVY, 1.0), abs=1e-15)
        assert pdf_closed(mirrored, 1.0) == 0.0

    def test_not_closed_form(self):
        with pytest.raises(NotClosedForm):
            pdf_closed(StableParams(1.5, 0, 1, 0), 0.0)


class TestPdfFft:
    def test_gaussian_supnorm(self):
        grid = pdf_fft(GAUSS, (-8, 8), 4096)
        ref = np.array([pdf_closed(GAUSS, x) for x in grid.abscissae])
        assert np.abs(grid.densities - ref).max() < 1e-6

    def test_cauchy_supnorm_wide_window(self):
        grid = pdf_fft(CAUCHY, (-200, 200), 1 << 15)
        ref = CAUCHY.nu / (math.pi * (CAUCHY.nu ** 2 + grid.abscissae ** 2))
        assert np.abs(grid.densities - ref).max() < 1e-4

    def test_mass_invariant(self):
        grid = pdf_fft_auto(StableParams(1.3, 0.5, 1, 0))
        assert 0.99 <= grid.mass <= 1 + 1e-6

    def test_narrow_window_rejected(self):
        with pytest.raises(WindowTooNarrow):
            pdf_fft(CAUCHY, (-3, 3), 1024)

    def test_point_count_validation(self):
        with pytest.raises(ValueError):
            pdf_fft(GAUSS, (-8, 8), 3000)
        with pytest.raises(ValueError):
            pdf_fft(GAUSS, (-8, 8), 128)

    def test_window_must_contain_location(self):
        with pytest.raises(ValueError):
            pdf_fft(GAUSS, (1, 9), 1024)

    def test_grid_rejects_negative_density(self):
        x = np.linspace(-1, 1, 257)
        d = np.full_like(x, 0.5)
        d[3] = -0.1
        with pytest.raises(ValueError):
            DensityGrid(abscissae=x, densities=d, params=GAUSS,
                        spacing=float(x[1] - x[0]))

    def test_evaluate_interpolates(self):
        grid = pdf_fft(GAUSS, (-8, 8), 4096)
        assert grid.evaluate(0.1234) == pytest.approx(
            pdf_closed(GAUSS, 0.1234), abs=1e-8)
        assert grid.evaluate(100.0) == 0.0


class TestPdfIntegral:
    def test_cauchy_routes_to_closed(self):
        assert pdf_integral(CAUCHY, 0.0) == pytest.approx(1 / math.pi, abs=1e-8)

    def test_gaussian_point(self):
        assert pdf_integral(GAUSS, 1.0) == pytest.approx(
            pdf_closed(GAUSS, 1.0), abs=1e-8)

    def test_symmetry(self):
        p = StableParams(1.3, 0, 2, 5)
        for d in (0.5, 2.0, 7.0):
            assert pdf_integral(p, 5 + d) == pytest.approx(
                pdf_integral(p, 5 - d), abs=1e-10)

    def test_levy_against_closed(self):
        for s in (0.5, 1.0, 3.0, 10.0):
            assert pdf_integral(LEVY, s) == pytest.approx(
                pdf_closed(LEVY, s), abs=1e-6)


class TestPdfZolotarev:
    def test_central_value(self):
        expected = math.gamma(1 + 1 / 1.5) / math.pi
        assert pdf_zolotarev(StableParams(1.5, 0, 1, 0), 0.0) == pytest.approx(
            expected, abs=1e-12)

    def test_cauchy_routes_to_closed(self):
        assert pdf_zolotarev(CAUCHY, 0.4) == pytest.approx(
            pdf_closed(CAUCHY, 0.4), abs=1e-12)

    def test_against_fft(self):
        p = StableParams(1.7, 0.5, 1, 0)
        grid = pdf_fft_auto(p)
        assert pdf_zolotarev(p, 2.0) == pytest.approx(grid.evaluate(2.0), abs=1e-5)

    def test_mode_switch_band(self):
        p = StableParams(1.4, 0.7, 1, 0)
        inside = pdf_zolotarev(p, 1e-8)
        assert inside == pytest.approx(pdf_zolotarev(p, 0.0), abs=1e-12)

    def test_levy_support_edge(self):
        assert pdf_zolotarev(LEVY, -1.0) == 0.0
        assert pdf_zolotarev(LEVY, 2.0) == pytest.approx(
            pdf_closed(LEVY, 2.0), abs=1e-10)


@pytest.mark.parametrize("alpha", [0.6, 1.3, 1.7])
@pytest.mark.parametrize("beta", [-0.5, 0.0, 0.5])
def test_route_agreement(alpha, beta):
    p = StableParams(alpha, beta, 1, 0)
    grid = pdf_fft_auto(p)
    xs = np.linspace(-5, 5, 21)
    fft_vals = grid.evaluate(xs)
    for i, s in enumerate(xs):
        zol = pdf_zolotarev(p, float(s))
        intg = pdf_integral(p, float(s))
        assert abs(zol - intg) < 1e-6
        assert abs(zol - fft_vals[i]) < 1e-4


class TestCdf:
    def test_symmetric_median(self):
        assert cdf(StableParams(1.5, 0, 1, 2), 2.0) == pytest.approx(0.5, abs=1e-6)

    def test_gaussian_tail_quantile(self):
        assert cdf(GAUSS, 1.6449) == pytest.approx(0.95, abs=1e-4)

    @pytest.mark.parametrize("alpha,beta", [(1.5, 0.5), (0.8, 0.9), (1.2, -0.3)])
    def test_reflection_identity(self, alpha, beta):
        p = StableParams(alpha, beta, 1, 0)
        pm = StableParams(alpha, -beta, 1, 0)
        for s in (-3.0, -0.5, 0.0, 1.0, 4.0):
            assert cdf(p, -s) + cdf(pm, s) == pytest.approx(1.0, abs=1e-6)

    def test_monotone_and_bounded(self):
        p = StableParams(1.1, 0.8, 1, 0)
        xs = np.linspace(-50, 50, 301)
        vals = cdf(p, xs)
        assert (np.diff(vals) >= -1e-12).all()
        assert vals.min() >= 0.0 and vals.max() <= 1.0

    def test_quantile_round_trip(self):
        p = StableParams(1.7, 0.4, 1, 0)
        for prob in (0.01, 0.25, 0.5, 0.9, 0.999):
            assert cdf(p, quantile(p, prob)) == pytest.approx(prob, abs=1e-6)

    def test_levy_closed_cdf(self):
        assert cdf_closed(LEVY, 2.198) == pytest.approx(0.5, abs=1e-3)
        assert cdf_closed(LEVY, -1.0) == 0.0

    def test_table_tail_inversion(self):
        table = build_cdf_table(StableParams(1.5, 0.2, 1, 0))
        q = table.quantile(1e-5)
        assert table.cdf(q) == pytest.approx(1e-5, rel=1e-3)


class TestMoments:
    def test_flom_zero_limit(self):
        assert flom_abs(StableParams(1.5, 0, 1, 0), 1e-8) == pytest.approx(
            1.0, abs=1e-6)

    def test_flom_signed_symmetric_is_zero(self):
        assert flom_signed(StableParams(1.5, 0, 1, 0), 0.7) == 0.0

    def test_flom_scaling_in_nu(self):
        base = flom_abs(StableParams(1.5, 0.3, 1, 0), 0.8)
        scaled = flom_abs(StableParams(1.5, 0.3, 2, 0), 0.8)
        assert scaled == pytest.approx(2 ** 0.8 * base, rel=1e-12)

    def test_flom_gaussian_absolute_moment(self):
        # E|N(0, 2 nu^2)|^p in closed form
        p = 0.8
        nu = 1.0
        expected = (2 * nu ** 2) ** (p / 2) * 2 ** (p / 2) * math.gamma(
            (p + 1) / 2) / math.sqrt(math.pi)
        assert flom_abs(StableParams(2, 0, nu, 0), p) == pytest.approx(
            expected, rel=1e-12)

    @pytest.mark.parametrize("p", [-1.0, 1.5, 2.5, 0.0])
    def test_flom_domain(self, p):
        with pytest.raises(MomentUndefined):
            flom_abs(StableParams(1.5, 0, 1, 0), p)

    def test_flom_signed_domain(self):
        with pytest.raises(MomentUndefined):
            flom_signed(StableParams(1.5, 0, 1, 0), -2.5)

    def test_log_moment_constants(self):
        from scipy.special import polygamma
        assert abs(PHI0 - float(polygamma(0, 1))) < 1e-7
        assert abs(PHI1 - float(polygamma(1, 1))) < 1e-7
        assert abs(PHI3 - (-float(polygamma(2, 1)) / 2.0)) < 1e-7

    def test_m2_gaussian(self):
        lm = log_moments_theoretical(StableParams(2, 0, 1, 0))
        assert lm.m2 == pytest.approx(math.pi ** 2 / 8, abs=1e-12)

    @pytest.mark.parametrize("alpha", [0.7, 1.3, 1.9])
    def test_m2_symmetric_form(self, alpha):
        lm = log_moments_theoretical(StableParams(alpha, 0, 1, 0))
        assert lm.m2 == pytest.approx(PHI1 * (0.5 + 1 / alpha ** 2), abs=1e-12)

    def test_m3_uses_polygamma_constant(self):
        lm = log_moments_theoretical(StableParams(1.5, 0, 1, 0))
        assert lm.m3 == pytest.approx(-2 * PHI3 * (1 - 1 / 1.5 ** 3), abs=1e-12)


class TestTLocationScale:
    def test_one_dof_is_cauchy(self):
        assert tls_pdf(TLocationScaleParams(0, 1, 1), 0.0) == pytest.approx(
            1 / math.pi, abs=1e-14)

    def test_gaussian_limit(self):
        p = TLocationScaleParams(0, 1, 1e6)
        xs = np.linspace(-4, 4, 81)
        ref = np.exp(-xs ** 2 / 2) / math.sqrt(2 * math.pi)
        assert np.abs(tls_pdf(p, xs) - ref).max() < 1e-5

    def test_variance(self):
        assert tls_variance(TLocationScaleParams(0, 2, 4)) == pytest.approx(8.0)

    @pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
    def test_variance_undefined(self, a):
        with pytest.raises(VarianceUndefined):
            tls_variance(TLocationScaleParams(0, 1, a))

    @pytest.mark.parametrize("a", [0.5, 1.0, 3.0, 30.0])
    def test_normalization(self, a):
        from scipy.integrate import quad
        p = TLocationScaleParams(0, 1, a)
        val, _ = quad(lambda x: tls_pdf(p, x), -np.inf, np.inf, limit=400)
        assert val == pytest.approx(1.0, abs=1e-6)
