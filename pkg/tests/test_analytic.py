"""Closed-form SDOF reference curves and normal utilities."""

import numpy as np
import pytest
from scipy.integrate import quad

from pbdem.analytic import (SDOFOracleConfig, input_pbox_cdf, input_pbox_pdf,
                            norm_cdf, norm_pdf, norm_ppf, omega_of_y1,
                            y1_bounds, y1_of_omega, y2_bounds,
                            y2_conditional_pdf)
from pbdem.errors import NonPositive


@pytest.fixture(scope="module")
def cfg():
    return SDOFOracleConfig()


def test_input_pbox_upper_at_knee(cfg):
    assert input_pbox_cdf(cfg, "upper", 1.9) == pytest.approx(0.5, abs=1e-15)


def test_input_pbox_lower_at_knee(cfg):
    assert input_pbox_cdf(cfg, "lower", 2.1) == pytest.approx(0.5, abs=1e-15)


def test_input_pbox_upper_left_tail(cfg):
    # (1.7 - 1.9) / 0.2 = -1
    assert input_pbox_cdf(cfg, "upper", 1.7) == pytest.approx(
        norm_cdf(-1.0), rel=1e-12)


def test_input_pbox_lower_right_tail(cfg):
    # (2.3 - 2.1) / 0.2 = +1
    assert input_pbox_cdf(cfg, "lower", 2.3) == pytest.approx(
        norm_cdf(1.0), rel=1e-12)


def test_input_pbox_ordering(cfg):
    w = np.linspace(0.5, 3.5, 1001)
    lo = input_pbox_cdf(cfg, "lower", w)
    up = input_pbox_cdf(cfg, "upper", w)
    assert np.all(lo <= up + 1e-15)
    assert np.all(np.diff(lo) >= -1e-15)
    assert np.all(np.diff(up) >= -1e-15)


def test_input_pbox_pdf_integrates_to_one(cfg):
    for kind, knee in (("upper", cfg.mu1), ("lower", cfg.mu2)):
        val, _ = quad(lambda w: input_pbox_pdf(cfg, kind, w), 0.0, 5.0,
                      points=[knee], limit=200)
        assert val == pytest.approx(1.0, abs=1e-9)


def test_y1_inversion_round_trip(cfg):
    # pi*S0/(2*zeta*omega^3) at omega = 2 and back
    y1 = y1_of_omega(cfg, 2.0)
    assert y1 == pytest.approx(np.pi / 0.8, rel=1e-14)
    assert omega_of_y1(cfg, y1) == pytest.approx(2.0, rel=1e-14)


def test_y1_bounds_at_omega_two(cfg):
    lo, up = y1_bounds(cfg, np.pi / 0.8)
    assert up == pytest.approx(1.0 - norm_cdf(-1.0), rel=1e-12)
    assert lo == pytest.approx(1.0 - norm_cdf(1.0), rel=1e-12)


def test_y1_upper_half_at_mu2_image(cfg):
    # y1 value whose inverse frequency is mu2: upper bound crosses 1/2
    y_star = float(y1_of_omega(cfg, cfg.mu2))
    _, up = y1_bounds(cfg, y_star)
    assert up == pytest.approx(0.5, abs=1e-12)


def test_y1_bounds_limits(cfg):
    lo, up = y1_bounds(cfg, 1e9)
    assert lo > 1.0 - 1e-9 and up > 1.0 - 1e-9
    with pytest.raises(NonPositive):
        y1_bounds(cfg, -1.0)


def test_y1_bounds_monotone_and_ordered(cfg):
    y = np.linspace(0.5, 40.0, 1001)
    lo, up = y1_bounds(cfg, y)
    assert np.all(np.diff(lo) >= -1e-12)
    assert np.all(np.diff(up) >= -1e-12)
    assert np.all(lo <= up + 1e-12)


def test_y2_conditional_value(cfg):
    val = y2_conditional_pdf(cfg, 0.0, 2.0)
    assert val == pytest.approx(1.0 / np.sqrt(2.0 * np.pi * np.pi / 0.8),
                                rel=1e-12)


def test_y2_conditional_normalized_and_symmetric(cfg):
    mass, _ = quad(lambda y: y2_conditional_pdf(cfg, y, 2.0), -40, 40,
                   limit=200)
    assert mass == pytest.approx(1.0, abs=1e-8)
    assert y2_conditional_pdf(cfg, 1.3, 2.0) == pytest.approx(
        y2_conditional_pdf(cfg, -1.3, 2.0), rel=1e-14)


def test_y2_bounds_at_zero(cfg):
    lo, up = y2_bounds(cfg, 0.0)
    assert lo == 0.5 and up == 0.5


def test_y2_bounds_limits(cfg):
    lo, up = y2_bounds(cfg, 60.0)
    assert lo > 1.0 - 1e-6 and up > 1.0 - 1e-6


def test_y2_antisymmetry(cfg):
    lo_p, up_p = y2_bounds(cfg, 1.5)
    lo_m, up_m = y2_bounds(cfg, -1.5)
    assert up_m == pytest.approx(1.0 - lo_p, abs=1e-8)
    assert lo_m == pytest.approx(1.0 - up_p, abs=1e-8)


def test_y2_bounds_monotone_and_ordered(cfg):
    y = np.linspace(-8.0, 8.0, 81)
    lo, up = y2_bounds(cfg, y)
    assert np.all(np.diff(lo) >= -1e-9)
    assert np.all(np.diff(up) >= -1e-9)
    assert np.all(lo <= up + 1e-12)


def test_degenerate_pbox_collapses_to_mixture():
    # equal centers/scales: both bounds equal the single-density mixture
    cfg = SDOFOracleConfig(mu1=2.0, mu2=2.0 + 1e-12, sigma1=0.15,
                           sigma2=0.15)
    for y2 in (-1.0, 0.7, 2.5):
        lo, up = y2_bounds(cfg, y2)
        c = np.sqrt(2.0 * cfg.zeta / (np.pi * cfg.s0))

        def integrand(w):
            return norm_cdf(c * w**1.5 * y2) * norm_pdf(
                (w - 2.0) / 0.15) / 0.15

        ref, _ = quad(integrand, 0.5, 3.5, limit=200)
        assert lo == pytest.approx(ref, abs=1e-6)
        assert up == pytest.approx(ref, abs=1e-6)


def test_norm_cdf_symmetry_and_derivative():
    x = np.linspace(-6, 6, 41)
    assert np.max(np.abs(norm_cdf(x) + norm_cdf(-x) - 1.0)) <= 1e-15
    h = 1e-6
    num = (norm_cdf(x + h) - norm_cdf(x - h)) / (2 * h)
    assert np.max(np.abs(num - norm_pdf(x))) < 1e-9


def test_norm_ppf_round_trip():
    p = np.array([0.001, 0.25, 0.5, 0.75, 0.999])
    assert np.max(np.abs(norm_cdf(norm_ppf(p)) - p)) < 1e-14
