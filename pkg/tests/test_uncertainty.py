"""Input uncertainty models: p-box validation, pseudo densities, sampling."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import kstest

from pbdem.errors import BadLimits, CrossingBounds, NonMonotone
from pbdem.uncertainty import (EpistemicVector, IntervalParam, PseudoDensity,
                               ScalarDistribution, ScalarPBox,
                               assign_pseudo_density, lognormal_from_mean_cov,
                               normal_band_pbox, pbox_cdf_bounds_at,
                               sample_aleatory, validate_pbox)

OMEGA = dict(mu1=1.9, mu2=2.1, sigma1=0.1, sigma2=0.2)


def test_validate_benchmark_pbox():
    assert validate_pbox(normal_band_pbox(**OMEGA))


def test_validate_degenerate_pbox():
    p = ScalarPBox.degenerate(ScalarDistribution("normal", (0.0, 1.0)))
    assert validate_pbox(p)


def test_swapped_bounds_raise_crossing():
    good = normal_band_pbox(**OMEGA)
    swapped = ScalarPBox(upper=good.lower, lower=good.upper,
                         support=good.support)
    with pytest.raises(CrossingBounds):
        validate_pbox(swapped)


def test_nonmonotone_curve_raises():
    xs = np.linspace(0, 1, 64)
    lo = np.clip(xs - 0.1, 0, 1)
    up = xs.copy()
    up[30] = 0.9
    up[31] = 0.2  # dip
    up = np.clip(up, 0, 1)
    p = ScalarPBox.from_tabulated(xs, np.minimum(lo, up), up)
    with pytest.raises((NonMonotone, CrossingBounds)):
        validate_pbox(p)


def test_bad_limits_raise():
    p = ScalarPBox(upper=lambda x: np.clip(0.5 * np.asarray(x, float), 0, 0.8),
                   lower=lambda x: np.clip(0.4 * np.asarray(x, float), 0, 0.7),
                   support=(0.0, 2.0))
    with pytest.raises(BadLimits):
        validate_pbox(p)


def test_cdf_bounds_at_benchmark_values():
    p = normal_band_pbox(**OMEGA)
    lo, up = pbox_cdf_bounds_at(p, 1.9)
    assert up == pytest.approx(0.5, abs=1e-14)
    lo, up = pbox_cdf_bounds_at(p, 2.3)
    assert lo == pytest.approx(0.8413447460685429, rel=1e-12)


def test_cdf_bounds_outside_support_clamp():
    xs = np.linspace(0, 1, 32)
    p = ScalarPBox.from_tabulated(xs, xs, np.clip(xs * 1.2, 0, 1))
    assert pbox_cdf_bounds_at(p, -5.0) == (0.0, 0.0)
    assert pbox_cdf_bounds_at(p, 5.0) == (1.0, 1.0)


@given(st.floats(min_value=-2.0, max_value=6.0),
       st.floats(min_value=0.0, max_value=2.0))
@settings(max_examples=200, deadline=None)
def test_bounds_monotone_in_x(x, dx):
    p = normal_band_pbox(**OMEGA)
    lo1, up1 = pbox_cdf_bounds_at(p, x)
    lo2, up2 = pbox_cdf_bounds_at(p, x + dx)
    assert lo2 >= lo1 - 1e-12
    assert up2 >= up1 - 1e-12
    assert lo1 <= up1 + 1e-12


def test_pseudo_density_interval():
    e = EpistemicVector(names=("w0",),
                        coords=(IntervalParam(23.91, 45.22),))
    pd = assign_pseudo_density(e)
    assert pd.supports[0] == (23.91, 45.22)
    assert pd.coordinate_pdf(0, 30.0) == pytest.approx(1.0 / 21.31, rel=1e-12)
    # unit mass, analytically
    lo, hi = pd.supports[0]
    assert pd.coordinate_pdf(0, 30.0) * (hi - lo) == pytest.approx(1.0,
                                                                   abs=1e-15)


def test_pseudo_density_degenerate_interval_is_fixed():
    e = EpistemicVector(names=("a",), coords=(IntervalParam(2.0, 2.0),))
    pd = assign_pseudo_density(e)
    assert pd.active.tolist() == [False]
    assert pd.as_distributions() == [None]


def test_pseudo_density_pbox_truncation():
    e = EpistemicVector(names=("omega",),
                        coords=(normal_band_pbox(**OMEGA),))
    pd = assign_pseudo_density(e, eps_tail=1e-4)
    lo, hi = pd.supports[0]
    # solve upper(x) = 1e-4 and lower(x) = 1 - 1e-4 by hand:
    # 1.9 + 0.2 * ppf(1e-4) and 2.1 - 0.2 * ppf(1e-4)
    from pbdem.analytic import norm_ppf
    z = norm_ppf(1e-4)
    assert lo == pytest.approx(1.9 + 0.2 * z, abs=1e-9)
    assert hi == pytest.approx(2.1 - 0.2 * z, abs=1e-9)
    assert lo == pytest.approx(1.156, abs=5e-4)
    assert hi == pytest.approx(2.844, abs=5e-4)


def test_pseudo_joint_is_product():
    pd = PseudoDensity(supports=((0.0, 2.0), (1.0, 3.0)))
    val = pd.joint_pdf(np.array([[1.0, 2.0]]))[0]
    assert val == pytest.approx(0.25, rel=1e-12)
    assert pd.joint_pdf(np.array([[5.0, 2.0]]))[0] == 0.0


def test_lognormal_moment_matching():
    d = lognormal_from_mean_cov(1.0, 0.15)
    s2 = np.log1p(0.15**2)
    assert d.params[0] == pytest.approx(-0.5 * s2, rel=1e-12)
    assert d.params[1] == pytest.approx(np.sqrt(s2), rel=1e-12)
    draws = d.sample(np.random.default_rng(5), 10**6)
    assert draws.mean() == pytest.approx(1.0, rel=0.01)


def test_sample_aleatory_reproducible_and_in_range():
    dists = [ScalarDistribution("uniform", (0.7, 1.3))]
    a = sample_aleatory(dists, 3, seed=42)
    b = sample_aleatory(dists, 3, seed=42)
    assert np.array_equal(a, b)
    assert a.shape == (3, 1)
    assert np.all((a >= 0.7) & (a <= 1.3))
    c = sample_aleatory(dists, 3, seed=43)
    assert not np.array_equal(a, c)


def test_sample_aleatory_empty():
    dists = [ScalarDistribution("normal", (0.0, 1.0))]
    assert sample_aleatory(dists, 0, seed=1).shape == (0, 1)


@pytest.mark.parametrize("dist,scipy_name,scipy_args", [
    (ScalarDistribution("normal", (2.0, 0.5)), "norm", (2.0, 0.5)),
    (ScalarDistribution("uniform", (0.7, 1.3)), "uniform", (0.7, 0.6)),
    (lognormal_from_mean_cov(1.0, 0.15), "lognorm",
     (np.sqrt(np.log1p(0.15**2)), 0.0, np.exp(-0.5 * np.log1p(0.15**2)))),
])
def test_sampling_matches_declared_distribution(dist, scipy_name, scipy_args):
    draws = sample_aleatory([dist], 10**5, seed=7)[:, 0]
    stat = kstest(draws, scipy_name, args=scipy_args)
    assert stat.pvalue > 0.01
