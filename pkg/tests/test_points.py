"""Representative point selection, cell probabilities, rearrangement."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pbdem.analytic import norm_ppf
from pbdem.errors import DuplicatePoints
from pbdem.points import (generate_points, gf_rearrange, map_unit_design,
                          select_representative_points, unit_design,
                          voronoi_assigned_probability)
from pbdem.uncertainty import ScalarDistribution

UNIT = ScalarDistribution("uniform", (0.0, 1.0))
NORMAL = ScalarDistribution("normal", (0.0, 1.0))


def test_generate_points_uniform_identity_range():
    pts = generate_points([UNIT], 4, strategy="sobol", seed=0)
    assert pts.shape == (4, 1)
    assert np.unique(pts).shape[0] == 4
    assert np.all((pts > 0) & (pts < 1))


def test_midpoint_design_maps_to_normal_quartiles():
    pts = map_unit_design(np.array([[0.25], [0.75]]), [NORMAL])
    assert pts[0, 0] == pytest.approx(-0.6744897501960817, abs=1e-9)
    assert pts[1, 0] == pytest.approx(+0.6744897501960817, abs=1e-9)


def test_plain_mc_reproducible():
    a = generate_points([NORMAL, UNIT], 50, strategy="plain-mc", seed=3)
    b = generate_points([NORMAL, UNIT], 50, strategy="plain-mc", seed=3)
    assert np.array_equal(a, b)


def test_voronoi_symmetric_normal_pair():
    pts = np.array([[-1.0], [1.0]])
    probs = voronoi_assigned_probability(pts, [NORMAL], n_pool=10**5, seed=1)
    assert probs.sum() == 1.0
    assert probs[0] == pytest.approx(0.5, abs=0.01)


def test_voronoi_single_point():
    probs = voronoi_assigned_probability(np.array([[0.3]]), [UNIT],
                                         n_pool=1000, seed=0)
    assert probs.tolist() == [1.0]


def test_voronoi_uniform_pair():
    pts = np.array([[0.25], [0.75]])
    probs = voronoi_assigned_probability(pts, [UNIT], n_pool=10**5, seed=2)
    assert probs[0] == pytest.approx(0.5, abs=0.01)


def test_voronoi_duplicate_points_rejected():
    pts = np.array([[0.5], [0.5]])
    with pytest.raises(DuplicatePoints):
        voronoi_assigned_probability(pts, [UNIT], n_pool=100, seed=0)


def test_voronoi_pool_convergence_rate():
    # doubling the pool should shrink the RMS error by about sqrt(2)
    pts = np.array([[0.25], [0.75]])
    exact = np.array([0.5, 0.5])

    def rms(n_pool, reps=40):
        errs = []
        for s in range(reps):
            p = voronoi_assigned_probability(pts, [UNIT], n_pool=n_pool,
                                             seed=100 + s)
            errs.append(np.sqrt(np.mean((p - exact) ** 2)))
        return np.mean(errs)

    r1 = rms(2000)
    r2 = rms(4000)
    assert r2 < r1 * 0.85


def test_gf_rearrange_uniform_equal_weights():
    pts = np.array([[0.9], [0.1], [0.4], [0.6]])
    probs = np.full(4, 0.25)
    out = gf_rearrange(pts, probs, [UNIT])
    assert np.allclose(np.sort(out[:, 0]), [0.125, 0.375, 0.625, 0.875],
                       atol=1e-12)


def test_gf_rearrange_single_point_goes_to_median():
    out = gf_rearrange(np.array([[3.0]]), np.array([1.0]), [NORMAL])
    assert out[0, 0] == pytest.approx(0.0, abs=1e-9)


def test_gf_rearrange_weighted_normal():
    pts = np.array([[-0.3], [0.4]])
    probs = np.array([0.3, 0.7])
    out = gf_rearrange(pts, probs, [NORMAL])
    assert out[0, 0] == pytest.approx(norm_ppf(0.15), abs=1e-9)
    assert out[1, 0] == pytest.approx(norm_ppf(0.65), abs=1e-9)


def test_gf_rearrange_formula_identity():
    # rearranged coordinates satisfy F(x_(k)) = C_k + P_k / 2 exactly
    rng = np.random.default_rng(8)
    pts = rng.normal(size=(20, 1))
    probs = rng.uniform(0.5, 1.5, 20)
    probs /= probs.sum()
    out = gf_rearrange(pts, probs, [NORMAL])
    order = np.argsort(pts[:, 0])
    targets = np.cumsum(probs[order]) - 0.5 * probs[order]
    from pbdem.analytic import norm_cdf
    assert np.max(np.abs(norm_cdf(out[order, 0]) - targets)) < 1e-12


@given(st.integers(min_value=2, max_value=30), st.integers(0, 1000))
@settings(max_examples=50, deadline=None)
def test_gf_rearrange_preserves_rank_order(n, seed):
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(n, 2))
    probs = rng.uniform(0.1, 1.0, n)
    probs /= probs.sum()
    out = gf_rearrange(pts, probs, [NORMAL, NORMAL])
    for j in range(2):
        assert np.array_equal(np.argsort(pts[:, j], kind="stable"),
                              np.argsort(out[:, j], kind="stable"))


def test_select_pipeline_probabilities_sum_exactly_one():
    space = [NORMAL, UNIT]
    rp = select_representative_points(space, 64, strategy="sobol", seed=5,
                                      n_pool=20000)
    assert rp.probabilities.sum() == 1.0
    assert np.all(rp.probabilities >= 0)
    assert rp.points.shape == (64, 2)
    assert rp.metadata["rearranged"]


def test_select_equal_weight_regime():
    rp = select_representative_points([NORMAL], 10, strategy="plain-mc",
                                      seed=1, weights="equal")
    assert rp.probabilities.sum() == 1.0
    assert np.allclose(rp.probabilities, 0.1)


def test_unit_design_shapes():
    for strat in ("sobol", "latin-hypercube", "plain-mc"):
        d = unit_design(17, 3, strat, seed=0)
        assert d.shape == (17, 3)
        assert np.all((d >= 0) & (d < 1.0 + 1e-12))
