"""Representative point sets in the augmented random space.

A point set discretizes the joint input distribution: points are placed by
inverse-CDF mapping of a unit-hypercube design, each point receives the
probability mass of its Voronoi cell (estimated by Monte Carlo), and a
rearrangement pass moves every coordinate to the marginal quantile of its
cumulative-probability midpoint, which drives the generalized
F-discrepancy of the weighted set to zero dimension by dimension.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.spatial import cKDTree
from scipy.stats import qmc

from .errors import DuplicatePoints
from .uncertainty import ScalarDistribution

__all__ = [
    "RepresentativePointSet",
    "unit_design",
    "map_unit_design",
    "generate_points",
    "voronoi_assigned_probability",
    "gf_rearrange",
    "select_representative_points",
]

STRATEGIES = ("sobol", "latin-hypercube", "plain-mc")

_POOL_CAP = 10_000_000


@dataclass(frozen=True)
class RepresentativePointSet:
    """Points theta^(q) with their assigned probabilities P^(q)."""

    points: np.ndarray          # (n_sel, s)
    probabilities: np.ndarray   # (n_sel,), sums to exactly 1
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.points.shape[0] != self.probabilities.shape[0]:
            raise ValueError("points/probabilities length mismatch")

    @property
    def n_sel(self) -> int:
        return self.points.shape[0]


def _metric_scale(dist: ScalarDistribution) -> float:
    """Per-dimension standardization scale: half-width for uniform
    (interval-like) marginals, standard deviation otherwise."""
    if dist.family == "uniform":
        a, b = dist.params
        return max((b - a) / 2.0, np.finfo(float).tiny)
    return max(dist.std(), np.finfo(float).tiny)


def unit_design(n: int, d: int, strategy: str, seed: int) -> np.ndarray:
    """Unit-hypercube design of n points in d dimensions."""
    if strategy == "sobol":
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UserWarning)
            return qmc.Sobol(d, scramble=True, seed=seed).random(n)
    if strategy == "latin-hypercube":
        return qmc.LatinHypercube(d, seed=seed).random(n)
    if strategy == "plain-mc":
        return np.random.default_rng(seed).uniform(size=(n, d))
    raise ValueError(f"unknown strategy {strategy!r}; use one of {STRATEGIES}")


def map_unit_design(design: np.ndarray,
                    space: Sequence[ScalarDistribution]) -> np.ndarray:
    """Inverse-CDF map of a unit design onto the joint marginals."""
    design = np.atleast_2d(np.asarray(design, dtype=float))
    if design.shape[1] != len(space):
        raise ValueError("design width does not match the space dimension")
    u = np.clip(design, 1e-12, 1.0 - 1e-12)
    cols = [space[j].ppf(u[:, j]) for j in range(len(space))]
    return np.column_stack(cols)


def generate_points(space: Sequence[ScalarDistribution], n_sel: int,
                    strategy: str = "sobol", seed: int = 0) -> np.ndarray:
    """Representative points by inverse-CDF mapping of a chosen design."""
    if n_sel < 1:
        raise ValueError("n_sel must be >= 1")
    return map_unit_design(unit_design(n_sel, len(space), strategy, seed),
                           space)


def voronoi_assigned_probability(points: np.ndarray,
                                 space: Sequence[ScalarDistribution],
                                 n_pool: Optional[int] = None,
                                 seed: int = 0,
                                 chunk: int = 262_144) -> np.ndarray:
    """Voronoi-cell probabilities of each point, estimated by Monte Carlo.

    A pool of joint samples is assigned to its nearest representative
    under Euclidean distance after per-dimension standardization; cell
    probabilities are the normalized hit counts.  Equidistant pool points
    (a measure-zero event) take the tree's deterministic choice.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    n_sel, d = points.shape
    if n_pool is None:
        n_pool = min(1000 * n_sel, _POOL_CAP)
    scales = np.array([_metric_scale(m) for m in space])
    std_pts = points / scales
    if n_sel > 1 and np.unique(std_pts, axis=0).shape[0] < n_sel:
        raise DuplicatePoints("representative points coincide")
    tree = cKDTree(std_pts)
    rng = np.random.default_rng(seed)
    counts = np.zeros(n_sel, dtype=np.int64)
    remaining = int(n_pool)
    while remaining > 0:
        m = min(chunk, remaining)
        pool = np.column_stack([dist.sample(rng, m) for dist in space])
        _, idx = tree.query(pool / scales, k=1)
        counts += np.bincount(idx, minlength=n_sel)
        remaining -= m
    probs = counts / float(n_pool)
    probs /= probs.sum()
    # force the sum to exactly 1.0 in floating point
    probs[np.argmax(probs)] += 1.0 - probs.sum()
    return probs


def gf_rearrange(points: np.ndarray, probabilities: np.ndarray,
                 marginals: Sequence[ScalarDistribution]) -> np.ndarray:
    """Move each coordinate to the quantile of its cumulative-mass midpoint.

    Dimension by dimension: with points sorted by coordinate i and
    cumulative probability C_k ahead of the k-th sorted point, that point
    receives coordinate F_i^-1(C_k + P_k / 2).  Per-dimension rank order
    is preserved because the targets are increasing.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    probs = np.asarray(probabilities, dtype=float)
    out = np.empty_like(points)
    for j, marg in enumerate(marginals):
        order = np.argsort(points[:, j], kind="stable")
        p_sorted = probs[order]
        targets = np.cumsum(p_sorted) - 0.5 * p_sorted
        targets = np.clip(targets, 1e-12, 1.0 - 1e-12)
        out[order, j] = marg.ppf(targets)
    return out


def select_representative_points(space: Sequence[ScalarDistribution],
                                 n_sel: int,
                                 strategy: str = "sobol",
                                 seed: int = 0,
                                 n_pool: Optional[int] = None,
                                 weights: str = "voronoi",
                                 rearrange: bool = True,
                                 ) -> RepresentativePointSet:
    """Full point-selection pass.

    ``weights="voronoi"`` runs one weighting, rearrangement, reweighting
    pass; ``weights="equal"`` assigns 1/n_sel to every point and skips
    the rearrangement (the plain Monte Carlo regime used when the random
    dimension is too high for cell estimates to be meaningful).
    """
    pts = generate_points(space, n_sel, strategy, seed)
    if weights == "equal":
        probs = np.full(n_sel, 1.0 / n_sel)
        probs[0] += 1.0 - probs.sum()
        return RepresentativePointSet(pts, probs, {
            "strategy": strategy, "seed": seed, "weights": "equal",
            "n_pool": 0, "rearranged": False})
    if weights != "voronoi":
        raise ValueError(f"unknown weights mode {weights!r}")
    probs = voronoi_assigned_probability(pts, space, n_pool=n_pool, seed=seed + 1)
    if rearrange:
        pts = gf_rearrange(pts, probs, space)
        probs = voronoi_assigned_probability(pts, space, n_pool=n_pool,
                                             seed=seed + 2)
    return RepresentativePointSet(pts, probs, {
        "strategy": strategy, "seed": seed, "weights": "voronoi",
        "n_pool": int(n_pool) if n_pool else min(1000 * n_sel, _POOL_CAP),
        "rearranged": bool(rearrange)})
