"""End-to-end hybrid propagation engines.

Three engines produce bounded output CDFs (p-boxes):

* ``propagate_mpdem`` runs one deterministic simulation per representative
  point of the augmented (aleatory x pseudo-epistemic) space, extracts
  conditional CDFs by kernel conditioning, and extremizes over the
  epistemic coordinates: pointwise min/max for interval inputs, extreme
  admissible mixtures for p-box inputs.
* ``dl_mcs`` is the double-loop Monte Carlo reference: an exhaustive outer
  grid over the epistemic support with empirical conditional CDFs inside.
* ``vertex_mcs`` samples only the interval-vertex combinations, an inner
  approximation that is exact under monotonicity.

``envelope_check`` compares two results for bound containment.
"""

from __future__ import annotations

import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import product as iter_product
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (BudgetExceeded, EmptyFamily, EngineError,
                     InsufficientPoints, TooManyVertices)
from .mpdem import (SubPDFBundle, build_bundle, conditional_cdf_family,
                    inject_analytic_conditional)
from .points import select_representative_points
from .uncertainty import (EpistemicVector, IntervalParam, PseudoDensity,
                          ScalarDistribution, ScalarPBox,
                          assign_pseudo_density, sample_aleatory)

__all__ = [
    "HybridProblem",
    "MPDEMSettings",
    "PBoxResult",
    "propagate_mpdem",
    "extremize_interval",
    "extremize_pbox_input",
    "pbox_cell_masses",
    "dl_mcs",
    "vertex_mcs",
    "envelope_check",
    "ks_distance",
    "empirical_cdf_on_grid",
]


# ---------------------------------------------------------------------------
# problem and result containers
# ---------------------------------------------------------------------------


@dataclass
class HybridProblem:
    """A model binding plus its uncertain inputs and QoI definition.

    ``run_batch(aleatory, epistemic, seeds, workers)`` must return one QoI
    value per row; ``aleatory`` columns follow ``aleatory_names`` and
    ``epistemic`` columns follow the epistemic vector ordering (degenerate
    interval coordinates included, pinned at their single value).
    """

    name: str
    aleatory_names: tuple
    aleatory_dists: tuple
    epistemic: EpistemicVector
    qoi_name: str
    run_batch: Callable[[np.ndarray, np.ndarray, np.ndarray, int], np.ndarray]
    analytic_conditional: Optional[Callable] = None
    output_time: float = 1.0

    def __post_init__(self):
        if len(self.aleatory_names) != len(self.aleatory_dists):
            raise ValueError("aleatory names/dists mismatch")
        if len(self.aleatory_dists) == 0 and len(self.epistemic) == 0:
            raise ValueError("problem needs at least one uncertain input")


@dataclass
class MPDEMSettings:
    """Solver settings for propagate_mpdem.

    ``bandwidth_scale`` multiplies the per-dimension bandwidth rule
    (scalar, or one entry per bundle dimension with the QoI first).
    ``family_nodes`` is the per-dimension epistemic evaluation grid;
    interval dimensions include their endpoints while p-box dimensions
    are shrunk ``edge_shrink`` bandwidths inside the truncated support.
    ``pbox_fine_nodes`` controls the quadrature grid used to integrate
    admissible mixtures for p-box inputs.
    """

    n_sel: int = 800
    strategy: str = "sobol"
    weights: str = "voronoi"
    n_pool: Optional[int] = None
    grid_n: int = 256
    bandwidth_scale: object = 1.0
    bandwidth_override: Optional[tuple] = None
    family_nodes: int = 33
    pbox_fine_nodes: int = 1024
    edge_shrink: float = 2.0
    eps_tail: float = 1e-4
    local_method: str = "loclin"
    monotone_threshold: float = 0.95
    seed: int = 0
    workers: int = 1


@dataclass
class PBoxResult:
    """Output p-box: bound curves plus the conditional family behind them."""

    x: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    conditional_coords: np.ndarray   # (n_fam, d) epistemic coordinates/tags
    conditional_cdfs: np.ndarray     # (n_fam, n_x)
    coord_names: tuple
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.lower = np.asarray(self.lower, dtype=float)
        self.upper = np.asarray(self.upper, dtype=float)
        if self.lower.shape != self.x.shape or self.upper.shape != self.x.shape:
            raise ValueError("bound curves must match the x grid")

    def envelope_violation(self) -> float:
        """Largest violation of lower <= member <= upper over the family."""
        if self.conditional_cdfs.size == 0:
            return 0.0
        over = np.max(self.conditional_cdfs - self.upper[None, :])
        under = np.max(self.lower[None, :] - self.conditional_cdfs)
        return float(max(over, under, 0.0))


# ---------------------------------------------------------------------------
# curve helpers
# ---------------------------------------------------------------------------


def empirical_cdf_on_grid(samples: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Right-continuous empirical CDF evaluated on a grid."""
    s = np.sort(np.asarray(samples, dtype=float))
    return np.searchsorted(s, x, side="right") / s.shape[0]


def ks_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Sup-norm distance between two curves on a shared grid."""
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def _enforce_monotone_outward(lower: np.ndarray, upper: np.ndarray):
    """Make bound curves nondecreasing, moving them only outward."""
    up = np.maximum.accumulate(upper)
    lo = np.minimum.accumulate(lower[::-1])[::-1]
    dev = max(float(np.max(up - upper)), float(np.max(lower - lo)))
    return np.clip(lo, 0.0, 1.0), np.clip(up, 0.0, 1.0), dev


def extremize_interval(family: np.ndarray) -> Tuple[np.ndarray, np.ndarray, dict]:
    """Pointwise min/max over a conditional-CDF family.

    Returns (lower, upper, info); the curves are forced monotone by an
    outward cumulative pass and the applied deviation is logged in info.
    """
    fam = np.atleast_2d(np.asarray(family, dtype=float))
    if fam.shape[0] == 0:
        raise EmptyFamily("no conditional CDFs")
    lower = fam.min(axis=0)
    upper = fam.max(axis=0)
    lower, upper, dev = _enforce_monotone_outward(lower, upper)
    return lower, upper, {"monotone_adjustment": dev}


def pbox_cell_masses(pbox: ScalarPBox, nodes: np.ndarray, kind: str) -> np.ndarray:
    """Cell masses of a bounding distribution on a node grid.

    Cells are midpoint-bounded with the first and last extending to
    +-infinity, so the masses sum to exactly one and tail mass is
    absorbed into the edge cells.
    """
    nodes = np.asarray(nodes, dtype=float)
    inner = 0.5 * (nodes[1:] + nodes[:-1])
    curve = pbox.upper if kind == "upper" else pbox.lower
    cdf_inner = np.clip(np.asarray(curve(inner), dtype=float), 0.0, 1.0)
    cdf = np.concatenate(([0.0], cdf_inner, [1.0]))
    masses = np.diff(cdf)
    masses = np.maximum(masses, 0.0)
    total = masses.sum()
    if total <= 0:
        raise EngineError("bounding distribution carries no mass on the grid")
    masses /= total
    masses[np.argmax(masses)] += 1.0 - masses.sum()
    return masses


def _slab_bounds(values: np.ndarray, lower_cum: np.ndarray,
                 upper_cum: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Exact extremes of sum_k w_k * v_k over discrete admissible masses.

    ``lower_cum``/``upper_cum`` are the cumulative-mass bounds at the cell
    right boundaries (last entry 1).  Probability is split into slabs at
    every cumulative breakpoint; each slab may sit in any cell of its
    focal window, and because the windows are nested across slabs the
    per-slab extreme placements are jointly feasible.  This is the greedy
    allocation by sorted conditional value, evaluated for all x at once.
    """
    v = np.atleast_2d(values)           # (K, n_x)
    k_count = v.shape[0]
    lo = np.clip(lower_cum, 0.0, 1.0)
    up = np.clip(upper_cum, 0.0, 1.0)
    alphas = np.unique(np.concatenate(([0.0, 1.0], lo, up)))
    sizes = np.diff(alphas)
    lo_prev = np.concatenate(([0.0], lo[:-1]))
    upper_out = np.zeros(v.shape[1])
    lower_out = np.zeros(v.shape[1])
    for m in range(sizes.shape[0]):
        s = sizes[m]
        if s <= 0.0:
            continue
        a_lo, a_hi = alphas[m], alphas[m + 1]
        k_min = int(np.searchsorted(up, a_hi - 1e-15, side="left"))
        k_max = int(np.searchsorted(lo_prev, a_lo + 1e-15, side="right")) - 1
        k_min = min(k_min, k_count - 1)
        k_max = max(k_max, k_min)
        window = v[k_min:k_max + 1]
        upper_out += s * window.max(axis=0)
        lower_out += s * window.min(axis=0)
    return lower_out, upper_out


def extremize_pbox_input(theta_nodes: np.ndarray, family: np.ndarray,
                         pbox: ScalarPBox, monotone_threshold: float = 0.95,
                         ) -> Tuple[np.ndarray, np.ndarray, dict]:
    """CDF bounds when the epistemic input is a p-box.

    The bound at each x extremizes the mixture of conditional CDFs over
    all input distributions admissible for the p-box.  When the family is
    monotone in theta at (almost) every x the optimum is one of the two
    bounding distributions, so the bounds reduce to mixtures under their
    cell masses; otherwise the exact discrete optimum over the grid is
    computed by slab allocation.
    """
    fam = np.atleast_2d(np.asarray(family, dtype=float))
    if fam.shape[0] == 0:
        raise EmptyFamily("no conditional CDFs")
    nodes = np.asarray(theta_nodes, dtype=float)
    m_up = pbox_cell_masses(pbox, nodes, "upper")
    m_lo = pbox_cell_masses(pbox, nodes, "lower")
    cand_up = m_up @ fam
    cand_lo = m_lo @ fam
    diffs = np.diff(fam, axis=0)
    tol = 1e-12
    rising = np.any(diffs > tol, axis=0)
    falling = np.any(diffs < -tol, axis=0)
    frac_monotone = float(np.mean(~(rising & falling))) if fam.shape[0] > 1 else 1.0
    info = {"monotone_fraction": frac_monotone}
    if frac_monotone >= monotone_threshold:
        upper = np.maximum(cand_up, cand_lo)
        lower = np.minimum(cand_up, cand_lo)
        info["path"] = "monotone-shortcut"
    else:
        inner = 0.5 * (nodes[1:] + nodes[:-1])
        up_cum = np.concatenate(
            (np.clip(pbox.upper(inner), 0.0, 1.0), [1.0]))
        lo_cum = np.concatenate(
            (np.clip(pbox.lower(inner), 0.0, 1.0), [1.0]))
        lower, upper = _slab_bounds(fam, lo_cum, up_cum)
        info["path"] = "general-slab"
    lower, upper, dev = _enforce_monotone_outward(lower, upper)
    info["monotone_adjustment"] = dev
    return lower, upper, info


# ---------------------------------------------------------------------------
# the single-loop engine
# ---------------------------------------------------------------------------


def _active_epistemic(problem: HybridProblem):
    """Indices of non-degenerate epistemic coordinates."""
    active, fixed = [], {}
    for i, coord in enumerate(problem.epistemic.coords):
        if isinstance(coord, IntervalParam) and coord.is_degenerate:
            fixed[i] = coord.lower
        else:
            active.append(i)
    return active, fixed


def _family_grid_1d(coord, pseudo_support, n_nodes, bandwidth, edge_shrink):
    lo, hi = pseudo_support
    if isinstance(coord, ScalarPBox):
        lo += edge_shrink * bandwidth
        hi -= edge_shrink * bandwidth
        if lo >= hi:
            raise EngineError("edge shrink exceeded the truncated support")
    return np.linspace(lo, hi, n_nodes)


def propagate_mpdem(problem: HybridProblem,
                    settings: Optional[MPDEMSettings] = None) -> "PBoxResult":
    """Single-loop hybrid propagation via decoupled density evolution."""
    st = settings or MPDEMSettings()
    t_start = time.perf_counter()
    active, fixed = _active_epistemic(problem)
    d_epi = len(active)
    if d_epi > 3:
        raise EngineError("epistemic dimension above 3 is not supported")
    if d_epi > 2:
        warnings.warn("more than two epistemic parameters: accuracy degrades "
                      "with affordable sample counts", stacklevel=2)

    epi_active = EpistemicVector(
        names=tuple(problem.epistemic.names[i] for i in active),
        coords=tuple(problem.epistemic.coords[i] for i in active))
    pseudo = (assign_pseudo_density(epi_active, eps_tail=st.eps_tail)
              if d_epi else PseudoDensity(supports=()))

    # representative points over aleatory x pseudo-epistemic space
    d_alea = len(problem.aleatory_dists)
    space = list(problem.aleatory_dists) + [
        d for d in pseudo.as_distributions() if d is not None]
    pts = select_representative_points(
        space, st.n_sel, strategy=st.strategy, seed=st.seed,
        n_pool=st.n_pool, weights=st.weights)
    alea_mat = pts.points[:, :d_alea]
    epi_mat_active = pts.points[:, d_alea:]
    epi_full = np.empty((st.n_sel, len(problem.epistemic)))
    for col, i in enumerate(active):
        epi_full[:, i] = epi_mat_active[:, col]
    for i, val in fixed.items():
        epi_full[:, i] = val

    seeds = np.random.SeedSequence(st.seed).generate_state(st.n_sel)
    qoi = np.asarray(problem.run_batch(alea_mat, epi_full, seeds, st.workers),
                     dtype=float)
    if qoi.shape != (st.n_sel,):
        raise EngineError("model returned a malformed QoI batch")

    # bundle over [qoi, active epistemic channels]; the pseudo process is
    # linear in time so the final-time channel equals the coordinate itself
    dim_names = (problem.qoi_name,) + epi_active.names
    values = np.column_stack([qoi, epi_mat_active]) if d_epi else qoi[:, None]
    extent = None
    qoi_support = getattr(problem, "qoi_support", None)
    if qoi_support is not None:
        extent = [qoi_support(epi_full)] + [None] * d_epi
    bundle = build_bundle(dim_names, values, pts.probabilities,
                          grid_n=st.grid_n,
                          bandwidth_scale=st.bandwidth_scale,
                          bandwidth_override=st.bandwidth_override,
                          grid_extent=extent)
    if problem.analytic_conditional is not None:
        for q in range(st.n_sel):
            dens = problem.analytic_conditional(epi_full[q])
            inject_analytic_conditional(bundle, q, 0, dens)

    x_grid = bundle.grids[0].nodes
    prov = {
        "engine": "mpdem",
        "n_sel": st.n_sel,
        "seed": st.seed,
        "strategy": st.strategy,
        "weights": pts.metadata.get("weights"),
        "local_method": st.local_method,
        "bandwidths": bundle.bandwidths.tolist(),
        "kernel_backend": __import__("pbdem._kernels", fromlist=["backend"]).backend(),
    }

    if d_epi == 0:
        cols = bundle.unit_cdf_columns(0, x_grid)
        marginal = pts.probabilities @ cols
        marginal = np.clip(np.maximum.accumulate(marginal), 0.0, 1.0)
        prov["runtime_s"] = time.perf_counter() - t_start
        return PBoxResult(x_grid, marginal.copy(), marginal.copy(),
                          np.empty((1, 0)), marginal[None, :], (),
                          provenance=prov)

    band_epi = bundle.bandwidths[1:]
    axes = [_family_grid_1d(epi_active.coords[c], pseudo.supports[c],
                            st.family_nodes, band_epi[c], st.edge_shrink)
            for c in range(d_epi)]
    mesh = np.array(list(iter_product(*axes)))
    if st.n_sel < 8 * mesh.shape[0]:
        raise InsufficientPoints(
            f"n_sel={st.n_sel} < 8 x {mesh.shape[0]} evaluation nodes")
    _, fam = conditional_cdf_family(bundle, mesh, qoi_dim=0,
                                    method=st.local_method)

    kinds = ["pbox" if isinstance(c, ScalarPBox) else "interval"
             for c in epi_active.coords]
    if all(k == "interval" for k in kinds):
        lower, upper, info = extremize_interval(fam)
        prov.update(info)
        coords, cdfs = _thin_family(mesh, fam, axes)
    elif kinds == ["pbox"]:
        fine = _family_grid_1d(epi_active.coords[0], pseudo.supports[0],
                               st.pbox_fine_nodes, band_epi[0],
                               st.edge_shrink)
        _, fam_fine = conditional_cdf_family(bundle, fine[:, None],
                                             qoi_dim=0,
                                             method=st.local_method)
        lower, upper, info = extremize_pbox_input(
            fine, fam_fine, epi_active.coords[0],
            monotone_threshold=st.monotone_threshold)
        prov.update(info)
        coords, cdfs = _mixture_family(fine, fam_fine, epi_active.coords[0])
    elif kinds.count("pbox") == 1:
        lower, upper, info, coords, cdfs = _mixed_bounds(
            bundle, epi_active, pseudo, kinds, st)
        prov.update(info)
    else:
        raise EngineError("at most one p-box epistemic coordinate is "
                          "supported alongside intervals")

    lower, upper, dev = _enforce_monotone_outward(lower, upper)
    prov["monotone_adjustment"] = max(dev, prov.get("monotone_adjustment", 0.0))
    prov["runtime_s"] = time.perf_counter() - t_start
    return PBoxResult(x_grid, lower, upper, coords, cdfs,
                      coord_names=epi_active.names, provenance=prov)


def _thin_family(mesh: np.ndarray, fam: np.ndarray, axes: List[np.ndarray],
                 cap: int = 128):
    """Stored conditional subset: everything if small, otherwise the
    per-dimension end/mid nodes (the interval vertices stay included)."""
    if mesh.shape[0] <= cap:
        return mesh, fam
    picks = []
    for ax in axes:
        n = ax.shape[0]
        picks.append(sorted({0, n // 2, n - 1}))
    keep_coords = set(iter_product(*[[axes[i][j] for j in picks[i]]
                                     for i in range(len(axes))]))
    mask = np.array([tuple(row) in keep_coords for row in mesh])
    return mesh[mask], fam[mask]


def _mixture_family(nodes: np.ndarray, fam: np.ndarray, pbox: ScalarPBox,
                    n_members: int = 5):
    """Admissible-mixture family for p-box inputs.

    Members are mixtures under t * upper + (1 - t) * lower bounding
    masses; each is the output CDF of one admissible input distribution
    and therefore lies inside the computed bounds.
    """
    m_up = pbox_cell_masses(pbox, nodes, "upper")
    m_lo = pbox_cell_masses(pbox, nodes, "lower")
    ts = np.linspace(0.0, 1.0, n_members)
    cdfs = np.array([(t * m_up + (1.0 - t) * m_lo) @ fam for t in ts])
    return ts[:, None], cdfs


def _mixed_bounds(bundle: SubPDFBundle, epi: EpistemicVector,
                  pseudo: PseudoDensity, kinds: List[str],
                  st: MPDEMSettings):
    """One p-box coordinate combined with interval coordinates."""
    band_epi = bundle.bandwidths[1:]
    p_idx = kinds.index("pbox")
    pbox = epi.coords[p_idx]
    fine_n = min(st.pbox_fine_nodes, 256)
    axes = []
    for c, kind in enumerate(kinds):
        n = fine_n if kind == "pbox" else st.family_nodes
        axes.append(_family_grid_1d(epi.coords[c], pseudo.supports[c], n,
                                    band_epi[c], st.edge_shrink))
    mesh = np.array(list(iter_product(*axes)))
    _, fam = conditional_cdf_family(bundle, mesh, qoi_dim=0,
                                    method=st.local_method)
    shape = [ax.shape[0] for ax in axes]
    fam_t = fam.reshape(shape + [fam.shape[1]])
    fam_t = np.moveaxis(fam_t, p_idx, 0)           # pbox axis first
    flat = fam_t.reshape(shape[p_idx], -1, fam.shape[1])
    lowers, uppers = [], []
    info = {}
    for j in range(flat.shape[1]):
        lo, up, info = extremize_pbox_input(
            axes[p_idx], flat[:, j, :], pbox,
            monotone_threshold=st.monotone_threshold)
        lowers.append(lo)
        uppers.append(up)
    lower = np.min(np.array(lowers), axis=0)
    upper = np.max(np.array(uppers), axis=0)
    mixtures = np.array([0.5 * (lo + up) for lo, up in zip(lowers, uppers)])
    coords = np.arange(mixtures.shape[0], dtype=float)[:, None]
    return lower, upper, info, coords, np.clip(mixtures, 0.0, 1.0)


# ---------------------------------------------------------------------------
# reference engines
# ---------------------------------------------------------------------------


def _common_x_grid(samples: np.ndarray, n_x: int = 512) -> np.ndarray:
    lo = float(np.min(samples))
    hi = float(np.max(samples))
    pad = 0.05 * max(hi - lo, abs(hi), 1e-12)
    return np.linspace(lo - pad, hi + pad, n_x)


def dl_mcs(problem: HybridProblem, n_outer: int, n_inner: int, seed: int = 0,
           workers: int = 1, budget_cap: int = 10_000_000,
           n_x: int = 512) -> PBoxResult:
    """Double-loop Monte Carlo reference engine.

    Interval coordinates get an endpoint-inclusive uniform outer grid and
    the bounds are the pointwise envelope of the empirical conditional
    CDFs.  A single p-box coordinate gets, per bounding distribution, an
    outer grid at stratum-midpoint quantiles with the bounds formed from
    the equal-weight mixtures (exact for monotone problems).
    """
    t_start = time.perf_counter()
    active, fixed = _active_epistemic(problem)
    kinds = ["pbox" if isinstance(problem.epistemic.coords[i], ScalarPBox)
             else "interval" for i in active]
    if kinds.count("pbox") > 1 or (kinds.count("pbox") == 1 and len(kinds) > 1):
        raise EngineError("dl_mcs supports all-interval epistemic inputs or "
                          "a single p-box input")

    # outer grids
    tags = []
    if not active:
        outer = [()]
    elif kinds == ["pbox"]:
        pbox = problem.epistemic.coords[active[0]]
        pseudo = assign_pseudo_density(EpistemicVector(
            names=("p",), coords=(pbox,)))
        lo, hi = pseudo.supports[0]
        qs = (np.arange(n_outer) + 0.5) / n_outer
        from .uncertainty import _solve_curve
        up_nodes = [_solve_curve(pbox.upper, q, lo, hi) for q in qs]
        lo_nodes = [_solve_curve(pbox.lower, q, lo, hi) for q in qs]
        outer = [(v,) for v in up_nodes + lo_nodes]
        tags = ["upper"] * n_outer + ["lower"] * n_outer
    else:
        axes = []
        for i in active:
            c = problem.epistemic.coords[i]
            axes.append(np.linspace(c.lower, c.upper, n_outer))
        outer = list(iter_product(*axes))

    d_alea = len(problem.aleatory_dists)
    inner = n_inner if d_alea > 0 else 1
    if len(outer) * inner > budget_cap:
        raise BudgetExceeded(
            f"{len(outer)} x {inner} runs exceed the cap {budget_cap}")

    ss = np.random.SeedSequence(seed)
    node_seeds = ss.generate_state(2 * len(outer))
    all_samples = []
    for k, node in enumerate(outer):
        alea = sample_aleatory(problem.aleatory_dists, inner,
                               seed=int(node_seeds[2 * k]))
        epi = np.empty((inner, len(problem.epistemic)))
        for col, i in enumerate(active):
            epi[:, i] = node[col]
        for i, val in fixed.items():
            epi[:, i] = val
        run_seeds = (np.random.SeedSequence(int(node_seeds[2 * k + 1]))
                     .generate_state(inner))
        vals = np.asarray(problem.run_batch(alea, epi, run_seeds, workers),
                          dtype=float)
        all_samples.append(vals)

    x = _common_x_grid(np.concatenate(all_samples), n_x)
    fam = np.array([empirical_cdf_on_grid(s, x) for s in all_samples])

    prov = {"engine": "dl-mcs", "n_outer": len(outer), "n_inner": inner,
            "seed": seed}
    if tags:
        mix_up = fam[:n_outer].mean(axis=0)      # strata of the upper curve
        mix_lo = fam[n_outer:].mean(axis=0)
        upper = np.maximum(mix_up, mix_lo)
        lower = np.minimum(mix_up, mix_lo)
        coords = np.array([[0.0], [1.0]])
        cdfs = np.array([mix_lo, mix_up])
    else:
        lower, upper, info = extremize_interval(fam)
        prov.update(info)
        coords = np.array(outer, dtype=float).reshape(len(outer), -1)
        cdfs = fam
    lower, upper, _ = _enforce_monotone_outward(lower, upper)
    prov["runtime_s"] = time.perf_counter() - t_start
    names = tuple(problem.epistemic.names[i] for i in active)
    return PBoxResult(x, lower, upper, coords, cdfs, names, provenance=prov)


def vertex_mcs(problem: HybridProblem, n_per_vertex: int = 1000,
               seed: int = 0, workers: int = 1, n_x: int = 512) -> PBoxResult:
    """Monte Carlo at the interval-vertex combinations.

    An inner approximation of the true bounds (exact under monotonicity);
    flagged as such in the provenance.
    """
    t_start = time.perf_counter()
    active, fixed = _active_epistemic(problem)
    for i in active:
        if not isinstance(problem.epistemic.coords[i], IntervalParam):
            raise EngineError("vertex_mcs requires interval epistemic inputs")
    d = len(active)
    if d > 10:
        raise TooManyVertices(f"2^{d} vertex combinations")
    vertices = list(iter_product(*[
        (problem.epistemic.coords[i].lower, problem.epistemic.coords[i].upper)
        for i in active])) or [()]

    ss = np.random.SeedSequence(seed)
    node_seeds = ss.generate_state(2 * len(vertices))
    all_samples = []
    inner = n_per_vertex if problem.aleatory_dists else 1
    for k, vert in enumerate(vertices):
        alea = sample_aleatory(problem.aleatory_dists, inner,
                               seed=int(node_seeds[2 * k]))
        epi = np.empty((inner, len(problem.epistemic)))
        for col, i in enumerate(active):
            epi[:, i] = vert[col]
        for i, val in fixed.items():
            epi[:, i] = val
        run_seeds = (np.random.SeedSequence(int(node_seeds[2 * k + 1]))
                     .generate_state(inner))
        vals = np.asarray(problem.run_batch(alea, epi, run_seeds, workers),
                          dtype=float)
        all_samples.append(vals)

    x = _common_x_grid(np.concatenate(all_samples), n_x)
    fam = np.array([empirical_cdf_on_grid(s, x) for s in all_samples])
    lower, upper, info = extremize_interval(fam)
    prov = {"engine": "vertex-mcs", "n_per_vertex": inner, "seed": seed,
            "approximation": "inner (exact under monotonicity)"}
    prov.update(info)
    prov["runtime_s"] = time.perf_counter() - t_start
    names = tuple(problem.epistemic.names[i] for i in active)
    coords = np.array(vertices, dtype=float).reshape(len(vertices), -1)
    return PBoxResult(x, lower, upper, coords, fam, names, provenance=prov)


def envelope_check(outer: PBoxResult, inner: PBoxResult, tol: float) -> dict:
    """Containment report: does ``outer`` envelope ``inner`` within tol?

    Curves are compared on the outer result's grid after monotone
    interpolation.  Violations are one-sided: the outer upper curve must
    not fall below the inner upper curve by more than tol, and likewise
    for the lower curves.
    """
    x = outer.x
    in_up = np.interp(x, inner.x, inner.upper)
    in_lo = np.interp(x, inner.x, inner.lower)
    viol_upper = float(np.max(in_up - outer.upper))
    viol_lower = float(np.max(outer.lower - in_lo))
    return {
        "violation_upper": max(viol_upper, 0.0),
        "violation_lower": max(viol_lower, 0.0),
        "ks_upper": ks_distance(outer.upper, in_up),
        "ks_lower": ks_distance(outer.lower, in_lo),
        "tol": tol,
        "pass": viol_upper <= tol and viol_lower <= tol,
    }
