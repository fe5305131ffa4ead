"""Decoupled density evolution over representative points.

For each representative point q and each response dimension i, the
advected density with delta initial data collapses to a moving point
mass, so the final-time solution is the point's response value carrying
its assigned probability.  Numerically every such point mass becomes a
Gaussian kernel slice on a per-dimension grid.  The joint density is
never stored densely: it is the weighted sum over points of the product
of per-dimension unit kernels, which reproduces the product/assembly
identity exactly while storing only n_sel * sum_i(n_i) values.

Conditionals on epistemic coordinates are ratios of the same kernel
sums.  Two weight schemes are provided: the plain ratio
(Nadaraya-Watson) and a local-linear correction that removes the
first-order boundary bias at interval endpoints, which the propagation
engines need to meet their envelope tolerances at interval vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .errors import (BadDensity, DimensionMismatch, OffGrid, ZeroMarginal)
from .uncertainty import PseudoDensity

__all__ = [
    "Grid1D",
    "SubPDFBundle",
    "JointPDFView",
    "AugmentedResponseSpec",
    "pseudo_process_value",
    "solve_lichen_1d",
    "build_bundle",
    "assemble_joint",
    "marginal_of_joint",
    "conditional_pdf",
    "inject_analytic_conditional",
    "conditional_cdf_family",
    "mixture_weights",
    "save_bundle",
    "load_bundle",
]

_SQRT2PI = np.sqrt(2.0 * np.pi)


@dataclass(frozen=True)
class Grid1D:
    """Uniform 1-D grid."""

    lower: float
    upper: float
    n: int

    def __post_init__(self):
        if self.n < 16:
            raise ValueError("grid needs at least 16 nodes")
        if not self.upper > self.lower:
            raise ValueError("grid bounds out of order")

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.lower, self.upper, self.n)

    @property
    def spacing(self) -> float:
        return (self.upper - self.lower) / (self.n - 1)


def pseudo_process_value(theta_e: float, t: float, t_bar: float) -> float:
    """Linear-in-time pseudo channel (t / T) * theta; equals theta at T."""
    if not 0.0 <= t <= t_bar:
        raise ValueError("need 0 <= t <= T")
    return (t / t_bar) * theta_e


def _weighted_std(values: np.ndarray, probs: np.ndarray) -> Tuple[float, float]:
    mean = float(np.sum(probs * values))
    var = float(np.sum(probs * (values - mean) ** 2))
    return mean, np.sqrt(max(var, 0.0))


def _gauss(nodes: np.ndarray, center: float, b: float) -> np.ndarray:
    u = (nodes - center) / b
    return np.exp(-0.5 * u * u) / (b * _SQRT2PI)


def solve_lichen_1d(value: float, prob: float, grid: Grid1D,
                    bandwidth: float) -> np.ndarray:
    """Final-time slice: the translated point mass as a Gaussian kernel.

    Node values of prob * K_b(z - value).  Raises OffGrid when the kernel
    center sits within 4 bandwidths of a grid edge (mass would leak).
    """
    if not np.isfinite(value):
        raise ValueError("slice value must be finite")
    if bandwidth <= 0:
        raise ValueError("bandwidth must be > 0")
    if value < grid.lower + 4.0 * bandwidth or value > grid.upper - 4.0 * bandwidth:
        raise OffGrid(f"value {value:.6g} within 4 bandwidths of a grid edge")
    return prob * _gauss(grid.nodes, value, bandwidth)


@dataclass
class SubPDFBundle:
    """Per-point, per-dimension gridded slices plus assigned probabilities.

    ``values[q, i]`` is the final-time response of point q in dimension i;
    a slice is either the Gaussian kernel around that value or an
    injected analytic density (keyed by (q, i)).  Slices are materialized
    to node arrays on demand; the parametric form is used wherever exact
    kernel evaluation is cheaper.
    """

    dim_names: tuple
    grids: tuple                # Grid1D per dimension
    values: np.ndarray          # (n_sel, m)
    probabilities: np.ndarray   # (n_sel,)
    bandwidths: np.ndarray      # (m,)
    injected: Dict[Tuple[int, int], np.ndarray] = field(default_factory=dict)
    _slices: Optional[list] = field(default=None, repr=False)

    def __post_init__(self):
        self.values = np.atleast_2d(np.asarray(self.values, dtype=float))
        self.probabilities = np.asarray(self.probabilities, dtype=float)
        self.bandwidths = np.asarray(self.bandwidths, dtype=float)
        if self.values.shape != (self.n_sel, self.m):
            raise DimensionMismatch("values shape mismatch")
        if len(self.grids) != self.m or len(self.dim_names) != self.m:
            raise DimensionMismatch("grids/names mismatch")

    @property
    def n_sel(self) -> int:
        return self.probabilities.shape[0]

    @property
    def m(self) -> int:
        return len(self.dim_names)

    # -- slices -----------------------------------------------------------

    def slice_values(self, q: int, i: int) -> np.ndarray:
        """Node values of slice (q, i), mass = P^(q)."""
        if (q, i) in self.injected:
            return self.injected[(q, i)]
        return solve_lichen_1d(self.values[q, i], self.probabilities[q],
                               self.grids[i], self.bandwidths[i])

    def slice_matrix(self, i: int) -> np.ndarray:
        """All slices of dimension i, (n_sel, n_i)."""
        nodes = self.grids[i].nodes
        b = self.bandwidths[i]
        lo = self.grids[i].lower + 4.0 * b
        hi = self.grids[i].upper - 4.0 * b
        v = self.values[:, i]
        if np.any((v < lo) | (v > hi)):
            q = int(np.argmax((v < lo) | (v > hi)))
            raise OffGrid(f"value {v[q]:.6g} (point {q}, dim {i}) within "
                          f"4 bandwidths of a grid edge")
        u = (v[:, None] - nodes[None, :]) / b
        mat = np.exp(-0.5 * u * u) / (b * _SQRT2PI) \
            * self.probabilities[:, None]
        for (q, j), arr in self.injected.items():
            if j == i:
                mat[q] = arr
        return mat

    def materialize(self) -> int:
        """Materialize all slices; returns the stored value count."""
        self._slices = [self.slice_matrix(i) for i in range(self.m)]
        return self.storage_size()

    def storage_size(self) -> int:
        """Stored node values across all slices: n_sel * sum_i(n_i)."""
        return int(self.n_sel * sum(g.n for g in self.grids))

    def dense_size(self) -> int:
        """Node count of the dense product grid: prod_i(n_i)."""
        return int(np.prod([g.n for g in self.grids]))

    def slice_mass(self, q: int, i: int) -> float:
        """Trapezoidal mass of slice (q, i)."""
        return float(np.trapezoid(self.slice_values(q, i),
                                  dx=self.grids[i].spacing))

    def unit_cdf_columns(self, i: int, x: np.ndarray) -> np.ndarray:
        """Per-point unit-mass conditional CDFs of dimension i at x.

        Kernel slices give the exact Gaussian CDF; injected slices are
        integrated by cumulative trapezoid on their grid and
        interpolated.
        """
        from scipy.special import ndtr
        out = ndtr((x[None, :] - self.values[:, i][:, None])
                   / self.bandwidths[i])
        for (q, j), arr in self.injected.items():
            if j != i:
                continue
            g = self.grids[i]
            dens = arr / self.probabilities[q]
            cdf = np.concatenate(
                ([0.0], np.cumsum(0.5 * (dens[1:] + dens[:-1]) * g.spacing)))
            out[q] = np.interp(x, g.nodes, cdf, left=0.0, right=cdf[-1])
        return np.clip(out, 0.0, 1.0)


def default_grid(values: np.ndarray, probs: np.ndarray, n: int = 256,
                 pad_sigmas: float = 5.0,
                 bandwidth_hint: float = 0.0) -> Grid1D:
    """Grid spanning the weighted mean +- pad_sigmas weighted std.

    Extended if needed so every value stays at least 5 kernel bandwidths
    inside the edges.
    """
    mean, std = _weighted_std(values, probs)
    if std == 0.0:
        std = max(abs(mean) * 1e-6, 1e-9)
    pad = 5.0 * bandwidth_hint
    lo = min(mean - pad_sigmas * std, float(np.min(values)) - pad)
    hi = max(mean + pad_sigmas * std, float(np.max(values)) + pad)
    if pad == 0.0:
        span = hi - lo
        lo -= 0.02 * span
        hi += 0.02 * span
    return Grid1D(lo, hi, n)


def bandwidth_rule(values: np.ndarray, probs: np.ndarray, grid: Grid1D,
                   scale: float = 1.0) -> float:
    """Per-dimension kernel bandwidth: scale * std * n^(-1/5), floored at
    two grid steps."""
    _, std = _weighted_std(values, probs)
    n = values.shape[0]
    b = scale * std * n ** (-0.2)
    return float(max(b, 2.0 * grid.spacing))


def build_bundle(dim_names: Sequence[str], values: np.ndarray,
                 probabilities: np.ndarray, grid_n: int = 256,
                 bandwidth_scale=1.0,
                 bandwidth_override: Optional[Sequence] = None,
                 grid_extent: Optional[Sequence] = None,
                 ) -> SubPDFBundle:
    """Assemble a bundle from response values and assigned probabilities.

    ``bandwidth_scale`` may be a scalar or per-dimension sequence; an
    explicit ``bandwidth_override`` entry (not None) wins over the rule.
    A ``grid_extent`` entry (lo, hi) widens that dimension's default grid
    to at least the given range (needed when injected densities spread
    beyond the point values).
    """
    values = np.atleast_2d(np.asarray(values, dtype=float))
    probs = np.asarray(probabilities, dtype=float)
    m = values.shape[1]
    scales = np.broadcast_to(np.asarray(bandwidth_scale, dtype=float), (m,))
    grids = []
    bands = []
    for i in range(m):
        mean, std = _weighted_std(values[:, i], probs)
        hint = scales[i] * std * values.shape[0] ** (-0.2)
        g = default_grid(values[:, i], probs, n=grid_n, bandwidth_hint=hint)
        if grid_extent is not None and grid_extent[i] is not None:
            lo, hi = grid_extent[i]
            g = Grid1D(min(g.lower, float(lo)), max(g.upper, float(hi)),
                       grid_n)
        b = bandwidth_rule(values[:, i], probs, g, scale=scales[i])
        if bandwidth_override is not None and bandwidth_override[i] is not None:
            b = float(bandwidth_override[i])
        grids.append(g)
        bands.append(b)
    return SubPDFBundle(dim_names=tuple(dim_names), grids=tuple(grids),
                        values=values, probabilities=probs,
                        bandwidths=np.array(bands))


# ---------------------------------------------------------------------------
# joint view
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JointPDFView:
    """Lazy joint density over a bundle.

    Evaluation applies the assembly identity directly:
    p(z) = sum_q P_q * prod_i [slice_{q,i}(z_i) / P_q].  The dense product
    grid is materialized only on request and only for m <= 3.
    """

    bundle: SubPDFBundle

    def _unit_density_matrix(self, i: int, z: np.ndarray) -> np.ndarray:
        """(n_eval, n_sel) unit-mass densities of dimension i at z."""
        b = self.bundle
        band = b.bandwidths[i]
        u = (z[:, None] - b.values[:, i][None, :]) / band
        mat = np.exp(-0.5 * u * u) / (band * _SQRT2PI)
        for (q, j), arr in b.injected.items():
            if j == i:
                g = b.grids[i]
                mat[:, q] = np.interp(z, g.nodes, arr / b.probabilities[q],
                                      left=0.0, right=0.0)
        return mat

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        """Joint density at evaluation points z of shape (k, m)."""
        z = np.atleast_2d(np.asarray(z, dtype=float))
        if z.shape[1] != self.bundle.m:
            raise DimensionMismatch(
                f"expected {self.bundle.m} coordinates, got {z.shape[1]}")
        acc = np.tile(self.bundle.probabilities[None, :], (z.shape[0], 1))
        for i in range(self.bundle.m):
            acc = acc * self._unit_density_matrix(i, z[:, i])
        return acc.sum(axis=1)

    def materialize_dense(self) -> np.ndarray:
        """Dense tensor of the joint density on the product grid (m <= 3)."""
        b = self.bundle
        if b.m > 3:
            raise DimensionMismatch("dense materialization limited to m <= 3")
        units = [b.slice_matrix(i) / b.probabilities[:, None]
                 for i in range(b.m)]
        p = b.probabilities
        if b.m == 1:
            return np.einsum("q,qa->a", p, units[0])
        if b.m == 2:
            return np.einsum("q,qa,qb->ab", p, units[0], units[1])
        return np.einsum("q,qa,qb,qc->abc", p, units[0], units[1], units[2])

    def total_mass(self) -> float:
        """m-fold trapezoidal mass of the dense materialization (m <= 3)."""
        dense = self.materialize_dense()
        for i in range(self.bundle.m):
            dense = np.trapezoid(dense, dx=self.bundle.grids[i].spacing,
                                 axis=0)
        return float(dense)


def assemble_joint(bundle: SubPDFBundle) -> JointPDFView:
    """Joint PDF view over the bundle (lazy; see JointPDFView)."""
    return JointPDFView(bundle=bundle)


def marginal_of_joint(view: JointPDFView, dim: int) -> Tuple[Grid1D, np.ndarray]:
    """Marginal density of one dimension: the plain sum of its slices.

    Kernels in the other dimensions integrate to P^(q) each, cancelling
    the assembly weights exactly.
    """
    b = view.bundle
    if not 0 <= dim < b.m:
        raise DimensionMismatch(f"no dimension {dim}")
    return b.grids[dim], b.slice_matrix(dim).sum(axis=0)


def inject_analytic_conditional(bundle: SubPDFBundle, q: int, dim: int,
                                density: Callable[[np.ndarray], np.ndarray],
                                ) -> SubPDFBundle:
    """Replace slice (q, dim) with an analytic density sampled on its grid.

    The callable must be a unit-mass density on the grid (trapezoidal
    mass within 1e-6); the stored slice carries the extra P^(q) factor.
    """
    g = bundle.grids[dim]
    vals = np.asarray(density(g.nodes), dtype=float)
    if vals.shape != (g.n,):
        raise BadDensity("density must return one value per grid node")
    if np.any(vals < 0.0) or not np.all(np.isfinite(vals)):
        raise BadDensity("density must be finite and nonnegative")
    mass = float(np.trapezoid(vals, dx=g.spacing))
    if abs(mass - 1.0) > 1e-6:
        raise BadDensity(f"density mass {mass:.8f} != 1")
    bundle.injected[(q, dim)] = bundle.probabilities[q] * vals
    return bundle


# ---------------------------------------------------------------------------
# conditionals
# ---------------------------------------------------------------------------


def _theta_kernel_weights(bundle: SubPDFBundle, theta_dims: Sequence[int],
                          nodes: np.ndarray) -> np.ndarray:
    """(n_nodes, n_sel) base kernel weights P_q * prod_j K_j(node - value)."""
    nodes = np.atleast_2d(np.asarray(nodes, dtype=float))
    w = np.tile(bundle.probabilities[None, :], (nodes.shape[0], 1))
    for col, i in enumerate(theta_dims):
        b = bundle.bandwidths[i]
        u = (nodes[:, col][:, None] - bundle.values[:, i][None, :]) / b
        s2 = u * u
        w = w * np.where(s2 > 80.0, 0.0, np.exp(-0.5 * s2))
    return w


def _equivalent_weights(bundle: SubPDFBundle, theta_dims: Sequence[int],
                        nodes: np.ndarray, method: str) -> np.ndarray:
    """Normalized conditioning weights per node (rows sum to 1).

    "nw" divides the base kernel weights by their sum (the plain density
    ratio).  "loclin" solves the local-linear moment system per node,
    which keeps the weights first-moment-free and removes boundary bias;
    nodes with a degenerate moment system fall back to "nw".
    """
    nodes = np.atleast_2d(np.asarray(nodes, dtype=float))
    w = _theta_kernel_weights(bundle, theta_dims, nodes)
    sums = w.sum(axis=1)
    if np.any(sums < 1e-300):
        k = int(np.argmin(sums))
        raise ZeroMarginal(f"pseudo marginal vanished at node {nodes[k]}")
    if method == "nw":
        return w / sums[:, None]
    if method != "loclin":
        raise ValueError(f"unknown weight method {method!r}")
    d = len(theta_dims)
    out = np.empty_like(w)
    diffs = np.stack([bundle.values[:, i][None, :] - nodes[:, c][:, None]
                      for c, i in enumerate(theta_dims)], axis=2)  # (k,q,d)
    for k in range(nodes.shape[0]):
        wk = w[k]
        dk = diffs[k]  # (q, d)
        mom = np.empty((d + 1, d + 1))
        mom[0, 0] = wk.sum()
        first = wk @ dk
        mom[0, 1:] = first
        mom[1:, 0] = first
        mom[1:, 1:] = (wk[:, None] * dk).T @ dk
        rhs = np.zeros(d + 1)
        rhs[0] = 1.0
        try:
            coef = np.linalg.solve(mom, rhs)
        except np.linalg.LinAlgError:
            coef = None
        if coef is None or not np.all(np.isfinite(coef)):
            out[k] = wk / wk.sum()
        else:
            out[k] = wk * (coef[0] + dk @ coef[1:])
    return out


def conditional_pdf(view: JointPDFView, pseudo: PseudoDensity,
                    theta_star: Sequence[float],
                    qoi_dim: int = 0) -> Tuple[np.ndarray, np.ndarray, float]:
    """Conditional density of the QoI given the epistemic coordinates.

    Implements the pseudo-joint over pseudo-marginal ratio with the same
    kernels in numerator and denominator, then renormalizes on the QoI
    grid.  Returns (x_nodes, density, renormalization_residual).
    """
    b = view.bundle
    theta_dims = [i for i in range(b.m) if i != qoi_dim]
    theta_star = np.asarray(theta_star, dtype=float)
    if theta_star.shape[0] != len(theta_dims):
        raise DimensionMismatch("conditioning point dimension mismatch")
    w = _theta_kernel_weights(bundle=b, theta_dims=theta_dims,
                              nodes=theta_star[None, :])[0]
    denom = w.sum()
    if denom < 1e-12:
        raise ZeroMarginal(f"pseudo marginal below 1e-12 at {theta_star}")
    g = b.grids[qoi_dim]
    unit = b.slice_matrix(qoi_dim) / b.probabilities[:, None]
    dens = (w / denom) @ unit
    mass = float(np.trapezoid(dens, dx=g.spacing))
    if mass <= 0:
        raise ZeroMarginal("conditional density carries no mass on the grid")
    return g.nodes, dens / mass, abs(mass - 1.0)


def conditional_cdf_family(bundle: SubPDFBundle, nodes: np.ndarray,
                           qoi_dim: int = 0, method: str = "loclin",
                           x: Optional[np.ndarray] = None,
                           bin_count: int = 4096,
                           dense_limit: int = 20_000_000,
                           ) -> Tuple[np.ndarray, np.ndarray]:
    """Conditional CDFs of the QoI on a grid of epistemic nodes.

    Returns (x_grid, F) with F of shape (n_nodes, n_x), each row a
    monotone CDF clipped to [0, 1].  Small problems run the exact dense
    path; beyond ``dense_limit`` point-node pairs the points are binned
    (kde kernels) before smoothing, which quantizes QoI values to the
    bin width.
    """
    b = bundle
    nodes = np.atleast_2d(np.asarray(nodes, dtype=float))
    theta_dims = [i for i in range(b.m) if i != qoi_dim]
    if nodes.shape[1] != len(theta_dims):
        raise DimensionMismatch("node dimension mismatch")
    g = b.grids[qoi_dim]
    x_grid = g.nodes if x is None else np.asarray(x, dtype=float)
    n_pairs = b.n_sel * nodes.shape[0]
    if n_pairs <= dense_limit or b.injected:
        hw = _equivalent_weights(b, theta_dims, nodes, method)
        cols = b.unit_cdf_columns(qoi_dim, x_grid)
        fam = hw @ cols
    else:
        fam = _binned_family(b, theta_dims, nodes, x_grid, method, bin_count)
    fam = np.maximum.accumulate(fam, axis=1)
    return x_grid, np.clip(fam, 0.0, 1.0)


def _binned_family(bundle: SubPDFBundle, theta_dims, nodes, x_grid,
                   method: str, bin_count: int) -> np.ndarray:
    """Large-n family estimation via binned kernel deposits."""
    from scipy.special import ndtr
    b = bundle
    theta = np.ascontiguousarray(b.values[:, theta_dims])
    vals = np.ascontiguousarray(b.values[:, _qoi_dim_of(b, theta_dims)])
    inv_b = 1.0 / b.bandwidths[list(theta_dims)]
    moments = _kernels.kde_moments(theta, b.probabilities,
                                   np.ascontiguousarray(nodes), inv_b)
    d = len(theta_dims)
    n_nodes = nodes.shape[0]
    coef = np.zeros((n_nodes, 1 + d))
    for k in range(n_nodes):
        mom = np.empty((d + 1, d + 1))
        mom[0, 0] = moments[k, 0]
        mom[0, 1:] = moments[k, 1:1 + d]
        mom[1:, 0] = moments[k, 1:1 + d]
        col = 1 + d
        for i in range(d):
            for j in range(i, d):
                mom[1 + i, 1 + j] = moments[k, col]
                mom[1 + j, 1 + i] = moments[k, col]
                col += 1
        if mom[0, 0] < 1e-300:
            raise ZeroMarginal(f"pseudo marginal vanished at node {nodes[k]}")
        rhs = np.zeros(d + 1)
        rhs[0] = 1.0
        if method == "nw":
            coef[k, 0] = 1.0 / mom[0, 0]
            continue
        try:
            coef[k] = np.linalg.solve(mom, rhs)
        except np.linalg.LinAlgError:
            coef[k] = 0.0
            coef[k, 0] = 1.0 / mom[0, 0]
    lo = float(np.min(vals))
    hi = float(np.max(vals))
    pad = 1e-9 * max(1.0, abs(hi - lo))
    edges = np.linspace(lo - pad, hi + pad, bin_count + 1)
    hist = _kernels.kde_deposit(theta, b.probabilities, vals,
                                np.ascontiguousarray(nodes), inv_b, coef,
                                edges)
    centers = 0.5 * (edges[:-1] + edges[1:])
    smooth = ndtr((x_grid[None, :] - centers[:, None])
                  / b.bandwidths[_qoi_dim_of(b, theta_dims)])
    return hist @ smooth


def _qoi_dim_of(bundle: SubPDFBundle, theta_dims) -> int:
    rest = [i for i in range(bundle.m) if i not in theta_dims]
    if len(rest) != 1:
        raise DimensionMismatch("exactly one QoI dimension expected")
    return rest[0]


def mixture_weights(bundle: SubPDFBundle, theta_dim: int,
                    fine_nodes: np.ndarray, masses: np.ndarray,
                    method: str = "loclin") -> np.ndarray:
    """Per-point weights of a mixture over one epistemic dimension.

    Integrates the conditioning weights against a discrete measure
    (masses on fine_nodes): a_q = sum_k masses_k * w_q(node_k).  The
    resulting mixture CDF is  sum_q a_q * C_q(x).
    """
    hw = _equivalent_weights(bundle, [theta_dim], fine_nodes[:, None], method)
    return masses @ hw


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def save_bundle(path, bundle: SubPDFBundle) -> None:
    """Loss-free bundle serialization (npz).

    Layout: dim names, per-dimension grid specs (lower, upper, n),
    response values, assigned probabilities, bandwidths, and injected
    slices keyed by (q, i).
    """
    grid_spec = np.array([[g.lower, g.upper, g.n] for g in bundle.grids])
    inj_keys = np.array(sorted(bundle.injected.keys()), dtype=np.int64) \
        if bundle.injected else np.empty((0, 2), dtype=np.int64)
    payload = {
        "dim_names": np.array(bundle.dim_names),
        "grid_spec": grid_spec,
        "values": bundle.values,
        "probabilities": bundle.probabilities,
        "bandwidths": bundle.bandwidths,
        "injected_keys": inj_keys,
    }
    for idx, (q, i) in enumerate(map(tuple, inj_keys)):
        payload[f"injected_{idx}"] = bundle.injected[(int(q), int(i))]
    np.savez(path, **payload)


def load_bundle(path) -> SubPDFBundle:
    with np.load(path, allow_pickle=False) as data:
        grids = tuple(Grid1D(float(lo), float(hi), int(n))
                      for lo, hi, n in data["grid_spec"])
        injected = {}
        keys = data["injected_keys"]
        for idx, (q, i) in enumerate(map(tuple, keys)):
            injected[(int(q), int(i))] = data[f"injected_{idx}"]
        return SubPDFBundle(
            dim_names=tuple(str(s) for s in data["dim_names"]),
            grids=grids,
            values=data["values"],
            probabilities=data["probabilities"],
            bandwidths=data["bandwidths"],
            injected=injected,
        )
