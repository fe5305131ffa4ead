"""Built-in experiment problems.

Each factory returns a (HybridProblem, MPDEMSettings) pair: the problem
binds a deterministic model to its uncertain inputs, and the settings
carry the solver defaults tuned for that benchmark.  All models accept
batches as (aleatory matrix, epistemic matrix, per-row seeds, workers).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Dict, Optional, Tuple

import numpy as np

from .dynamics import (IPSDConfig, MDOFBoucWenConfig, SDOFConfig,
                       crash_energy, generate_spectral_realization,
                       generate_white_noise, ipsd_normalize, response_max,
                       simulate_boucwen, simulate_sdof)
from .propagate import HybridProblem, MPDEMSettings
from .uncertainty import (EpistemicVector, IntervalParam, ScalarDistribution,
                          lognormal_from_mean_cov, normal_band_pbox)

__all__ = [
    "PROBLEM_NAMES",
    "build_problem",
    "sdof_y1_problem",
    "sdof_y2_problem",
    "sdof_y2_sim_problem",
    "boucwen_problem",
    "crash_problem",
]

# SDOF benchmark constants
SDOF_S0 = 1.0
SDOF_ZETA = 0.05
OMEGA_PBOX = dict(mu1=1.9, mu2=2.1, sigma1=0.1, sigma2=0.2)

# 10-story frame excitation constants
BW_SIGMA2 = 1.06
BW_RHO0 = 17.33
BW_OMEGA0 = (23.91, 45.22)


def _y1_of_omega(omega: np.ndarray) -> np.ndarray:
    return np.pi * SDOF_S0 / (2.0 * SDOF_ZETA * np.asarray(omega) ** 3)


# ---------------------------------------------------------------------------
# SDOF problems
# ---------------------------------------------------------------------------


def sdof_y1_problem(zeta: float = SDOF_ZETA, s0: float = SDOF_S0,
                    ) -> Tuple[HybridProblem, MPDEMSettings]:
    """Stationary variance of the white-noise SDOF with a p-box frequency.

    The map omega -> pi*S0/(2*zeta*omega^3) is deterministic, so the only
    augmented coordinate is the p-box frequency itself.
    """
    pbox = normal_band_pbox(**OMEGA_PBOX)

    def run_batch(alea, epi, seeds, workers):
        return np.pi * s0 / (2.0 * zeta * epi[:, 0] ** 3)

    problem = HybridProblem(
        name="sdof-y1",
        aleatory_names=(), aleatory_dists=(),
        epistemic=EpistemicVector(names=("omega",), coords=(pbox,)),
        qoi_name="y1",
        run_batch=run_batch,
    )
    settings = MPDEMSettings(
        n_sel=800, strategy="sobol", weights="voronoi", grid_n=2048,
        bandwidth_scale=(0.05, 0.08), family_nodes=25, pbox_fine_nodes=1024,
        seed=7)
    return problem, settings


def sdof_y2_problem(zeta: float = SDOF_ZETA, s0: float = SDOF_S0,
                    ) -> Tuple[HybridProblem, MPDEMSettings]:
    """Stationary value of the white-noise SDOF with a p-box frequency.

    Only the frequency is sampled; the exact zero-mean Gaussian
    conditional with variance y1(omega) is injected as each point's QoI
    slice, so the kernel regularization never touches the QoI dimension.
    """
    pbox = normal_band_pbox(**OMEGA_PBOX)

    def run_batch(alea, epi, seeds, workers):
        return np.zeros(epi.shape[0])  # conditional mean; slices injected

    def analytic_conditional(epi_row):
        var = float(_y1_of_omega(epi_row[0]))

        def density(x):
            return np.exp(-0.5 * x * x / var) / np.sqrt(2.0 * np.pi * var)

        return density

    def qoi_support(epi):
        s = np.sqrt(float(np.max(_y1_of_omega(epi[:, 0]))))
        return (-5.5 * s, 5.5 * s)

    problem = HybridProblem(
        name="sdof-y2",
        aleatory_names=(), aleatory_dists=(),
        epistemic=EpistemicVector(names=("omega",), coords=(pbox,)),
        qoi_name="y2",
        run_batch=run_batch,
        analytic_conditional=analytic_conditional,
    )
    problem.qoi_support = qoi_support
    settings = MPDEMSettings(
        n_sel=200, strategy="sobol", weights="voronoi", grid_n=1025,
        bandwidth_scale=(0.15, 0.15), family_nodes=24, pbox_fine_nodes=1024,
        seed=11)
    return problem, settings


def _sdof_sim_rows(args):
    zeta, s0, dt, t_end, omegas, seeds = args
    out = np.empty(omegas.shape[0])
    for i in range(omegas.shape[0]):
        cfg = SDOFConfig(zeta=zeta, omega=float(omegas[i]), s0=s0)
        noise = generate_white_noise(s0, dt, t_end, int(seeds[i]))
        traj = simulate_sdof(cfg, noise, dt, t_end)
        out[i] = traj.channel("x")[-1]
    return out


def sdof_y2_sim_problem(zeta: float = SDOF_ZETA, s0: float = SDOF_S0,
                        dt: float = 0.01, t_end: float = 60.0,
                        ) -> Tuple[HybridProblem, MPDEMSettings]:
    """Trajectory-based variant of the stationary-value problem.

    Samples the white noise explicitly and reads X at the output time
    (chosen well past 10/(zeta*omega_min) so the state is stationary).
    Used for engine cross-validation.
    """
    pbox = normal_band_pbox(**OMEGA_PBOX)

    def run_batch(alea, epi, seeds, workers):
        return _run_chunked(_sdof_sim_rows,
                            (zeta, s0, dt, t_end),
                            (epi[:, 0], seeds), workers)

    problem = HybridProblem(
        name="sdof-y2-sim",
        aleatory_names=(), aleatory_dists=(),
        epistemic=EpistemicVector(names=("omega",), coords=(pbox,)),
        qoi_name="x_T",
        run_batch=run_batch,
        output_time=t_end,
    )
    settings = MPDEMSettings(
        n_sel=2000, strategy="sobol", weights="voronoi", grid_n=512,
        bandwidth_scale=(0.5, 0.3), family_nodes=33, seed=13)
    return problem, settings


# ---------------------------------------------------------------------------
# 10-story hysteretic frame
# ---------------------------------------------------------------------------


def _boucwen_rows(args):
    (sigma2, rho0, dt, t_end, n_harm, mass_fraction,
     thetas, omega0s, seeds) = args
    out = np.empty(omega0s.shape[0])
    beta0_cache: Dict[float, float] = {}
    for i in range(omega0s.shape[0]):
        w0 = float(omega0s[i])
        ipsd = IPSDConfig(sigma2=sigma2, rho0=rho0, omega0=w0)
        if w0 in beta0_cache:
            ipsd.beta0 = beta0_cache[w0]
        else:
            beta0_cache[w0] = ipsd_normalize(ipsd)
        ag = generate_spectral_realization(ipsd, dt, t_end, int(seeds[i]),
                                           n_harmonics=n_harm,
                                           mass_fraction=mass_fraction)
        cfg = MDOFBoucWenConfig(
            stiffness_scale=tuple(thetas[i, :10]),
            amplitude_scale=tuple(thetas[i, 10:20]))
        traj = simulate_boucwen(cfg, ag, dt, t_end)
        out[i] = response_max(traj, "x1")
    return out


def boucwen_problem(dt: float = 0.005, t_end: float = 10.0,
                    n_harmonics: int = 512, mass_fraction: float = 0.999,
                    ) -> Tuple[HybridProblem, MPDEMSettings]:
    """Peak first-story displacement of the degrading 10-story frame.

    Twenty random multipliers (uniform stiffness scales, lognormal
    hysteretic-amplitude scales) plus the spectral-representation phase
    set form the aleatory input; the predominant frequency of the ground
    acceleration spectrum is the epistemic interval.
    """
    alea_names = tuple(f"theta{i + 1}" for i in range(20))
    dists = tuple(ScalarDistribution("uniform", (0.7, 1.3))
                  for _ in range(10)) + tuple(
        lognormal_from_mean_cov(1.0, 0.15) for _ in range(10))

    def run_batch(alea, epi, seeds, workers):
        return _run_chunked(_boucwen_rows,
                            (BW_SIGMA2, BW_RHO0, dt, t_end, n_harmonics,
                             mass_fraction),
                            (alea, epi[:, 0], seeds), workers)

    problem = HybridProblem(
        name="boucwen",
        aleatory_names=alea_names, aleatory_dists=dists,
        epistemic=EpistemicVector(
            names=("omega0",), coords=(IntervalParam(*BW_OMEGA0),)),
        qoi_name="x_max",
        run_batch=run_batch,
        output_time=t_end,
    )
    # plain Monte Carlo with equal weights: the phase set drives the
    # random dimension far beyond what cell probabilities can resolve
    settings = MPDEMSettings(
        n_sel=1000, strategy="plain-mc", weights="equal", grid_n=512,
        bandwidth_scale=(0.4, 0.35), family_nodes=33, seed=21)
    return problem, settings


# ---------------------------------------------------------------------------
# crash-box surrogate
# ---------------------------------------------------------------------------


def crash_problem() -> Tuple[HybridProblem, MPDEMSettings]:
    """Absorbed energy of the toy crash surrogate.

    Five random shape/thickness/angle inputs; impactor mass and velocity
    are epistemic intervals.  The surrogate is analytic, so large
    representative sets are affordable.
    """
    alea_names = ("scale_x", "scale_y", "thickness", "angle_x", "angle_y")
    dists = (
        ScalarDistribution("normal", (1.0, 1.0 / 60.0)),
        ScalarDistribution("normal", (1.0, 1.0 / 60.0)),
        ScalarDistribution("normal", (1.0, 0.03286)),
        ScalarDistribution("uniform", (-1.0, 1.0)),
        ScalarDistribution("uniform", (-1.0, 1.0)),
    )

    def run_batch(alea, epi, seeds, workers):
        return crash_energy(alea[:, 0], alea[:, 1], alea[:, 2], alea[:, 3],
                            alea[:, 4], epi[:, 0], epi[:, 1])

    problem = HybridProblem(
        name="surrogate-crash",
        aleatory_names=alea_names, aleatory_dists=dists,
        epistemic=EpistemicVector(
            names=("m_impactor", "v_impactor"),
            coords=(IntervalParam(650.0, 950.0), IntervalParam(7.0, 11.0))),
        qoi_name="internal_energy",
        run_batch=run_batch,
    )
    settings = MPDEMSettings(
        n_sel=262_144, strategy="sobol", weights="equal", grid_n=512,
        bandwidth_scale=(0.35, 0.22, 0.22), family_nodes=33, seed=29)
    return problem, settings


# ---------------------------------------------------------------------------
# batch helpers
# ---------------------------------------------------------------------------


def _run_chunked(row_fn, static_args: tuple, row_args: tuple,
                 workers: int) -> np.ndarray:
    """Run a row function over index chunks, merging in index order.

    Results are independent of the worker count because chunk boundaries
    depend only on the row count and outputs are concatenated in order.
    """
    n = row_args[0].shape[0]
    workers = max(1, int(workers))
    n_chunks = max(1, min(n, workers * 4))
    bounds = np.linspace(0, n, n_chunks + 1).astype(int)
    jobs = []
    for c in range(n_chunks):
        lo, hi = bounds[c], bounds[c + 1]
        if lo == hi:
            continue
        jobs.append(static_args + tuple(a[lo:hi] for a in row_args))
    if workers == 1:
        parts = [row_fn(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(row_fn, jobs))
    return np.concatenate(parts) if parts else np.empty(0)


_FACTORIES = {
    "sdof-y1": sdof_y1_problem,
    "sdof-y2": sdof_y2_problem,
    "sdof-y2-sim": sdof_y2_sim_problem,
    "boucwen": boucwen_problem,
    "surrogate-crash": crash_problem,
}

PROBLEM_NAMES = tuple(sorted(_FACTORIES))


def build_problem(name: str, **kwargs) -> Tuple[HybridProblem, MPDEMSettings]:
    """Instantiate a built-in problem by name."""
    if name not in _FACTORIES:
        raise KeyError(f"unknown problem {name!r}; have {PROBLEM_NAMES}")
    return _FACTORIES[name](**kwargs)
