"""N-story shear frame with degrading, pinching Bouc-Wen hysteresis.

Each story restoring force splits into an elastic share and a hysteretic
share, F_j = alpha*k_j*drift_j + (1 - alpha)*k_j*Z_j, with the hysteretic
displacement Z_j following the Baber-Noori rate law with stiffness and
strength degradation driven by the dissipated energy and a slip-lock
pinching function.  Damping is Rayleigh, anchored at the first two modes
of the elastic frame, and the load enters as ground acceleration through
a per-story influence vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import eigh

from .. import _kernels
from ..errors import NonFiniteState
from .trajectory import Trajectory

__all__ = [
    "BoucWenParams",
    "MDOFBoucWenConfig",
    "boucwen_rate",
    "ultimate_z",
    "shear_frame_matrices",
    "rayleigh_damping",
    "simulate_boucwen",
]


@dataclass(frozen=True)
class BoucWenParams:
    """Hysteresis shape, degradation, and pinching parameters.

    Defaults are the benchmark values: alpha is the post-yield stiffness
    ratio, amplitude the basic hysteresis amplitude A, beta/gamma the
    shape parameters, delta_v/delta_eta the strength/stiffness
    degradation rates, and the remaining six control pinching.
    """

    alpha: float = 0.04
    amplitude: float = 1.0
    beta: float = 15.0
    gamma: float = 150.0
    delta_v: float = 1000.0
    delta_eta: float = 1000.0
    q: float = 0.25
    p: float = 1000.0
    delta_psi: float = 5.0
    lam: float = 0.5
    zeta_s: float = 0.99
    psi: float = 0.05

    def __post_init__(self):
        if self.beta + self.gamma <= 0:
            raise ValueError("need beta + gamma > 0")


def ultimate_z(params: BoucWenParams, eps: float,
               amplitude: Optional[float] = None) -> float:
    """Ultimate hysteretic displacement A / ((1 + delta_v*eps)(beta+gamma))."""
    a = params.amplitude if amplitude is None else amplitude
    return a / ((1.0 + params.delta_v * eps) * (params.beta + params.gamma))


def boucwen_rate(v_drift: float, z: float, eps: float,
                 params: BoucWenParams,
                 amplitude: Optional[float] = None) -> float:
    """Hysteretic displacement rate for one story.

    Evaluates the full degrading/pinching rate law; total in all
    arguments (no singularities for the default parameter block).
    """
    a = params.amplitude if amplitude is None else amplitude
    zu = ultimate_z(params, eps, a)
    z1 = params.zeta_s * (1.0 - np.exp(-params.p * eps))
    z2 = (params.psi + params.delta_psi * eps) * (params.lam + z1)
    sgn = np.sign(v_drift)
    u = z * sgn - params.q * zu
    h = 1.0 - z1 * np.exp(-(u * u) / (z2 * z2))
    return h / (1.0 + params.delta_eta * eps) * (
        a * v_drift - (1.0 + params.delta_v * eps)
        * (params.beta * abs(v_drift) * z + params.gamma * v_drift * abs(z)))


_DEFAULT_MASSES = tuple([2.6e5] * 10)
_DEFAULT_STIFF = tuple(np.array(
    [4.9, 2.0, 2.0, 2.0, 1.8, 1.8, 1.8, 1.0, 1.0, 1.0]) * 1e7)


@dataclass(frozen=True)
class MDOFBoucWenConfig:
    """Shear frame definition with per-story random multipliers.

    ``stiffness_scale`` multiplies the nominal story stiffnesses;
    ``amplitude_scale`` multiplies the per-story hysteretic amplitude.
    Both default to ones.
    """

    masses: tuple = _DEFAULT_MASSES
    stiffnesses: tuple = _DEFAULT_STIFF
    zeta: float = 0.05
    influence: Optional[tuple] = None  # per-story load influence, default 1
    params: BoucWenParams = field(default_factory=BoucWenParams)
    stiffness_scale: Optional[tuple] = None
    amplitude_scale: Optional[tuple] = None

    def __post_init__(self):
        if len(self.masses) != len(self.stiffnesses):
            raise ValueError("masses and stiffnesses must align")
        if any(m <= 0 for m in self.masses):
            raise ValueError("masses must be positive")
        if any(k <= 0 for k in self.stiffnesses):
            raise ValueError("stiffnesses must be positive")

    @property
    def n_story(self) -> int:
        return len(self.masses)

    def effective_stiffnesses(self) -> np.ndarray:
        k = np.asarray(self.stiffnesses, dtype=float)
        if self.stiffness_scale is not None:
            k = k * np.asarray(self.stiffness_scale, dtype=float)
        return k

    def effective_amplitudes(self) -> np.ndarray:
        a = np.full(self.n_story, self.params.amplitude)
        if self.amplitude_scale is not None:
            a = a * np.asarray(self.amplitude_scale, dtype=float)
        return a


def shear_frame_matrices(masses: np.ndarray, stiffnesses: np.ndarray):
    """Mass and elastic stiffness matrices of the lumped shear frame."""
    n = masses.shape[0]
    mmat = np.diag(masses)
    kmat = np.zeros((n, n))
    for j in range(n):
        kmat[j, j] += stiffnesses[j]
        if j + 1 < n:
            kmat[j, j] += stiffnesses[j + 1]
            kmat[j, j + 1] -= stiffnesses[j + 1]
            kmat[j + 1, j] -= stiffnesses[j + 1]
    return mmat, kmat


def rayleigh_damping(mmat: np.ndarray, kmat: np.ndarray,
                     zeta: float) -> np.ndarray:
    """Rayleigh matrix anchored at the first two undamped modes."""
    evals = eigh(kmat, mmat, eigvals_only=True)
    w = np.sqrt(np.maximum(evals, 0.0))
    w1, w2 = w[0], w[1] if w.shape[0] > 1 else 2.0 * w[0]
    a0 = 2.0 * zeta * w1 * w2 / (w1 + w2)
    a1 = 2.0 * zeta / (w1 + w2)
    return a0 * mmat + a1 * kmat


def simulate_boucwen(cfg: MDOFBoucWenConfig, ag_half: np.ndarray, dt: float,
                     T: float) -> Trajectory:
    """Integrate the frame under ground acceleration sampled on the dt/2 grid.

    Zero initial conditions; explicit fourth-order fixed steps advance
    displacements, velocities, hysteretic displacements, and dissipated
    energies together.
    """
    n_steps = int(round(T / dt))
    ag = np.asarray(ag_half, dtype=float)
    if ag.shape[0] < 2 * n_steps + 1:
        raise ValueError("ground-acceleration series shorter than the grid")
    ag = ag[:2 * n_steps + 1]
    k_eff = cfg.effective_stiffnesses()
    a_eff = cfg.effective_amplitudes()
    masses = np.asarray(cfg.masses, dtype=float)
    if cfg.influence is not None:
        ag_scale = np.asarray(cfg.influence, dtype=float)
        if not np.allclose(ag_scale, ag_scale[0]):
            raise ValueError("per-story influence must be uniform for the "
                             "shared ground-acceleration kernel")
        ag = ag * ag_scale[0]
    mmat, kmat = shear_frame_matrices(masses, k_eff)
    cmat = rayleigh_damping(mmat, kmat, cfg.zeta)
    p = cfg.params
    xh, vh, zh, eh, bad = _kernels.boucwen_rk4(
        ag, dt, masses, k_eff, cmat, p.alpha, a_eff, p.beta, p.gamma,
        p.delta_v, p.delta_eta, p.q, p.p, p.delta_psi, p.lam, p.zeta_s,
        p.psi)
    if bad >= 0:
        raise NonFiniteState("frame integration blew up", t=bad * dt)
    channels = {}
    for j in range(cfg.n_story):
        channels[f"x{j + 1}"] = xh[:, j]
        channels[f"v{j + 1}"] = vh[:, j]
        channels[f"z{j + 1}"] = zh[:, j]
        channels[f"eps{j + 1}"] = eh[:, j]
    return Trajectory(dt=dt, channels=channels)
