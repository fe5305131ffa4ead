"""Linear SDOF oscillator under external forcing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import _kernels
from ..errors import NonFiniteState, StepTooLarge
from .trajectory import Trajectory

__all__ = ["SDOFConfig", "simulate_sdof", "sdof_stationary_variance"]


@dataclass(frozen=True)
class SDOFConfig:
    """Damping ratio, natural frequency (rad/s), white-noise level."""

    zeta: float
    omega: float
    s0: float = 0.0

    def __post_init__(self):
        if self.zeta <= 0 or self.omega <= 0 or self.s0 < 0:
            raise ValueError("need zeta > 0, omega > 0, s0 >= 0")


def sdof_stationary_variance(zeta: float, omega: float, s0: float) -> float:
    """Stationary displacement variance  pi*S0 / (2*zeta*omega^3)."""
    if zeta <= 0 or omega <= 0:
        raise ValueError("zeta and omega must be > 0")
    return np.pi * s0 / (2.0 * zeta * omega**3)


def simulate_sdof(cfg: SDOFConfig, excitation: np.ndarray, dt: float,
                  T: float, x0: float = 0.0, v0: float = 0.0) -> Trajectory:
    """Fourth-order fixed-step integration of the oscillator.

    ``excitation`` is sampled on the dt grid (n_steps + 1 values) and
    interpolated piecewise-linearly onto the half-step grid the RK4
    stages need.
    """
    if dt > 0.02 * (2.0 * np.pi / cfg.omega):
        raise StepTooLarge(f"dt={dt} too coarse for omega={cfg.omega}")
    n_steps = int(round(T / dt))
    exc = np.asarray(excitation, dtype=float)
    if exc.shape[0] < n_steps + 1:
        raise ValueError("excitation series shorter than the time grid")
    half = np.empty(2 * n_steps + 1)
    half[::2] = exc[:n_steps + 1]
    half[1::2] = 0.5 * (exc[:n_steps] + exc[1:n_steps + 1])
    hist = _kernels.sdof_rk4(half, dt, cfg.zeta, cfg.omega, x0, v0)
    if not np.all(np.isfinite(hist)):
        bad = int(np.argmax(~np.isfinite(hist).all(axis=1)))
        raise NonFiniteState("SDOF integration blew up", t=bad * dt)
    return Trajectory(dt=dt, channels={"x": hist[:, 0], "v": hist[:, 1]})
