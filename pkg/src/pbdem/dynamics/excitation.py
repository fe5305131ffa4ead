"""Stochastic excitation generators.

Two sources are provided: band-limited Gaussian white noise for the SDOF
benchmark, and stationary ground acceleration synthesized from a
Kanai-Tajimi-like two-sided power spectral density whose predominant
frequency is an interval (epistemic) parameter.  The spectral
representation sum uses one-sided amplitudes sqrt(4*S(w_k)*dw) at
midpoint frequencies with i.i.d. uniform phases.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import quad

from .. import _kernels
from ..errors import DivergentSpectrum

__all__ = [
    "generate_white_noise",
    "IPSDConfig",
    "ipsd_shape",
    "ipsd_normalize",
    "ipsd_psd",
    "spectral_cutoff",
    "generate_spectral_realization",
]


def generate_white_noise(s0: float, dt: float, T: float, seed: int) -> np.ndarray:
    """I.i.d. Gaussian forcing with per-step variance 2*pi*S0/dt.

    Piecewise-constant band-limited white noise matching the two-sided
    level S0 at frequencies well below 1/dt.  Returns n_steps + 1 values
    on the dt grid.
    """
    if dt <= 0:
        raise ValueError("dt must be > 0")
    n_steps = int(round(T / dt))
    if s0 == 0.0:
        return np.zeros(n_steps + 1)
    std = np.sqrt(2.0 * np.pi * s0 / dt)
    return np.random.default_rng(seed).normal(0.0, std, size=n_steps + 1)


@dataclass
class IPSDConfig:
    """Two-sided acceleration PSD with interval predominant frequency.

    ``sigma2`` is the process variance the normalized spectrum must carry,
    ``rho0`` the bandwidth, and ``omega0`` one realization of the interval
    predominant circular frequency.  ``beta0`` is filled by
    ``ipsd_normalize``.
    """

    sigma2: float
    rho0: float
    omega0: float
    beta0: Optional[float] = None

    def __post_init__(self):
        if self.sigma2 <= 0 or self.rho0 <= 0 or self.omega0 <= 0:
            raise ValueError("sigma2, rho0, omega0 must be > 0")

    @property
    def omega_l(self) -> float:
        return self.omega0 + 0.8 * self.rho0

    @property
    def omega_h(self) -> float:
        return 0.1 * self.omega0


def ipsd_shape(cfg: IPSDConfig, omega) -> np.ndarray:
    """Unnormalized spectrum shape (the PSD without its beta0 prefactor)."""
    w = np.asarray(omega, dtype=float)
    wl = cfg.omega_l
    wh = cfg.omega_h
    r = cfg.rho0
    w0 = cfg.omega0
    highpass = w * w / (w * w + wh * wh)
    lowpass = wl * wl / (w**4 + wl**4)
    peaks = (r / np.pi) * (1.0 / (r * r + (w + w0) ** 2)
                           + 1.0 / (r * r + (w - w0) ** 2))
    return highpass * lowpass * peaks


def ipsd_normalize(cfg: IPSDConfig) -> float:
    """Set beta0 so the two-sided integral of the PSD equals sigma2."""
    try:
        integral, err = quad(lambda w: ipsd_shape(cfg, w), 0.0, np.inf,
                             limit=400, epsabs=1e-13, epsrel=1e-9)
    except Exception as exc:  # pragma: no cover - scipy failure path
        raise DivergentSpectrum(str(exc)) from exc
    integral *= 2.0  # even in omega
    if not np.isfinite(integral) or integral <= 0 or err > 1e-4 * integral:
        raise DivergentSpectrum(
            f"shape integral {integral!r} with error estimate {err!r}")
    cfg.beta0 = float(cfg.sigma2 / integral)
    return cfg.beta0


def ipsd_psd(cfg: IPSDConfig, omega) -> np.ndarray:
    """Normalized two-sided PSD value(s)."""
    if cfg.beta0 is None:
        ipsd_normalize(cfg)
    return cfg.beta0 * ipsd_shape(cfg, omega)


def spectral_cutoff(cfg: IPSDConfig, mass_fraction: float = 0.999) -> float:
    """Frequency below which the requested share of sigma2 is captured."""
    if cfg.beta0 is None:
        ipsd_normalize(cfg)
    w_max = cfg.omega0 + 60.0 * cfg.rho0
    grid = np.linspace(0.0, w_max, 8192)
    psd = ipsd_psd(cfg, grid)
    cum = np.concatenate(([0.0], np.cumsum(
        0.5 * (psd[1:] + psd[:-1]) * np.diff(grid)))) * 2.0
    target = mass_fraction * cfg.sigma2
    idx = int(np.searchsorted(cum, target))
    if idx >= grid.shape[0]:
        raise DivergentSpectrum("cutoff search ran past the frequency grid")
    return float(grid[idx])


def generate_spectral_realization(cfg: IPSDConfig, dt: float, T: float,
                                  seed: int, n_harmonics: int = 512,
                                  mass_fraction: float = 0.999,
                                  half_grid: bool = True) -> np.ndarray:
    """One stationary realization  sum_k sqrt(4*S(w_k)*dw) cos(w_k t + phi_k).

    Frequencies sit at stratum midpoints (k - 1/2)*dw below the cutoff
    carrying ``mass_fraction`` of sigma2.  With ``half_grid`` the series is
    sampled on the dt/2 grid (2*n_steps + 1 values) ready for RK4
    consumption; otherwise on the dt grid.
    """
    if cfg.beta0 is None:
        ipsd_normalize(cfg)
    k = max(256, int(n_harmonics))
    w_u = spectral_cutoff(cfg, mass_fraction)
    dw = w_u / k
    omegas = (np.arange(k) + 0.5) * dw
    amps = np.sqrt(4.0 * ipsd_psd(cfg, omegas) * dw)
    rng = np.random.default_rng(seed)
    phis = rng.uniform(0.0, 2.0 * np.pi, size=k)
    n_steps = int(round(T / dt))
    if half_grid:
        ts = np.arange(2 * n_steps + 1) * (dt / 2.0)
    else:
        ts = np.arange(n_steps + 1) * dt
    return _kernels.srm_synthesize(amps, omegas, phis, ts)
