"""Closed-form reference solutions for the white-noise SDOF benchmark.

The oscillator  X'' + 2*zeta*omega*X' + omega^2*X = xi(t)  with two-sided
white-noise level S0 admits closed forms for two steady-state outputs when
the natural frequency omega carries a two-sided normal p-box:

* Y1, the stationary displacement variance  pi*S0 / (2*zeta*omega^3),
* Y2, the stationary displacement value, zero-mean Gaussian with
  variance Y1 given omega.

These curves are the oracles the numerical propagation engines are tested
against, so everything here is evaluated to far tighter accuracy than any
engine tolerance (error function based normal CDF, adaptive quadrature with
relative error <= 1e-9).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import ndtr, ndtri

from .errors import NonPositive, QuadratureFailure

__all__ = [
    "norm_cdf",
    "norm_pdf",
    "norm_ppf",
    "SDOFOracleConfig",
    "input_pbox_cdf",
    "input_pbox_pdf",
    "y1_of_omega",
    "omega_of_y1",
    "y1_bounds",
    "y2_conditional_pdf",
    "y2_bounds",
]


def norm_cdf(x):
    """Standard normal CDF via the error function (double precision)."""
    return ndtr(x)


def norm_pdf(x):
    """Standard normal density."""
    x = np.asarray(x, dtype=float)
    return np.exp(-0.5 * x * x) / np.sqrt(2.0 * np.pi)


def norm_ppf(p):
    """Standard normal quantile."""
    return ndtri(p)


@dataclass(frozen=True)
class SDOFOracleConfig:
    """Benchmark parameters: noise level, damping, and the omega p-box."""

    s0: float = 1.0
    zeta: float = 0.05
    mu1: float = 1.9
    mu2: float = 2.1
    sigma1: float = 0.1
    sigma2: float = 0.2

    def __post_init__(self):
        if not (self.mu1 < self.mu2):
            raise ValueError("mu1 must be < mu2")
        if self.sigma1 <= 0 or self.sigma2 <= 0:
            raise ValueError("sigmas must be positive")
        if self.s0 < 0 or self.zeta <= 0:
            raise ValueError("need s0 >= 0 and zeta > 0")


def input_pbox_cdf(cfg: SDOFOracleConfig, kind: str, omega):
    """Bounding CDFs of the omega p-box.

    The upper curve is a normal CDF centered at mu1 whose scale switches
    from sigma2 below mu1 to sigma1 above; the lower curve mirrors it
    around mu2.  Both are continuous and monotone.
    """
    omega = np.asarray(omega, dtype=float)
    if kind == "upper":
        z = np.where(omega <= cfg.mu1,
                     (omega - cfg.mu1) / cfg.sigma2,
                     (omega - cfg.mu1) / cfg.sigma1)
    elif kind == "lower":
        z = np.where(omega <= cfg.mu2,
                     (omega - cfg.mu2) / cfg.sigma1,
                     (omega - cfg.mu2) / cfg.sigma2)
    else:
        raise ValueError(f"kind must be 'upper' or 'lower', got {kind!r}")
    return ndtr(z)


def input_pbox_pdf(cfg: SDOFOracleConfig, kind: str, omega):
    """Densities of the bounding CDFs (piecewise normal, jump at the knee)."""
    omega = np.asarray(omega, dtype=float)
    if kind == "upper":
        sig = np.where(omega <= cfg.mu1, cfg.sigma2, cfg.sigma1)
        z = (omega - cfg.mu1) / sig
    elif kind == "lower":
        sig = np.where(omega <= cfg.mu2, cfg.sigma1, cfg.sigma2)
        z = (omega - cfg.mu2) / sig
    else:
        raise ValueError(f"kind must be 'upper' or 'lower', got {kind!r}")
    return norm_pdf(z) / sig


def y1_of_omega(cfg: SDOFOracleConfig, omega):
    """Stationary variance  pi*S0 / (2*zeta*omega^3)."""
    omega = np.asarray(omega, dtype=float)
    return np.pi * cfg.s0 / (2.0 * cfg.zeta * omega**3)


def omega_of_y1(cfg: SDOFOracleConfig, y1):
    """Inverse of y1_of_omega."""
    y1 = np.asarray(y1, dtype=float)
    return (np.pi * cfg.s0 / (2.0 * cfg.zeta * y1)) ** (1.0 / 3.0)


def y1_bounds(cfg: SDOFOracleConfig, y1):
    """Lower/upper CDF bounds of Y1.

    Y1 decreases in omega, so P(Y1 <= y1) = 1 - F_Omega(omega(y1)); the
    output bounds swap the input bounding curves.
    """
    y1 = np.asarray(y1, dtype=float)
    if np.any(y1 <= 0):
        raise NonPositive("y1 must be > 0")
    w = omega_of_y1(cfg, y1)
    lower = 1.0 - input_pbox_cdf(cfg, "upper", w)
    upper = 1.0 - input_pbox_cdf(cfg, "lower", w)
    return lower, upper


def y2_conditional_pdf(cfg: SDOFOracleConfig, y2, omega):
    """Density of the stationary value given omega: N(0, y1(omega))."""
    if np.any(np.asarray(omega) <= 0):
        raise NonPositive("omega must be > 0")
    y1 = y1_of_omega(cfg, omega)
    y2 = np.asarray(y2, dtype=float)
    return np.exp(-0.5 * y2 * y2 / y1) / np.sqrt(2.0 * np.pi * y1)


def _y2_mix(cfg: SDOFOracleConfig, y2: float, kind: str) -> float:
    """integral of Phi(y2 / sqrt(y1(omega))) against a bounding density."""
    lo = max(1e-12, cfg.mu1 - 8.0 * cfg.sigma2)
    hi = cfg.mu2 + 8.0 * cfg.sigma2
    c = np.sqrt(2.0 * cfg.zeta / (np.pi * cfg.s0))

    def integrand(w):
        return ndtr(c * w**1.5 * y2) * input_pbox_pdf(cfg, kind, w)

    knee = cfg.mu1 if kind == "upper" else cfg.mu2
    val, err = quad(integrand, lo, hi, points=[knee], epsabs=1e-12,
                    epsrel=1e-9, limit=200)
    if err > 1e-6 * max(1.0, abs(val)):
        raise QuadratureFailure(f"y2 quadrature error {err:.2e} at y2={y2}")
    return float(val)


def y2_bounds(cfg: SDOFOracleConfig, y2):
    """Lower/upper CDF bounds of Y2.

    The conditional CDF is piecewise monotone in y1 with the direction
    flipping at y2 = 0, so the extremizing input density switches between
    the two bounding densities there; both bounds equal 1/2 at y2 = 0.
    """
    scalars = np.isscalar(y2)
    ys = np.atleast_1d(np.asarray(y2, dtype=float))
    lower = np.empty_like(ys)
    upper = np.empty_like(ys)
    for i, v in enumerate(ys):
        if v == 0.0:
            lower[i] = upper[i] = 0.5
        elif v < 0.0:
            upper[i] = _y2_mix(cfg, v, "upper")
            lower[i] = _y2_mix(cfg, v, "lower")
        else:
            upper[i] = _y2_mix(cfg, v, "lower")
            lower[i] = _y2_mix(cfg, v, "upper")
    if scalars:
        return float(lower[0]), float(upper[0])
    return lower, upper
