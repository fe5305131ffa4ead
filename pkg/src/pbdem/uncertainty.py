"""Input uncertainty models: random variables, p-boxes, intervals.

Three input classes are supported.  Random variables carry precise
distributions (normal, lognormal, uniform).  Imprecise scalars carry a
p-box: a pair of bounding CDFs plus optional mean/variance intervals and
an admissible-family tag.  Non-probabilistic scalars carry an interval.
Epistemic coordinates (intervals and p-boxes) receive a uniform pseudo
density over a bounded support so a single augmented-space run can later
be conditioned on them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import brentq
from scipy.special import ndtr, ndtri
from scipy.stats import lognorm, norm, uniform as sp_uniform

from .errors import (
    BadLimits,
    CrossingBounds,
    NonMonotone,
    UnboundedSupport,
)

__all__ = [
    "ScalarDistribution",
    "lognormal_from_mean_cov",
    "ScalarPBox",
    "normal_band_pbox",
    "IntervalParam",
    "EpistemicVector",
    "PseudoDensity",
    "validate_pbox",
    "pbox_cdf_bounds_at",
    "assign_pseudo_density",
    "sample_aleatory",
]


# ---------------------------------------------------------------------------
# precise distributions
# ---------------------------------------------------------------------------

_FAMILIES = ("normal", "lognormal", "uniform")


@dataclass(frozen=True)
class ScalarDistribution:
    """A precise scalar distribution.

    Parameter conventions: normal(mean, std), lognormal(mu_log, sigma_log),
    uniform(lower, upper).
    """

    family: str
    params: tuple

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        a, b = self.params
        if self.family == "normal" and b <= 0:
            raise ValueError("normal std must be > 0")
        if self.family == "lognormal" and b <= 0:
            raise ValueError("lognormal sigma_log must be > 0")
        if self.family == "uniform" and not (a < b):
            raise ValueError("uniform requires lower < upper")

    @property
    def _frozen(self):
        a, b = self.params
        if self.family == "normal":
            return norm(loc=a, scale=b)
        if self.family == "lognormal":
            return lognorm(s=b, scale=np.exp(a))
        return sp_uniform(loc=a, scale=b - a)

    @property
    def support(self):
        if self.family == "normal":
            return (-np.inf, np.inf)
        if self.family == "lognormal":
            return (0.0, np.inf)
        return (self.params[0], self.params[1])

    def cdf(self, x):
        return self._frozen.cdf(x)

    def pdf(self, x):
        return self._frozen.pdf(x)

    def ppf(self, q):
        return self._frozen.ppf(q)

    def mean(self) -> float:
        return float(self._frozen.mean())

    def std(self) -> float:
        return float(self._frozen.std())

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        a, b = self.params
        if self.family == "normal":
            return rng.normal(a, b, size=n)
        if self.family == "lognormal":
            return rng.lognormal(a, b, size=n)
        return rng.uniform(a, b, size=n)


def lognormal_from_mean_cov(mean: float, cov: float) -> ScalarDistribution:
    """Lognormal from arithmetic mean and coefficient of variation.

    Exact moment matching: sigma_log = sqrt(ln(1 + cov^2)) and
    mu_log = ln(mean) - sigma_log^2 / 2.
    """
    if mean <= 0 or cov <= 0:
        raise ValueError("mean and cov must be > 0")
    s2 = np.log1p(cov * cov)
    return ScalarDistribution("lognormal",
                              (float(np.log(mean) - 0.5 * s2),
                               float(np.sqrt(s2))))


# ---------------------------------------------------------------------------
# p-boxes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScalarPBox:
    """Bounding CDF pair with optional moment intervals and family tag.

    ``upper`` and ``lower`` are vectorized callables with
    lower(x) <= upper(x) for all x, each monotone from 0 to 1.  The
    ``mean_interval`` and ``var_interval`` constraints are stored and
    validated but not used to tighten propagation bounds.
    """

    upper: Callable[[np.ndarray], np.ndarray]
    lower: Callable[[np.ndarray], np.ndarray]
    support: tuple = (-np.inf, np.inf)
    mean_interval: Optional[tuple] = None
    var_interval: Optional[tuple] = None
    family: str = "free"

    @staticmethod
    def from_tabulated(xs, lower_vals, upper_vals, family="free"):
        """Build a p-box from tabulated monotone curves (linear interp)."""
        xs = np.asarray(xs, dtype=float)
        lo = np.asarray(lower_vals, dtype=float)
        up = np.asarray(upper_vals, dtype=float)

        def make(vals):
            def f(x):
                return np.interp(np.asarray(x, dtype=float), xs, vals,
                                 left=0.0, right=1.0)
            return f

        return ScalarPBox(upper=make(up), lower=make(lo),
                          support=(float(xs[0]), float(xs[-1])),
                          family=family)

    @staticmethod
    def degenerate(dist: ScalarDistribution):
        """P-box with coincident bounds equal to a precise CDF."""
        return ScalarPBox(upper=dist.cdf, lower=dist.cdf,
                          support=dist.support, family=dist.family)


def normal_band_pbox(mu1: float, mu2: float, sigma1: float, sigma2: float,
                     mean_interval=None, var_interval=None) -> ScalarPBox:
    """Two-sided normal p-box.

    The upper curve is centered at mu1 with scale sigma2 below mu1 and
    sigma1 above; the lower curve is centered at mu2 with scale sigma1
    below mu2 and sigma2 above.  Requires mu1 < mu2 and sigma1 <= sigma2
    so the curves cannot cross.
    """
    if not mu1 < mu2:
        raise ValueError("mu1 must be < mu2")
    if not (0 < sigma1 <= sigma2):
        raise ValueError("need 0 < sigma1 <= sigma2")

    def upper(x):
        x = np.asarray(x, dtype=float)
        sig = np.where(x <= mu1, sigma2, sigma1)
        return ndtr((x - mu1) / sig)

    def lower(x):
        x = np.asarray(x, dtype=float)
        sig = np.where(x <= mu2, sigma1, sigma2)
        return ndtr((x - mu2) / sig)

    return ScalarPBox(upper=upper, lower=lower,
                      support=(-np.inf, np.inf),
                      mean_interval=mean_interval,
                      var_interval=var_interval)


def _probe_window(p: ScalarPBox) -> tuple:
    """Finite probe window covering essentially all of both curves."""
    lo, hi = p.support
    if np.isfinite(lo) and np.isfinite(hi):
        return float(lo), float(hi)
    # expand from an arbitrary center until both tails are resolved
    center = 0.0
    if np.isfinite(lo):
        center = lo + 1.0
    if np.isfinite(hi):
        center = hi - 1.0
    half = 1.0
    for _ in range(200):
        a = lo if np.isfinite(lo) else center - half
        b = hi if np.isfinite(hi) else center + half
        if p.upper(a) < 1e-9 and p.lower(b) > 1.0 - 1e-9:
            return float(a), float(b)
        half *= 2.0
    raise UnboundedSupport("could not bracket the p-box curves")


def validate_pbox(p: ScalarPBox, n_probe: int = 512) -> bool:
    """Check the p-box invariants on a dense probe grid.

    Raises CrossingBounds, NonMonotone, or BadLimits; returns True when
    all invariants hold.
    """
    n_probe = max(512, n_probe)
    a, b = _probe_window(p)
    xs = np.linspace(a, b, n_probe)
    up = np.asarray(p.upper(xs), dtype=float)
    lo = np.asarray(p.lower(xs), dtype=float)
    if np.any(lo > up + 1e-12):
        i = int(np.argmax(lo - up))
        raise CrossingBounds(f"lower CDF exceeds upper CDF at x={xs[i]:.6g}")
    for name, vals in (("upper", up), ("lower", lo)):
        if np.any(np.diff(vals) < -1e-12):
            raise NonMonotone(f"{name} CDF decreases on the probe grid")
        if vals[0] > 1e-6 or vals[-1] < 1.0 - 1e-6:
            raise BadLimits(f"{name} CDF does not span [0, 1] "
                            f"({vals[0]:.3g} .. {vals[-1]:.3g})")
        if np.any(vals < -1e-12) or np.any(vals > 1.0 + 1e-12):
            raise BadLimits(f"{name} CDF leaves [0, 1]")
    if p.mean_interval is not None and p.mean_interval[0] > p.mean_interval[1]:
        raise BadLimits("empty mean interval")
    if p.var_interval is not None and p.var_interval[0] > p.var_interval[1]:
        raise BadLimits("empty variance interval")
    return True


def pbox_cdf_bounds_at(p: ScalarPBox, x):
    """Evaluate (lower, upper) CDF bounds at x, clamped to [0, 1]."""
    x = np.asarray(x, dtype=float)
    lo = np.clip(np.asarray(p.lower(x), dtype=float), 0.0, 1.0)
    up = np.clip(np.asarray(p.upper(x), dtype=float), 0.0, 1.0)
    a, b = p.support
    lo = np.where(x < a, 0.0, np.where(x > b, 1.0, lo))
    up = np.where(x < a, 0.0, np.where(x > b, 1.0, up))
    if lo.ndim == 0:
        return float(lo), float(up)
    return lo, up


def _solve_curve(curve, target: float, lo_hint: float, hi_hint: float) -> float:
    """Solve curve(x) = target by bracketing plus brentq."""
    a, b = lo_hint, hi_hint
    span = max(b - a, 1.0)
    for _ in range(200):
        if curve(a) <= target <= curve(b):
            return float(brentq(lambda x: curve(x) - target, a, b,
                                xtol=1e-12, rtol=1e-14))
        a -= span
        b += span
        span *= 2.0
    raise UnboundedSupport(f"could not solve CDF = {target}")


# ---------------------------------------------------------------------------
# intervals and the epistemic vector
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntervalParam:
    """Closed interval [a, b]; zero width marks a fixed parameter."""

    lower: float
    upper: float

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("interval requires lower <= upper")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def is_degenerate(self) -> bool:
        return self.width == 0.0


@dataclass(frozen=True)
class EpistemicVector:
    """Ordered epistemic coordinates, each an interval or a p-box."""

    names: tuple
    coords: tuple  # IntervalParam | ScalarPBox per entry

    def __post_init__(self):
        if len(self.names) != len(self.coords):
            raise ValueError("names and coords must align")
        for c in self.coords:
            if not isinstance(c, (IntervalParam, ScalarPBox)):
                raise TypeError(f"unsupported epistemic coordinate {type(c)}")

    def __len__(self):
        return len(self.coords)


@dataclass(frozen=True)
class PseudoDensity:
    """Per-coordinate uniform reference density on bounded supports.

    The joint density is the product over coordinates.  Zero-width
    coordinates are carried as degenerate (fixed) parameters and excluded
    from the product.
    """

    supports: tuple  # (lo, hi) per coordinate
    names: tuple = ()

    def __post_init__(self):
        for lo, hi in self.supports:
            if not (np.isfinite(lo) and np.isfinite(hi)):
                raise UnboundedSupport("pseudo density needs finite support")
            if lo > hi:
                raise ValueError("support bounds out of order")

    def __len__(self):
        return len(self.supports)

    @property
    def active(self) -> np.ndarray:
        """Mask of non-degenerate coordinates."""
        return np.array([hi > lo for lo, hi in self.supports], dtype=bool)

    def coordinate_pdf(self, i: int, x) -> np.ndarray:
        lo, hi = self.supports[i]
        x = np.asarray(x, dtype=float)
        if hi == lo:
            return np.where(x == lo, np.inf, 0.0)
        return np.where((x >= lo) & (x <= hi), 1.0 / (hi - lo), 0.0)

    def joint_pdf(self, theta) -> np.ndarray:
        theta = np.atleast_2d(np.asarray(theta, dtype=float))
        out = np.ones(theta.shape[0])
        for i in range(len(self.supports)):
            out = out * self.coordinate_pdf(i, theta[:, i])
        return out

    def coordinate_ppf(self, i: int, q) -> np.ndarray:
        lo, hi = self.supports[i]
        return lo + (hi - lo) * np.asarray(q, dtype=float)

    def as_distributions(self) -> list:
        """Uniform ScalarDistribution per active coordinate (degenerate
        coordinates yield None)."""
        out = []
        for lo, hi in self.supports:
            out.append(None if hi == lo
                       else ScalarDistribution("uniform", (lo, hi)))
        return out


def assign_pseudo_density(e: EpistemicVector,
                          eps_tail: float = 1e-4) -> PseudoDensity:
    """Uniform pseudo density per epistemic coordinate.

    Interval coordinates keep their own bounds.  P-box coordinates are
    truncated to [x_lo, x_hi] with upper(x_lo) = eps_tail and
    lower(x_hi) = 1 - eps_tail, which bounds the mass ignored in either
    tail by eps_tail.
    """
    supports = []
    for name, c in zip(e.names, e.coords):
        if isinstance(c, IntervalParam):
            supports.append((c.lower, c.upper))
            continue
        a, b = c.support
        lo_hint = a if np.isfinite(a) else -1.0
        hi_hint = b if np.isfinite(b) else 1.0
        x_lo = _solve_curve(c.upper, eps_tail, lo_hint, hi_hint)
        x_hi = _solve_curve(c.lower, 1.0 - eps_tail, lo_hint, hi_hint)
        if np.isfinite(a):
            x_lo = max(x_lo, a)
        if np.isfinite(b):
            x_hi = min(x_hi, b)
        if not (np.isfinite(x_lo) and np.isfinite(x_hi) and x_lo < x_hi):
            raise UnboundedSupport(f"truncation failed for {name}")
        supports.append((float(x_lo), float(x_hi)))
    return PseudoDensity(supports=tuple(supports), names=tuple(e.names))


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


def sample_aleatory(dists: Sequence[ScalarDistribution], n: int,
                    seed: int) -> np.ndarray:
    """n independent joint samples of the given marginals, (n, d).

    Reproducible for a fixed seed; inputs are treated as independent.
    """
    rng = np.random.default_rng(seed)
    if n == 0:
        return np.empty((0, len(dists)))
    cols = [d.sample(rng, n) for d in dists]
    return np.column_stack(cols) if cols else np.empty((n, 0))
