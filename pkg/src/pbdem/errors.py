"""Exception hierarchy for pbdem.

Every failure mode raised by the library is a subclass of PbdemError so
callers can catch one type at the CLI boundary.
"""


class PbdemError(Exception):
    """Base class for all pbdem errors."""


# --- input model validation ---------------------------------------------


class CrossingBounds(PbdemError):
    """Lower CDF exceeds upper CDF somewhere on the probe grid."""


class NonMonotone(PbdemError):
    """A CDF curve decreases somewhere."""


class BadLimits(PbdemError):
    """A CDF curve does not run from 0 to 1 over its support."""


class UnboundedSupport(PbdemError):
    """Truncation failed to produce finite support bounds."""


# --- point selection ------------------------------------------------------


class DuplicatePoints(PbdemError):
    """Two representative points coincide; Voronoi ties undefined."""


# --- dynamics -------------------------------------------------------------


class StepTooLarge(PbdemError):
    """Integration step too coarse for the system's natural period."""


class NonFiniteState(PbdemError):
    """Integration blew up; carries the offending time."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class DivergentSpectrum(PbdemError):
    """Spectral normalization quadrature failed to converge."""


class AdapterFailure(PbdemError):
    """External model invocation failed (nonzero exit / missing output)."""


class SchemaMismatch(PbdemError):
    """Adapter or artifact does not match the declared schema."""


# --- density evolution ----------------------------------------------------


class OffGrid(PbdemError):
    """Kernel center too close to a grid edge; mass would leak."""


class DimensionMismatch(PbdemError):
    """Bundle dimensions inconsistent with the requested operation."""


class ZeroMarginal(PbdemError):
    """Smoothed pseudo marginal vanished at the conditioning point."""


class BadDensity(PbdemError):
    """Injected density is negative or not normalized."""


# --- propagation ----------------------------------------------------------


class EmptyFamily(PbdemError):
    """No conditional CDFs supplied."""


class InsufficientPoints(PbdemError):
    """Too few representative points for the epistemic evaluation grid."""


class BudgetExceeded(PbdemError):
    """Projected model-run count exceeds the configured cap."""


class TooManyVertices(PbdemError):
    """Interval dimension too high for vertex enumeration."""


class QuadratureFailure(PbdemError):
    """Adaptive quadrature did not reach the requested tolerance."""


class NonPositive(PbdemError):
    """Argument must be strictly positive."""


# --- CLI / configuration --------------------------------------------------


class ConfigError(PbdemError):
    """Experiment configuration failed to parse or validate."""


class EngineError(PbdemError):
    """Engine failure, wrapped with module context."""
