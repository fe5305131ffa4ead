"""pbdem: hybrid aleatory/epistemic uncertainty propagation.

Propagates random variables, intervals, and distribution-free p-boxes
through dynamical systems, producing bounded output CDFs.  The core
engine augments the random space with pseudo-distributed epistemic
coordinates, solves the response density by decoupled per-dimension
density evolution over representative points, and extremizes the
conditional CDFs over the epistemic space.  Monte Carlo reference
engines (double-loop and vertex) and closed-form SDOF oracles support
validation.
"""

__version__ = "0.1.0"

from . import analytic, dynamics, mpdem, points, problems, propagate, uncertainty
from ._kernels import backend as kernel_backend

__all__ = [
    "__version__",
    "analytic",
    "dynamics",
    "mpdem",
    "points",
    "problems",
    "propagate",
    "uncertainty",
    "kernel_backend",
]
