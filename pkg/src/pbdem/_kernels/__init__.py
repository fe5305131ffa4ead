"""Hot-kernel lane selection.

The numba lane is the default; set PBDEM_NO_NUMBA=1 (or any non-empty
value other than 0) to force the pure-numpy lane.  Both lanes implement
identical algorithms; ``backend()`` reports which one is active.
"""

from __future__ import annotations

import os

__all__ = [
    "backend",
    "sdof_rk4",
    "boucwen_rk4",
    "srm_synthesize",
    "kde_moments",
    "kde_deposit",
]


def _want_numba() -> bool:
    flag = os.environ.get("PBDEM_NO_NUMBA", "")
    return flag in ("", "0")


_BACKEND = "numpy"
if _want_numba():
    try:
        from ._impl_numba import (boucwen_rk4, kde_deposit, kde_moments,
                                  sdof_rk4, srm_synthesize)
        _BACKEND = "numba"
    except ImportError:
        from ._impl_numpy import (boucwen_rk4, kde_deposit, kde_moments,
                                  sdof_rk4, srm_synthesize)
else:
    from ._impl_numpy import (boucwen_rk4, kde_deposit, kde_moments,
                              sdof_rk4, srm_synthesize)


def backend() -> str:
    """Name of the active kernel lane ('numba' or 'numpy')."""
    return _BACKEND
