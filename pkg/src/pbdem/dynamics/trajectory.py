"""Time-gridded simulation output."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict

import numpy as np

__all__ = ["Trajectory", "response_max"]


@dataclass(frozen=True)
class Trajectory:
    """Response histories on a shared uniform time grid."""

    dt: float
    channels: Dict[str, np.ndarray]

    def __post_init__(self):
        lengths = {v.shape[0] for v in self.channels.values()}
        if len(lengths) > 1:
            raise ValueError("all channels must share the time grid")

    @property
    def n_steps(self) -> int:
        return next(iter(self.channels.values())).shape[0] - 1

    @property
    def t(self) -> np.ndarray:
        return np.arange(self.n_steps + 1) * self.dt

    def channel(self, name: str) -> np.ndarray:
        if name not in self.channels:
            raise KeyError(f"no channel {name!r}; have {sorted(self.channels)}")
        return self.channels[name]


def response_max(traj: Trajectory, channel: str) -> float:
    """Maximum absolute value of a channel over the grid."""
    return float(np.max(np.abs(traj.channel(channel))))
