"""Uniform frequency and delay axes.

Units are fixed package-wide: ordinary frequency in THz, time in ps, so
that ``nu * t`` is dimensionless and no 2*pi bookkeeping is needed.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform frequency axis: ``start + k*step`` for k in [0, count)."""

    start: float
    step: float
    count: int

    def __post_init__(self):
        if not np.isfinite(self.start):
            raise ValueError("grid start must be finite")
        if not (self.step > 0 and np.isfinite(self.step)):
            raise ValueError(f"grid step must be positive, got {self.step}")
        if int(self.count) != self.count or self.count < 2:
            raise ValueError(f"grid count must be an integer >= 2, got {self.count}")

    @property
    def values(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.count)

    @property
    def stop(self) -> float:
        """Last grid point, ``start + (count-1)*step``."""
        return self.start + (self.count - 1) * self.step

    def index_of(self, nu: float) -> int:
        """Index of the grid point nearest to ``nu``."""
        return int(np.clip(round((nu - self.start) / self.step), 0, self.count - 1))

    def __len__(self) -> int:
        return self.count


@dataclass(frozen=True)
class TimeGrid:
    """Uniform delay axis in ps."""

    start: float
    step: float
    count: int

    def __post_init__(self):
        if not np.isfinite(self.start):
            raise ValueError("grid start must be finite")
        if not (self.step > 0 and np.isfinite(self.step)):
            raise ValueError(f"grid step must be positive, got {self.step}")
        if int(self.count) != self.count or self.count < 2:
            raise ValueError(f"grid count must be an integer >= 2, got {self.count}")

    @property
    def values(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.count)

    @property
    def window(self) -> float:
        """Total scanned window ``count*step`` in ps."""
        return self.count * self.step

    def __len__(self) -> int:
        return self.count
