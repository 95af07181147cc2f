"""Sampling grids over the a-priori information axis and sampled EXIT curves."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


class Channel(str, enum.Enum):
    BEC = "bec"
    BSC = "bsc"

    @classmethod
    def parse(cls, value) -> "Channel":
        if isinstance(value, Channel):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"unknown channel {value!r}; expected 'bec' or 'bsc'") from None


@dataclass(frozen=True)
class GridSpec:
    """Uniform open grid I_A = upper * k / (count + 1), k = 1..count.

    With ``upper = 1`` this is the plain open-interval grid over (0, 1). A
    smaller ``upper`` truncates the grid away from I_A -> 1; the BSC
    convergence constraint needs this (see ``default_grid``).
    """

    count: int = 1000
    upper: float = 1.0

    def __post_init__(self):
        if int(self.count) != self.count or self.count < 2:
            raise DomainError("grid count must be an integer >= 2")
        if not (0.0 < self.upper <= 1.0):
            raise DomainError("grid upper end must lie in (0, 1]")

    def points(self) -> np.ndarray:
        k = np.arange(1, self.count + 1, dtype=float)
        return self.upper * k / (self.count + 1)

    def to_dict(self) -> dict:
        return {"count": int(self.count), "upper": float(self.upper)}

    @classmethod
    def from_dict(cls, d: dict) -> "GridSpec":
        return cls(count=int(d["count"]), upper=float(d.get("upper", 1.0)))


# Upper end for BSC grids: I_A = 1 - H(0.01), i.e. extrinsic crossover >= 0.01.
# Near I_A -> 1 the degree-2 parity branch alone forces the VN curve below the
# BSC check-node inverse for every RA ensemble, so the untruncated constraint
# is infeasible for every d_c.
BSC_GRID_UPPER = 0.9192068641040888


def default_grid(channel, count: int = 1000) -> GridSpec:
    ch = Channel.parse(channel)
    if ch is Channel.BSC:
        return GridSpec(count, BSC_GRID_UPPER)
    return GridSpec(count, 1.0)


@dataclass
class ExitCurve:
    """I_E sampled at the points of a grid."""

    i_a: np.ndarray
    i_e: np.ndarray
    grid: GridSpec | None = None
    label: str = ""

    def __post_init__(self):
        self.i_a = np.asarray(self.i_a, dtype=float)
        self.i_e = np.asarray(self.i_e, dtype=float)
        if self.i_a.shape != self.i_e.shape or self.i_a.ndim != 1:
            raise DomainError("i_a and i_e must be 1-d arrays of equal length")
        if np.any(np.diff(self.i_a) <= 0):
            raise DomainError("i_a samples must be strictly increasing")
        if np.any(self.i_e < -1e-15) or np.any(self.i_e > 1 + 1e-15):
            raise DomainError("i_e samples must lie in [0, 1]")

    @classmethod
    def sample(cls, func, grid: GridSpec, label: str = "") -> "ExitCurve":
        t = grid.points()
        return cls(t, np.asarray(func(t), dtype=float), grid, label)

    def samples(self):
        return list(zip(self.i_a.tolist(), self.i_e.tolist()))

    def __len__(self):
        return len(self.i_a)
