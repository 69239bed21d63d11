"""The weighted superposition map from binary levels to a real channel symbol."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def _check_w(w: float) -> None:
    if not 0.0 < w < 1.0:
        raise ValueError(f"map weight w must lie in (0, 1), got {w!r}")


@dataclass(frozen=True)
class WeightProfile:
    """Geometric level weights w_i = sqrt(w) (1-w)^((i-1)/2), i = 1..depth."""

    w: float
    depth: int

    def __post_init__(self):
        _check_w(self.w)
        if self.depth < 1:
            raise ValueError("depth must be >= 1")

    @property
    def alpha(self) -> float:
        return math.sqrt(self.w / (1.0 - self.w))

    @property
    def beta(self) -> float:
        return math.sqrt(1.0 - self.w)

    @property
    def weights(self) -> np.ndarray:
        i = np.arange(self.depth)
        return np.exp(0.5 * math.log(self.w) + 0.5 * i * math.log1p(-self.w))

    @property
    def power(self) -> float:
        """Transmit power 1 - (1-w)^depth of the truncated map."""
        return -math.expm1(self.depth * math.log1p(-self.w))

    @property
    def half_width(self) -> float:
        """Largest |y| reachable at this depth."""
        return float(self.weights.sum())


def weights(w: float, M: int) -> WeightProfile:
    return WeightProfile(float(w), int(M))


def support_interval(w: float) -> tuple[float, float]:
    """Support of the infinite-depth map, +-sqrt(w) / (1 - sqrt(1-w))."""
    _check_w(w)
    h = math.sqrt(w) / (1.0 - math.sqrt(1.0 - w))
    return -h, h


def map_symbols(levels: np.ndarray, profile: WeightProfile) -> np.ndarray:
    """Apply the map column-wise.

    ``levels`` has shape ``(..., depth, n)`` with level 1 in row 0; the result
    has shape ``(..., n)`` with y_t = sum_i (2 b_{i,t} - 1) w_i.
    """
    levels = np.asarray(levels)
    if levels.ndim < 2 or levels.shape[-2] != profile.depth:
        raise ValueError(f"expected {profile.depth} levels along axis -2, "
                         f"got shape {levels.shape}")
    signs = 2.0 * levels.astype(float) - 1.0
    return np.einsum("...in,i->...n", signs, profile.weights)
