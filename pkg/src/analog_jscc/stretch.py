"""Discontinuity of the analog code map along one source coordinate.

A block of k source values (in the normalised x domain) is expanded to
``depth`` planes, every plane (B = 1) is encoded by the component code and the
weighted map turns the ``depth`` codewords into one length-n real vector.
"""

from __future__ import annotations

import numpy as np

from .analog_map import WeightProfile, map_symbols
from .bitplane import expand_bits
from .block_codes import LinearCode
from .numerics import SeededStream

X2_DEFAULT = 0.7095
X3_DEFAULT = 0.4289
DELTAS_DEFAULT = tuple(2.0 ** -e for e in range(4, 13))


def code_vector(x, code: LinearCode, depth: int = 3, w: float = 0.75) -> np.ndarray:
    """Analog codeword(s) for blocks ``x`` of shape ``(..., k)`` -> ``(..., n)``."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != code.k:
        raise ValueError(f"block must hold k = {code.k} source values")
    planes = np.swapaxes(expand_bits(x, depth), -1, -2)   # (..., depth, k)
    words = code.encode(planes)                            # (..., depth, n)
    return map_symbols(words, WeightProfile(w, depth))


def sweep_coordinate(grid, fixed, code: LinearCode, coord: int = 0, depth: int = 3,
                     w: float = 0.75) -> np.ndarray:
    """Codewords as coordinate ``coord`` runs over ``grid``, others held at ``fixed``."""
    grid = np.asarray(grid, dtype=float)
    x = np.empty(grid.shape + (code.k,))
    others = iter(fixed)
    for c in range(code.k):
        x[..., c] = grid if c == coord else next(others)
    return code_vector(x, code, depth, w)


def jump_size(code: LinearCode, fixed=(X2_DEFAULT, X3_DEFAULT), at: float = 0.5,
              eps: float = 1e-6, coord: int = 0, depth: int = 3, w: float = 0.75) -> float:
    """Squared L2 distance between the codewords at ``at - eps`` and ``at``."""
    y = sweep_coordinate([at - eps, at], fixed, code, coord, depth, w)
    return float(np.sum((y[1] - y[0]) ** 2))


def stretch_factor(delta: float, code: LinearCode, fixed=(X2_DEFAULT, X3_DEFAULT),
                   points: int = 100_000, coord: int = 0, depth: int = 3,
                   w: float = 0.75, seed: int = 0) -> tuple[float, float]:
    """Monte Carlo mean and maximum of ||f(x + delta e_j) - f(x)||^2.

    Coordinate j is drawn on a jittered (stratified) grid over [0, 1 - delta).
    """
    if not 0 <= delta < 1:
        raise ValueError("delta must lie in [0, 1)")
    if delta == 0:
        return 0.0, 0.0
    rng = SeededStream(seed, (0x57, points)).generator()
    u = (np.arange(points) + rng.random(points)) / points * (1.0 - delta)
    y0 = sweep_coordinate(u, fixed, code, coord, depth, w)
    y1 = sweep_coordinate(u + delta, fixed, code, coord, depth, w)
    d2 = np.sum((y1 - y0) ** 2, axis=-1)
    return float(d2.mean()), float(d2.max())
