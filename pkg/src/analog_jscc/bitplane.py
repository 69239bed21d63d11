"""Source samples <-> binary bit planes <-> per-level streams.

Bit planes are stored as ``uint8`` arrays of shape ``(..., M, k)``: plane index
first (most significant plane at row 0), time second.  A level stream holds the
``B`` planes of one level read time-major, plane-minor.
"""

from __future__ import annotations

import math

import numpy as np

SQRT3 = math.sqrt(3.0)
MAX_DEPTH = 62


def _check_source(s: np.ndarray) -> None:
    bad = ~((s >= -SQRT3) & (s < SQRT3))
    if np.any(bad):
        idx = np.flatnonzero(bad.ravel())[0]
        raise ValueError(f"source sample {s.ravel()[idx]!r} at index {idx} "
                         f"outside [-sqrt(3), sqrt(3))")


def normalize_source(s):
    """Map ``s`` in [-sqrt3, sqrt3) affinely onto x in [0, 1)."""
    arr = np.asarray(s, dtype=float)
    _check_source(arr)
    x = (arr + SQRT3) / (2.0 * SQRT3)
    # rounding can land exactly on 1.0 for s just below sqrt3
    x = np.minimum(x, np.nextafter(1.0, 0.0))
    return x if x.ndim else float(x)


def denormalize(x):
    return 2.0 * SQRT3 * np.asarray(x, dtype=float) - SQRT3


def _check_depth(M: int) -> None:
    if not 1 <= M <= MAX_DEPTH:
        raise ValueError(f"depth M must be in [1, {MAX_DEPTH}], got {M}")


def expand_bits(x, M: int) -> np.ndarray:
    """Leading ``M`` binary digits of ``x`` in [0, 1), shape ``x.shape + (M,)``.

    Floats are dyadic rationals, so ``floor(x * 2**M)`` is exact and the digits
    are the greedy (round-down) expansion.
    """
    _check_depth(M)
    x = np.asarray(x, dtype=float)
    if np.any((x < 0) | (x >= 1)) or np.any(np.isnan(x)):
        raise ValueError("x must lie in [0, 1)")
    q = np.floor(np.ldexp(x, M)).astype(np.uint64)
    shifts = np.arange(M - 1, -1, -1, dtype=np.uint64)
    return ((q[..., None] >> shifts) & np.uint64(1)).astype(np.uint8)


def bit_planes(s, M: int) -> np.ndarray:
    """Bit-plane matrix of source samples ``s`` (shape ``(..., k)``) -> ``(..., M, k)``."""
    bits = expand_bits(normalize_source(np.asarray(s, dtype=float)), M)
    return np.swapaxes(bits, -1, -2)


def planes_to_fraction(planes: np.ndarray) -> np.ndarray:
    """Sum of b_l 2^-l over the plane axis: ``(..., M, k)`` -> ``(..., k)``."""
    M = planes.shape[-2]
    scale = np.ldexp(1.0, -np.arange(1, M + 1))
    return np.einsum("...mk,m->...k", planes.astype(float), scale)


def reconstruct(planes: np.ndarray, midpoint: bool = False) -> np.ndarray:
    """Source estimate from bit planes.

    With ``midpoint`` the untransmitted tail is replaced by its conditional mean
    (half the weight of the last retained plane), otherwise by zeros.
    """
    planes = np.asarray(planes)
    x = planes_to_fraction(planes)
    if midpoint:
        x = x + math.ldexp(1.0, -planes.shape[-2] - 1)
    return denormalize(x)


def regroup_levels(planes: np.ndarray, B: int) -> np.ndarray:
    """Level streams ``(..., M // B, k * B)`` from planes ``(..., M, k)``.

    Level i collects planes (i-1)B+1 .. iB; within it bits run over time first
    and over the B planes within each time instant.
    """
    planes = np.asarray(planes)
    M, k = planes.shape[-2:]
    if B < 1 or M % B:
        raise ValueError(f"planes per level B={B} must divide depth M={M}")
    lead = planes.shape[:-2]
    grouped = planes.reshape(lead + (M // B, B, k))
    return np.swapaxes(grouped, -1, -2).reshape(lead + (M // B, k * B))


def ungroup_levels(levels: np.ndarray, B: int) -> np.ndarray:
    """Inverse of :func:`regroup_levels`."""
    levels = np.asarray(levels)
    L, kB = levels.shape[-2:]
    if B < 1 or kB % B:
        raise ValueError(f"level length {kB} is not a multiple of B={B}")
    lead = levels.shape[:-2]
    tmp = levels.reshape(lead + (L, kB // B, B))
    return np.swapaxes(tmp, -1, -2).reshape(lead + (L * B, kB // B))
