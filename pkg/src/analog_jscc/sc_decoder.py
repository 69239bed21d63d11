"""Analog encoder pipeline and the multistage successive-cancellation decoder."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bitplane
from .analog_map import WeightProfile, map_symbols
from .channels import GaussUniform, level_channel_llr

DEFAULT_DEPTH = 32


def default_depth(B: int) -> int:
    return B * (DEFAULT_DEPTH // B)


def interference_halfwidth(w: float) -> float:
    """Half-width of the uniform law standing in for the lower levels.

    Variance matched to 1 - w; exact (sqrt3/2) when w = 3/4.
    """
    return math.sqrt(3.0 * (1.0 - w))


@dataclass(frozen=True)
class AnalogCodec:
    """Bit planes -> per-level component codes -> weighted map.

    ``depth`` planes are encoded in ``depth // B`` levels, each by ``component``
    (anything with ``encode_stream``/``decode_stream``/``coded_length``).
    """

    component: object
    w: float = 0.75
    B: int = 2
    depth: int = DEFAULT_DEPTH

    def __post_init__(self):
        if self.B < 1 or self.depth % self.B:
            raise ValueError(f"B={self.B} must divide depth={self.depth}")

    @property
    def levels(self) -> int:
        return self.depth // self.B

    @property
    def profile(self) -> WeightProfile:
        return WeightProfile(self.w, self.levels)

    def channel_length(self, k_src: int) -> int:
        return self.component.coded_length(k_src * self.B)

    @property
    def bandwidth_expansion(self) -> float:
        return self.B / self.component.rate

    def encode(self, s):
        """Return ``(y, info_levels, coded_levels)`` for source blocks ``(..., k)``."""
        planes = bitplane.bit_planes(s, self.depth)
        info = bitplane.regroup_levels(planes, self.B)
        coded = self.component.encode_stream(info)
        return map_symbols(coded, self.profile), info, coded


@dataclass
class SCResult:
    estimate: np.ndarray
    info: np.ndarray          # decoded info streams, (..., stages, k*B)
    residuals: list | None = None


def sc_decode(r, codec: AnalogCodec, stages: int, sigma: float,
              genie_coded: np.ndarray | None = None,
              keep_residuals: bool = False) -> SCResult:
    """Decode ``stages`` levels one after another.

    Each stage forms GU-model LLRs at noise std sigma / beta^(j-1), decodes the
    level, subtracts the re-encoded (or, with ``genie_coded``, the true) level
    and rescales by 1/beta.  The estimate fills the untouched planes with the
    midpoint of the remaining interval.
    """
    if not 1 <= stages <= codec.levels:
        raise ValueError(f"stages must lie in [1, {codec.levels}]")
    r = np.asarray(r, dtype=float)
    w = codec.w
    amp = math.sqrt(w)
    beta = math.sqrt(1.0 - w)
    a_int = interference_halfwidth(w)
    decoded = []
    residuals = [] if keep_residuals else None
    sigma_j = float(sigma)
    for j in range(stages):
        if keep_residuals:
            residuals.append(r)
        noise = GaussUniform(a_int, sigma_j ** 2)
        llr = level_channel_llr(r, amp, noise)
        info_j = codec.component.decode_stream(llr)
        decoded.append(info_j)
        if j + 1 == stages:
            break
        if genie_coded is not None:
            coded_j = genie_coded[..., j, :]
        else:
            coded_j = codec.component.encode_stream(info_j)
        r = (r - (2.0 * coded_j - 1.0) * amp) / beta
        sigma_j /= beta
    info = np.stack(decoded, axis=-2)
    planes = bitplane.ungroup_levels(info, codec.B)
    return SCResult(bitplane.reconstruct(planes, midpoint=True), info, residuals)


def theorem_points(gamma: float, w: float, B: int, k_max: int) -> list[tuple[float, float]]:
    """Staircase of (SNR, distortion) = (gamma/(1-w)^(k-1), (1-w)^(kB)), k = 1..k_max."""
    if not gamma > 0:
        raise ValueError("gamma must be positive")
    return [(gamma / (1.0 - w) ** (k - 1), (1.0 - w) ** (k * B)) for k in range(1, k_max + 1)]
