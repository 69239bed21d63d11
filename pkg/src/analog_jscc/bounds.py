"""Analytic distortion curves: Shannon lower bounds and the hard-decision
union-bound chain for the w = 3/4 construction."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .block_codes import LinearCode, union_bound_pe
from .channels import level_error_prob

SQRT3 = math.sqrt(3.0)
_TWO_PI_E = 2.0 * math.pi * math.e


@dataclass(frozen=True)
class BoundCurve:
    snr_db: np.ndarray
    distortion: np.ndarray
    label: str

    def __post_init__(self):
        if np.any(np.diff(self.snr_db) <= 0):
            raise ValueError("SNR grid must be strictly increasing")


def db_to_linear(db):
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0)


def shannon_lower_bound(snr, N: float):
    """1 / (2 pi e (1 + snr)^N), with the source entropy term taken as 0."""
    snr = np.asarray(snr, dtype=float)
    out = np.exp(-N * np.log1p(snr)) / _TWO_PI_E
    return out if out.ndim else float(out)


def shannon_lower_bound_uniform(snr, N: float):
    """Shannon lower bound using h(s) = log2(2 sqrt3) of the unit-power uniform
    source: 12 / (2 pi e (1 + snr)^N)."""
    return 12.0 * shannon_lower_bound(snr, N)


def level_amplitude(i) -> np.ndarray:
    return SQRT3 / 2.0 ** np.asarray(i, dtype=float)


def level_pe(i: int, sigma, code: LinearCode):
    """Union bound on info-bit error at level i with crossover P(i, sigma)."""
    return union_bound_pe(code, level_error_prob(level_amplitude(i), sigma))


def level_distortion(i: int, sigma, B: int, code: LinearCode | None = None, pe=None):
    """2 (4^B - 1) 4^(-Bi) P_e(i, sigma); pass ``pe`` to override the union bound."""
    if i < 1 or B < 1:
        raise ValueError("need i >= 1 and B >= 1")
    if pe is None:
        pe = level_pe(i, sigma, code)
    return 2.0 * (4.0 ** B - 1.0) * 4.0 ** (-B * i) * np.asarray(pe, dtype=float)


def truncated_distortion(sigma, B: int, I: int, code: LinearCode):
    """D_I(sigma) = 4^(-BI) + sum_{i<=I} D(i, sigma)."""
    if I < 1:
        raise ValueError("I must be >= 1")
    sigma = np.asarray(sigma, dtype=float)
    total = np.full(sigma.shape, 4.0 ** (-B * I))
    for i in range(1, I + 1):
        total = total + level_distortion(i, sigma, B, code)
    return total if total.ndim else float(total)


def bound_curve(snr_db, B: int, I: int, code: LinearCode) -> BoundCurve:
    snr_db = np.asarray(snr_db, dtype=float)
    sigma = 1.0 / np.sqrt(db_to_linear(snr_db))
    return BoundCurve(snr_db, truncated_distortion(sigma, B, I, code),
                      f"union_bound {code.name} B={B} I={I}")


def shannon_curve(snr_db, N: float, corrected: bool = False) -> BoundCurve:
    snr_db = np.asarray(snr_db, dtype=float)
    f = shannon_lower_bound_uniform if corrected else shannon_lower_bound
    tag = "shannon_uniform" if corrected else "shannon"
    return BoundCurve(snr_db, f(db_to_linear(snr_db), N), f"{tag} N={N:.6g}")


def slope_fit(snr_db, distortion, window: tuple[float, float] | None = None) -> float:
    """Least-squares slope of 10 log10(D) against SNR in dB (dB per dB)."""
    x = np.asarray(snr_db, dtype=float)
    y = 10.0 * np.log10(np.asarray(distortion, dtype=float))
    if window is not None:
        sel = (x >= window[0] - 1e-9) & (x <= window[1] + 1e-9)
        x, y = x[sel], y[sel]
    if x.size < 3:
        raise ValueError(f"slope fit needs >= 3 points in the window, got {x.size}")
    return float(np.polyfit(x, y, 1)[0])
