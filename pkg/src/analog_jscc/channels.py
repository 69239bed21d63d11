"""AWGN and Gauss-Uniform noise, level error probability, effective SNR and
binary-input capacity."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .numerics import SeededStream, adaptive_quad

LLR_CLIP = 50.0
_SQRT2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class AwgnChannel:
    sigma2: float

    def __post_init__(self):
        if not self.sigma2 > 0:
            raise ValueError("AWGN variance must be positive")

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)

    @property
    def snr(self) -> float:
        return 1.0 / self.sigma2

    def logpdf(self, z):
        z = np.asarray(z, dtype=float)
        return -0.5 * z * z / self.sigma2 - math.log(self.sigma * _SQRT2PI)

    def pdf(self, z):
        return np.exp(self.logpdf(z))

    def entropy_bits(self) -> float:
        return 0.5 * math.log2(2 * math.pi * math.e * self.sigma2)

    def support(self) -> float:
        return 12.0 * self.sigma

    def edges(self) -> tuple[float, ...]:
        return (0.0,)


@dataclass(frozen=True)
class GaussUniform:
    """Uniform noise on [-a, a) plus independent N(0, sigma2)."""

    a: float
    sigma2: float

    def __post_init__(self):
        if not self.a > 0 or not self.sigma2 >= 0:
            raise ValueError("GaussUniform needs a > 0 and sigma2 >= 0")

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)

    @property
    def variance(self) -> float:
        return self.a ** 2 / 3.0 + self.sigma2

    def pdf(self, z):
        return gu_pdf(z, self)

    def logpdf(self, z):
        return gu_logpdf(z, self)

    def support(self) -> float:
        return self.a + 12.0 * self.sigma

    def edges(self) -> tuple[float, ...]:
        return (-self.a, 0.0, self.a)


def gu_pdf(z, ch: GaussUniform):
    """(1/(4a)) [erf((z+a)/(sigma sqrt2)) - erf((z-a)/(sigma sqrt2))]."""
    z = np.abs(np.asarray(z, dtype=float))
    if ch.sigma2 == 0:
        return np.where(z <= ch.a, 0.5 / ch.a, 0.0)
    s = ch.sigma
    # symmetric form keeps both arguments in the accurate lower tail
    return (special.ndtr((ch.a - z) / s) - special.ndtr((-ch.a - z) / s)) / (2 * ch.a)


def gu_logpdf(z, ch: GaussUniform):
    z = np.abs(np.asarray(z, dtype=float))
    if ch.sigma2 == 0:
        with np.errstate(divide="ignore"):
            return np.where(z <= ch.a, -math.log(2 * ch.a), -np.inf)
    s = ch.sigma
    hi = special.log_ndtr((ch.a - z) / s)
    lo = special.log_ndtr((-ch.a - z) / s)
    with np.errstate(divide="ignore", invalid="ignore"):
        return hi + np.log(-np.expm1(lo - hi)) - math.log(2 * ch.a)


def gu_cdf(z, ch: GaussUniform):
    """P(Z <= z) = (1/(2a)) [G(z + a) - G(z - a)] with G(t) = t Phi(t/s) + s phi(t/s)."""
    z = np.asarray(z, dtype=float)
    if ch.sigma2 == 0:
        return np.clip((z + ch.a) / (2 * ch.a), 0.0, 1.0)
    s = ch.sigma
    G = lambda t: t * special.ndtr(t / s) + s * np.exp(-0.5 * (t / s) ** 2) / _SQRT2PI
    return np.clip((G(z + ch.a) - G(z - ch.a)) / (2 * ch.a), 0.0, 1.0)


def awgn_transmit(y, sigma: float, rng: np.random.Generator | SeededStream):
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    y = np.asarray(y, dtype=float)
    if isinstance(rng, SeededStream):
        rng = rng.generator()
    return y + sigma * rng.standard_normal(y.shape)


def level_error_prob(a, sigma):
    """Crossover probability of a +-a bit under GU(a, sigma^2) noise.

    sigma (1 - exp(-2a^2/sigma^2)) / (2a sqrt(2pi)) + erfc(a sqrt2 / sigma) / 2
    """
    a = np.asarray(a, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = a / sigma
        p = -np.expm1(-2.0 * r * r) / (2.0 * r * _SQRT2PI) + 0.5 * special.erfc(r * math.sqrt(2.0))
    p = np.where(sigma == 0, 0.0, np.where(np.isinf(sigma), 0.5, p))
    return p if p.ndim else float(p)


def effective_snr(gamma, w: float):
    """SNR of the top-level bit when the lower levels act as noise."""
    if not 0 < w < 1:
        raise ValueError("w must lie in (0, 1)")
    gamma = np.asarray(gamma, dtype=float)
    if np.any(gamma < 0):
        raise ValueError("gamma must be >= 0")
    finite = np.where(np.isinf(gamma), 0.0, gamma)
    out = np.where(np.isinf(gamma), w / (1 - w), w * finite / (1 + (1 - w) * finite))
    return out if out.ndim else float(out)


def level_channel_llr(r, amplitude: float, noise: GaussUniform | AwgnChannel):
    """ln[p(r - A) / p(r + A)]: positive favours the +A symbol (bit 1); clipped."""
    r = np.asarray(r, dtype=float)
    with np.errstate(invalid="ignore"):
        llr = noise.logpdf(r - amplitude) - noise.logpdf(r + amplitude)
    llr = np.nan_to_num(llr, nan=0.0, posinf=LLR_CLIP, neginf=-LLR_CLIP)
    return np.clip(llr, -LLR_CLIP, LLR_CLIP)


def _neg_plogp(logp: float) -> float:
    return 0.0 if logp == -np.inf else -math.exp(logp) * logp


def differential_entropy_bits(noise, tol: float = 1e-8) -> float:
    """h(Z) in bits by quadrature."""
    if isinstance(noise, GaussUniform) and noise.sigma2 == 0:
        return math.log2(2 * noise.a)
    lim = noise.support()
    f = lambda z: _neg_plogp(float(noise.logpdf(z)))
    return adaptive_quad(f, -lim, lim, tol=tol, points=noise.edges()) / math.log(2)


def output_entropy_bits(noise, amplitude: float, tol: float = 1e-8) -> float:
    """h(Y) in bits for Y = X + Z, X uniform on {-A, +A}."""
    lim = amplitude + noise.support()

    def f(y):
        lp = np.logaddexp(noise.logpdf(y - amplitude), noise.logpdf(y + amplitude)) - math.log(2)
        return _neg_plogp(float(lp))

    pts = sorted({amplitude + e for e in noise.edges()} | {-amplitude + e for e in noise.edges()})
    return adaptive_quad(f, -lim, lim, tol=tol, points=pts) / math.log(2)


def binary_input_capacity(noise, amplitude: float, tol: float = 1e-6) -> float:
    """I(X;Y) for equiprobable X in {+-amplitude}: h(Y) - h(Z), in bits."""
    if not amplitude > 0:
        raise ValueError("amplitude must be positive")
    # each entropy gets half the absolute error budget, in nats
    each = 0.5 * tol * math.log(2)
    c = output_entropy_bits(noise, amplitude, each) - differential_entropy_bits(noise, each)
    return min(1.0, max(0.0, c))


def capacity_threshold_sigma(rate: float, amplitude: float, a: float,
                             tol: float = 1e-9) -> float:
    """Noise std at which GU(a, sigma^2) binary-input capacity equals ``rate``.

    Bisection on the monotone capacity curve.
    """
    if not 0 < rate < 1:
        raise ValueError("rate must lie in (0, 1)")
    cap = lambda s: binary_input_capacity(GaussUniform(a, s * s), amplitude, tol=1e-9)
    lo, hi = 1e-6, 1.0
    while cap(hi) > rate:
        hi *= 2.0
    while hi - lo > tol * hi:
        mid = 0.5 * (lo + hi)
        if cap(mid) > rate:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
