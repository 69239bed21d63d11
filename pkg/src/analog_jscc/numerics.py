"""Deterministic random streams, error functions and checked quadrature."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special


class NumericalError(RuntimeError):
    """Raised when a quadrature does not reach its requested tolerance."""


@dataclass(frozen=True)
class SeededStream:
    """A random stream keyed by a master seed and integer coordinates.

    Streams with equal ``(seed, coords)`` produce identical sequences no matter
    in which order, thread or process they are created.  The key is derived with
    :class:`numpy.random.SeedSequence` (hash of seed and spawn key) and drives a
    counter-based Philox generator.
    """

    seed: int
    coords: tuple[int, ...] = ()

    def child(self, *coords: int) -> "SeededStream":
        return SeededStream(self.seed, self.coords + tuple(int(c) for c in coords))

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=int(self.seed), spawn_key=self.coords)
        key = ss.generate_state(2, dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))


def gaussian_draws(stream: SeededStream, n: int) -> np.ndarray:
    return stream.generator().standard_normal(n)


def erf(x):
    return special.erf(x)


def erfc(x):
    return special.erfc(x)


def adaptive_quad(f, lo: float, hi: float, tol: float = 1e-10, points=None,
                  limit: int = 500) -> float:
    """Integrate ``f`` over ``[lo, hi]`` and fail loudly above ``tol``.

    ``points`` are interior break points (kinks, steep edges) handed to QUADPACK.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if points is not None:
        points = sorted(p for p in points if lo < p < hi) or None
    with np.errstate(all="ignore"):
        import warnings
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            value, err = integrate.quad(f, lo, hi, epsabs=tol, epsrel=0.0,
                                        points=points, limit=limit)
    if not math.isfinite(value) or err > tol:
        raise NumericalError(
            f"quadrature over [{lo:g}, {hi:g}] reached error estimate {err:.3g} "
            f"> tol {tol:.3g} (value {value!r})")
    return value
