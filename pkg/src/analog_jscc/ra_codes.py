"""Generalized repeat-accumulate codes and their sum-product decoder.

Encoder: repeat each of the k info bits q times, permute, XOR groups of ``a``
consecutive permuted bits, run the result through a single accumulator
x_j = x_{j-1} ^ u_j with x_0 = 0 and send the accumulator states.  Rate a/q.
With ``systematic`` the info bits are sent in front of the parity stream.

Public LLRs use ln P(bit=1)/P(bit=0) (positive -> 1), matching
:func:`analog_jscc.channels.level_channel_llr`; the decoder flips to the usual
ln P(0)/P(1) internally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numba
import numpy as np

from .channels import LLR_CLIP, level_channel_llr  # noqa: F401  (re-export)
from .numerics import SeededStream


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RAConfig:
    q: int
    a: int
    k: int
    interleaver_seed: int = 0
    iterations: int = 20
    systematic: bool = False
    accumulators: int = 1

    def __post_init__(self):
        if self.q < 2 or self.a < 1 or self.k < 1:
            raise ConfigError("need q >= 2, a >= 1, k >= 1")
        if self.a > self.q and not self.systematic:
            raise ConfigError("grouping factor a must not exceed q")
        if (self.k * self.q) % self.a:
            raise ConfigError(f"a={self.a} must divide k*q={self.k * self.q}")
        if self.accumulators != 1:
            raise NotImplementedError("only the single-accumulator form is implemented")
        if self.iterations < 0:
            raise ConfigError("iterations must be >= 0")

    @property
    def parity_length(self) -> int:
        return self.k * self.q // self.a

    @property
    def n(self) -> int:
        return self.parity_length + (self.k if self.systematic else 0)

    @property
    def rate(self) -> float:
        return self.k / self.n


def make_interleaver(length: int, seed: int) -> np.ndarray:
    """Uniform random permutation (Fisher-Yates) keyed by ``seed``."""
    rng = SeededStream(seed, (0x1A7E,)).generator()
    perm = np.arange(length, dtype=np.int64)
    for i in range(length - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        perm[i], perm[j] = perm[j], perm[i]
    return perm


@numba.njit(cache=True, inline="always")
def _boxplus(x, y):
    # exact 2 atanh(tanh(x/2) tanh(y/2)) in max-star form
    s = 1.0 if (x >= 0) == (y >= 0) else -1.0
    m = min(abs(x), abs(y))
    return s * m + math.log1p(math.exp(-abs(x + y))) - math.log1p(math.exp(-abs(x - y)))


@numba.njit(cache=True)
def _clip(x):
    return min(max(x, -50.0), 50.0)


@numba.njit(cache=True, nogil=True)
def _spa_word(ch, sys_ch, edge_var, iterations, q, a):
    # ch: parity LLRs (ln P0/P1) length m; sys_ch: systematic LLRs or zeros (k)
    # edge_var[e]: info bit on repeated edge e, edges e in group j are j*a..j*a+a-1
    m = ch.shape[0]
    k = sys_ch.shape[0]
    E = m * a
    v2c = np.zeros(E)
    c2v = np.zeros(E)
    lu = np.zeros(m)
    alpha = np.zeros(m + 1)
    beta = np.zeros(m + 1)
    post = np.zeros(k)
    for it in range(iterations + 1):
        # grouping checks -> accumulator input priors
        for j in range(m):
            acc = 50.0
            for e in range(j * a, j * a + a):
                acc = _boxplus(acc, v2c[e])
            lu[j] = acc if a > 0 else 0.0
        # forward-backward over the accumulator chain, x_0 = 0 known
        alpha[0] = 50.0
        for j in range(m):
            alpha[j + 1] = _clip(_boxplus(alpha[j], lu[j]) + ch[j])
        beta[m] = 0.0
        for j in range(m, 0, -1):
            beta[j - 1] = _clip(_boxplus(beta[j] + ch[j - 1], lu[j - 1]))
        # extrinsic on u_j, then back through each grouping check
        for j in range(m):
            ext = _boxplus(alpha[j], _clip(beta[j + 1] + ch[j]))
            for e in range(j * a, j * a + a):
                acc = ext
                for f in range(j * a, j * a + a):
                    if f != e:
                        acc = _boxplus(acc, v2c[f])
                c2v[e] = _clip(acc)
        # repetition nodes
        for i in range(k):
            post[i] = sys_ch[i]
        for e in range(E):
            post[edge_var[e]] += c2v[e]
        for e in range(E):
            v2c[e] = _clip(post[edge_var[e]] - c2v[e])
    return post


@numba.njit(cache=True, nogil=True)
def _spa_batch(ch, sys_ch, edge_var, iterations, q, a):
    out = np.zeros((ch.shape[0], sys_ch.shape[1]))
    for b in range(ch.shape[0]):
        out[b] = _spa_word(ch[b], sys_ch[b], edge_var, iterations, q, a)
    return out


class RACode:
    """Repeat-accumulate component code built from an :class:`RAConfig`."""

    def __init__(self, cfg: RAConfig, perm=None):
        self.cfg = cfg
        if perm is None:
            perm = make_interleaver(cfg.k * cfg.q, cfg.interleaver_seed)
        self.perm = np.asarray(perm, dtype=np.int64)
        if not np.array_equal(np.sort(self.perm), np.arange(cfg.k * cfg.q)):
            raise ConfigError("interleaver is not a bijection")

    @property
    def n(self) -> int:
        return self.cfg.n

    @property
    def k(self) -> int:
        return self.cfg.k

    @property
    def rate(self) -> float:
        return self.cfg.rate

    @cached_property
    def edge_var(self) -> np.ndarray:
        # repeated stream position p carries info bit p // q; permuted slot e reads perm[e]
        return (self.perm // self.cfg.q).astype(np.int64)

    def encode(self, info) -> np.ndarray:
        info = np.asarray(info, dtype=np.uint8)
        cfg = self.cfg
        if info.shape[-1] != cfg.k:
            raise ValueError(f"info length {info.shape[-1]} != k = {cfg.k}")
        rep = info[..., self.edge_var]
        u = np.bitwise_xor.reduce(rep.reshape(info.shape[:-1] + (cfg.parity_length, cfg.a)), axis=-1)
        x = (np.cumsum(u, axis=-1, dtype=np.int64) & 1).astype(np.uint8)
        if cfg.systematic:
            x = np.concatenate([info, x], axis=-1)
        return x

    def spa_decode(self, channel_llrs, iterations: int | None = None, soft: bool = False):
        """Sum-product decoding; returns info decisions (LLR > 0 -> 1, ties -> 0).

        ``iterations`` counts exchanges between the repetition nodes and the
        accumulator trellis; 0 means one trellis pass under flat priors.
        """
        cfg = self.cfg
        iters = cfg.iterations if iterations is None else int(iterations)
        llr = np.asarray(channel_llrs, dtype=float)
        if llr.shape[-1] != cfg.n:
            raise ValueError(f"LLR length {llr.shape[-1]} != coded length {cfg.n}")
        if cfg.a > 1 and not cfg.systematic:
            raise ConfigError(
                "non-systematic RA with a > 1 has no information-bit evidence; "
                "sum-product cannot leave the all-zero-LLR fixed point")
        lead = llr.shape[:-1]
        flat = -np.clip(llr.reshape(-1, cfg.n), -LLR_CLIP, LLR_CLIP)
        if cfg.systematic:
            sys_ch = np.ascontiguousarray(flat[:, : cfg.k])
            par = np.ascontiguousarray(flat[:, cfg.k:])
        else:
            sys_ch = np.zeros((flat.shape[0], cfg.k))
            par = np.ascontiguousarray(flat)
        post = -_spa_batch(par, sys_ch, self.edge_var, iters, cfg.q, cfg.a)
        post = post.reshape(lead + (cfg.k,))
        if soft:
            return post
        return (post > 0).astype(np.uint8)

    # stream interface shared with LinearCode
    def encode_stream(self, bits) -> np.ndarray:
        bits = np.asarray(bits, dtype=np.uint8)
        m = self._blocks(bits.shape[-1], self.k)
        words = self.encode(bits.reshape(bits.shape[:-1] + (m, self.k)))
        return words.reshape(bits.shape[:-1] + (m * self.n,))

    def decode_stream(self, llr) -> np.ndarray:
        llr = np.asarray(llr, dtype=float)
        m = self._blocks(llr.shape[-1], self.n)
        info = self.spa_decode(llr.reshape(llr.shape[:-1] + (m, self.n)))
        return info.reshape(llr.shape[:-1] + (m * self.k,))

    def coded_length(self, info_length: int) -> int:
        return self._blocks(info_length, self.k) * self.n

    @staticmethod
    def _blocks(length: int, unit: int) -> int:
        if length % unit:
            raise ValueError(f"stream length {length} is not a multiple of {unit}")
        return length // unit


def ra_encode(cfg: RAConfig, info) -> np.ndarray:
    return RACode(cfg).encode(info)


def spa_decode(cfg: RAConfig, channel_llrs, iterations: int | None = None) -> np.ndarray:
    return RACode(cfg).spa_decode(channel_llrs, iterations)
