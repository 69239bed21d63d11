"""Binary linear block codes: encoding, exhaustive hard-decision ML decoding,
and the bounded-distance union bound on information-bit error."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

ML_MAX_K = 20
_CHUNK = 1 << 22  # words x codewords evaluated per distance block


class CapabilityError(RuntimeError):
    """The requested operation is infeasible for this code."""


def gf2_rank(M: np.ndarray) -> int:
    A = np.array(M, dtype=np.uint8) % 2
    rank = 0
    rows, cols = A.shape
    for c in range(cols):
        pivot = np.flatnonzero(A[rank:, c])
        if pivot.size == 0:
            continue
        p = rank + pivot[0]
        A[[rank, p]] = A[[p, rank]]
        others = np.flatnonzero(A[:, c])
        others = others[others != rank]
        A[others] ^= A[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def systematic_form(G: np.ndarray) -> np.ndarray:
    """Row-reduce G to [I | P] (requires the first k columns to be independent)."""
    A = np.array(G, dtype=np.uint8) % 2
    k = A.shape[0]
    for c in range(k):
        pivot = np.flatnonzero(A[c:, c])
        if pivot.size == 0:
            raise ValueError("leading k columns are dependent")
        p = c + pivot[0]
        A[[c, p]] = A[[p, c]]
        others = np.flatnonzero(A[:, c])
        A[others[others != c]] ^= A[c]
    return A


def _pack(bits: np.ndarray) -> np.ndarray:
    """Pack the last axis (<= 63 bits, first bit most significant) into int64."""
    n = bits.shape[-1]
    weights = np.left_shift(np.int64(1), np.arange(n - 1, -1, -1, dtype=np.int64))
    return (bits.astype(np.int64) * weights).sum(axis=-1)


@dataclass(frozen=True, eq=False)
class LinearCode:
    """An [n, k, d] binary linear code.  ``G`` may be omitted for codes that are
    only used in analytic bounds."""

    name: str
    n: int
    k: int
    d: int
    G: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.G is not None:
            G = np.asarray(self.G, dtype=np.uint8) % 2
            if G.shape != (self.k, self.n):
                raise ValueError(f"G has shape {G.shape}, expected {(self.k, self.n)}")
            if gf2_rank(G) != self.k:
                raise ValueError("generator matrix is rank deficient")
            G.setflags(write=False)
            object.__setattr__(self, "G", G)

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def t(self) -> int:
        return (self.d - 1) // 2

    @property
    def systematic(self) -> bool:
        return self.G is not None and bool(
            np.array_equal(self.G[:, : self.k], np.eye(self.k, dtype=np.uint8)))

    def _require_G(self) -> np.ndarray:
        if self.G is None:
            raise CapabilityError(f"{self.name} has no generator matrix; bound-only code")
        return self.G

    def encode(self, info) -> np.ndarray:
        """Codewords ``info @ G`` over GF(2); ``info`` has shape ``(..., k)``."""
        G = self._require_G()
        info = np.asarray(info, dtype=np.uint8)
        if info.shape[-1] != self.k:
            raise ValueError(f"info length {info.shape[-1]} != k = {self.k}")
        return ((info.astype(np.int64) @ G.astype(np.int64)) & 1).astype(np.uint8)

    @cached_property
    def _codebook(self) -> tuple[np.ndarray, np.ndarray]:
        if self.k > ML_MAX_K:
            raise CapabilityError(
                f"exhaustive ML over 2^{self.k} codewords is infeasible; "
                "use the code in bound-only mode")
        if self.n > 63:
            raise CapabilityError("codeword packing supports n <= 63")
        msgs = expand_messages(self.k)
        words = self.encode(msgs)
        return msgs, _pack(words)

    def codewords(self) -> np.ndarray:
        msgs, _ = self._codebook
        return self.encode(msgs)

    def minimum_distance(self) -> int:
        _, packed = self._codebook
        return int(np.bitwise_count(packed[1:]).min())

    def hard_ml_decode(self, words) -> np.ndarray:
        """Info bits of a nearest codeword, shape ``(..., n)`` -> ``(..., k)``.

        Ties go to the lexicographically smallest information word.
        """
        self._require_G()
        words = np.asarray(words, dtype=np.uint8)
        if words.shape[-1] != self.n:
            raise ValueError(f"word length {words.shape[-1]} != n = {self.n}")
        msgs, book = self._codebook
        flat = _pack(words.reshape(-1, self.n))
        best = np.empty(flat.shape[0], dtype=np.int64)
        step = max(1, _CHUNK // book.size)
        for lo in range(0, flat.size, step):
            dist = np.bitwise_count(flat[lo:lo + step, None] ^ book[None, :])
            best[lo:lo + step] = np.argmin(dist, axis=1)
        return msgs[best].reshape(words.shape[:-1] + (self.k,))

    # streams: a level stream is a concatenation of info words
    def encode_stream(self, bits) -> np.ndarray:
        bits = np.asarray(bits, dtype=np.uint8)
        m = self._blocks(bits.shape[-1], self.k)
        words = self.encode(bits.reshape(bits.shape[:-1] + (m, self.k)))
        return words.reshape(bits.shape[:-1] + (m * self.n,))

    def decode_stream(self, llr) -> np.ndarray:
        """Hard-decide the LLRs (positive -> 1) and ML-decode each word."""
        llr = np.asarray(llr, dtype=float)
        m = self._blocks(llr.shape[-1], self.n)
        hard = (llr > 0).astype(np.uint8).reshape(llr.shape[:-1] + (m, self.n))
        info = self.hard_ml_decode(hard)
        return info.reshape(llr.shape[:-1] + (m * self.k,))

    def coded_length(self, info_length: int) -> int:
        return self._blocks(info_length, self.k) * self.n

    @staticmethod
    def _blocks(length: int, unit: int) -> int:
        if length % unit:
            raise ValueError(f"stream length {length} is not a multiple of {unit}")
        return length // unit


def expand_messages(k: int) -> np.ndarray:
    """All 2^k messages in lexicographic order, shape ``(2^k, k)``."""
    idx = np.arange(1 << k, dtype=np.int64)
    shifts = np.arange(k - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] >> shifts) & 1).astype(np.uint8)


def binomial_tail_weighted(n: int, t: int, p) -> np.ndarray:
    """sum_{m=t+1}^{n} (m/n) C(n,m) p^m (1-p)^(n-m), vectorised over ``p``."""
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    pos = p > 0
    lp = np.log(np.where(pos, p, 1.0))
    lq = np.log1p(-np.where(pos, p, 0.0))
    for m in range(t + 1, n + 1):
        logc = math.lgamma(n + 1) - math.lgamma(m + 1) - math.lgamma(n - m + 1)
        out += np.where(pos, (m / n) * np.exp(logc + m * lp + (n - m) * lq), 0.0)
    return out


def union_bound_pe(code: LinearCode, p):
    """Information-bit error bound for bounded-distance decoding over a BSC(p).

    Sums from m = floor((d-1)/2) + 1, i.e. every pattern beyond the guaranteed
    correction radius counts with its fraction m/n of wrong bits.
    """
    arr = np.asarray(p, dtype=float)
    if np.any((arr < 0) | (arr > 0.5)) or np.any(np.isnan(arr)):
        raise ValueError("crossover probability must lie in [0, 1/2]")
    out = np.clip(binomial_tail_weighted(code.n, code.t, arr), 0.0, 1.0)
    return out if out.ndim else float(out)


def block_failure_prob(code: LinearCode, p):
    """P(more than t channel errors in a block) -- the exact block error rate of
    bounded-distance decoding, and of ML decoding for perfect codes."""
    arr = np.asarray(p, dtype=float)
    total = np.zeros_like(arr)
    for m in range(code.t + 1, code.n + 1):
        total += math.comb(code.n, m) * arr ** m * (1 - arr) ** (code.n - m)
    return total if total.ndim else float(total)


def load_generator(path: str | Path) -> np.ndarray:
    """Read a generator matrix: one row per line of whitespace-separated 0/1."""
    rows = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if any(tok not in ("0", "1") for tok in toks):
            raise ValueError(f"{path}:{lineno}: generator entries must be 0 or 1")
        rows.append([int(tok) for tok in toks])
    if not rows or len({len(r) for r in rows}) != 1:
        raise ValueError(f"{path}: generator rows missing or of unequal length")
    return np.array(rows, dtype=np.uint8)


def code_from_file(path: str | Path, name: str | None = None) -> LinearCode:
    G = load_generator(path)
    k, n = G.shape
    probe = LinearCode(name or Path(path).stem, n, k, 1, G)
    return LinearCode(probe.name, n, k, probe.minimum_distance(), G)


# Golay generator polynomial 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11
_GOLAY_POLY = (1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1)


def _golay_generator() -> np.ndarray:
    n, k = 23, 12
    G = np.zeros((k, n), dtype=np.uint8)
    for r in range(k):
        G[r, r:r + len(_GOLAY_POLY)] = _GOLAY_POLY
    return systematic_form(G)


def golay() -> LinearCode:
    return LinearCode("golay_23_12_7", 23, 12, 7, _golay_generator())


DUAL_HAMMING_G = np.array([[1, 0, 1, 0, 1, 0, 1],
                           [0, 1, 0, 0, 1, 1, 1],
                           [0, 0, 1, 1, 1, 1, 0]], dtype=np.uint8)


def dual_hamming() -> LinearCode:
    return LinearCode("dual_hamming_7_3_4", 7, 3, 4, DUAL_HAMMING_G)


def code_72_36_16() -> LinearCode:
    return LinearCode("code_72_36_16", 72, 36, 16)


REGISTRY = {
    "golay": golay,
    "dual_hamming": dual_hamming,
    "72_36_16": code_72_36_16,
}


def get_code(name: str) -> LinearCode:
    if name in REGISTRY:
        return REGISTRY[name]()
    if Path(name).is_file():
        return code_from_file(name)
    raise KeyError(f"unknown code {name!r}; known: {sorted(REGISTRY)} or a generator file")
