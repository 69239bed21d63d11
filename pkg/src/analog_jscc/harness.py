"""Reproducible Monte Carlo distortion-versus-SNR sweeps."""

from __future__ import annotations

import dataclasses
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bitplane import SQRT3
from .block_codes import get_code
from .numerics import SeededStream
from .ra_codes import RACode, RAConfig
from .sc_decoder import AnalogCodec, default_depth, sc_decode

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimConfig:
    w: float = 0.75
    B: int = 2
    stages: int = 5
    depth: int | None = None
    code: str = "golay"
    ra_repeat: int = 2
    ra_grouping: int = 1
    ra_info_length: int = 1350
    ra_interleaver_seed: int | None = None
    ra_iterations: int = 20
    ra_systematic: bool = False
    snr_db: tuple[float, ...] = (10.0, 20.0, 30.0)
    trials: int = 1000
    block_length: int | None = None
    seed: int = 0
    genie: bool = False
    common_random: bool = False
    batch: int = 256

    def __post_init__(self):
        grid = np.asarray(self.snr_db, dtype=float)
        if grid.size == 0 or np.any(np.diff(grid) <= 0):
            raise ValueError("snr_db grid must be non-empty and strictly increasing")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.batch < 1:
            raise ValueError("batch must be >= 1")


def build_component(cfg: SimConfig):
    if cfg.code == "ra":
        seed = cfg.seed if cfg.ra_interleaver_seed is None else cfg.ra_interleaver_seed
        return RACode(RAConfig(cfg.ra_repeat, cfg.ra_grouping, cfg.ra_info_length,
                               seed, cfg.ra_iterations, cfg.ra_systematic))
    return get_code(cfg.code)


def build_codec(cfg: SimConfig) -> AnalogCodec:
    depth = cfg.depth if cfg.depth is not None else default_depth(cfg.B)
    codec = AnalogCodec(build_component(cfg), cfg.w, cfg.B, depth)
    if cfg.stages > codec.levels:
        raise ValueError(f"stages={cfg.stages} exceeds the {codec.levels} encoded levels")
    return codec


def resolve_block_length(cfg: SimConfig, codec: AnalogCodec) -> int:
    k = codec.component.k
    unit = k // math.gcd(k, cfg.B)
    if cfg.block_length is None:
        return unit
    if (cfg.block_length * cfg.B) % k:
        raise ValueError(f"block_length*B = {cfg.block_length * cfg.B} must be a "
                         f"multiple of the component dimension {k}")
    return cfg.block_length


def snr_db_to_sigma(snr_db: float) -> float:
    return 0.0 if math.isinf(snr_db) and snr_db > 0 else 10.0 ** (-snr_db / 20.0)


def draw_source(rng: np.random.Generator, k: int) -> np.ndarray:
    s = rng.uniform(-SQRT3, SQRT3, k)
    return np.minimum(s, np.nextafter(SQRT3, 0.0))


class ExactSum:
    """Correctly rounded float sum whose value ignores insertion/merge order."""

    def __init__(self):
        self.partials: list[float] = []

    def add(self, x: float) -> None:
        # Shewchuk partials as in math.fsum
        x = float(x)
        i = 0
        for y in self.partials:
            if abs(x) < abs(y):
                x, y = y, x
            hi = x + y
            lo = y - (hi - x)
            if lo:
                self.partials[i] = lo
                i += 1
            x = hi
        self.partials[i:] = [x]

    def merge(self, other: "ExactSum") -> "ExactSum":
        out = ExactSum()
        for p in self.partials + other.partials:
            out.add(p)
        return out

    @property
    def value(self) -> float:
        return math.fsum(self.partials)


@dataclass
class PointStats:
    """Mergeable per-point accumulator."""

    stages: int
    count: int = 0
    mse_sum: ExactSum = field(default_factory=ExactSum)
    mse_sq_sum: ExactSum = field(default_factory=ExactSum)
    bit_errors: np.ndarray = None
    bits: int = 0
    failures: np.ndarray = None

    def __post_init__(self):
        if self.bit_errors is None:
            self.bit_errors = np.zeros(self.stages, dtype=np.int64)
        if self.failures is None:
            self.failures = np.zeros(self.stages, dtype=np.int64)

    def add_trial(self, mse: float, level_errors: np.ndarray, level_bits: int) -> None:
        self.count += 1
        self.mse_sum.add(mse)
        self.mse_sq_sum.add(mse * mse)
        self.bit_errors += level_errors
        self.failures += level_errors > 0
        self.bits += level_bits

    def merge(self, other: "PointStats") -> "PointStats":
        return PointStats(self.stages, self.count + other.count,
                          self.mse_sum.merge(other.mse_sum),
                          self.mse_sq_sum.merge(other.mse_sq_sum),
                          self.bit_errors + other.bit_errors, self.bits + other.bits,
                          self.failures + other.failures)

    @property
    def mean(self) -> float:
        return self.mse_sum.value / self.count

    @property
    def stderr(self) -> float:
        if self.count < 2:
            return 0.0
        n = self.count
        s = self.mse_sum.value
        var = (self.mse_sq_sum.value - s * s / n) / (n - 1)
        return math.sqrt(max(var, 0.0) / n)

    @property
    def level_ber(self) -> np.ndarray:
        return self.bit_errors / max(self.bits, 1)


@dataclass
class PointResult:
    snr_db: float
    mse_mean: float
    mse_stderr: float
    trials: int
    level_ber: np.ndarray
    stage_failures: np.ndarray
    error: str | None = None


@dataclass
class SweepResult:
    config: SimConfig
    points: list[PointResult]

    @property
    def snr_db(self) -> np.ndarray:
        return np.array([p.snr_db for p in self.points])

    @property
    def mse(self) -> np.ndarray:
        return np.array([p.mse_mean for p in self.points])

    @property
    def stderr(self) -> np.ndarray:
        return np.array([p.mse_stderr for p in self.points])

    def csv_rows(self) -> tuple[list[str], list[list]]:
        I = self.config.stages
        header = (["snr_db", "mse_mean", "mse_stderr", "trials"]
                  + [f"level_ber_{i}" for i in range(1, I + 1)] + ["stage_failures"])
        rows = [[p.snr_db, p.mse_mean, p.mse_stderr, p.trials, *p.level_ber.tolist(),
                 int(p.stage_failures.sum())] for p in self.points]
        return header, rows


def simulate_trials(cfg: SimConfig, codec: AnalogCodec, k_src: int, point: int,
                    sigma: float, trials: range) -> list[tuple[float, np.ndarray]]:
    """Run a batch of trials; returns (mse, per-stage info-bit errors) per trial."""
    n = codec.channel_length(k_src)
    base = SeededStream(cfg.seed)
    key = 0 if cfg.common_random else point
    src = np.empty((len(trials), k_src))
    noise = np.empty((len(trials), n))
    for row, t in enumerate(trials):
        rng = base.child(key, t).generator()
        src[row] = draw_source(rng, k_src)
        noise[row] = rng.standard_normal(n)
    y, info, coded = codec.encode(src)
    r = y + sigma * noise
    res = sc_decode(r, codec, cfg.stages, sigma,
                    genie_coded=coded if cfg.genie else None)
    mse = np.mean((res.estimate - src) ** 2, axis=-1)
    errs = np.count_nonzero(res.info != info[..., : cfg.stages, :], axis=-1)
    return list(zip(mse.tolist(), errs))


def run_point(cfg: SimConfig, codec: AnalogCodec, k_src: int, point: int,
              snr_db: float, threads: int = 1) -> PointResult:
    sigma = snr_db_to_sigma(snr_db)
    chunks = [range(lo, min(lo + cfg.batch, cfg.trials))
              for lo in range(0, cfg.trials, cfg.batch)]
    job = lambda ch: simulate_trials(cfg, codec, k_src, point, sigma, ch)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outs = list(pool.map(job, chunks))
    else:
        outs = [job(ch) for ch in chunks]
    stats = PointStats(cfg.stages)
    level_bits = k_src * cfg.B
    for out in outs:
        for mse, errs in out:
            stats.add_trial(mse, errs, level_bits)
    return PointResult(snr_db, stats.mean, stats.stderr, stats.count,
                       stats.level_ber, stats.failures.copy())


def run_sweep(cfg: SimConfig, threads: int = 1) -> SweepResult:
    codec = build_codec(cfg)
    k_src = resolve_block_length(cfg, codec)
    points = []
    for idx, snr in enumerate(cfg.snr_db):
        try:
            points.append(run_point(cfg, codec, k_src, idx, float(snr), threads))
        except Exception as exc:  # keep the other points going
            log.error("SNR point %s dB failed: %s", snr, exc)
            nan = float("nan")
            points.append(PointResult(float(snr), nan, nan, 0,
                                      np.full(cfg.stages, nan),
                                      np.zeros(cfg.stages, dtype=np.int64), repr(exc)))
    return SweepResult(cfg, points)


def replace(cfg: SimConfig, **changes) -> SimConfig:
    return dataclasses.replace(cfg, **changes)
