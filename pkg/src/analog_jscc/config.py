"""Flat ``key = value`` run configuration with command-line overrides."""

from __future__ import annotations

import dataclasses
import hashlib
import math
import typing
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .harness import SimConfig


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfiguration:
    # codec / sweep
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
    block_length: int | None = None
    snr_db: tuple = (0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0)
    trials: int = 1000
    genie: bool = False
    common_random: bool = False
    batch: int = 256
    seed: int = 0
    # decoder side of the file round trip
    sigma: float = 0.0
    # capacity / error-probability curves
    curve: str = "capacity"
    noise: str = "gu"
    amplitude: float = 1.0
    gu_halfwidth: float = math.sqrt(3.0) / 2.0
    sigma_grid: tuple = tuple(np.round(np.geomspace(0.01, 10.0, 31), 12))
    # stretch demonstration
    x2: float = 0.7095
    x3: float = 0.4289
    stretch_depth: int = 3
    stretch_coord: int = 1
    x1_points: int = 1001
    stretch_points: int = 100_000
    deltas: tuple = tuple(2.0 ** -e for e in range(4, 13))

    def sim_config(self) -> SimConfig:
        names = {f.name for f in fields(SimConfig)}
        kw = {k: v for k, v in dataclasses.asdict(self).items() if k in names}
        kw["snr_db"] = tuple(float(v) for v in self.snr_db)
        return SimConfig(**kw)

    def items(self) -> list[tuple[str, str]]:
        return [(f.name, format_value(getattr(self, f.name))) for f in fields(self)]

    def digest(self) -> str:
        text = "".join(f"{k} = {v}\n" for k, v in self.items())
        return hashlib.sha256(text.encode()).hexdigest()[:16]


_TYPES = typing.get_type_hints(RunConfiguration)


def format_value(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, tuple):
        return ", ".join(format_value(x) for x in v)
    return str(v)


def _parse_float(text: str) -> float:
    t = text.strip().lower()
    if t in ("inf", "+inf"):
        return math.inf
    return float(t)


def _parse_grid(text: str) -> tuple:
    """``a, b, c`` list or ``start:stop:step`` inclusive range."""
    text = text.strip()
    if ":" in text:
        start, stop, step = (_parse_float(p) for p in text.split(":"))
        if step <= 0:
            raise ValueError("range step must be positive")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return tuple(round(start + i * step, 12) for i in range(count))
    return tuple(_parse_float(p) for p in text.split(",") if p.strip())


def parse_value(key: str, text: str):
    typ = _TYPES[key]
    low = text.strip().lower()
    optional = type(None) in typing.get_args(typ)
    if optional:
        if low in ("none", ""):
            return None
        typ = next(t for t in typing.get_args(typ) if t is not type(None))
    if typ is bool:
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"not a boolean: {text!r}")
    if typ is int:
        return int(text.strip())
    if typ is float:
        return _parse_float(text)
    if typ is tuple:
        return _parse_grid(text)
    return text.strip()


def parse_lines(lines, source: str = "<config>") -> dict:
    values = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, val = (p.strip() for p in line.split("=", 1))
        if key not in _TYPES:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            values[key] = parse_value(key, val)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key}: {exc}") from None
    return values


def load(path: str | Path | None = None, overrides: list[str] = (),
         **flags) -> RunConfiguration:
    values = {}
    if path is not None:
        values.update(parse_lines(Path(path).read_text().splitlines(), str(path)))
    for i, item in enumerate(overrides, 1):
        values.update(parse_lines([item], f"--set #{i}"))
    values.update({k: v for k, v in flags.items() if v is not None})
    return RunConfiguration(**values)
