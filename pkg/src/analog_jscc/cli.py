"""Command-line front end.  Every command writes CSV (or one value per line)
preceded by ``#`` lines echoing the tool version and resolved configuration."""

from __future__ import annotations

import argparse
import csv
import io
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .block_codes import LinearCode, dual_hamming, get_code
from .bounds import bound_curve, shannon_curve
from .channels import AwgnChannel, GaussUniform, binary_input_capacity, level_error_prob
from .config import ConfigError, RunConfiguration, load
from .harness import build_codec, resolve_block_length, run_sweep
from .sc_decoder import sc_decode
from .stretch import jump_size, stretch_factor, sweep_coordinate

log = logging.getLogger("analog_jscc")


class InputError(ValueError):
    pass


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def preamble(cfg: RunConfiguration, command: str, extra=()) -> str:
    lines = [f"# analog_jscc {__version__} command={command} "
             f"config_hash={cfg.digest()} seed={cfg.seed}"]
    lines += [f"# {k} = {v}" for k, v in cfg.items()]
    lines += [f"# {k} = {v}" for k, v in extra]
    return "\n".join(lines) + "\n"


def render_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def read_numbers(path: str | Path) -> tuple[list[float], dict[str, str]]:
    """One real per line; ``# key = value`` lines are collected as metadata."""
    values, meta = [], {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:]
            if "=" in body:
                k, v = (p.strip() for p in body.split("=", 1))
                meta[k] = v
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise InputError(f"{path}:{lineno}: not a number: {line!r}") from None
    return values, meta


def cmd_encode(cfg: RunConfiguration, source: str) -> str:
    samples, _ = read_numbers(source)
    bound = math.sqrt(3.0)
    for i, s in enumerate(samples, 1):
        if not -bound <= s < bound:
            raise InputError(f"{source}: sample {i} = {s!r} outside [-sqrt(3), sqrt(3))")
    codec = build_codec(cfg.sim_config())
    k_src = resolve_block_length(cfg.sim_config(), codec)
    blocks = -(-len(samples) // k_src)
    padded = np.zeros(blocks * k_src)
    padded[: len(samples)] = samples
    extra = [("samples", len(samples)), ("block_length", k_src),
             ("channel_block", codec.channel_length(k_src) if blocks else 0)]
    out = preamble(cfg, "encode", extra)
    if blocks:
        y, _, _ = codec.encode(padded.reshape(blocks, k_src))
        out += "".join(f"{fmt(v)}\n" for v in y.ravel())
    return out


def cmd_decode(cfg: RunConfiguration, channel: str) -> str:
    symbols, meta = read_numbers(channel)
    sim = cfg.sim_config()
    codec = build_codec(sim)
    k_src = resolve_block_length(sim, codec)
    n = codec.channel_length(k_src)
    if len(symbols) % n:
        raise InputError(f"{channel}: {len(symbols)} symbols is not a multiple of "
                         f"the channel block length {n}")
    blocks = len(symbols) // n
    count = int(meta.get("samples", blocks * k_src))
    out = preamble(cfg, "decode", [("samples", count)])
    if blocks:
        r = np.asarray(symbols).reshape(blocks, n)
        est = sc_decode(r, codec, cfg.stages, cfg.sigma).estimate.ravel()[:count]
        out += "".join(f"{fmt(v)}\n" for v in est)
    return out


def cmd_sweep(cfg: RunConfiguration, threads: int = 1) -> str:
    result = run_sweep(cfg.sim_config(), threads=threads)
    for p in result.points:
        if p.error:
            raise RuntimeError(f"sweep point {p.snr_db} dB failed: {p.error}")
    header, rows = result.csv_rows()
    return preamble(cfg, "sweep") + render_csv(header, rows)


def cmd_bounds(cfg: RunConfiguration) -> str:
    code = get_code(cfg.code)
    if not isinstance(code, LinearCode):
        raise ConfigError("bounds need a linear block code")
    grid = np.asarray(cfg.snr_db, dtype=float)
    N = cfg.B * code.n / code.k
    curves = [bound_curve(grid, cfg.B, cfg.stages, code), shannon_curve(grid, N),
              shannon_curve(grid, float(cfg.B)), shannon_curve(grid, N, corrected=True)]
    rows = [[x, d, c.label] for c in curves for x, d in zip(c.snr_db, c.distortion)]
    return preamble(cfg, "bounds") + render_csv(["snr_db", "distortion", "label"], rows)


def cmd_capacity(cfg: RunConfiguration) -> str:
    rows = []
    for s in cfg.sigma_grid:
        if cfg.curve == "capacity":
            if cfg.noise == "gu":
                noise = GaussUniform(cfg.gu_halfwidth, s * s)
            elif cfg.noise == "awgn":
                noise = AwgnChannel(s * s)
            else:
                raise ConfigError(f"unknown noise {cfg.noise!r}")
            rows.append([s, binary_input_capacity(noise, cfg.amplitude)])
        elif cfg.curve == "level_error":
            rows.append([s, level_error_prob(cfg.amplitude, s)])
        else:
            raise ConfigError(f"unknown curve {cfg.curve!r}")
    return preamble(cfg, "capacity") + render_csv(["parameter", "value"], rows)


def cmd_stretch(cfg: RunConfiguration) -> str:
    code = dual_hamming()
    coord = cfg.stretch_coord - 1
    fixed = (cfg.x2, cfg.x3)
    kw = dict(coord=coord, depth=cfg.stretch_depth, w=cfg.w)
    grid = np.arange(cfg.x1_points) / cfg.x1_points
    ys = sweep_coordinate(grid, fixed, code, **kw)
    rows = [["codeword", x, j + 1, v] for x, y in zip(grid, ys) for j, v in enumerate(y)]
    rows.append(["jump", 0.5, 0, jump_size(code, fixed, **kw)])
    for d in cfg.deltas:
        mean, sup = stretch_factor(d, code, fixed, cfg.stretch_points, seed=cfg.seed, **kw)
        rows.append(["stretch_mean", d, cfg.stretch_coord, mean])
        rows.append(["stretch_sup", d, cfg.stretch_coord, sup])
    return preamble(cfg, "stretch") + render_csv(["section", "parameter", "coordinate", "value"], rows)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="analog-jscc", description=__doc__)
    p.add_argument("--config", help="key = value configuration file")
    p.add_argument("--seed", type=int, help="master seed (overrides the file)")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--threads", type=int, default=1, help="worker threads for sweeps")
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                   help="override one configuration key; repeatable")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("encode", help="source samples -> channel symbols").add_argument("input")
    sub.add_parser("decode", help="channel outputs -> source estimates").add_argument("input")
    sub.add_parser("sweep", help="Monte Carlo distortion vs SNR")
    sub.add_parser("bounds", help="analytic distortion bounds")
    sub.add_parser("capacity", help="binary-input capacity or level error curves")
    sub.add_parser("stretch", help="codeword discontinuity and stretch factor")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = load(args.config, args.set, seed=args.seed)
        if args.command == "encode":
            text = cmd_encode(cfg, args.input)
        elif args.command == "decode":
            text = cmd_decode(cfg, args.input)
        elif args.command == "sweep":
            text = cmd_sweep(cfg, threads=max(1, args.threads))
        elif args.command == "bounds":
            text = cmd_bounds(cfg)
        elif args.command == "capacity":
            text = cmd_capacity(cfg)
        else:
            text = cmd_stretch(cfg)
    except Exception as exc:
        log.error("%s", exc)
        return 1
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
