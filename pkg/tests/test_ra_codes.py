import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from analog_jscc.channels import AwgnChannel, level_channel_llr
from analog_jscc.numerics import SeededStream
from analog_jscc.ra_codes import (ConfigError, RACode, RAConfig, make_interleaver,
                                  ra_encode, spa_decode)


def bpsk_llr(bits, sigma, stream):
    # BPSK +-1 over AWGN, returned as ln P(1)/P(0)
    rng = stream.generator()
    r = 2.0 * bits - 1 + sigma * rng.standard_normal(bits.shape)
    return 2 * r / sigma ** 2


def test_hand_example_identity_interleaver():
    cfg = RAConfig(q=2, a=1, k=5)
    code = RACode(cfg, perm=np.arange(10))
    info = np.array([1, 0, 0, 0, 0], dtype=np.uint8)
    # repeated stream 1100000000; running XOR leaves a single leading one
    assert code.encode(info).tolist() == [1, 0, 0, 0, 0, 0, 0, 0, 0, 0]
    info = np.array([0, 1, 1, 0, 1], dtype=np.uint8)
    assert code.encode(info).tolist() == [0, 0, 1, 0, 1, 0, 0, 0, 1, 0]


def test_grouping_by_hand():
    cfg = RAConfig(q=3, a=3, k=2, systematic=True)
    code = RACode(cfg, perm=np.arange(6))
    # groups are (b0 b0 b0), (b1 b1 b1) -> u = (b0, b1)
    assert code.encode(np.array([1, 1], dtype=np.uint8)).tolist() == [1, 1, 1, 0]


def test_config_validation():
    with pytest.raises(ConfigError):
        RAConfig(q=1, a=1, k=4)
    with pytest.raises(ConfigError):
        RAConfig(q=2, a=3, k=4)
    with pytest.raises(ConfigError):
        RAConfig(q=4, a=3, k=5)
    with pytest.raises(NotImplementedError):
        RAConfig(q=2, a=1, k=4, accumulators=2)
    with pytest.raises(ConfigError):
        RACode(RAConfig(q=2, a=1, k=3), perm=[0, 0, 1, 2, 3, 4])
    assert RAConfig(q=4, a=3, k=300).rate == pytest.approx(0.75)
    assert RAConfig(q=2, a=6, k=300, systematic=True).rate == pytest.approx(0.75)


def test_interleaver_is_seeded_permutation():
    p = make_interleaver(2700, 5)
    assert np.array_equal(np.sort(p), np.arange(2700))
    assert np.array_equal(p, make_interleaver(2700, 5))
    assert not np.array_equal(p, make_interleaver(2700, 6))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(2, 1, False), (3, 1, False), (4, 3, False), (2, 6, True)]),
       st.integers(0, 2 ** 32 - 1), st.integers(0, 2 ** 32 - 1))
def test_encoder_linear(shape, s1, s2):
    q, a, sys = shape
    code = RACode(RAConfig(q=q, a=a, k=24, systematic=sys, interleaver_seed=3))
    r1 = np.random.default_rng(s1).integers(0, 2, 24).astype(np.uint8)
    r2 = np.random.default_rng(s2).integers(0, 2, 24).astype(np.uint8)
    assert len(code.encode(r1)) == code.n
    assert np.array_equal(code.encode(r1 ^ r2), code.encode(r1) ^ code.encode(r2))
    assert ra_encode(code.cfg, r1).tolist() == code.encode(r1).tolist()


@pytest.mark.parametrize("q, a, sys", [(2, 1, False), (3, 1, False), (4, 1, False),
                                       (2, 1, True), (4, 3, True), (2, 6, True)])
def test_noiseless_decoding_exact(q, a, sys):
    code = RACode(RAConfig(q=q, a=a, k=120, systematic=sys, interleaver_seed=11))
    info = np.random.default_rng(2).integers(0, 2, (8, 120)).astype(np.uint8)
    llr = np.where(code.encode(info) == 1, 40.0, -40.0)
    assert np.array_equal(code.spa_decode(llr), info)


def test_non_systematic_grouping_rejected():
    code = RACode(RAConfig(q=4, a=3, k=30))
    with pytest.raises(ConfigError):
        code.spa_decode(np.zeros(code.n))


def test_zero_llrs_decide_zero():
    code = RACode(RAConfig(q=2, a=1, k=50))
    assert not code.spa_decode(np.zeros(code.n)).any()
    assert not spa_decode(code.cfg, np.zeros(code.n), iterations=0).any()


def accumulator_marginals(ch):
    # brute-force P(u_j | r) under flat priors on u, as ln P(1)/P(0)
    m = len(ch)
    num = np.zeros(m)
    den = np.zeros(m)
    for u in itertools.product([0, 1], repeat=m):
        u = np.array(u)
        x = np.cumsum(u) % 2
        like = math.exp(float(np.sum(np.where(x == 1, ch / 2, -ch / 2))))
        num += like * u
        den += like * (1 - u)
    return np.log(num / den)


def test_first_trellis_pass_is_exact():
    cfg = RAConfig(q=2, a=1, k=5, interleaver_seed=4)
    code = RACode(cfg)
    ch = np.random.default_rng(9).normal(0.3, 2.0, code.n)
    ref_u = accumulator_marginals(ch)
    ref = np.zeros(cfg.k)
    np.add.at(ref, code.edge_var, ref_u)
    got = code.spa_decode(ch, iterations=0, soft=True)
    assert np.allclose(got, ref, atol=1e-9)


def ber(code, sigma, trials, iterations=None, seed=0):
    errs = 0
    for t in range(trials):
        info = SeededStream(seed, (0, t)).generator().integers(0, 2, code.k).astype(np.uint8)
        llr = bpsk_llr(code.encode(info), sigma, SeededStream(seed, (1, t)))
        errs += int(np.sum(code.spa_decode(llr, iterations) != info))
    return errs / (trials * code.k)


def ebn0_sigma(ebn0_db, rate):
    return math.sqrt(1 / (2 * rate * 10 ** (ebn0_db / 10)))


@pytest.mark.slow
def test_waterfall_ber():
    # frozen target: k = 2700, rate 1/2, Eb/N0 = 4 dB on binary-input AWGN
    code = RACode(RAConfig(q=2, a=1, k=2700, interleaver_seed=1))
    assert ber(code, ebn0_sigma(4.0, 0.5), 60) < 1e-3


def test_ber_monotone_and_iterations_help():
    code = RACode(RAConfig(q=2, a=1, k=600, interleaver_seed=2))
    curve = [ber(code, ebn0_sigma(e, 0.5), 20, seed=7) for e in (1.0, 2.0, 3.0, 4.0)]
    assert all(b <= a for a, b in zip(curve, curve[1:]))
    sigma = ebn0_sigma(3.0, 0.5)
    assert ber(code, sigma, 20, seed=7) < 0.5 * ber(code, sigma, 20, iterations=0, seed=7)


def test_decisions_from_level_channel_llrs():
    from analog_jscc.channels import GaussUniform
    code = RACode(RAConfig(q=2, a=1, k=300, interleaver_seed=8))
    info = np.random.default_rng(4).integers(0, 2, 300).astype(np.uint8)
    amp = math.sqrt(3) / 2
    y = amp * (2.0 * code.encode(info) - 1)
    noise = GaussUniform(amp / 2, 0.05 ** 2)
    z = np.random.default_rng(5).uniform(-amp / 2, amp / 2, y.shape) + 0.05 * np.random.default_rng(6).standard_normal(y.shape)
    assert np.array_equal(code.spa_decode(level_channel_llr(y + z, amp, noise)), info)


def test_stream_interface():
    code = RACode(RAConfig(q=2, a=1, k=40))
    bits = np.random.default_rng(1).integers(0, 2, 120).astype(np.uint8)
    coded = code.encode_stream(bits)
    assert coded.shape == (240,) and code.coded_length(120) == 240
    assert np.array_equal(code.decode_stream(np.where(coded == 1, 20.0, -20.0)), bits)
    with pytest.raises(ValueError):
        code.encode_stream(bits[:50])
