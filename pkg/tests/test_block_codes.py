import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from analog_jscc.block_codes import (CapabilityError, LinearCode, block_failure_prob,
                                     code_72_36_16, code_from_file, dual_hamming,
                                     expand_messages, get_code, golay, gf2_rank,
                                     union_bound_pe)
from analog_jscc.bounds import level_error_prob

GOLAY = golay()
DUAL = dual_hamming()


def brute_min_weight(code):
    # independent of the packed codebook: plain integer products
    msgs = np.array(list(itertools.product([0, 1], repeat=code.k)), dtype=np.int64)
    words = (msgs @ code.G.astype(np.int64)) % 2
    return int(words[1:].sum(axis=1).min()), words


def test_golay_parameters():
    assert GOLAY.systematic and gf2_rank(GOLAY.G) == 12
    dmin, words = brute_min_weight(GOLAY)
    weights = words.sum(axis=1)
    assert dmin == 7
    assert set(np.unique(weights)) == {0, 7, 8, 11, 12, 15, 16, 23}
    assert sum(math.comb(23, i) for i in range(4)) == 2 ** 11


def test_dual_hamming():
    assert DUAL.encode([1, 0, 0]).tolist() == [1, 0, 1, 0, 1, 0, 1]
    dmin, words = brute_min_weight(DUAL)
    assert dmin == 4 and DUAL.minimum_distance() == 4
    assert set(words[1:].sum(axis=1)) == {4}


def test_encode_zero_and_length():
    assert not GOLAY.encode(np.zeros(12, dtype=np.uint8)).any()
    with pytest.raises(ValueError):
        GOLAY.encode(np.zeros(11, dtype=np.uint8))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=12, max_size=12),
       st.lists(st.integers(0, 1), min_size=12, max_size=12))
def test_linearity(a, b):
    a, b = np.array(a, dtype=np.uint8), np.array(b, dtype=np.uint8)
    assert np.array_equal(GOLAY.encode(a) ^ GOLAY.encode(b), GOLAY.encode(a ^ b))


def test_golay_corrects_three_errors():
    rng = np.random.default_rng(1)
    patterns = []
    for w in (1, 2, 3):
        for pos in itertools.combinations(range(23), w):
            e = np.zeros(23, dtype=np.uint8)
            e[list(pos)] = 1
            patterns.append(e)
    patterns = np.array(patterns)
    assert len(patterns) == 23 + 253 + 1771
    for _ in range(50):
        info = rng.integers(0, 2, 12, dtype=np.uint8)
        words = GOLAY.encode(info)[None, :] ^ patterns
        assert np.all(GOLAY.hard_ml_decode(words) == info)


def test_dual_hamming_single_error():
    for info in expand_messages(3):
        cw = DUAL.encode(info)
        for pos in range(7):
            bad = cw.copy()
            bad[pos] ^= 1
            assert np.array_equal(DUAL.hard_ml_decode(bad), info)


def test_ml_identity_and_ties():
    msgs = expand_messages(12)
    assert np.array_equal(GOLAY.hard_ml_decode(GOLAY.encode(msgs)), msgs)
    # word at distance 2 from both 000 and the codeword 1010101 (weight 4):
    # ties resolve to the lexicographically smallest message
    word = np.array([1, 0, 1, 0, 0, 0, 0], dtype=np.uint8)
    cands = DUAL.codewords()
    d = (cands ^ word).sum(axis=1)
    best = np.flatnonzero(d == d.min())
    assert len(best) > 1
    assert DUAL.hard_ml_decode(word).tolist() == expand_messages(3)[best[0]].tolist()


def test_bound_only_code():
    c = code_72_36_16()
    assert c.t == 7 and c.rate == 0.5
    with pytest.raises(CapabilityError):
        c.hard_ml_decode(np.zeros(72, dtype=np.uint8))
    big = LinearCode("big", 22, 21, 2, np.hstack([np.eye(21, dtype=np.uint8),
                                                  np.ones((21, 1), dtype=np.uint8)]))
    with pytest.raises(CapabilityError):
        big.hard_ml_decode(np.zeros(22, dtype=np.uint8))


def test_union_bound_basics():
    assert union_bound_pe(GOLAY, 0.0) == 0.0
    grid = np.linspace(0, 0.5, 101)
    vals = union_bound_pe(GOLAY, grid)
    assert np.all(np.diff(vals) >= 0) and np.all((vals >= 0) & (vals <= 1))
    for p in (-0.01, 0.51):
        with pytest.raises(ValueError):
            union_bound_pe(GOLAY, p)
    # direct sum from the definition, starting at m = t + 1 = 8 for d = 16
    c = code_72_36_16()
    p = 0.03
    ref = sum(m / 72 * math.comb(72, m) * p ** m * (1 - p) ** (72 - m) for m in range(8, 73))
    assert union_bound_pe(c, p) == pytest.approx(ref, rel=1e-12)


def test_union_bound_monte_carlo():
    """Perfect code: decoding fails exactly when the BSC makes > 3 errors, so the
    failure rate and the m/n-weighted failure rate match the closed forms."""
    rng = np.random.default_rng(2024)
    p, blocks = 0.01, 300_000
    info = rng.integers(0, 2, (blocks, 12), dtype=np.uint8)
    err = (rng.random((blocks, 23)) < p).astype(np.uint8)
    dec = GOLAY.hard_ml_decode(GOLAY.encode(info) ^ err)
    fail = np.any(dec != info, axis=1)
    m = err.sum(axis=1)
    assert np.array_equal(fail, m > 3)
    for sample, target in ((fail.astype(float), block_failure_prob(GOLAY, p)),
                           (fail * m / 23.0, union_bound_pe(GOLAY, p))):
        se = sample.std(ddof=1) / math.sqrt(blocks)
        assert abs(sample.mean() - target) <= 3 * se


def test_union_bound_grows_with_level():
    # a_i / sigma halves per level, so the level crossover and its bound grow
    sigma = 0.3
    pe = [union_bound_pe(GOLAY, level_error_prob(math.sqrt(3) / 2 ** i, sigma)) for i in range(1, 12)]
    assert all(a <= b for a, b in zip(pe, pe[1:]))


def test_generator_file(tmp_path):
    path = tmp_path / "dual.txt"
    path.write_text("# dual Hamming\n1 0 1 0 1 0 1\n0 1 0 0 1 1 1\n0 0 1 1 1 1 0\n")
    code = code_from_file(path)
    assert (code.n, code.k, code.d) == (7, 3, 4)
    assert get_code(str(path)).d == 4
    bad = tmp_path / "bad.txt"
    bad.write_text("1 0 2\n")
    with pytest.raises(ValueError, match="bad.txt:1"):
        code_from_file(bad)
    with pytest.raises(KeyError):
        get_code("no_such_code")
