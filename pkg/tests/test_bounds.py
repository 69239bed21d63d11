import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from analog_jscc.block_codes import code_72_36_16, golay, union_bound_pe
from analog_jscc.bounds import (BoundCurve, bound_curve, db_to_linear, level_amplitude,
                                level_distortion, shannon_curve, shannon_lower_bound,
                                shannon_lower_bound_uniform, slope_fit,
                                truncated_distortion)

GOLAY = golay()


def test_shannon_constants():
    assert shannon_lower_bound(0.0, 3) == pytest.approx(0.05855, abs=5e-6)
    assert shannon_lower_bound(15.0, 4) == pytest.approx(16.0 ** -4 / (2 * math.pi * math.e), rel=1e-14)
    assert shannon_lower_bound_uniform(2.0, 1.5) == pytest.approx(12 * shannon_lower_bound(2.0, 1.5))


@given(st.floats(0.1, 10.0), st.floats(1e-3, 1e6))
def test_shannon_power_law(N, snr):
    h = 1e-4
    x0, x1 = math.log1p(snr), math.log1p(snr) + h
    d0 = math.log(shannon_lower_bound(math.expm1(x0), N))
    d1 = math.log(shannon_lower_bound(math.expm1(x1), N))
    assert abs((d1 - d0) / h + N) < 1e-6 * max(1.0, N)


def test_level_distortion_prefactor_symbolic():
    i = sp.Symbol("i", integer=True, positive=True)
    j = sp.Symbol("j", integer=True, nonnegative=True)
    for B in range(1, 5):
        lhs = 2 * sp.Sum(3 * sp.Integer(4) ** (-(B * i - j)), (j, 0, B - 1)).doit()
        rhs = 2 * (sp.Integer(4) ** B - 1) * sp.Integer(4) ** (-B * i)
        assert sp.simplify(lhs - rhs) == 0


def test_level_distortion_values():
    assert level_distortion(3, 0.2, 2, pe=0.0) == 0.0
    for i in range(1, 6):
        assert level_distortion(i, 0.2, 1, pe=0.01) == pytest.approx(6 * 4.0 ** -i * 0.01, rel=1e-15)
    assert level_amplitude(1) == pytest.approx(math.sqrt(3) / 2)
    with pytest.raises(ValueError):
        level_distortion(0, 0.1, 2, GOLAY)


@pytest.mark.parametrize("sigma", [1e-3, 0.05, 0.3, 1.0, 5.0])
def test_level_distortion_decreasing_golay_b2(sigma):
    d = [level_distortion(i, sigma, 2, GOLAY) for i in range(1, 25)]
    assert all(b <= a for a, b in zip(d, d[1:]))


def test_level_distortion_not_monotone_for_b1():
    # the (2^i)^4 growth of the Golay union bound outruns the 4^-i prefactor
    d = [level_distortion(i, 0.01, 1, GOLAY) for i in range(1, 6)]
    assert d[1] > d[0]


@pytest.mark.parametrize("code, B, I", [(GOLAY, 2, 5), (GOLAY, 2, 50), (code_72_36_16(), 3, 10)])
def test_truncated_distortion_limits(code, B, I):
    floor = 4.0 ** (-B * I)
    assert truncated_distortion(1e-9, B, I, code) == pytest.approx(floor, rel=1e-12)
    top = floor + sum(2 * (4.0 ** B - 1) * 4.0 ** (-B * i) for i in range(1, I + 1)) * union_bound_pe(code, 0.5)
    assert truncated_distortion(1e9, B, I, code) == pytest.approx(top, rel=1e-6)
    sig = 1 / np.sqrt(db_to_linear(np.linspace(-10, 90, 201)))
    d = truncated_distortion(sig, B, I, code)
    assert np.all(d >= floor) and np.all(np.diff(d) <= 1e-18)


def test_golay_high_snr_slope():
    grid = np.arange(40.0, 80.5, 1.0)
    curve = bound_curve(grid, 2, 50, GOLAY)
    assert -2.2 <= slope_fit(curve.snr_db, curve.distortion) <= -1.8


def test_bound_above_shannon():
    grid = np.arange(-5.0, 60.5, 0.5)
    for code, B, I in ((GOLAY, 2, 20), (code_72_36_16(), 3, 15)):
        N = B * code.n / code.k
        ub = bound_curve(grid, B, I, code).distortion
        assert np.all(ub > shannon_curve(grid, N).distortion)
        assert np.all(ub < 2.0)


def test_curve_types_and_slope_fit():
    c = shannon_curve([0.0, 10.0, 20.0], 2.0, corrected=True)
    assert c.label.startswith("shannon_uniform")
    with pytest.raises(ValueError):
        BoundCurve(np.array([1.0, 1.0]), np.array([1.0, 1.0]), "x")
    x = np.arange(0.0, 10.0)
    assert slope_fit(x, 10 ** (-1.5 * x / 10)) == pytest.approx(-1.5)
    assert slope_fit(x, 10 ** (-x / 10), window=(2, 5)) == pytest.approx(-1.0)
    with pytest.raises(ValueError):
        slope_fit(x, 10 ** (-x / 10), window=(2, 3))
