"""Extrema pipeline: flux composition, increments, tail slopes, analyze."""

import math

import numpy as np
import pytest

from stabfit.params import FormAParams
from stabfit.sampler import RandomStream, sample_formA
from stabfit.signal import (FluxConstants, SignalSeries, analyze, compose_flux,
                            extract_extrema, extrema_increments, tail_slope)


def _zigzag(alpha, n, seed, dt=1e-3, t0=0.0):
    # cumulative series whose extrema increments are exactly |X_i| with
    # alternating signs, X stable(alpha, beta=0)
    x = sample_formA(FormAParams(alpha, 0.0), n, RandomStream(seed))
    d = np.abs(x) * (-1.0) ** np.arange(n)
    return SignalSeries(values=np.concatenate(([0.0], np.cumsum(d))),
                        dt=dt, t0=t0)


def test_signal_series_validation():
    s = SignalSeries(values=[1.0, 2.0], dt=0.5, t0=1.0)
    assert len(s) == 2
    assert s.times().tolist() == [1.0, 1.5]
    with pytest.raises(ValueError):
        SignalSeries(values=[[1.0], [2.0]], dt=0.5)
    with pytest.raises(ValueError):
        SignalSeries(values=[1.0], dt=0.0)
    with pytest.raises(ValueError):
        SignalSeries(values=[1.0], dt=1.0, t0=math.inf)


def test_flux_constants_validation():
    FluxConstants(1.0, 2.0, 0.5, 3.0)
    with pytest.raises(ValueError):
        FluxConstants(1.0, -2.0, 0.5, 3.0)
    with pytest.raises(ValueError):
        FluxConstants(1.0, 2.0, 0.0, 3.0)


def test_compose_flux_example():
    k = FluxConstants(1.0, 1.0, 1.0, 1.0)
    dn = SignalSeries(values=[2.0], dt=1.0)
    phi1 = SignalSeries(values=[3.0], dt=1.0)
    phi2 = SignalSeries(values=[1.0], dt=1.0)
    out = compose_flux(dn, phi1, phi2, k)
    assert out.values.tolist() == [4.0]
    assert out.channel == "flux"
    assert out.dt == 1.0 and out.t0 == 0.0


def test_compose_flux_scaling_and_geometry():
    k = FluxConstants(3.0, 2.0, 0.5, 4.0)
    dn = SignalSeries(values=[1.0, -2.0], dt=0.1)
    p1 = SignalSeries(values=[5.0, 1.0], dt=0.1)
    p2 = SignalSeries(values=[1.0, 2.0], dt=0.1)
    out = compose_flux(dn, p1, p2, k)
    scale = 3.0 / (2.0 * 0.5 * 4.0)
    assert np.allclose(out.values, [scale * 4.0, scale * 2.0])
    with pytest.raises(ValueError):
        compose_flux(dn, SignalSeries(values=[1.0, 2.0], dt=0.2), p2, k)
    with pytest.raises(ValueError):
        compose_flux(dn, SignalSeries(values=[1.0], dt=0.1), p2, k)
    with pytest.raises(ValueError):
        compose_flux(dn, SignalSeries(values=[1.0, 2.0], dt=0.1, t0=9.0), p2, k)


def test_extract_extrema_examples():
    assert extract_extrema(SignalSeries(values=[1.0, 3.0, 2.0], dt=1.0)) \
        == [(1, 3.0)]
    # plateau counts once, at its first index
    assert extract_extrema(SignalSeries(values=[1.0, 2.0, 2.0, 1.0], dt=1.0)) \
        == [(1, 2.0)]
    # plateau inside a monotone rise is no extremum
    assert extract_extrema(SignalSeries(values=[0.0, 1.0, 1.0, 2.0], dt=1.0)) \
        == []
    assert extract_extrema(SignalSeries(values=[1.0, 2.0, 3.0], dt=1.0)) == []
    assert extract_extrema(SignalSeries(values=[3.0, 5.0], dt=1.0)) == []
    assert extract_extrema(SignalSeries(values=[5.0, 1.0, 3.0], dt=1.0)) \
        == [(1, 1.0)]


def test_extrema_alternate():
    s = _zigzag(1.6, 500, seed=90)
    ext = extract_extrema(s)
    inc = extrema_increments(ext)
    assert len(ext) >= 400  # a zigzag turns at nearly every sample
    assert np.all(inc[1:] * inc[:-1] < 0.0)
    # endpoints never qualify
    idx = [i for i, _ in ext]
    assert idx[0] > 0 and idx[-1] < len(s) - 1


def test_extrema_increments_example():
    inc = extrema_increments([(1, 3.0), (4, 1.0), (7, 5.0)])
    assert inc.tolist() == [-2.0, 4.0]
    with pytest.raises(ValueError):
        extrema_increments([(1, 3.0)])


def test_tail_slope_pareto():
    # Pareto(alpha=1.5): survival x^-1.5 exactly, so the log-log slope of
    # the top fraction estimates -1.5
    rng = np.random.default_rng(91)
    x = rng.pareto(1.5, size=10 ** 5) + 1.0
    slope = tail_slope(x, 0.05)
    assert -1.65 < slope < -1.35


def test_tail_slope_stable():
    x = sample_formA(FormAParams(1.2, 0.0), 10 ** 5, RandomStream(92))
    slope = tail_slope(x, 0.05)
    assert abs(slope + 1.2) < 0.15


def test_tail_slope_rejections():
    rng = np.random.default_rng(93)
    with pytest.raises(ValueError):
        tail_slope(rng.pareto(1.5, size=99), 0.05)
    x = rng.pareto(1.5, size=1000)
    with pytest.raises(ValueError):
        tail_slope(x, 0.0)
    with pytest.raises(ValueError):
        tail_slope(x, 0.6)
    with pytest.raises(ValueError):
        tail_slope(x, 0.001)  # keeps fewer than 3 points
    with pytest.raises(ValueError):
        tail_slope(np.zeros(1000), 0.05)


def test_analyze_recovers_alpha():
    s = _zigzag(1.6, 2 * 10 ** 4, seed=316)
    comp = analyze(s, bins=40)
    assert 1.4 < comp.fitted.alpha_tilde < 1.8
    # histogram renormalized to unit trapezoid mass
    x, y = comp.histogram[:, 0], comp.histogram[:, 1]
    assert abs(np.trapezoid(y, x) - 1.0) < 1e-9
    assert comp.histogram.shape == (40, 2)
    assert comp.theoretical.shape == (40, 2)
    assert np.array_equal(comp.histogram[:, 0], comp.theoretical[:, 0])
    assert comp.tail_slope_theoretical is not None
    assert abs(comp.tail_slope_empirical - comp.tail_slope_theoretical) < 0.4


def test_analyze_window_is_absolute_time():
    s = _zigzag(1.6, 5000, seed=94, dt=1e-3, t0=2.0)
    full = analyze(s, bins=30)
    i0, i1 = 1000, 3500
    sub = SignalSeries(values=s.values[i0:i1 + 1], dt=s.dt,
                       t0=s.t0 + i0 * s.dt)
    direct = analyze(sub, bins=30)
    windowed = analyze(s, bins=30, window=(s.t0 + i0 * s.dt, s.t0 + i1 * s.dt))
    assert windowed.fitted.alpha_tilde == direct.fitted.alpha_tilde
    assert windowed.fitted.alpha_tilde != full.fitted.alpha_tilde


def test_analyze_light_tail_has_no_theoretical_slope():
    # near-constant increment magnitudes: the fit clamps to the Gaussian
    # end and no increment reaches the far-tail regime of the fitted law,
    # so the theoretical slope is undefined while the empirical one exists
    rng = np.random.default_rng(95)
    d = rng.uniform(0.9, 1.1, size=3001) * (-1.0) ** np.arange(3001)
    s = SignalSeries(values=np.concatenate(([0.0], np.cumsum(d))), dt=1.0)
    comp = analyze(s, bins=30)
    assert comp.fitted.alpha_tilde > 1.9
    assert comp.fitted.strict.clamped
    assert comp.tail_slope_theoretical is None
    assert math.isfinite(comp.tail_slope_empirical)


def test_analyze_rejections():
    s = _zigzag(1.6, 5000, seed=96)
    with pytest.raises(ValueError):
        analyze(s, bins=3)
    with pytest.raises(ValueError):
        analyze(s, window=(2.0, 1.0))
    with pytest.raises(ValueError):
        analyze(s, window=(100.0, 200.0))  # past the end of the series
