import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from tdats.errors import DegenerateInputError, ParameterError, SelectionWarning, ValidationError
from tdats.series import (acf, detrend_standardize, false_neighbor_fraction, moving_average,
                          select_dim_fnn, select_tau_acf, select_tau_decay, spline_resample,
                          tau_decay_rule)
from tdats.synthetic import cosine

finite = st.floats(-1e3, 1e3, allow_nan=False)
series = arrays(float, st.integers(8, 60), elements=finite).filter(lambda x: np.ptp(x) > 1e-3)


def test_moving_average_examples():
    np.testing.assert_array_equal(moving_average([5, 5, 5, 5], 3), [5, 5, 5, 5])
    np.testing.assert_allclose(moving_average([1, 2, 3, 4], 2), [1, 1.5, 2.5, 3.5])
    x = np.array([3.0, -1.0, 2.5])
    np.testing.assert_array_equal(moving_average(x, 1), x)


@pytest.mark.parametrize("window", [0, 5])
def test_moving_average_rejects_window(window):
    with pytest.raises(ParameterError):
        moving_average([1, 2, 3, 4], window)


@given(st.floats(-50, 50), st.integers(1, 20), st.integers(1, 20))
def test_moving_average_constant_fixed_point(c, n, w):
    w = min(w, n)
    np.testing.assert_allclose(moving_average(np.full(n, c), w), c, atol=1e-12)


@given(arrays(float, st.integers(1, 40), elements=finite), st.integers(1, 40))
def test_moving_average_matches_loop(x, w):
    w = min(w, x.size)
    expect = [np.mean(x[max(0, i - w + 1): i + 1]) for i in range(x.size)]
    np.testing.assert_allclose(moving_average(x, w), expect, atol=1e-9)


def test_detrend_perfect_line_is_degenerate():
    with pytest.raises(DegenerateInputError):
        detrend_standardize([1, 2, 3, 4, 5])


def test_detrend_alternating_closed_form():
    x = np.array([0, 1, 0, 1, 0, 1.0])
    t = np.arange(1, 7.0)
    slope = np.sum((t - t.mean()) * (x - x.mean())) / np.sum((t - t.mean()) ** 2)
    resid = x - x.mean() - slope * (t - t.mean())
    np.testing.assert_allclose(detrend_standardize(x), resid / resid.std(ddof=1), atol=1e-12)


@given(series)
def test_detrend_moments(x):
    t = np.arange(x.size)
    if np.ptp(x - np.polyval(np.polyfit(t, x, 1), t)) < 1e-6:
        return
    z = detrend_standardize(x)
    assert abs(z.mean()) < 1e-9
    assert abs(z.std(ddof=1) - 1) < 1e-9


def test_acf_alternating_closed_form():
    T = 50
    x = np.array([1.0, -1.0] * (T // 2))
    rho = acf(x, 3)
    assert rho[0] == 1.0
    assert rho[1] == pytest.approx(-(T - 1) / T, abs=1e-12)


def test_acf_cosine_lag3():
    assert abs(acf(cosine(480, 12), 5)[3]) < 0.02


def test_acf_constant_is_degenerate():
    with pytest.raises(DegenerateInputError):
        acf(np.full(10, 2.0), 3)


def test_acf_rejects_nan():
    with pytest.raises(ValidationError):
        acf([1.0, np.nan, 2.0], 1)


@given(series)
def test_acf_bounded(x):
    rho = acf(x, x.size - 1)
    assert rho[0] == 1.0
    assert np.all(np.abs(rho) <= 1 + 1e-12)


def test_select_tau_acf_examples():
    assert select_tau_acf(cosine(480, 12)) == 3
    assert select_tau_acf(cosine(480, 96)) > select_tau_acf(cosine(480, 12))
    noise = np.random.default_rng(7).normal(size=2000)
    assert select_tau_acf(noise) == 1


@given(series, st.floats(0.1, 10) | st.floats(-10, -0.1), st.floats(-100, 100))
def test_select_tau_affine_invariant(x, a, b):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SelectionWarning)
        assert select_tau_acf(a * x + b) == select_tau_acf(x)


def test_select_tau_flags_when_nothing_qualifies():
    x = np.arange(40.0) ** 2
    with pytest.warns(SelectionWarning):
        assert select_tau_acf(x, max_lag=3) == 3


def test_decay_rule_literal_profile():
    # a first lag of 0.01 after 1 gives ratio -99, so lag 1 fails the decay test
    assert tau_decay_rule([1.0, 0.01, 0.005], 400) is None
    assert tau_decay_rule([1.0, 0.01, -0.5, 0.2], 400) == 2


def test_decay_rule_skips_zero_autocorrelation():
    assert tau_decay_rule([1.0, 0.0, -0.3], 400) == 2


def test_select_tau_decay_on_cosine():
    x = cosine(480, 12)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        tau = select_tau_decay(x)
    assert tau >= select_tau_acf(x) or caught


def test_fnn_cosine_dimension_two():
    assert select_dim_fnn(cosine(480, 12), 3, 6) == 2


def test_fnn_constant_is_degenerate():
    with pytest.raises(DegenerateInputError):
        select_dim_fnn(np.ones(100), 1, 6)


def test_fnn_short_series():
    with pytest.raises(ParameterError):
        select_dim_fnn(np.arange(10.0), 2, 6)


def test_fnn_noise_stays_high():
    x = np.random.default_rng(3).normal(size=480)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        d = select_dim_fnn(x, 1, 6)
    assert d >= 4 or any(issubclass(w.category, SelectionWarning) for w in caught)
    assert false_neighbor_fraction(x, 1, 1) > 0.3


def test_spline_examples():
    x = np.sin(np.linspace(0, 5, 30))
    np.testing.assert_allclose(spline_resample(x, 30), x, atol=1e-9)
    ramp = 2.0 * np.arange(12) + 1
    out = spline_resample(ramp, 2 * 12 - 1)
    np.testing.assert_allclose(out, np.linspace(ramp[0], ramp[-1], 23), atol=1e-9)
    assert spline_resample(cosine(480, 12), 216).shape == (216,)
    with pytest.raises(ParameterError):
        spline_resample(x, 1)


@given(arrays(float, st.integers(4, 40), elements=finite))
def test_spline_reproduces_knots(x):
    np.testing.assert_allclose(spline_resample(x, x.size), x, atol=1e-9 * max(1, np.abs(x).max()))


def test_default_scan_range():
    from tdats.series import default_max_lag
    assert default_max_lag(480) == math.floor(10 * math.log10(480))
    assert default_max_lag(5) == 3
