"""Time-series preprocessing: smoothing, detrending, autocorrelation, delay and
dimension selection, spline resampling."""

from __future__ import annotations

import math
import warnings

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.spatial.distance import cdist

from .errors import DegenerateInputError, ParameterError, SelectionWarning, ValidationError


def as_series(values, min_length: int = 2) -> np.ndarray:
    """Validate and copy a 1-D series of finite reals."""
    x = np.array(values, dtype=float).reshape(-1) if np.ndim(values) else np.array([values], float)
    if x.size < min_length:
        raise ParameterError(f"series needs at least {min_length} observations, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise ValidationError("series contains NaN or infinite values")
    return x


def moving_average(series, window: int) -> np.ndarray:
    """Trailing simple moving average; the first ``window - 1`` outputs average
    the partial window available so far."""
    x = as_series(series, 1)
    window = int(window)
    if window < 1 or window > x.size:
        raise ParameterError(f"window must lie in [1, {x.size}], got {window}")
    if window == 1:
        return x.copy()
    csum = np.concatenate([[0.0], np.cumsum(x)])
    idx = np.arange(1, x.size + 1)
    lo = np.maximum(idx - window, 0)
    return (csum[idx] - csum[lo]) / (idx - lo)


def detrend_standardize(series) -> np.ndarray:
    """Residuals of an OLS line on the index 1..T, scaled to unit sample sd."""
    x = as_series(series, 3)
    t = np.arange(1, x.size + 1, dtype=float)
    design = np.column_stack([np.ones_like(t), t])
    coef, *_ = np.linalg.lstsq(design, x, rcond=None)
    resid = x - design @ coef
    sd = resid.std(ddof=1)
    if not sd > 1e-12 * max(1.0, np.abs(x).max()):
        raise DegenerateInputError("series has zero variance after removing a linear trend")
    resid = resid - resid.mean()
    return resid / resid.std(ddof=1)


def acf(series, max_lag: int) -> np.ndarray:
    """Sample autocorrelations ``rho[0..max_lag]`` with the biased (1/T) estimator."""
    x = as_series(series)
    max_lag = int(max_lag)
    if max_lag < 0 or max_lag >= x.size:
        raise ParameterError(f"max_lag must lie in [0, {x.size - 1}]")
    xc = x - x.mean()
    denom = float(xc @ xc)
    if denom <= 0 or denom <= 1e-24 * x.size * max(1.0, float(np.abs(x).max())) ** 2:
        raise DegenerateInputError("autocorrelation undefined for a constant series")
    rho = np.array([xc[: x.size - h] @ xc[h:] for h in range(max_lag + 1)]) / denom
    rho[0] = 1.0
    return rho


def default_max_lag(T: int) -> int:
    return max(1, min(T - 2, int(math.floor(10 * math.log10(T)))))


def _flag(rule: str, value: int):
    warnings.warn(f"{rule}: no lag qualified up to {value}; returning the scan limit",
                  SelectionWarning, stacklevel=3)


def select_tau_acf(series, max_lag: int | None = None) -> int:
    """Smallest lag ``h >= 1`` with ``|rho[h]| < 2 / sqrt(T)``.

    Issues a :class:`SelectionWarning` and returns ``max_lag`` if no lag in
    range qualifies.
    """
    x = as_series(series, 3)
    max_lag = default_max_lag(x.size) if max_lag is None else int(max_lag)
    rho = acf(x, max_lag)
    bound = 2.0 / math.sqrt(x.size)
    hits = np.flatnonzero(np.abs(rho[1:]) < bound)
    if hits.size:
        return int(hits[0]) + 1
    _flag("select_tau_acf", max_lag)
    return max_lag


def tau_decay_rule(rho, T: int) -> int | None:
    """Smallest ``tau >= 1`` with ``(rho[tau] - rho[tau-1]) / rho[tau] > 1/e`` and
    ``rho[tau] < 2 / sqrt(T)``, evaluated on a given ACF profile. ``None`` if none."""
    rho = np.asarray(rho, dtype=float)
    bound = 2.0 / math.sqrt(T)
    for tau in range(1, rho.size):
        if rho[tau] == 0:
            continue
        if (rho[tau] - rho[tau - 1]) / rho[tau] > 1 / math.e and rho[tau] < bound:
            return tau
    return None


def select_tau_decay(series, max_lag: int | None = None) -> int:
    """Delay chosen by the relative-decay rule of :func:`tau_decay_rule`."""
    x = as_series(series, 3)
    max_lag = default_max_lag(x.size) if max_lag is None else int(max_lag)
    tau = tau_decay_rule(acf(x, max_lag), x.size)
    if tau is None:
        _flag("select_tau_decay", max_lag)
        return max_lag
    return tau


def false_neighbor_fraction(series, d: int, tau: int, r_tol: float = 10.0,
                            zero_tol: float = 1e-9) -> float:
    """Fraction of nearest neighbours in dimension ``d`` that separate in ``d + 1``.

    A neighbour pair is false when the extra coordinate's distance exceeds
    ``r_tol`` times their distance in dimension ``d``. Coincident neighbours
    are false whenever the extra coordinate differs at all. Ties in the
    nearest-neighbour search go to the lowest index. Distances below
    ``zero_tol`` times the series range count as exact coincidences, so that
    rounding noise between repeated states does not decide the outcome.
    """
    x = as_series(series)
    n = x.size - d * tau
    if n < 2:
        raise ParameterError("series too short for the requested dimension and delay")
    tol = zero_tol * float(np.ptp(x))
    base = np.column_stack([x[j * tau: j * tau + n] for j in range(d)])
    extra = x[d * tau: d * tau + n]
    dist = cdist(base, base)
    dist[dist <= tol] = 0.0
    np.fill_diagonal(dist, np.inf)
    nn = np.argmin(dist, axis=1)
    rd = dist[np.arange(n), nn]
    gap = np.abs(extra - extra[nn])
    gap[gap <= tol] = 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        false = np.where(rd > 0, gap / rd > r_tol, gap > 0)
    return float(np.mean(false))


def select_dim_fnn(series, tau: int, max_d: int = 10, r_tol: float = 10.0,
                   fnn_threshold: float = 0.01, zero_tol: float = 1e-9) -> int:
    """Smallest embedding dimension whose false-nearest-neighbour fraction is
    below ``fnn_threshold``; warns and returns ``max_d`` otherwise."""
    x = as_series(series)
    tau, max_d = int(tau), int(max_d)
    if tau < 1 or max_d < 1:
        raise ParameterError("tau and max_d must be positive")
    if x.size <= max_d * tau + 1:
        raise ParameterError(f"series of length {x.size} too short for max_d={max_d}, tau={tau}")
    if np.ptp(x) == 0:
        raise DegenerateInputError("false nearest neighbours undefined for a constant series")
    for d in range(1, max_d + 1):
        if false_neighbor_fraction(x, d, tau, r_tol, zero_tol) < fnn_threshold:
            return d
    _flag("select_dim_fnn", max_d)
    return max_d


def spline_resample(series, n_out: int) -> np.ndarray:
    """Natural cubic spline through the series placed on ``[0, 2*pi]``, sampled at
    ``n_out`` equally spaced points of the same interval."""
    x = as_series(series, 4)
    n_out = int(n_out)
    if n_out < 2:
        raise ParameterError("n_out must be at least 2")
    knots = np.linspace(0.0, 2 * np.pi, x.size)
    spline = CubicSpline(knots, x, bc_type="natural")
    return spline(np.linspace(0.0, 2 * np.pi, n_out))
