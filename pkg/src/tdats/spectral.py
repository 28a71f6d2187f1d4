"""Frequency-domain representations: tapered smoothed periodogram, Walsh
functions and transforms, smoothed weighted Fourier series."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ParameterError
from .series import as_series, detrend_standardize


@dataclass(frozen=True, eq=False)
class Spectrum:
    freqs: np.ndarray
    power: np.ndarray

    def to_table(self) -> np.ndarray:
        return np.column_stack([self.freqs, self.power])


def cosine_bell_taper(n: int, p: float) -> np.ndarray:
    """Split cosine bell weights tapering a proportion ``p`` at each end."""
    if not 0 <= p <= 0.5:
        raise ParameterError(f"taper proportion must lie in [0, 0.5], got {p}")
    w = np.ones(n)
    m = int(math.floor(n * p))
    if m > 0:
        ramp = 0.5 * (1 - np.cos(np.pi * np.arange(1, 2 * m, 2) / (2 * m)))
        w[:m] = ramp
        w[n - m:] = ramp[::-1]
    return w


def modified_daniell(m: int) -> np.ndarray:
    """Symmetric weights of length ``2m + 1``: ``1/(2m)`` inside, ``1/(4m)`` at the ends."""
    m = int(m)
    if m < 1:
        raise ParameterError(f"Daniell span must be a positive integer, got {m}")
    w = np.full(2 * m + 1, 1.0 / (2 * m))
    w[0] = w[-1] = 1.0 / (4 * m)
    return w


def smooth_reflect(values: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    m = kernel.size // 2
    if values.size <= m:
        raise ParameterError("smoothing span too wide for the spectrum length")
    padded = np.pad(values, m, mode="reflect")
    return np.convolve(padded, kernel, mode="valid")


def tapered_smoothed_periodogram(series, taper_p: float = 0.1,
                                 daniell_spans=(1,)) -> Spectrum:
    """Periodogram of the detrended, standardized, tapered series at the Fourier
    frequencies ``j/T`` (``j = 1 .. T//2``), smoothed by successive modified
    Daniell kernels with reflection at the ends."""
    x = as_series(series, 8)
    z = detrend_standardize(x) * cosine_bell_taper(x.size, taper_p)
    T = x.size
    j = np.arange(1, T // 2 + 1)
    power = np.abs(np.fft.fft(z)[j]) ** 2 / T
    for m in daniell_spans:
        power = smooth_reflect(power, modified_daniell(m))
    return Spectrum(j / T, power)


def next_pow2(n: int) -> int:
    return 1 << max(0, int(n - 1).bit_length())


def _check_walsh(t, j, T2):
    if T2 < 1 or T2 & (T2 - 1):
        raise ParameterError(f"T2 must be a power of two, got {T2}")
    if not (0 <= t < T2 and 0 <= j < T2):
        raise ParameterError(f"indices must lie in [0, {T2}), got t={t}, j={j}")


@lru_cache(maxsize=1 << 16)
def _walsh(t: int, j: int, T2: int) -> int:
    if t == 0:
        return 1
    if t == 1:
        return 1 if j < T2 // 2 else -1
    half = t // 2
    return _walsh(half, (2 * j) % T2, T2) * _walsh(t - 2 * half, j, T2)


def walsh_function(t: int, j: int, T2: int) -> int:
    """Walsh function value in {+1, -1} from the halving recursion, with the
    doubled index taken modulo ``T2``."""
    t, j, T2 = int(t), int(j), int(T2)
    _check_walsh(t, j, T2)
    return _walsh(t, j, T2)


def fwht(x: np.ndarray) -> np.ndarray:
    """Natural-order (Hadamard) fast Walsh transform, unnormalized."""
    h = np.array(x, dtype=float)
    n = h.size
    step = 1
    while step < n:
        h = h.reshape(-1, 2, step)
        h = np.stack([h[:, 0] + h[:, 1], h[:, 0] - h[:, 1]], axis=1).reshape(n)
        step *= 2
    return h


def bit_reverse_indices(n: int) -> np.ndarray:
    bits = max(0, n.bit_length() - 1)
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def wft(series) -> np.ndarray:
    """Walsh-Fourier coefficients of the zero-padded series.

    ``coeffs[j] = T2**-0.5 * sum_t x_t W(t, j)`` with the first observation at
    ``t = 0``. The recursion's row ``j`` is the Hadamard row at the bit reversal of
    ``j``, so the fast transform only needs a bit-reversal permutation.
    """
    x = as_series(series, 1)
    T2 = next_pow2(x.size)
    padded = np.zeros(T2)
    padded[: x.size] = x
    return fwht(padded)[bit_reverse_indices(T2)] / math.sqrt(T2)


def wft_naive(series) -> np.ndarray:
    """Direct double sum over :func:`walsh_function`; for testing."""
    x = as_series(series, 1)
    T2 = next_pow2(x.size)
    padded = np.zeros(T2)
    padded[: x.size] = x
    out = np.array([sum(padded[t] * _walsh(t, j, T2) for t in range(T2)) for j in range(T2)])
    return out / math.sqrt(T2)


@dataclass(frozen=True, eq=False)
class FourierSmooth:
    """Reconstruction plus the coefficients and threshold behind it."""

    values: np.ndarray
    a: np.ndarray
    b: np.ndarray
    threshold: float
    kept_cos: np.ndarray
    kept_sin: np.ndarray


def fourier_coefficients(x: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """``a[0..k]`` (with ``a[0]`` the mean) and ``b[0..k]`` (``b[0] = 0``)."""
    T = x.size
    t = np.arange(1, T + 1)
    ang = 2 * np.pi * np.outer(np.arange(k + 1), t) / T
    a = 2.0 / T * np.cos(ang) @ x
    b = 2.0 / T * np.sin(ang) @ x
    a[0] = x.mean()
    b[0] = 0.0
    return a, b


def mad_threshold(a: np.ndarray, b: np.ndarray, n: int) -> float:
    """``s * sqrt(2 log n)`` with ``s`` the median absolute deviation of the
    coefficients ``1..k`` around the medians of their magnitudes."""
    am = np.median(np.abs(a[1:]))
    bm = np.median(np.abs(b[1:]))
    s = np.median(np.concatenate([np.abs(a[1:] - am), np.abs(b[1:] - bm)]))
    return float(s * math.sqrt(2 * math.log(n))) if n > 1 else 0.0


def weighted_fourier_smooth(series, k: int, sigma: float, n: int | None = None,
                            threshold: float | None = None) -> FourierSmooth:
    """Thresholded, exponentially weighted Fourier reconstruction at ``t = 1..T``.

    Coefficients with magnitude above the threshold are kept and damped by
    ``exp(-(2 j pi / T)^2 sigma)``. The threshold defaults to the MAD rule with
    ``n = T``; pass ``threshold=0`` to keep every nonzero coefficient.
    """
    x = as_series(series)
    T = x.size
    k = int(k)
    if k < 1 or T < 2 * k + 2:
        raise ParameterError(f"need 1 <= k and T >= 2k + 2, got k={k}, T={T}")
    if not sigma >= 0:
        raise ParameterError("sigma must be nonnegative")
    a, b = fourier_coefficients(x, k)
    tu = mad_threshold(a, b, T if n is None else int(n)) if threshold is None else float(threshold)
    kc = np.abs(a) > tu
    ks = np.abs(b) > tu
    ks[0] = False
    j = np.arange(k + 1)
    w = np.exp(-((2 * j * np.pi / T) ** 2) * sigma)
    t = np.arange(1, T + 1)
    ang = 2 * np.pi * np.outer(t, j) / T
    values = np.cos(ang) @ (w * a * kc) + np.sin(ang) @ (w * b * ks)
    return FourierSmooth(values, a, b, tu, np.flatnonzero(kc), np.flatnonzero(ks))
