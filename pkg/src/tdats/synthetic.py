"""Seeded synthetic series for demos, experiments and tests."""

from __future__ import annotations

import numpy as np

from .errors import ParameterError


def cosine(T: int = 480, period: float = 12.0, amplitude: float = 1.0) -> np.ndarray:
    """``amplitude * cos(2 pi t / period)`` for ``t = 1..T``."""
    t = np.arange(1, int(T) + 1)
    return amplitude * np.cos(2 * np.pi * t / period)


def periodicity_case(case: int, rng: np.random.Generator, T: int = 480, sigma: float = 0.8,
                     phase: float = 5.0) -> np.ndarray:
    """The four periodicity benchmark series.

    1: noisy period-12 cosine. 2: period-48 cosine with phase shift, gain 10 and
    a linear trend. 3: damped, amplified period-12 cosine. 4: white noise.
    """
    t = np.arange(1, int(T) + 1)
    eps = rng.normal(0.0, sigma, size=t.size)
    if case == 1:
        return np.cos(2 * np.pi * t / 12) + eps
    if case == 2:
        return 0.05 * t + 10 * (np.cos(2 * np.pi * (t - phase) / 48) + eps)
    if case == 3:
        return 10 * (np.cos(2 * np.pi * t / 12) + eps) * np.exp(-0.01 * t)
    if case == 4:
        return eps
    raise ParameterError(f"case must be 1, 2, 3 or 4, got {case}")


def two_regime(rng: np.random.Generator, T: int = 500, period: float = 12.0,
               sigma: float = 1.0) -> np.ndarray:
    """Pure cosine for the first half, white noise for the second."""
    half = int(T) // 2
    return np.concatenate([cosine(half, period), rng.normal(0.0, sigma, int(T) - half)])


def unit_circle(n: int = 60) -> np.ndarray:
    theta = 2 * np.pi * np.arange(n) / n
    return np.column_stack([np.cos(theta), np.sin(theta)])
