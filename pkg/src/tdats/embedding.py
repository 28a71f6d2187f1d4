"""Point clouds from time series: delay embedding and sliding-window clouds."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, ParameterError, ValidationError
from .series import as_series, moving_average, spline_resample


def takens_embed(series, d: int, tau: int) -> np.ndarray:
    """Delay embedding: row ``i`` is ``(x_i, x_{i+tau}, ..., x_{i+(d-1)tau})``.

    Returns an ``(T - (d-1)*tau, d)`` array whose entries are copies of the
    input values.
    """
    x = as_series(series, 1)
    d, tau = int(d), int(tau)
    if d < 1 or tau < 1:
        raise ParameterError(f"d and tau must be positive, got d={d}, tau={tau}")
    n = x.size - (d - 1) * tau
    if n < 1:
        raise ParameterError(f"series of length {x.size} too short for d={d}, tau={tau}")
    idx = np.arange(n)[:, None] + tau * np.arange(d)[None, :]
    return x[idx]


def standardize_pointwise(cloud) -> np.ndarray:
    """Center every point on its coordinate mean and scale it to unit norm."""
    pts = np.array(cloud, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 1:
        raise ValidationError("cloud must be a non-empty 2-D array")
    if pts.shape[1] < 2:
        raise ParameterError("pointwise standardization needs dimension >= 2")
    if not np.all(np.isfinite(pts)):
        raise ValidationError("cloud contains NaN or infinite coordinates")
    centered = pts - pts.mean(axis=1, keepdims=True)
    norms = np.linalg.norm(centered, axis=1)
    scale = np.abs(pts).max(axis=1)
    bad = np.flatnonzero(norms <= 1e-12 * np.maximum(scale, 1e-300))
    if bad.size:
        raise DegenerateInputError(f"point {int(bad[0])} is constant across coordinates")
    return centered / norms[:, None]


@dataclass(frozen=True)
class SlidingWindowConfig:
    """Parameters of the sliding-window periodicity cloud."""

    d: int = 15
    n_points: int = 201
    denoise_window: int = 5

    def __post_init__(self):
        if self.d < 2 or self.n_points < 2 or self.denoise_window < 0:
            raise ParameterError("need d >= 2, n_points >= 2 and denoise_window >= 0")

    @property
    def effective_window(self) -> int:
        """Moving-average width after capping at a third of the window dimension."""
        return min(int(self.denoise_window), self.d // 3)


def sw1pers_cloud(series, d: int = 15, N: int = 201, denoise_window: int = 5) -> np.ndarray:
    """Unit-norm sliding-window cloud for periodicity scoring.

    Optional trailing moving average (width capped at ``d // 3``, off when the
    effective width is at most 1), natural-spline resampling to ``N + d``
    points on ``[0, 2*pi]``, ``N`` windows of width ``d`` at stride 1, then
    pointwise standardization.
    """
    cfg = SlidingWindowConfig(int(d), int(N), int(denoise_window))
    x = as_series(series, 4)
    w = cfg.effective_window
    if w > 1:
        x = moving_average(x, min(w, x.size))
    grid = spline_resample(x, cfg.n_points + cfg.d)
    idx = np.arange(cfg.n_points)[:, None] + np.arange(cfg.d)[None, :]
    return standardize_pointwise(grid[idx])
