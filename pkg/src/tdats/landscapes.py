"""Persistence landscapes, their norms, and the closed-form first-order
landscape for batches of transforms."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .diagram import PersistenceDiagram
from .errors import DegenerateInputError, ParameterError, ValidationError


@dataclass(frozen=True, eq=False)
class PersistenceLandscape:
    """Landscape layers sampled on a uniform grid; ``layers[0]`` is order 1."""

    grid: np.ndarray
    layers: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float).reshape(-1)
        layers = np.atleast_2d(np.asarray(self.layers, dtype=float))
        if layers.shape[1] != grid.size:
            raise ValidationError("each layer needs one value per grid point")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "layers", layers)

    @property
    def order(self) -> int:
        return int(self.layers.shape[0])

    def to_table(self) -> np.ndarray:
        """Wide table: grid column followed by one column per layer."""
        return np.column_stack([self.grid, self.layers.T])


def _tents(pairs: np.ndarray, grid: np.ndarray) -> np.ndarray:
    b, d = pairs[:, :1], pairs[:, 1:2]
    return np.maximum(np.minimum(grid[None, :] - b, d - grid[None, :]), 0.0)


def landscape(diagram, dim: int = 1, grid_points: int = 500, grid=None,
              span: tuple[float, float] | None = None) -> PersistenceLandscape:
    """All nonzero landscape layers of one homology dimension.

    The grid defaults to ``grid_points`` samples of ``[min birth, max death]``;
    pass ``span`` or an explicit ``grid`` to override. Layer ``k`` at each grid
    value is the ``k``-th largest tent ``min(l - b, d - l)_+``. Layers stop at
    the first all-zero one; a dimension without features gives a single zero
    layer.
    """
    pts = diagram.points(dim) if isinstance(diagram, PersistenceDiagram) \
        else np.asarray(diagram, dtype=float).reshape(-1, 2)
    if grid is not None:
        ell = np.asarray(grid, dtype=float).reshape(-1)
    else:
        grid_points = int(grid_points)
        if grid_points < 2:
            raise ParameterError("grid_points must be at least 2")
        if span is None:
            span = (pts[:, 0].min(), pts[:, 1].max()) if len(pts) else (0.0, 1.0)
        ell = np.linspace(float(span[0]), float(span[1]), grid_points)
    if len(pts) == 0:
        return PersistenceLandscape(ell, np.zeros((1, ell.size)))
    tents = _tents(pts, ell)
    layers = -np.sort(-tents, axis=0)
    nonzero = np.flatnonzero(np.abs(layers).sum(axis=1) > 0)
    keep = nonzero[-1] + 1 if nonzero.size else 1
    return PersistenceLandscape(ell, layers[:keep])


def landscape_norm(pl: PersistenceLandscape, q: float = 1) -> float:
    """``(sum_k integral |layer_k|^q)^(1/q)`` by the trapezoid rule, or the sup
    over all layers when ``q`` is infinite."""
    if np.isinf(q):
        return float(np.abs(pl.layers).max(initial=0.0))
    if not q >= 1:
        raise ParameterError(f"q must be >= 1 or inf, got {q}")
    if pl.grid.size < 2:
        return 0.0
    total = float(np.trapezoid(np.abs(pl.layers) ** q, pl.grid, axis=1).sum())
    return total ** (1.0 / q)


def first_order_pl_batch(transforms, L: int = 500) -> np.ndarray:
    """First-order landscape of each sequence's ``(min, max)`` pair on the
    batch-wide grid from the global minimum to the global maximum.

    ``transforms`` is a sequence of 1-D arrays (lengths may differ). Returns an
    ``(N, L)`` array.
    """
    seqs = [np.asarray(s, dtype=float).reshape(-1) for s in transforms]
    if not seqs or any(s.size == 0 for s in seqs):
        raise ParameterError("need at least one nonempty sequence")
    L = int(L)
    if L < 2:
        raise ParameterError("L must be at least 2")
    dmin = np.array([s.min() for s in seqs])
    dmax = np.array([s.max() for s in seqs])
    lo, hi = dmin.min(), dmax.max()
    if hi == lo:
        raise DegenerateInputError("all transform values coincide across the batch")
    step = (np.arange(1, L + 1) - 1) * (hi - lo) / (L - 1)
    v1 = lo + step[None, :] - dmin[:, None]
    v2 = dmax[:, None] - lo - step[None, :]
    return np.maximum(np.minimum(v1, v2), 0.0)
