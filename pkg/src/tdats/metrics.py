"""Bottleneck and q-Wasserstein distances between persistence diagrams."""

from __future__ import annotations

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .diagram import PersistenceDiagram
from .errors import ParameterError


def _points(diagram, dim) -> np.ndarray:
    if dim not in (0, 1):
        raise ParameterError(f"dim must be 0 or 1, got {dim!r}")
    if isinstance(diagram, PersistenceDiagram):
        return diagram.points(dim)
    pts = np.asarray(diagram, dtype=float).reshape(-1, 2)
    return pts


def augmented_cost(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Square ``(m+n) x (m+n)`` L-infinity cost matrix with diagonal slots.

    Rows are ``a`` then one diagonal slot per point of ``b``; columns are ``b``
    then one diagonal slot per point of ``a``. A point matched to any diagonal
    slot pays half its persistence; diagonal-to-diagonal is free.
    """
    m, n = len(a), len(b)
    cost = np.zeros((m + n, m + n))
    if m and n:
        cost[:m, :n] = np.maximum(np.abs(a[:, None, 0] - b[None, :, 0]),
                                  np.abs(a[:, None, 1] - b[None, :, 1]))
    if m:
        cost[:m, n:] = ((a[:, 1] - a[:, 0]) / 2)[:, None]
    if n:
        cost[m:, :n] = ((b[:, 1] - b[:, 0]) / 2)[None, :]
    return cost


def wasserstein(A, B, q: float = 1, dim: int = 0) -> float:
    """q-Wasserstein distance with L-infinity ground cost, solved exactly as an
    assignment problem."""
    if not q >= 1:
        raise ParameterError(f"q must be >= 1, got {q}")
    a, b = _points(A, dim), _points(B, dim)
    if len(a) + len(b) == 0:
        return 0.0
    cost = augmented_cost(a, b)
    if np.isinf(q):
        return bottleneck(A, B, dim)
    powered = cost ** q
    rows, cols = linear_sum_assignment(powered)
    return float(powered[rows, cols].sum() ** (1.0 / q))


def _perfect(cost: np.ndarray, eps: float) -> bool:
    graph = csr_matrix((cost <= eps).astype(np.int8))
    match = maximum_bipartite_matching(graph, perm_type="column")
    return bool(np.all(match >= 0))


def bottleneck(A, B, dim: int = 0) -> float:
    """Bottleneck distance: smallest candidate cost admitting a perfect matching
    within that cost, found by binary search."""
    a, b = _points(A, dim), _points(B, dim)
    if len(a) + len(b) == 0:
        return 0.0
    cost = augmented_cost(a, b)
    cands = np.unique(cost)
    lo, hi = 0, cands.size - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _perfect(cost, cands[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(cands[lo])
