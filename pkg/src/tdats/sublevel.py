"""Sublevel-set persistence of sampled functions and the distance-to-measure."""

from __future__ import annotations

import numpy as np
from scipy.spatial import cKDTree

from .diagram import PersistenceDiagram
from .errors import ParameterError, ValidationError


def _elder_merge(values: np.ndarray, neighbors) -> tuple[list, float]:
    """Dimension-0 pairs of a sublevel filtration on a cell graph.

    Cells enter in ``(value, index)`` order; ``neighbors(i)`` yields adjacent
    cell indices. On a merge the component with the larger birth dies (ties go
    to the one entered later). Returns finite pairs and the global birth.
    """
    flat = values.ravel()
    order = np.lexsort((np.arange(flat.size), flat))
    parent = np.full(flat.size, -1, dtype=np.int64)
    # birth rank of each root: position in the entry order of its minimum
    root_rank = np.zeros(flat.size, dtype=np.int64)
    pairs = []

    def find(a):
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    for pos, cell in enumerate(order):
        parent[cell] = cell
        root_rank[cell] = pos
        here = flat[cell]
        for nb in neighbors(cell):
            if parent[nb] < 0:
                continue
            ra, rb = find(cell), find(nb)
            if ra == rb:
                continue
            young, old = (ra, rb) if root_rank[ra] > root_rank[rb] else (rb, ra)
            birth = flat[order[root_rank[young]]]
            if here > birth:
                pairs.append((float(birth), float(here)))
            parent[young] = old
    return pairs, float(flat[order[0]])


def _finish(pairs, global_birth, global_death) -> PersistenceDiagram:
    rows = [(global_birth, global_death)] + pairs
    births = np.array([b for b, _ in rows])
    deaths = np.array([d for _, d in rows])
    # longest-lived first; ties by birth then death, global component leads
    order = np.lexsort((deaths, births, -(deaths - births)))
    return PersistenceDiagram(np.zeros(len(rows), np.int64), births[order], deaths[order],
                              maxscale=global_death)


def _as_grid(values, ndim: int) -> np.ndarray:
    f = np.array(values, dtype=float)
    if f.ndim != ndim:
        raise ValidationError(f"expected a {ndim}-D array, got shape {f.shape}")
    if min(f.shape) < 2:
        raise ParameterError("need at least 2 samples per axis")
    if not np.all(np.isfinite(f)):
        raise ValidationError("function values contain NaN or infinite entries")
    return f


def sublevel_persistence_1d(values) -> PersistenceDiagram:
    """Dimension-0 persistence of the sublevel filtration of a sampled 1-D function.

    Components are born at local minima and die by the elder rule when they
    meet; the oldest component dies at the global maximum and is always
    reported, even with zero persistence. Features come out longest-lived first.
    """
    f = _as_grid(values, 1)
    n = f.size

    def neighbors(i):
        if i > 0:
            yield i - 1
        if i < n - 1:
            yield i + 1

    pairs, g = _elder_merge(f, neighbors)
    return _finish(pairs, g, float(f.max()))


def grid_sublevel_persistence_h0(values) -> PersistenceDiagram:
    """Dimension-0 sublevel persistence of a 2-D grid function with 8-neighbour
    adjacency."""
    f = _as_grid(values, 2)
    rows, cols = f.shape
    offsets = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)]

    def neighbors(cell):
        r, c = divmod(int(cell), cols)
        for dr, dc in offsets:
            rr, cc = r + dr, c + dc
            if 0 <= rr < rows and 0 <= cc < cols:
                yield rr * cols + cc

    pairs, g = _elder_merge(f, neighbors)
    return _finish(pairs, g, float(f.max()))


def dtm(cloud, queries, m0: float = 0.05, k: int | None = None) -> np.ndarray:
    """Distance to measure: RMS distance from each query to its ``k`` nearest
    cloud points, ``k = max(1, floor(m0 * N))`` unless ``k`` is given."""
    pts = np.array(cloud, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise ParameterError("cloud must contain at least one point")
    q = np.array(queries, dtype=float)
    if q.ndim == 1:
        q = q[:, None] if pts.shape[1] == 1 else q[None, :]
    if q.shape[1] != pts.shape[1]:
        raise ParameterError("queries and cloud must share the ambient dimension")
    if k is None and not 0 < m0 < 1:
        raise ParameterError(f"m0 must lie in (0, 1), got {m0}")
    if k is not None and not 1 <= int(k) <= pts.shape[0]:
        raise ParameterError(f"k must lie in [1, {pts.shape[0]}], got {k}")
    if not (np.all(np.isfinite(pts)) and np.all(np.isfinite(q))):
        raise ValidationError("cloud and queries must be finite")
    k = max(1, int(np.floor(m0 * pts.shape[0]))) if k is None else int(k)
    dist, _ = cKDTree(pts).query(q, k=k)
    dist = np.asarray(dist).reshape(q.shape[0], k)
    return np.sqrt(np.mean(dist ** 2, axis=1))


def grid_points(xlim, ylim, step: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Regular 2-D query grid; returns the axis vectors and the stacked ``(x, y)``
    queries in row-major order (rows follow ``y``)."""
    if step <= 0:
        raise ParameterError("grid step must be positive")
    xs = np.arange(xlim[0], xlim[1] + step / 2, step)
    ys = np.arange(ylim[0], ylim[1] + step / 2, step)
    gx, gy = np.meshgrid(xs, ys)
    return xs, ys, np.column_stack([gx.ravel(), gy.ravel()])
