"""Feature vectors derived from persistence: periodicity score, lifetime
statistics, Betti sequences, sliding-window break features, and K-means."""

from __future__ import annotations

import math
from dataclasses import dataclass, astuple, fields

import numpy as np

from .diagram import PersistenceDiagram
from .embedding import sw1pers_cloud, takens_embed
from .errors import ParameterError, ValidationError
from .landscapes import landscape, landscape_norm
from .rips import distance_matrix, rips_persistence
from .series import as_series, select_tau_acf

SQRT3 = math.sqrt(3.0)


def sw1pers_score(diagram: PersistenceDiagram, clip: bool = False, tol: float = 1e-9) -> float:
    """``1 - (death^2 - birth^2) / 3`` for the most persistent dimension-1 feature.

    Values must lie in ``[0, sqrt(3)]``; with ``clip=True`` out-of-range values
    are clamped instead of rejected. No dimension-1 feature scores 1.
    """
    pts = diagram.points(1)
    if len(pts) == 0:
        return 1.0
    if clip:
        pts = np.clip(pts, 0.0, SQRT3)
    elif np.any(pts < -tol) or np.any(pts > SQRT3 + tol):
        raise ValidationError("births and deaths must lie in [0, sqrt(3)] for the score")
    b, d = pts[int(np.argmax(pts[:, 1] - pts[:, 0]))]
    return float(min(1.0, max(0.0, 1.0 - (d * d - b * b) / 3.0)))


def sw1pers_series_score(series, d: int = 15, N: int = 201, denoise_window: int = 5) -> float:
    """Periodicity score of a series through its sliding-window cloud."""
    cloud = sw1pers_cloud(series, d=d, N=N, denoise_window=denoise_window)
    dg = rips_persistence(distance_matrix(cloud), maxdim=1, maxscale=SQRT3)
    return sw1pers_score(dg)


def delay_diagram(series, d: int, tau: int | None = None, maxdim: int = 1,
                  maxscale: float | None = None) -> PersistenceDiagram:
    """Rips diagram of the delay embedding, with ``tau`` from the ACF rule when
    omitted and the cap at the cloud's diameter by default."""
    x = as_series(series, 3)
    tau = select_tau_acf(x) if tau is None else int(tau)
    return rips_persistence(distance_matrix(takens_embed(x, d, tau)), maxdim, maxscale)


@dataclass(frozen=True)
class LifetimeStats:
    count: int
    max_lifetime: float
    relevant_count: int
    mean_lifetime: float
    sum_lifetime: float


def lifetime_features(diagram: PersistenceDiagram, dims=(0, 1),
                      relevant_ratio: float = 0.5) -> dict[int, LifetimeStats]:
    """Per-dimension count, max, relevant count (lifetime at least
    ``relevant_ratio`` times the max), mean and sum of lifetimes."""
    out = {}
    for p in dims:
        life = diagram.lifetimes(p)
        if life.size == 0:
            out[p] = LifetimeStats(0, 0.0, 0, 0.0, 0.0)
            continue
        top = float(life.max())
        out[p] = LifetimeStats(int(life.size), top, int(np.sum(life >= relevant_ratio * top)),
                               float(life.mean()), float(life.sum()))
    return out


LIFETIME_COLUMNS = [f.name for f in fields(LifetimeStats)]


def lifetime_vector(diagram: PersistenceDiagram, dims=(0, 1)) -> np.ndarray:
    """Flattened lifetime statistics, dimension by dimension."""
    stats = lifetime_features(diagram, dims)
    return np.array([v for p in dims for v in astuple(stats[p])], dtype=float)


def betti_grid(maxscale: float, n_grid: int = 300) -> np.ndarray:
    if int(n_grid) < 2:
        raise ParameterError("n_grid must be at least 2")
    if not np.isfinite(maxscale) or maxscale < 0:
        raise ParameterError("betti sequences need a finite nonnegative maxscale")
    return np.linspace(0.0, float(maxscale), int(n_grid))


def betti_sequence(diagram: PersistenceDiagram, dim: int = 0, n_grid: int = 300,
                   grid=None) -> np.ndarray:
    """Number of features alive (``birth <= l <= death``) at each grid value on
    ``[0, maxscale]``."""
    ell = betti_grid(diagram.maxscale, n_grid) if grid is None else np.asarray(grid, float)
    pts = diagram.points(dim)
    alive = (pts[:, :1] <= ell[None, :]) & (ell[None, :] <= pts[:, 1:2])
    return alive.sum(axis=0).astype(np.int64)


def betti_vector(diagram: PersistenceDiagram, n_grid: int = 300, dims=(0, 1)) -> np.ndarray:
    """Concatenated Betti sequences of the given dimensions."""
    return np.concatenate([betti_sequence(diagram, p, n_grid) for p in dims])


@dataclass(frozen=True)
class BreakConfig:
    window_n: int = 50
    embed_d: int = 4
    tau: int = 1

    def n_windows(self, T: int) -> int:
        return T - (self.embed_d - 1) * self.tau - self.window_n + 1


def window_l1(cloud: np.ndarray) -> float:
    """L1 norm of the dimension-1 landscape of a cloud's Rips diagram, capped at
    the cloud's diameter."""
    dist = distance_matrix(cloud)
    top = float(dist.max())
    if top <= 0:
        return 0.0
    dg = rips_persistence(dist, maxdim=1, maxscale=top)
    if len(dg.points(1)) == 0:
        return 0.0
    return landscape_norm(landscape(dg, dim=1), 1)


def window_break_features(series, window_n: int = 50, embed_d: int = 4,
                          map_fn=map) -> np.ndarray:
    """Rows ``(x_w, x_{w+1} - x_w, L1_w)`` for each stride-1 window of
    ``window_n`` consecutive delay vectors.

    ``map_fn`` may be a parallel ``map`` (for example ``ThreadPool.map``); the
    output order depends only on the input.
    """
    cfg = BreakConfig(int(window_n), int(embed_d))
    x = as_series(series)
    if cfg.window_n < 1 or cfg.embed_d < 1:
        raise ParameterError("window_n and embed_d must be positive")
    if x.size < cfg.window_n + cfg.embed_d:
        raise ParameterError(f"series of length {x.size} too short: need window_n + embed_d "
                             f"= {cfg.window_n + cfg.embed_d}")
    cloud = takens_embed(x, cfg.embed_d, cfg.tau)
    n_win = cfg.n_windows(x.size)
    norms = list(map_fn(window_l1, [cloud[w: w + cfg.window_n] for w in range(n_win)]))
    w = np.arange(n_win)
    return np.column_stack([x[w], x[w + 1] - x[w], np.asarray(norms, dtype=float)])


@dataclass(frozen=True, eq=False)
class KMeansResult:
    labels: np.ndarray
    centers: np.ndarray
    inertia: float
    n_iter: int
    history: tuple


def _plus_plus(X: np.ndarray, K: int, rng: np.random.Generator) -> np.ndarray:
    n = X.shape[0]
    centers = [X[rng.integers(n)]]
    d2 = np.sum((X - centers[0]) ** 2, axis=1)
    for _ in range(1, K):
        total = d2.sum()
        idx = int(rng.choice(n, p=d2 / total)) if total > 0 else int(rng.integers(n))
        centers.append(X[idx])
        d2 = np.minimum(d2, np.sum((X - X[idx]) ** 2, axis=1))
    return np.array(centers)


def _assign(X, centers):
    d2 = np.sum((X[:, None, :] - centers[None, :, :]) ** 2, axis=2)
    labels = np.argmin(d2, axis=1)
    return labels, d2[np.arange(X.shape[0]), labels]


def kmeans(features, K: int, seed: int = 0, max_iter: int = 300) -> KMeansResult:
    """Lloyd iterations from a seeded k-means++ start.

    Stops once assignments stop changing or after ``max_iter`` updates; a
    cluster left empty is reseeded with the point farthest from its center.
    """
    X = np.array(features, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2 or X.shape[0] == 0:
        raise ParameterError("features must be a non-empty 2-D matrix")
    if not np.all(np.isfinite(X)):
        raise ValidationError("features contain NaN or infinite values")
    K, max_iter = int(K), int(max_iter)
    if K < 1 or K > X.shape[0]:
        raise ParameterError(f"K must lie in [1, {X.shape[0]}], got {K}")
    if max_iter < 1:
        raise ParameterError("max_iter must be positive")
    rng = np.random.default_rng(seed)
    centers = _plus_plus(X, K, rng)
    labels, d2 = _assign(X, centers)
    history = [float(d2.sum())]
    n_iter = 0
    for n_iter in range(1, max_iter + 1):
        new = centers.copy()
        taken = set()
        for c in range(K):
            members = labels == c
            if members.any():
                new[c] = X[members].mean(axis=0)
            else:
                order = np.argsort(-d2, kind="stable")
                pick = next(int(i) for i in order if int(i) not in taken)
                taken.add(pick)
                new[c] = X[pick]
        centers = new
        new_labels, d2 = _assign(X, centers)
        history.append(float(d2.sum()))
        if np.array_equal(new_labels, labels):
            labels = new_labels
            break
        labels = new_labels
    return KMeansResult(labels.astype(np.int64), centers, float(d2.sum()), n_iter, tuple(history))
