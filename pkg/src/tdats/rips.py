"""Vietoris-Rips persistent homology in dimensions 0 and 1.

Simplices are totally ordered by ``(diameter, dimension, sorted vertex tuple)``.
Dimension 0 comes from a union-find sweep over edges. Dimension 1 is computed
by reducing the coboundary matrix of edges (persistent cohomology yields the
same barcode as homology), with two standard shortcuts:

* clearing: edges that merged components in dimension 0 are never columns;
* apparent pairs: an edge whose smallest cofacet ``t`` has the edge as its
  largest facet is paired with ``t`` without any reduction. These are found
  in vectorised chunks; only the remaining edges go through the serial loop.

:func:`rips_persistence_reference` is a plain boundary-matrix reduction over
all simplices, kept as an independent check for small inputs.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial.distance import cdist

from .diagram import PersistenceDiagram, canonical_order
from .errors import ParameterError, ValidationError

METRICS = ("euclidean", "manhattan", "maximum")
_SCIPY_METRIC = {"euclidean": "euclidean", "manhattan": "cityblock", "maximum": "chebyshev"}
_CHUNK = 4096


def distance_matrix(cloud, metric: str = "euclidean") -> np.ndarray:
    """Pairwise distances between the rows of ``cloud``.

    ``metric`` is one of ``"euclidean"``, ``"manhattan"`` (sum of absolute
    coordinate differences) or ``"maximum"`` (Chebyshev).
    """
    if metric not in _SCIPY_METRIC:
        raise ParameterError(f"unknown metric {metric!r}; expected one of {METRICS}")
    pts = np.asarray(cloud, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2 or pts.shape[0] < 1:
        raise ParameterError("point cloud must be a non-empty (N, d) array")
    if not np.all(np.isfinite(pts)):
        raise ValidationError("point cloud contains non-finite coordinates")
    dist = cdist(pts, pts, metric=_SCIPY_METRIC[metric])
    # cdist is symmetric up to rounding; force exact symmetry and a zero diagonal
    dist = np.minimum(dist, dist.T)
    np.fill_diagonal(dist, 0.0)
    return dist


def validate_distance_matrix(dist, tol: float = 1e-12) -> np.ndarray:
    dist = np.asarray(dist, dtype=float)
    if dist.ndim != 2 or dist.shape[0] != dist.shape[1] or dist.shape[0] < 1:
        raise ValidationError("distance matrix must be square and non-empty")
    if not np.all(np.isfinite(dist)):
        raise ValidationError("distance matrix contains non-finite entries")
    if np.any(dist < 0):
        raise ValidationError("distance matrix has negative entries")
    if np.max(np.abs(dist - dist.T), initial=0.0) > tol:
        raise ValidationError("distance matrix is not symmetric")
    if np.any(np.diag(dist) != 0):
        raise ValidationError("distance matrix diagonal must be zero")
    return np.minimum(dist, dist.T)


def _prepare(dist, maxdim, maxscale):
    if maxdim not in (0, 1):
        raise ParameterError("maxdim must be 0 or 1")
    dist = validate_distance_matrix(dist)
    if maxscale is None:
        maxscale = float(dist.max())
    maxscale = float(maxscale)
    if not maxscale > 0:
        raise ParameterError("maxscale must be positive")
    return dist, maxscale


def _edges(dist, maxscale):
    """Edges with diameter <= maxscale, integer diameter ranks and sort keys."""
    n = dist.shape[0]
    iu, ju = np.triu_indices(n, k=1)
    w = dist[iu, ju]
    keep = w <= maxscale
    iu, ju, w = iu[keep], ju[keep], w[keep]
    values = np.unique(w)
    big = values.size  # rank sentinel for "above maxscale"
    rank = np.full((n, n), big, dtype=np.int64)
    r = np.searchsorted(values, w).astype(np.int64)
    rank[iu, ju] = r
    rank[ju, iu] = r
    np.fill_diagonal(rank, -1)
    key = (r * n + iu) * n + ju
    order = np.argsort(key, kind="stable")
    return iu[order], ju[order], r[order], key[order], values, rank, big


def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def _h0(n, iu, ju, w):
    """Union-find over sorted edges. Returns death values and a mask of merging edges."""
    parent = list(range(n))
    merged = np.zeros(iu.size, dtype=bool)
    deaths = []
    for e, (i, j) in enumerate(zip(iu.tolist(), ju.tolist())):
        ri, rj = _find(parent, i), _find(parent, j)
        if ri == rj:
            continue
        # all births are 0; the lower root index is kept as the elder component
        if ri < rj:
            parent[rj] = ri
        else:
            parent[ri] = rj
        merged[e] = True
        deaths.append(w[e])
    n_components = n - len(deaths)
    return np.asarray(deaths, dtype=float), merged, n_components


class _Coboundary:
    """Vectorised cofacet enumeration for edges of a fixed Rips filtration."""

    def __init__(self, rank, big, n):
        self.rank = rank
        self.big = big
        self.n = n
        self.k = np.arange(n, dtype=np.int64)
        self.sentinel = np.iinfo(np.int64).max

    def min_cofacets(self, i, j, r):
        """Smallest cofacet key of each edge ``(i[m], j[m])``; the int64 maximum if none.

        For a fixed edge the sorted vertex triples are lexicographically
        ordered by the apex index alone, so the minimum is found on
        ``rank * n + apex`` and only the winner gets a full key.
        """
        n = self.n
        rt = np.maximum(np.maximum(self.rank[i], self.rank[j]), r[:, None])
        rows = np.arange(i.size)
        rt[rows, i] = self.big
        rt[rows, j] = self.big
        k = np.argmin(rt * n + self.k, axis=1)
        best = rt[rows, k]
        a = np.minimum(i, k)
        c = np.maximum(j, k)
        b = i + j + k - a - c
        key = ((best * n + a) * n + b) * n + c
        key[best >= self.big] = self.sentinel
        return key

    def column(self, i, j, r):
        """Sorted cofacet keys of the single edge ``(i, j)``."""
        n, k = self.n, self.k
        rt = np.maximum(np.maximum(self.rank[i], self.rank[j]), r)
        valid = rt < self.big
        valid[i] = valid[j] = False
        k = k[valid]
        a = np.minimum(i, k)
        c = np.maximum(j, k)
        b = i + j + k - a - c
        key = ((rt[valid] * n + a) * n + b) * n + c
        key.sort()
        return key

    def decode(self, key):
        n = self.n
        c = key % n
        b = (key // n) % n
        a = (key // (n * n)) % n
        rt = key // (n * n * n)
        return rt, a, b, c


def _xor_merge(a, b):
    """Symmetric difference of two sorted arrays of unique keys, kept sorted."""
    if a.size == 0:
        return b
    if b.size == 0:
        return a
    c = np.concatenate([a, b])
    c.sort(kind="stable")  # two sorted runs: timsort merges them in linear time
    dup = c[1:] == c[:-1]
    keep = np.ones(c.size, dtype=bool)
    keep[:-1] &= ~dup
    keep[1:] &= ~dup
    return c[keep]


class _WorkingColumn:
    """Z/2 column under repeated addition, queried only for its minimum.

    Entries are spread over sorted levels of roughly doubling size, merged
    like a binary counter, so each key is re-merged O(log) times no matter
    how long the reduction runs. A key present in an even number of levels
    has cancelled and is dropped lazily when it reaches the heads.
    """

    def __init__(self, entries):
        self.levels = [entries]

    def add(self, entries):
        carry = entries
        for i, level in enumerate(self.levels):
            if level.size == 0:
                self.levels[i] = carry
                return
            carry = _xor_merge(level, carry)
            self.levels[i] = level[:0]
        self.levels.append(carry)

    def pivot(self):
        window = 64
        while True:
            live = [i for i, lv in enumerate(self.levels) if lv.size]
            if not live:
                return None
            levels = [self.levels[i] for i in live]
            # every key <= bound sits within the first `window` entries of its level
            long = [int(lv[window - 1]) for lv in levels if lv.size > window]
            if long:
                bound = min(long)
                cuts = [int(np.searchsorted(lv, bound, side="right")) for lv in levels]
            else:
                cuts = [lv.size for lv in levels]
            head = np.concatenate([lv[:c] for lv, c in zip(levels, cuts)])
            head.sort()
            starts = np.flatnonzero(np.r_[True, head[1:] != head[:-1]])
            counts = np.diff(np.r_[starts, head.size])
            odd = head[starts[counts % 2 == 1]]
            if odd.size:
                low = int(odd[0])
                for i, lv in zip(live, levels):
                    self.levels[i] = lv[np.searchsorted(lv, low):]
                return low
            for i, lv, c in zip(live, levels, cuts):
                self.levels[i] = lv[c:]
            window *= 2

    def materialize(self):
        out = np.zeros(0, dtype=np.int64)
        for level in self.levels:
            out = _xor_merge(out, level)
        return out


def _h1(dist, iu, ju, r, ekey, rank, big, values, cleared, maxscale):
    n = dist.shape[0]
    cob = _Coboundary(rank, big, n)
    cols = np.flatnonzero(~cleared)[::-1]  # decreasing filtration order
    owner = {}  # triangle key -> edge whose reduced column has that pivot
    apparent = np.zeros(cols.size, dtype=bool)
    pivots = np.empty(cols.size, dtype=np.int64)
    for start in range(0, cols.size, _CHUNK):
        sel = cols[start:start + _CHUNK]
        piv = cob.min_cofacets(iu[sel], ju[sel], r[sel])
        pivots[start:start + sel.size] = piv
        has = piv != cob.sentinel
        rt, a, b, c = cob.decode(np.where(has, piv, 0))
        same = has & (rt == r[sel])
        # largest facet of the pivot triangle, by edge key
        f1 = (rank[a, b] * n + a) * n + b
        f2 = (rank[a, c] * n + a) * n + c
        f3 = (rank[b, c] * n + b) * n + c
        top = np.maximum(np.maximum(f1, f2), f3)
        apparent[start:start + sel.size] = same & (top == ekey[sel])
    for pos in np.flatnonzero(apparent):
        owner[int(pivots[pos])] = int(cols[pos])

    reduced = {}
    births, deaths = [], []
    for pos in np.flatnonzero(~apparent):
        e = int(cols[pos])
        work = _WorkingColumn(cob.column(iu[e], ju[e], r[e]))
        piv = work.pivot()
        while piv is not None:
            other = owner.get(piv)
            if other is None:
                break
            add = reduced.get(other)
            if add is None:
                add = cob.column(iu[other], ju[other], r[other])
            work.add(add)
            piv = work.pivot()
        birth = values[r[e]]
        if piv is None:
            if birth < maxscale:
                births.append(birth)
                deaths.append(maxscale)
            continue
        owner[piv] = e
        reduced[e] = work.materialize()
        death = values[piv // (n * n * n)]
        if death > birth:
            births.append(birth)
            deaths.append(death)
    return np.asarray(births, dtype=float), np.asarray(deaths, dtype=float)


def _assemble(h0_deaths, n_components, h1_births, h1_deaths, maxscale):
    h0_deaths = h0_deaths[h0_deaths > 0]
    n0 = h0_deaths.size + n_components
    dims = np.concatenate([np.zeros(n0, np.int64), np.ones(h1_births.size, np.int64)])
    births = np.concatenate([np.zeros(n0), h1_births])
    deaths = np.concatenate([h0_deaths, np.full(n_components, maxscale), h1_deaths])
    order = canonical_order(dims, births, deaths)
    return PersistenceDiagram(dims[order], births[order], deaths[order], maxscale)


def rips_persistence(dist, maxdim: int = 1, maxscale: float | None = None) -> PersistenceDiagram:
    """Vietoris-Rips persistence diagram of a distance matrix.

    Parameters
    ----------
    dist : (N, N) array
        Symmetric, non-negative, zero diagonal.
    maxdim : {0, 1}
        Highest homology dimension computed.
    maxscale : float, optional
        Filtration cap. Simplices with diameter above it are excluded and
        classes still alive at the cap die at ``maxscale``. Defaults to the
        largest distance.

    Zero-persistence pairs are not reported.
    """
    dist, maxscale = _prepare(dist, maxdim, maxscale)
    n = dist.shape[0]
    iu, ju, r, ekey, values, rank, big = _edges(dist, maxscale)
    w = values[r] if r.size else np.zeros(0)
    h0_deaths, merged, n_comp = _h0(n, iu, ju, w)
    if maxdim == 1 and n >= 3:
        b1, d1 = _h1(dist, iu, ju, r, ekey, rank, big, values, merged, maxscale)
    else:
        b1 = d1 = np.zeros(0)
    return _assemble(h0_deaths, n_comp, b1, d1, maxscale)


def rips_from_cloud(cloud, maxdim: int = 1, maxscale: float | None = None,
                    metric: str = "euclidean") -> PersistenceDiagram:
    """Convenience wrapper: distances from a point cloud, then :func:`rips_persistence`."""
    return rips_persistence(distance_matrix(cloud, metric), maxdim, maxscale)


def rips_persistence_reference(dist, maxdim: int = 1, maxscale: float | None = None) -> PersistenceDiagram:
    """Textbook boundary-matrix reduction over Z/2, no optimisations.

    Builds every vertex, edge and (if ``maxdim == 1``) triangle with diameter
    <= ``maxscale``, orders them by ``(diameter, dimension, vertices)``, and
    runs the standard left-to-right column reduction. Meant for N of a dozen
    or so points.
    """
    dist, maxscale = _prepare(dist, maxdim, maxscale)
    n = dist.shape[0]
    simplices = [(0.0, 0, (v,)) for v in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if dist[i, j] <= maxscale:
                simplices.append((float(dist[i, j]), 1, (i, j)))
    if maxdim == 1:
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    diam = max(dist[i, j], dist[i, k], dist[j, k])
                    if diam <= maxscale:
                        simplices.append((float(diam), 2, (i, j, k)))
    simplices.sort()
    index = {s[2]: pos for pos, s in enumerate(simplices)}

    columns = []
    for value, dim, verts in simplices:
        if dim == 0:
            columns.append(set())
        else:
            faces = [verts[:m] + verts[m + 1:] for m in range(len(verts))]
            columns.append({index[f] for f in faces})

    low_owner = {}
    lows = [-1] * len(columns)
    for col_idx, col in enumerate(columns):
        while col:
            low = max(col)
            if low not in low_owner:
                break
            col ^= columns[low_owner[low]]
        if col:
            low = max(col)
            low_owner[low] = col_idx
            lows[col_idx] = low

    dims, births, deaths = [], [], []
    paired = set()
    for col_idx, low in enumerate(lows):
        if low < 0:
            continue
        paired.add(low)
        paired.add(col_idx)
        b, d = simplices[low][0], simplices[col_idx][0]
        if d > b:
            dims.append(simplices[low][1])
            births.append(b)
            deaths.append(d)
    for pos, (value, dim, verts) in enumerate(simplices):
        if pos in paired or dim > maxdim:
            continue
        if value < maxscale:
            dims.append(dim)
            births.append(value)
            deaths.append(maxscale)
    dims = np.asarray(dims, dtype=np.int64)
    births = np.asarray(births, dtype=float)
    deaths = np.asarray(deaths, dtype=float)
    order = canonical_order(dims, births, deaths)
    return PersistenceDiagram(dims[order], births[order], deaths[order], maxscale)
