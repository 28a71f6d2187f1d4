"""Persistence diagram container."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError


@dataclass(frozen=True, eq=False)
class PersistenceDiagram:
    """Multiset of ``(dimension, birth, death)`` triples with a finite cap.

    Deaths of classes that survive the whole filtration are recorded as
    ``maxscale`` rather than infinity.
    """

    dims: np.ndarray
    births: np.ndarray
    deaths: np.ndarray
    maxscale: float = field(default=np.inf)

    def __post_init__(self):
        dims = np.asarray(self.dims, dtype=np.int64).reshape(-1)
        births = np.asarray(self.births, dtype=float).reshape(-1)
        deaths = np.asarray(self.deaths, dtype=float).reshape(-1)
        if not (dims.shape == births.shape == deaths.shape):
            raise ValidationError("dims, births and deaths must have equal length")
        if np.any(~np.isfinite(births)) or np.any(~np.isfinite(deaths)):
            raise ValidationError("births and deaths must be finite")
        if np.any(births > deaths):
            raise ValidationError("every feature needs birth <= death")
        for name, arr in (("dims", dims), ("births", births), ("deaths", deaths)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "maxscale", float(self.maxscale))

    @classmethod
    def from_rows(cls, rows, maxscale: float = np.inf) -> "PersistenceDiagram":
        arr = np.asarray(rows, dtype=float).reshape(-1, 3)
        return cls(arr[:, 0].astype(np.int64), arr[:, 1], arr[:, 2], maxscale)

    @classmethod
    def empty(cls, maxscale: float = np.inf) -> "PersistenceDiagram":
        return cls(np.zeros(0, np.int64), np.zeros(0), np.zeros(0), maxscale)

    def __len__(self) -> int:
        return int(self.dims.size)

    def as_array(self) -> np.ndarray:
        """Rows of ``(dim, birth, death)`` as an ``(n, 3)`` float array."""
        return np.column_stack([self.dims.astype(float), self.births, self.deaths])

    def points(self, dim: int) -> np.ndarray:
        """``(k, 2)`` array of ``(birth, death)`` for one homology dimension."""
        mask = self.dims == dim
        return np.column_stack([self.births[mask], self.deaths[mask]])

    def lifetimes(self, dim: int) -> np.ndarray:
        mask = self.dims == dim
        return self.deaths[mask] - self.births[mask]

    def sorted_rows(self) -> np.ndarray:
        """Rows in canonical order (dim, birth, death); handy for set-like comparison."""
        arr = self.as_array()
        order = np.lexsort((arr[:, 2], arr[:, 1], arr[:, 0]))
        return arr[order]

    def same_features(self, other: "PersistenceDiagram") -> bool:
        """True when both diagrams hold exactly the same multiset of features."""
        a, b = self.sorted_rows(), other.sorted_rows()
        return a.shape == b.shape and bool(np.array_equal(a, b))

    def __repr__(self) -> str:
        counts = {int(d): int(np.sum(self.dims == d)) for d in np.unique(self.dims)}
        return f"PersistenceDiagram(features={counts}, maxscale={self.maxscale:g})"


def canonical_order(dims, births, deaths) -> np.ndarray:
    """Index order used for emitted diagrams: by dimension, then longest-lived first."""
    dims = np.asarray(dims)
    births = np.asarray(births, dtype=float)
    deaths = np.asarray(deaths, dtype=float)
    return np.lexsort((deaths, births, -(deaths - births), dims))
