"""Rips persistence of a noisy circle and dimension-0 persistence of its
distance-to-measure on a grid."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from tdats.rips import rips_from_cloud
from tdats.sublevel import dtm, grid_points, grid_sublevel_persistence_h0


@dataclass
class Config:
    n: int = 100
    noise: float = 0.05
    m0: float = 0.1
    step: float = 0.065
    seed: int = 0


def main(cfg: Config) -> None:
    rng = np.random.default_rng(cfg.seed)
    theta = rng.uniform(0, 2 * np.pi, cfg.n)
    cloud = np.column_stack([np.cos(theta), np.sin(theta)]) + rng.normal(0, cfg.noise, (cfg.n, 2))
    dg = rips_from_cloud(cloud, maxdim=1, maxscale=2.0)
    b, d = dg.points(1)[np.argmax(dg.lifetimes(1))]
    print(f"Rips: {len(dg.points(0))} dim-0 and {len(dg.points(1))} dim-1 features; "
          f"dominant loop ({b:.3f}, {d:.3f})")
    xs, ys, q = grid_points((-1.5, 1.5), (-1.5, 1.5), cfg.step)
    f = dtm(cloud, q, cfg.m0).reshape(ys.size, xs.size)
    g = grid_sublevel_persistence_h0(f)
    print(f"DTM grid {f.shape}: {len(g.points(0))} dim-0 features, top lifetimes "
          + ", ".join(f"{v:.3f}" for v in g.lifetimes(0)[:5]))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--m0", type=float, default=0.1)
    a = ap.parse_args()
    main(Config(seed=a.seed, m0=a.m0))
