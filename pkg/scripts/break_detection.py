"""Structural-break detection: sliding-window landscape norms of a series that
switches from a cosine to white noise, clustered with K-means."""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from multiprocessing.pool import ThreadPool

import numpy as np

from tdats.features import kmeans, window_break_features
from tdats.synthetic import two_regime


@dataclass
class Config:
    T: int = 500
    window_n: int = 50
    embed_d: int = 4
    K: int = 2
    seed: int = 10
    threads: int = 4


def main(cfg: Config) -> None:
    x = two_regime(np.random.default_rng(cfg.seed), cfg.T)
    with ThreadPool(cfg.threads) as pool:
        feats = window_break_features(x, cfg.window_n, cfg.embed_d, map_fn=pool.map)
    z = (feats - feats.mean(axis=0)) / np.where(feats.std(axis=0) > 0, feats.std(axis=0), 1)
    res = kmeans(z, cfg.K, seed=cfg.seed)
    half = cfg.T // 2
    first, second = res.labels[: half - cfg.window_n], res.labels[half:]
    print(f"windows: {feats.shape[0]}, inertia {res.inertia:.2f} after {res.n_iter} iterations")
    print(f"mean L1 first half {feats[:half - cfg.window_n, 2].mean():.3f}, "
          f"second half {feats[half:, 2].mean():.3f}")
    for k in range(cfg.K):
        print(f"cluster {k}: {np.sum(first == k)} windows in the cosine regime, "
              f"{np.sum(second == k)} in the noise regime")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=10)
    ap.add_argument("--threads", type=int, default=4)
    a = ap.parse_args()
    main(Config(seed=a.seed, threads=a.threads))
