"""Pairwise bottleneck distances between Rips diagrams of three pure cosines
(periods 12, 48, 96) embedded with an ACF-selected delay."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from tdats.features import delay_diagram
from tdats.metrics import bottleneck
from tdats.series import select_tau_acf
from tdats.synthetic import cosine


@dataclass
class Config:
    T: int = 480
    periods: tuple = (12, 48, 96)
    dims: tuple = (2, 3, 15)


def main(cfg: Config) -> None:
    pairs = [(0, 1), (0, 2), (1, 2)]
    series = [cosine(cfg.T, p) for p in cfg.periods]
    print("taus:", [select_tau_acf(x) for x in series])
    print("d,dim," + ",".join(f"({cfg.periods[a]},{cfg.periods[b]})" for a, b in pairs))
    for d in cfg.dims:
        dgs = [delay_diagram(x, d) for x in series]
        for dim in (0, 1):
            vals = [bottleneck(dgs[a], dgs[b], dim) for a, b in pairs]
            print(f"{d},{dim}," + ",".join(f"{v:.3f}" for v in vals))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--T", type=int, default=480)
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3, 15])
    a = ap.parse_args()
    main(Config(T=a.T, dims=tuple(a.dims)))
