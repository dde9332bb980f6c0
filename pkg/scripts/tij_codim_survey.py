"""Codimension of T_12 tangent images, with and without perturbing the linear form w."""

import argparse
from dataclasses import dataclass

from nlcheck.fields import Q
from nlcheck.families import tij_codim_detail
from nlcheck.suite import tij_member


@dataclass(frozen=True)
class Config:
    degrees: tuple = (4, 5, 6, 7)
    seeds: tuple = (1, 2, 3)


def run(cfg: Config) -> None:
    print(" d  seed  codim(w varies)  codim(w fixed)  2d-4  2d-1")
    for d in cfg.degrees:
        for seed in cfg.seeds:
            detail = tij_codim_detail(tij_member(Q(), seed, d))
            print(f"{d:2d}  {seed:4d}  {detail.full:15d}  {detail.fixed_w:14d}  {2 * d - 4:4d}  {2 * d - 1:4d}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--degrees", type=int, nargs="+", default=[4, 5, 6, 7])
    ap.add_argument("--seeds", type=int, nargs="+", default=[1, 2, 3])
    a = ap.parse_args()
    run(Config(tuple(a.degrees), tuple(a.seeds)))


if __name__ == "__main__":
    main()
