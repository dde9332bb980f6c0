"""Hilbert functions of the twisted Jacobian ring for Fermat and seeded random surfaces."""

import argparse
import random
from dataclasses import dataclass

from nlcheck.fields import parse_field
from nlcheck.graded import ci_series_coeff
from nlcheck.jacobian import JacobianRing
from nlcheck.suite import fermat, random_transversal


@dataclass(frozen=True)
class Config:
    degrees: tuple = (4, 5, 6)
    samples: int = 2
    seed: int = 42
    field: str = "q"


def run(cfg: Config) -> None:
    field = parse_field(cfg.field)
    for d in cfg.degrees:
        expected = [ci_series_coeff((d - 1, d, d, d), l) for l in range(4 * d - 4)]
        surfaces = [("fermat", fermat(field, d))]
        rng = random.Random(f"{cfg.seed}/hilbert-tables/{d}")
        surfaces += [(f"random{k}", F) for k, F in enumerate(random_transversal(field, d, rng, cfg.samples))]
        print(f"d = {d}, complete-intersection series: {expected}")
        for name, F in surfaces:
            R = JacobianRing.build(F)
            table = [R.hilbert(l) for l in range(4 * d - 4)]
            print(f"  {name:8s} {'ok  ' if table == expected else 'DIFF'} {table}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--degrees", type=int, nargs="+", default=[4, 5, 6])
    ap.add_argument("--samples", type=int, default=2)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--field", default="q")
    a = ap.parse_args()
    run(Config(tuple(a.degrees), a.samples, a.seed, a.field))


if __name__ == "__main__":
    main()
