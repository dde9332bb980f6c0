"""Residue values of xi_F on the three coordinate curves of the (p, q) = (1, 1) reference member.

Prints the exact value polynomial on each pair and the certified numeric values,
so the values at the point where w meets the curve can be inspected directly.
"""

import argparse
from dataclasses import dataclass

from nlcheck.fields import Q
from nlcheck.jacobian import omega_F, xi_F
from nlcheck.parse import format_univariate
from nlcheck.residues import (
    delta_constant_certificate,
    delta_value_polynomial,
    match_multisets,
    numeric_delta,
    value_polynomial_roots,
)
from nlcheck.suite import RESIDUE_TOLERANCE, pq_reference_member


@dataclass(frozen=True)
class Config:
    seed: int = 42
    precision: int = 128


def run(cfg: Config) -> None:
    member = pq_reference_member(Q(), cfg.seed)
    R = member.ring
    print(f"F = {member.F}")
    for name, G in (("omega", omega_F(R)), ("xi", xi_F(member.spec))):
        for i, j in ((1, 2), (2, 3), (3, 1)):
            c = delta_constant_certificate(R, G, i, j)
            if c is not None:
                print(f"{name:5s} ({i},{j}): constant {c}")
                continue
            V = delta_value_polynomial(R, G, i, j)
            exact = value_polynomial_roots(V, cfg.precision)
            approx = numeric_delta(R, G, i, j, cfg.precision).values
            agree = match_multisets(exact, approx, RESIDUE_TOLERANCE)
            print(f"{name:5s} ({i},{j}): V(y) = {format_univariate(V)}; numeric agrees: {agree}")
            for v in approx:
                print(f"        {v.mid()}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--precision", type=int, default=128)
    a = ap.parse_args()
    run(Config(a.seed, a.precision))


if __name__ == "__main__":
    main()
