"""Table of the annihilator floor against multiples of 2d - 1."""

import argparse

from nlcheck.families import threshold_check


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-degree", type=int, default=12)
    a = ap.parse_args()
    print(" d  floor  2d-1   t1     t2     t3")
    for d in range(1, a.max_degree + 1):
        r = threshold_check(d)
        print(f"{d:2d}  {r.floor:5d}  {2 * d - 1:4d}   {r.t1!s:5s}  {r.t2!s:5s}  {r.t3!s:5s}")


if __name__ == "__main__":
    main()
