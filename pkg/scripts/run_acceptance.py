"""Run the acceptance criteria and write a JSON summary."""

import argparse
import json

from nlcheck.fields import parse_field
from nlcheck.suite import CRITERIA, SuiteConfig, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--field", default="q")
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--d", type=int, default=4)
    ap.add_argument("--only", type=int, nargs="+", choices=sorted(CRITERIA))
    ap.add_argument("--out", help="optional JSON output path")
    a = ap.parse_args()
    cfg = SuiteConfig(seed=a.seed, d=a.d, field=parse_field(a.field))
    results = run_suite(cfg, a.only)
    for r in results:
        print(r.summary())
    if a.out:
        payload = [
            {"criterion": r.number, "title": r.title, "passed": r.passed, "seconds": round(r.seconds, 3),
             "checks": [c.as_dict() for c in r.checks], "notes": r.notes}
            for r in results
        ]
        with open(a.out, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True, default=str)
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    raise SystemExit(main())
