"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines, or directly
with ``python3 tests/test_acceptance.py``.  Tolerances are fixed here: exact
arithmetic everywhere except the residue cross-check, which matches root
multisets to 1e-25 at 128 bits.  Wall-clock limits are per criterion and apply
at d = 4 over Q.
"""

import sys

import pytest

from nlcheck.fields import Q
from nlcheck import suite
from nlcheck.suite import CRITERIA, LIMITS, SuiteConfig, SuiteContext, run_criterion

CONFIG = SuiteConfig(seed=42, d=4, field=Q(), precision=128)
EXPECTED_LIMITS = {1: 10, 2: 30, 3: 60, 4: 30, 5: 120, 6: 30, 7: 60, 8: 10, 9: 1, 10: 120, 11: 60}


@pytest.fixture(scope="module")
def context():
    return SuiteContext(CONFIG)


def test_limits_are_pinned():
    assert LIMITS == EXPECTED_LIMITS
    assert CONFIG.precision == 128
    assert suite.RESIDUE_TOLERANCE == 1e-25


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, context):
    res = run_criterion(number, context)
    print(res.summary())
    for c in res.checks:
        if not c.passed:
            print(f"    {c.name}: expected {c.expected!r}, got {c.actual!r}")
    assert res.passed, res.summary()


def main() -> int:
    ctx = SuiteContext(CONFIG)
    results = [run_criterion(n, ctx) for n in sorted(CRITERIA)]
    for res in results:
        print(res.summary())
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
