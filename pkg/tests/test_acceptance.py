"""Full acceptance gate, one PASS/FAIL line per criterion.

Under pytest the lines are repeated in the terminal summary; running this
file directly prints them and exits nonzero on any failure.
"""

import sys

import pytest

from mga.acceptance import CRITERIA, FULL, run_criterion

RESULTS = []


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[c[1].replace(" ", "_") for c in CRITERIA])
def test_criterion(number):
    result = run_criterion(number, FULL, seed=0)
    RESULTS.append(result)
    print(result.line())
    assert result.ok, result.detail


if __name__ == "__main__":
    lines = [run_criterion(c[0], FULL, seed=0) for c in CRITERIA]
    for r in lines:
        print(r.line())
    sys.exit(0 if all(r.ok for r in lines) else 1)
