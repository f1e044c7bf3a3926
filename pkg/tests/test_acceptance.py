"""Acceptance gate: one test per criterion, each printing its pass line.

Every comparison is exact; wall-clock budgets are enforced inside the
checks that state them.
"""

import pytest

from skeinlab import selftest


@pytest.mark.parametrize(
    "check", selftest.ALL_CHECKS, ids=[c.__name__ for c in selftest.ALL_CHECKS]
)
def test_acceptance_criterion(check):
    result = check()
    line = ("PASS" if result["passed"] else "FAIL") + " - " + result["criterion"]
    if result["detail"]:
        line += " - " + result["detail"]
    print(line)
    assert result["passed"], result
