"""Acceptance criteria 1-8; each prints one PASS/FAIL line."""

import pytest

from hardyops.checks import CHECKS, run_checks


@pytest.mark.parametrize("criterion", range(1, len(CHECKS) + 1))
def test_criterion(criterion, acceptance_rows):
    (row,) = run_checks([criterion])
    acceptance_rows.append(row)
    print(row.line())
    assert row.passed, row.line() + (f" ({row.detail})" if row.detail else "")
