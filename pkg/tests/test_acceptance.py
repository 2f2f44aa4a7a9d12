"""Acceptance gate: every criterion runs at its pinned tolerance and
prints one pass/fail line."""

import pytest

from singext import acceptance


@pytest.mark.parametrize("number", sorted(acceptance.CRITERIA))
def test_criterion(number):
    result = acceptance.CRITERIA[number]()
    status = "PASS" if result.passed else "FAIL"
    print(f"ACCEPTANCE {result.number}: {status} - {result.title} "
          f"[{result.detail}]")
    assert result.passed, f"criterion {result.number}: {result.detail}"
