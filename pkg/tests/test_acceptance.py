"""The eight acceptance criteria, one test and one printed status line each."""

from __future__ import annotations

import pytest

from affine_hecke.suite import CRITERIA, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
