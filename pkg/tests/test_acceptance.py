"""Acceptance criteria, one line each (PASS or FAIL) printed to the terminal.

Run alone with ``pytest tests/test_acceptance.py -v``; the printed lines
appear even when output capture is on.
"""
import pytest

from k2coh.acceptance import CRITERIA


@pytest.mark.slow
@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    result = CRITERIA[number]()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()
