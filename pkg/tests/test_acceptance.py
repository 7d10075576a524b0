"""Runs every acceptance criterion and prints one pass/fail line for each."""

import pytest

from itrails.acceptance import CRITERIA, AcceptanceConfig, run_criterion

_CFG = AcceptanceConfig()


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(number, capsys):
    res = run_criterion(number, _CFG)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.failures[:3]
