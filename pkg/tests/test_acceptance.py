"""Acceptance gate: one test per criterion, each printing its verdict line.

The same checks back the `tiltrig selftest` subcommand; every tolerance is
exact (integer multiset equality), so there is nothing to calibrate.
"""

import pytest

from tiltrig.acceptance import CRITERIA


@pytest.mark.parametrize("name,check", CRITERIA, ids=[name for name, _ in CRITERIA])
def test_criterion(name, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {name}: {detail}")
    assert ok, detail
