"""Acceptance gate: one check per criterion at full counts, one printed line each."""

import pytest

from doxa.cli import DEFAULT_SEED
from doxa.reproduce import REGISTRY, run_checks

CRITERIA = [c for c in REGISTRY if "acceptance" in c.tags]


def test_all_criteria_registered():
    assert [c.id for c in CRITERIA] == [f"C{i:02d}" for i in range(1, 16)]


@pytest.mark.parametrize("check", CRITERIA, ids=lambda c: c.id)
def test_criterion(check, capsys):
    ((_, passed, detail, seconds),) = run_checks([check], 500, DEFAULT_SEED)
    with capsys.disabled():
        print(f"\n{'PASS' if passed else 'FAIL'} {check.id} ({seconds:.1f}s) {check.title}: {detail}")
    assert passed, detail
