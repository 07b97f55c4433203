"""
Acceptance suite: the twelve criteria, each at its stated tolerance, run on
the bundled default scenario.  One PASS/FAIL line is printed per criterion
(visible with ``pytest -s`` or in the captured output of failures).
"""

import pytest

from zndpiston import verification as V
from zndpiston.cli.scenario import parse_scenario


@pytest.fixture(scope="module")
def base():
    return parse_scenario("default")


@pytest.mark.slow
@pytest.mark.parametrize("key", V.ACCEPTANCE)
def test_acceptance(key, base, tmp_path):
    entry = V.acceptance_check(key, base, tmp_path)
    verdict = "PASS" if entry.passed else "FAIL"
    print(f"\n[{verdict}] {key}: value={entry.value:.4e} threshold={V._fmt(entry.threshold)} "
          f"({entry.runtime:.1f}s) {entry.detail}")
    assert entry.passed, entry.detail
