"""The ten acceptance criteria at full size; one PASS/FAIL line each."""
import pytest

from edgepoly.suite import CRITERIA, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    result = run_criterion(number, quick=False)
    with capsys.disabled():
        print("\n" + result.line(), flush=True)
    assert result.passed, result.detail
