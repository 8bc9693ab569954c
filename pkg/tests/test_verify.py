import pytest

from freundgeom import verify
from freundgeom.params import FreundParams


@pytest.fixture(scope="module")
def coarse():
    return verify.run_verification("coarse")


def test_coarse_report_passes(coarse):
    assert coarse.passed
    names = [c.name for c in coarse.checks]
    assert names[: len(verify.DEFAULT_TOLERANCES) - 3] == list(verify.DEFAULT_TOLERANCES)[:-3]
    assert set(names) == set(verify.DEFAULT_TOLERANCES)
    assert all(c.points > 0 for c in coarse.checks)


def test_report_formats(coarse):
    text = coarse.to_text()
    assert text.startswith("grid=coarse\n") and text.endswith("overall=PASS\n")
    csv = coarse.to_csv().splitlines()
    assert csv[0] == "check,points,max_error,tolerance,status" and len(csv) == len(coarse.checks) + 1
    d = coarse.to_dict()
    assert d["passed"] and len(d["checks"]) == len(coarse.checks)


def test_tolerance_overrides():
    with pytest.raises(ValueError):
        verify.run_verification("coarse", {"nope": 1.0})
    with pytest.raises(ValueError):
        verify.run_verification("huge")
    report = verify.run_verification("coarse", {"connection_raising": 0.0, "duality": 0.0})
    by_name = {c.name: c for c in report.checks}
    assert by_name["duality"].passed
    assert by_name["connection_raising"].tolerance == 0.0


@pytest.mark.parametrize("alpha", [-1.0, -0.5, 0.3, 2.0])
def test_exact_duality(alpha):
    assert verify.exact_duality_defect(FreundParams(0.3, 1.7, 2.9, 0.45), alpha) == 0.0
