import pytest

from rhythmbool import rhythm, verify
from rhythmbool.anf import AnfPoly, Basis
from rhythmbool.boolvec import Convention
from rhythmbool.config import Settings
from rhythmbool.errors import BoundExceeded
from rhythmbool.verify import Check, all_passed, bound_for, run_check, run_checks


def test_all_checks_pass_for_small_moduli():
    reports = run_checks(list(Check), [3, 4, 5, 6])
    assert len(reports) == len(Check) * 4
    assert all_passed(reports)
    assert [(r.n, r.check) for r in reports] == sorted((r.n, r.check) for r in reports)
    balanced = {r.n: r.counts["ones"] for r in reports if r.check == "balanced"}
    assert balanced == {3: 4, 4: 8, 5: 16, 6: 32}
    ancestors = {r.n: r.counts["ancestors"] for r in reports if r.check == "ancestors"}
    assert ancestors[6] == 32


def test_parallel_run_matches_serial():
    serial = run_checks([Check.PARENTAL, Check.RECURRENCE], range(3, 9), jobs=1)
    parallel = run_checks([Check.PARENTAL, Check.RECURRENCE], range(3, 9), jobs=2)
    assert [r.as_record() for r in parallel] == [r.as_record() for r in serial]


def test_bounds_are_checked_before_running():
    with pytest.raises(BoundExceeded) as excinfo:
        run_checks([Check.PARENTAL, Check.CYCLICITY], [6, 11])
    assert excinfo.value.bound == 10
    settings = Settings(sweep_bound=4)
    assert bound_for(Check.COMMUTE, settings) == 4
    assert bound_for(Check.RECURRENCE, settings) is None
    with pytest.raises(BoundExceeded):
        run_check(Check.COMMUTE, 5, settings)


def test_unbounded_checks_run_past_sweep_bound():
    report = run_check(Check.PARENTAL, 40)
    assert report.passed
    assert report.counts == {"pairs": 40}


def test_failure_carries_counterexample(monkeypatch):
    monkeypatch.setattr(verify, "closed_form_bav0", lambda ctx: AnfPoly.zero(ctx, Convention.SIGNED, Basis.Y))
    report = run_check(Check.BALANCED, 4)
    assert not report.passed
    assert report.counterexample["ones"] == 0
    assert report.counterexample["expected"] == 8
    assert not all_passed([report])
    record = report.as_record(timings=True)
    assert "elapsed" in record
    assert record["counterexample"]["polynomial"] == "0"


def _skewed_average(a, b, n):
    return (a + 2 * ((b - a) % n)) % n


def test_rejected_rhythm_becomes_a_failed_report(monkeypatch):
    monkeypatch.setattr(rhythm, "av_int", _skewed_average)
    report = run_check(Check.CLOSURE, 5)
    assert not report.passed
    assert "rhythm" in report.counterexample
    assert "error" in report.counterexample
    assert report.as_record()["counterexample"] == report.counterexample


def test_commute_sweep_reports_rejected_rhythm(monkeypatch):
    monkeypatch.setattr(rhythm, "av_int", _skewed_average)
    (report,) = run_checks([Check.COMMUTE], [5])
    assert not report.passed
    assert "error" in report.counterexample
