import pytest

import latinrect.column_counts as column_counts
from latinrect.cli import main
from latinrect.selftest import run_selftest


def test_default_selftest_passes():
    report = run_selftest()
    assert report.ok
    names = [s.name for s in report.suites]
    assert "derangement-identities" in names
    assert "formula-vs-oracle" in names
    assert "profile-count-vs-hall-oracle" in names
    assert "direct-total-brackets" in names
    assert "zero-for-k-above-n" in names
    assert all(s.checks > 0 for s in report.suites)
    assert report.first_counterexample() is None


def test_selftest_records_exponent_resolution():
    report = run_selftest()
    assert any("matches (n-2)^2*(n-3)^(n-2)" in note for note in report.notes)
    assert any("36" in note for note in report.notes)


def test_selftest_depth_validation():
    with pytest.raises(ValueError):
        run_selftest(max_k=1)


def corrupt_two_class_value(monkeypatch):
    # Nudging one two-class value is the smallest fault the two-row sum
    # cannot cancel away; it first shows at k=2, n=2 (n <= 1 still cancels).
    real = column_counts.choice_count

    def corrupted(counts, tally=None):
        value = real(counts, tally)
        return value + 1 if counts == (0, 2) else value

    monkeypatch.setattr(column_counts, "choice_count", corrupted)


def test_corrupted_choice_count_is_caught(monkeypatch):
    corrupt_two_class_value(monkeypatch)
    report = run_selftest()
    assert not report.ok
    first = report.first_counterexample()
    assert "k=2 n=2" in first


def test_cli_selftest_exit_codes(monkeypatch, capsys):
    assert main(["selftest"]) == 0
    capsys.readouterr()

    corrupt_two_class_value(monkeypatch)
    assert main(["selftest"]) == 3
    captured = capsys.readouterr()
    assert "counterexample" in captured.err
    assert "k=2 n=2" in captured.err
