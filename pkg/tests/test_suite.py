from __future__ import annotations

from fractions import Fraction as F

import pytest

from affine_hecke.suite import CRITERIA, SweepConfig, run_case, run_sweep


def test_config_grid():
    cfg = SweepConfig(kinds=["A2"], max_den=2, lo=0, hi=1)
    assert cfg.grid() == [0, F(1, 2), 1]
    assert len(cfg.cases()) == 9


def test_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(max_den=0)
    with pytest.raises(ValueError):
        SweepConfig(lo=2, hi=1)
    with pytest.raises(ValueError):
        SweepConfig.from_dict({"kinds": ["A2"], "colour": 1})
    with pytest.raises(ValueError):
        SweepConfig(kinds=["Q2"])
    cfg = SweepConfig.from_dict({"kinds": ["C2"], "hi": "3/2"})
    assert cfg.hi == F(3, 2)


def test_degenerate_case():
    res = run_case("A2", (0, 0))
    assert res.ok
    assert res.shapes == [{"J": [], "dim": 1, "skew": False}]
    assert res.modules == 0


def test_small_sweep_passes():
    report = run_sweep(SweepConfig(kinds=["A2", "C2"], max_den=2, hi=1))
    assert report.ok
    s = report.summary()
    assert s["cases"] == 18 and s["modules"] > 0


def test_corrupted_fixture_reports_exactly_injected():
    cfg = SweepConfig(kinds=["A2", "C2"], max_den=2, corrupt=[3, 7, 30])
    report = run_sweep(cfg)
    failed = {i for i, c in enumerate(report.cases) if not c.ok}
    injected = {i for i, c in enumerate(report.cases) if c.injected}
    assert failed == injected
    assert injected <= {3, 7, 30} and injected
    for c in report.failures:
        assert "quadratic T1" in c.failures[0]
        assert c.input["type"] in ("A2", "C2")


def test_parallel_matches_serial():
    cfg = SweepConfig(kinds=["A2"], max_den=2, corrupt=[3])
    a = run_sweep(cfg)
    cfg.jobs = 2
    b = run_sweep(cfg)
    assert [c.shapes for c in a.cases] == [c.shapes for c in b.cases]
    assert [c.failures for c in a.cases] == [c.failures for c in b.cases]


def test_report_written(tmp_path):
    run_sweep(SweepConfig(kinds=["A2"], max_den=1, out_dir=str(tmp_path)))
    assert (tmp_path / "report.json").exists()


def test_criteria_numbering():
    assert sorted(CRITERIA) == list(range(1, 9))
