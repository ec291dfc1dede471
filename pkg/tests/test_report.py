import json
import math

from kenmotsu.report import CheckRecord, VerificationReport, inapplicable


def test_verdict_modes():
    assert CheckRecord("a", "x", 1e-9, 1e-8).verdict == "pass"
    assert CheckRecord("a", "x", 1e-8, 1e-8).verdict == "fail"
    assert CheckRecord("a", "x", 2.0, 1e-4, mode="witness").verdict == "pass"
    assert CheckRecord("a", "x", 0.0, 1e-4, mode="witness").verdict == "fail"
    assert CheckRecord("a", "x", math.nan, 1.0).verdict == "fail"
    assert inapplicable("a", "x", 1.0, "why").verdict == "inapplicable"


def test_summary_ignores_inapplicable_and_informational():
    rep = VerificationReport("M", "F", 3, 42, {}, [
        CheckRecord("ok", "x", 0.0, 1.0),
        inapplicable("skip", "y", 1.0, "hypothesis fails"),
        CheckRecord("info", "z", 5.0, 1.0, informational=True),
    ])
    assert rep.summary == "pass"
    rep.checks.append(CheckRecord("bad", "w", 5.0, 1.0))
    assert rep.summary == "fail"
    assert [c.name for c in rep.failures()] == ["bad"]


def test_json_round_trip_and_schema():
    rep = VerificationReport("M", "F", 3, 42, {"first": 1e-5}, [
        CheckRecord("a", "Eq.(IKE2)", 1.234567891e-12, 1e-5, 3, details={"k": 2}),
        CheckRecord("b", "S1-S2", float("inf"), 1e-6, note="rank"),
    ], profile={"xi": "horizontal"})
    doc = json.loads(rep.to_json())
    assert set(doc) >= {"source", "map", "samples", "seed", "tolerances", "checks"}
    for c in doc["checks"]:
        assert set(c) >= {"name", "paper_anchor", "max_residual", "tolerance", "verdict", "applicable"}
    assert doc["checks"][0]["max_residual"] == 1.234568e-12
    again = VerificationReport.from_dict(doc)
    assert again.to_json() == rep.to_json()


def test_text_has_one_line_per_check():
    rep = VerificationReport("M", "F", 3, 42, {}, [CheckRecord("a", "x", 0.0, 1.0),
                                                   CheckRecord("b", "y", 3.0, 1.0, mode="witness")])
    lines = rep.to_text().splitlines()
    assert sum(1 for line in lines if line.startswith("[")) == 2
    assert lines[-1] == "summary: pass"
