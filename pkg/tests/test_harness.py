from __future__ import annotations

import json

import pytest

from zpsums.errors import CapabilityError
from zpsums.harness import (
    TheoremRecord,
    VerificationReport,
    emit_report,
    report_from_json,
    report_to_csv,
    report_to_json,
    verify_theorem,
)


def test_main1_range_all_pass():
    rep = verify_theorem("main1", 7, 61)
    assert rep.theorem == "main1"
    assert (rep.p_min, rep.p_max) == (7, 61)
    assert len(rep.records) == 15
    assert rep.n_pass == 15 and rep.n_fail == 0
    assert rep.all_passed
    ps = [r.p for r in rep.records]
    assert ps == sorted(ps)
    for r in rep.records:
        assert r.computed == r.bound  # max equals n(p) - 1 on the nose
        assert dict(r.details)["exhaustive"] is True


def test_main1_record_shape():
    rep = verify_theorem("main1", 11, 11)
    doc = json.loads(report_to_json(rep))
    rec = doc["records"][0]
    for key, val in {"p": 11, "n_p": 5, "max_zsf": 4, "pass": True}.items():
        assert rec[key] == val


def test_olson_known_boundary_failures():
    rep = verify_theorem("olson", 7, 31)
    outcome = {r.p: r.passed for r in rep.records}
    assert outcome == {
        7: False, 11: True, 13: False, 17: False, 19: True,
        23: True, 29: True, 31: False,
    }
    assert rep.n_fail == 4 and not rep.all_passed
    # failures are all on the lower-bound side: the minimal-norm packing
    # of size m(p) is complete at these boundary primes
    for r in rep.records:
        assert r.computed <= r.bound


def test_hz_bound_holds():
    rep = verify_theorem("hz", 7, 61)
    assert rep.all_passed
    for r in rep.records:
        assert r.computed < r.bound


def test_lemma_simple5_counts():
    rep = verify_theorem("lemma-simple5", 7, 31)
    assert rep.all_passed
    for r in rep.records:
        assert r.computed == r.bound  # l(l+1)/2 distinct totals, exactly


def test_main2_lemma_small_range():
    rep = verify_theorem("main2-lemma", 7, 31)
    assert rep.all_passed
    for r in rep.records:
        d = dict(r.details)
        assert d["complete"] is True
        assert d["sets_checked"] >= 0


def test_main3_reports_without_asserting():
    rep = verify_theorem("main3", 7, 31)
    assert rep.all_passed  # informational: c is reported, not asserted
    for r in rep.records:
        assert "c" in dict(r.details)


def test_exceptional_scan_single_record():
    rep = verify_theorem("exceptional-scan", 3, 10_000)
    assert len(rep.records) == 1
    r = rep.records[0]
    assert r.p == 10_000
    assert r.computed == 1 and r.bound == 1 and r.passed
    assert dict(r.details)["hits"] == (3,)


def test_empty_range_is_valid():
    rep = verify_theorem("main1", 24, 28)  # no primes in range
    assert rep.records == () and rep.n_pass == 0 and rep.n_fail == 0
    assert rep.all_passed
    # both serializations accept the empty report
    assert json.loads(report_to_json(rep))["summary"]["records"] == 0
    assert report_to_csv(rep).splitlines() == ["p,theorem,computed,bound,pass"]


def test_capability_error_beyond_supported_range():
    with pytest.raises(CapabilityError) as exc:
        verify_theorem("main1", 7, 1000)
    assert "499" in str(exc.value)
    with pytest.raises(CapabilityError):
        verify_theorem("exceptional-scan", 3, 10**9)


def test_unknown_theorem_and_bad_range():
    with pytest.raises(ValueError):
        verify_theorem("fermat-last", 7, 11)
    with pytest.raises(ValueError):
        verify_theorem("main1", 11, 7)


def test_jobs_fanout_matches_serial():
    a = verify_theorem("main1", 7, 31, jobs=1)
    b = verify_theorem("main1", 7, 31, jobs=3)
    assert a == b


def test_json_roundtrip():
    rep = verify_theorem("olson", 7, 19)
    text = report_to_json(rep)
    back = report_from_json(text)
    assert back == rep
    assert report_to_json(back) == text


def test_json_deterministic_without_timestamp():
    a = report_to_json(verify_theorem("main1", 7, 13))
    b = report_to_json(verify_theorem("main1", 7, 13))
    assert a == b
    assert "timestamp" not in json.loads(a)


def test_timestamp_requested():
    rep = verify_theorem("main1", 7, 7, timestamp=True)
    assert rep.timestamp is not None
    doc = json.loads(report_to_json(rep))
    assert "timestamp" in doc


def test_csv_format():
    rep = verify_theorem("olson", 7, 13)
    lines = report_to_csv(rep).splitlines()
    assert lines[0] == "p,theorem,computed,bound,pass"
    assert lines[1] == "7,olson,3,5,false"
    assert lines[2] == "11,olson,5,6,true"


def test_emit_report_writes_file(tmp_path):
    rep = verify_theorem("main1", 7, 11)
    out = tmp_path / "r.json"
    text = emit_report(rep, "json", str(out))
    assert out.read_text(encoding="utf-8") == text
    with pytest.raises(ValueError):
        emit_report(rep, "yaml")
    with pytest.raises(OSError):
        emit_report(rep, "csv", str(tmp_path / "nope" / "r.csv"))


def test_report_validation():
    good = TheoremRecord(p=7, computed=3, bound=3, passed=True)
    with pytest.raises(ValueError):
        VerificationReport("main1", 7, 11, (good,), n_pass=2, n_fail=0)
    later = TheoremRecord(p=5, computed=2, bound=2, passed=True)
    with pytest.raises(ValueError):
        VerificationReport("main1", 5, 11, (good, later), n_pass=2, n_fail=0)
