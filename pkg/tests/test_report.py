"""Report rendering and the on-disk cache."""

import json
import os

from baerkit.report import (
    CACHE_ENV_VAR,
    ReportCache,
    SuiteResult,
    canonical_json,
    render_text,
    run_report,
)


def test_suite_result_to_dict():
    r = SuiteResult(suite="s", passed=True, bounds={"n": 2},
                    checks=[{"name": "a", "passed": True}])
    d = r.to_dict()
    assert d == {"suite": "s", "passed": True, "bounds": {"n": 2},
                 "checks": [{"name": "a", "passed": True}]}
    r2 = SuiteResult(suite="s", passed=False, counterexample={"a": 1})
    assert r2.to_dict()["counterexample"] == {"a": 1}


def test_canonical_json_drops_timing_and_sorts():
    rep = run_report("zmod 6", "classify", {}, {"z": 1, "a": 2}, True, timing=1.23)
    assert "timing_seconds" in rep
    text = canonical_json(rep)
    assert "timing" not in text
    assert text.endswith("\n")
    parsed = json.loads(text)
    assert parsed["passed"] is True
    # two renders are byte-identical
    assert canonical_json(rep) == text


def test_render_text_mentions_flags_and_checks():
    rep = run_report("zmod 6", "classify", {"n": 2},
                     {"flags": {"baer": True, "prime": None},
                      "checks": [{"name": "c1", "passed": False}]},
                     False)
    text = render_text(rep)
    assert "baer: true" in text
    assert "prime: skipped" in text
    assert "check c1: FAIL" in text
    assert "passed: False" in text


def test_cache_roundtrip(tmp_path):
    cache = ReportCache(str(tmp_path))
    rep = run_report("zmod 6", "classify", {"n": 2}, {"x": 1}, True)
    assert cache.get("zmod 6", "classify", {"n": 2}) is None
    cache.put("zmod 6", "classify", {"n": 2}, rep)
    hit = cache.get("zmod 6", "classify", {"n": 2})
    assert hit == {k: v for k, v in rep.items() if k != "timing_seconds"}
    # different bounds miss
    assert cache.get("zmod 6", "classify", {"n": 3}) is None


def test_cache_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV_VAR, str(tmp_path / "sub"))
    cache = ReportCache()
    assert str(cache.dir) == str(tmp_path / "sub")
    assert os.path.isdir(cache.dir)


def test_cache_key_stable():
    c1 = ReportCache.__new__(ReportCache)
    assert (ReportCache.key(c1, "zmod 6", "classify", {"a": 1, "b": 2})
            == ReportCache.key(c1, "zmod 6", "classify", {"b": 2, "a": 1}))
    assert (ReportCache.key(c1, "zmod 6", "classify", {})
            != ReportCache.key(c1, "zmod 7", "classify", {}))
