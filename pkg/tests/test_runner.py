"""Suite dispatch, the mining predicate language, and explain."""

import pytest

from baerkit import runner
from baerkit.report import ReportCache
from baerkit.runner import (
    InputError,
    PredicateError,
    eval_predicate,
    explain,
    mine,
    parse_predicate,
    run_suite,
)


class TestRunSuite:
    def test_unknown_suite(self):
        with pytest.raises(InputError):
            run_suite("bogus", "zmod 6")

    def test_bad_spec_is_input_error(self):
        with pytest.raises(InputError):
            run_suite("classify", "zmood 6")

    def test_unknown_bound_rejected(self):
        with pytest.raises(InputError):
            run_suite("classify", "zmod 6", bounds={"q": 1})

    def test_classify_payload(self):
        rep = run_suite("classify", "zmod 6")
        assert rep["passed"] is True
        assert rep["suite"] == "classify"
        assert rep["result"]["flags"]["right_cp_baer"] is True
        assert rep["result"]["implication_violations"] == []
        assert rep["spec"] == "zmod 6"
        assert "timing_seconds" not in rep

    def test_timing_attached_on_request(self):
        rep = run_suite("classify", "zmod 6", timing=True)
        assert rep["timing_seconds"] >= 0

    def test_spec_key_canonicalizes(self):
        a = run_suite("classify", "  zmod   6 ")
        b = run_suite("classify", "zmod 6")
        assert a["spec"] == b["spec"]

    @pytest.mark.parametrize("suite", [
        "prop14", "thm12-poly", "thm12-series", "thm38-multivar",
        "laurent", "spa", "monoid-t1", "inverse-thm24", "prop241",
    ])
    def test_suites_pass_on_z6(self, suite):
        rep = run_suite(suite, "zmod 6", bounds={"n": 2, "d": 3})
        assert rep["passed"] is True, rep

    def test_example13(self):
        rep = run_suite("example13", "zmod 2")
        assert rep["passed"] is True
        res = rep["result"]
        assert res["ab_zero"] and res["a_alpha_b_nonzero"]
        assert res["a_alpha_b_equals_a"]
        assert res["compatibility_witness_found"]

    def test_example13_rejects_non_prime_field(self):
        with pytest.raises(InputError):
            run_suite("example13", "zmod 4")

    def test_incompatible_context_fails_not_errors(self):
        rep = run_suite("inverse-thm24", "product (zmod 2) (zmod 2)", "swap")
        assert rep["passed"] is False

    def test_monoid_bound_selects_monoid(self):
        rep = run_suite("monoid-t1", "zmod 6", bounds={"monoid": "nk 2 revlex", "n": 2})
        assert rep["passed"] is True
        rep = run_suite("monoid-t1", "zmod 6", bounds={"monoid": "qplus 0 1/2 1"})
        assert rep["passed"] is True
        with pytest.raises(InputError):
            run_suite("monoid-t1", "zmod 6", bounds={"monoid": "weird"})

    def test_cache_hit_returns_same_report(self, tmp_path):
        cache = ReportCache(str(tmp_path))
        a = run_suite("classify", "zmod 6", cache=cache)
        files = list(tmp_path.glob("*.json"))
        assert len(files) == 1
        b = run_suite("classify", "zmod 6", cache=cache)
        assert a == b
        assert list(tmp_path.glob("*.json")) == files


class TestPredicates:
    def test_parse_and_eval(self):
        flags = {"baer": True, "prime": False, "rickart": None}
        assert eval_predicate(parse_predicate("baer & !prime"), flags) is True
        assert eval_predicate(parse_predicate("prime | baer"), flags) is True
        assert eval_predicate(parse_predicate("prime & rickart"), flags) is False
        assert eval_predicate(parse_predicate("baer & rickart"), flags) is None
        assert eval_predicate(parse_predicate("!(baer | prime)"), flags) is False

    def test_parse_errors(self):
        for bad in ("", "&", "baer &", "(baer", "baer)", "baer ? prime"):
            with pytest.raises(PredicateError):
                parse_predicate(bad)

    def test_unknown_flag(self):
        with pytest.raises(PredicateError):
            eval_predicate(parse_predicate("bogus"), {"baer": True})

    def test_mine_zmods(self):
        found = mine("zmod", "!semiprime", max_order=12)
        specs = [f["spec"] for f in found]
        # exactly the moduli divisible by a square: 4, 8, 9, 12
        assert specs == ["zmod 4", "zmod 8", "zmod 9", "zmod 12"]

    def test_mine_limit(self):
        found = mine("zmod", "semiprime", max_order=30, limit=3)
        assert len(found) == 3

    def test_mine_unknown_family(self):
        with pytest.raises(ValueError):
            list(mine("bogus", "baer"))


class TestExplain:
    def test_known_flags(self):
        for flag in runner.FLAG_DEFINITIONS:
            assert explain(flag)

    def test_unknown_flag(self):
        with pytest.raises(InputError):
            explain("bogus")
