import json

import pytest

from racahweyl import realizations as R
from racahweyl.verify import (
    CHECKS, DIAGNOSTIC_SUITES, SUITES, CheckResult, Report, commutes_with_all, residual, run_check, run_suite,
    suite_names,
)
from racahweyl.weyl import WeylElement as W

x, d = W.x(1, 1), W.d(1, 1)
PLANES = [R.L(*p) for p in R.O2_PLANES]


def test_residual():
    assert residual(x * d, x * d).is_zero()
    assert residual(x * d, d * x) == -1
    assert residual(R.commutant_K3(), R.k3_literal()).is_zero()


@pytest.mark.parametrize("oracle", [False, True])
def test_commutes_with_all(oracle):
    assert commutes_with_all(R.commutant_K(1), PLANES, oracle=oracle).passed
    all_L = [R.L(m, v) for m in range(1, 7) for v in range(m + 1, 7)]
    assert commutes_with_all(R.o_n_casimir(6), all_L, oracle=oracle).passed
    bad = commutes_with_all(R.L(1, 3), [R.L(1, 2)], name="L13", oracle=oracle)
    assert not bad.passed and bad.residual_term_count > 0 and bad.residual_sample


def test_failure_sample_is_truncated():
    big = R.commutant_K(2)
    res = commutes_with_all(big, [R.L(1, 3)])
    assert not res.passed
    assert res.residual_term_count > 5 and len(res.residual_sample) == 5


@pytest.mark.parametrize("name", ["racah-o6/second-relation", "howe/total-casimir", "reduction/sum-identity"])
def test_named_checks_pass(name):
    assert run_check(name).passed


def test_third_relation_names_the_holding_variant():
    res = run_check("racah-o6/third-relation")
    assert res.passed
    assert res.detail.startswith("holds as k1-variant")
    k2 = run_check("third-relation-variants/third-relation-k2-variant")
    assert not k2.passed and k2.residual_term_count > 0


def test_catalogue_shape():
    assert len(SUITES["o6-structure"]) == 106
    assert sum(n.startswith("key-identities/cyclic/") for n in SUITES["key-identities"]) == 15
    assert sum(n.startswith("key-identities/squared/") for n in SUITES["key-identities"]) == 15
    assert sum(n.startswith("key-identities/elementary/") for n in SUITES["key-identities"]) == 120
    assert "all" in suite_names()
    assert set(CHECKS) == {n for names in SUITES.values() for n in names}


def test_subsets_enumerate_lexicographically():
    cyclic = [n for n in SUITES["key-identities"] if "/cyclic/" in n]
    assert cyclic == sorted(cyclic)
    assert cyclic[0].endswith("1234") and cyclic[-1].endswith("3456")


def test_report_serialization_and_order():
    rep = run_suite("su11-racah")
    assert rep.all_passed
    data = json.loads(json.dumps(rep.to_dict()))
    assert set(data) >= {"suite", "results", "all_passed"}
    assert set(data["results"][0]) >= {"name", "status", "residual_term_count", "residual_sample", "elapsed_ms"}
    assert [r["name"] for r in data["results"]] == SUITES["su11-racah"]


def test_parallel_run_keeps_order():
    serial = run_suite("howe")
    parallel = run_suite("howe", jobs=2)
    assert [r.name for r in serial.results] == [r.name for r in parallel.results]
    assert parallel.all_passed


def test_report_text():
    rep = Report("demo", [CheckResult("a", "pass", 0), CheckResult("b", "fail", 3, ["x1"])])
    text = rep.render_text()
    assert "PASS  a" in text and "FAIL  b" in text and "demo [symbolic]: 1/2 passed" in text
    assert not rep.all_passed


def test_all_excludes_diagnostics():
    from racahweyl.verify import _suite_members
    members = _suite_members("all")
    assert not any(n.split("/")[0] in DIAGNOSTIC_SUITES for n in members)
    with pytest.raises(KeyError):
        _suite_members("nope")


@pytest.mark.parametrize("suite", ["core-selftest", "reduction"])
def test_oracle_mode_agrees(suite):
    sym, orc = run_suite(suite), run_suite(suite, oracle=True)
    assert [r.status for r in sym.results] == [r.status for r in orc.results]
