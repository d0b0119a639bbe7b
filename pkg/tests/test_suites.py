"""Suite runner: config validation, pool generation, report formats."""

import json

import pytest

from tsettopos import (
    SuiteConfig,
    generate_instance_pool,
    report_json,
    report_text,
    run_suite,
)
from tsettopos.suites import CHECKS


def test_config_defaults_valid():
    cfg = SuiteConfig()
    assert cfg.checks == CHECKS


def test_config_rejects_bad_bounds():
    with pytest.raises(ValueError):
        SuiteConfig(max_algebra_size=1)
    with pytest.raises(ValueError):
        SuiteConfig(max_algebra_size=7)
    with pytest.raises(ValueError):
        SuiteConfig(max_carrier_size=-1)
    with pytest.raises(ValueError):
        SuiteConfig(enumeration_guard=0)


def test_config_rejects_unknown_check():
    with pytest.raises(ValueError):
        SuiteConfig(checks=("no-such-check",))


def test_pool_contents():
    pool = generate_instance_pool(SuiteConfig(max_algebra_size=3,
                                              max_carrier_size=2))
    labels = [lbl for lbl, _ in pool.algebras]
    assert labels == ["A2.0", "A3.0"]
    assert ("pentagon", "NotDistributive") in pool.rejected
    assert pool.tsets and pool.sheaves and pool.quasi


def test_run_suite_filtered_order():
    cfg = SuiteConfig(max_algebra_size=2, max_carrier_size=2,
                      checks=("counterexample", "boolean-split"))
    rep = run_suite(cfg)
    assert rep.ok
    seen = [r.check for r in rep.results]
    # canonical order, not request order
    assert seen.index("boolean-split") < seen.index("counterexample")


def test_report_formats_agree():
    cfg = SuiteConfig(max_algebra_size=2, max_carrier_size=2,
                      checks=("heyting-laws",))
    rep = run_suite(cfg)
    doc = json.loads(report_json(rep))
    text = report_text(rep)
    assert len(doc["results"]) == len(text.strip().splitlines())
    assert doc["version"] == rep.version
    assert doc["config"]["max_algebra_size"] == 2


def test_failure_rows_carry_witnesses():
    rep = run_suite(SuiteConfig(max_algebra_size=2, max_carrier_size=2))
    for row in rep.results:
        assert row.status == "pass"
        assert row.witness is None
