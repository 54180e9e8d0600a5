import json

import pytest

from paperfold.census import Census
from paperfold.substitution import MU
from paperfold.verify import (
    ANCHORS,
    FAIL,
    PASS,
    SKIPPED,
    Budget,
    Verifier,
    format_table,
    reports_to_json,
    verify_all,
)

SMALL = Budget(max_square=4, max_depth=10, max_closed_n=2000)


@pytest.fixture(scope="module")
def small_reports():
    return verify_all(SMALL)


def strip_time(reports):
    return [(r.check_id, r.anchor, r.params, r.status, r.witness, r.detail) for r in reports]


def test_budget_parse():
    assert Budget.parse("") == Budget()
    assert Budget.parse("max_square=8, max-depth=10") == Budget(8, 10, 10**6)
    with pytest.raises(ValueError):
        Budget.parse("nope=3")
    with pytest.raises(ValueError):
        Budget.parse("max_square=0")


def test_small_budget_limits_table(small_reports):
    by_id = {r.check_id: r for r in small_reports}
    table = by_id["initial-values"]
    assert table.status == PASS
    assert table.params == {"n": [1, 3], "beyond_budget": [4, 10]}
    assert by_id["Q-extension"].status == SKIPPED
    assert not any(r.status == FAIL for r in small_reports)


def test_order_and_anchors(small_reports):
    assert [r.check_id for r in small_reports] == [c[0] for c in Verifier.CHECKS]
    assert all(r.anchor in ANCHORS for r in small_reports)


def test_deterministic_and_idempotent(small_reports):
    again = verify_all(SMALL)
    assert strip_time(again) == strip_time(small_reports)
    v = Verifier(SMALL)
    assert strip_time(v.run()) == strip_time(v.run())


def test_only_filter():
    reports = verify_all(SMALL, only=lambda cid: cid in {"quadrant", "plateau"})
    assert [r.check_id for r in reports] == ["plateau", "quadrant"]


def test_corrupted_rule_is_caught():
    bad = MU.replace("N", "INPK")
    census = Census(mu=bad, cap=SMALL.max_depth, max_dim=SMALL.max_square)
    reports = verify_all(SMALL, census, only=lambda cid: cid == "initial-values")
    (table,) = reports
    assert table.status == FAIL
    assert table.witness["n"] == 1


@pytest.mark.parametrize("letter,block", [("A", "AFGD"), ("L", "JEPL"), ("I", "IFOD")])
def test_other_corruptions_fail_at_n1(letter, block):
    census = Census(mu=MU.replace(letter, block), cap=SMALL.max_depth, max_dim=SMALL.max_square)
    (table,) = verify_all(SMALL, census, only=lambda cid: cid == "initial-values")
    assert table.status == FAIL and table.witness["n"] == 1


def test_every_failure_has_witness():
    census = Census(mu=MU.replace("N", "INPK"), cap=SMALL.max_depth, max_dim=SMALL.max_square)
    reports = verify_all(SMALL, census)
    failed = [r for r in reports if r.status == FAIL]
    assert failed and all(r.witness is not None for r in failed)


def test_resource_limit_becomes_skip():
    tight = Budget(max_square=4, max_depth=3, max_closed_n=10)
    reports = verify_all(tight, only=lambda cid: cid in {"initial-values", "quadrant"})
    assert [r.status for r in reports] == [SKIPPED, PASS]
    assert "resource limit" in reports[0].detail


def test_identity_reach_is_reported():
    v = Verifier(Budget(max_square=12, max_depth=12, max_closed_n=10))
    (rep,) = v.run(only=lambda cid: cid == "second-extensions")
    # item 1 is square at 2n, item 2 needs a (2n+1) x (2n+2) window
    assert rep.params["bruteforce_reach"] == {"1": 6, "2": 5}
    assert rep.params["bruteforce_n_max"] == 5
    assert rep.params["recursive_n_max"] == 500


def test_output_formats(small_reports):
    text = format_table(small_reports)
    lines = text.splitlines()
    assert lines[0].startswith("check")
    assert lines[-1] == f"{len(small_reports)} checks, 0 failed, 1 skipped"
    data = json.loads(reports_to_json(small_reports))
    assert [d["check_id"] for d in data] == [r.check_id for r in small_reports]
    assert set(data[0]) == {"check_id", "anchor", "params", "status", "witness", "elapsed", "detail"}


def test_default_budget_passes_everything():
    reports = verify_all()
    assert [r.check_id for r in reports if r.status != PASS] == []
    by_id = {r.check_id: r for r in reports}
    assert by_id["initial-values"].params == {"n": [1, 10]}
    assert by_id["A-three-ways"].params == {"n": [1, 24]}
    assert by_id["closed-vs-recursive"].params == {"n": [1, 10**6]}
    assert by_id["quadrant"].params == {"n": [1, 6]}
