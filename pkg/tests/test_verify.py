"""Claim runner: report shape, failure reporting, id hygiene."""

import pytest

from spexlab import CLAIM_IDS, run_claim
from spexlab.verify import CLAIM_SPECS, first_failure


def test_claim_ids_match_specs():
    assert CLAIM_IDS == tuple(CLAIM_SPECS)
    assert len(set(CLAIM_IDS)) == len(CLAIM_IDS)
    for cid, spec in CLAIM_SPECS.items():
        assert spec.id == cid
        assert spec.expected


def test_table_claim_passes():
    rep = run_claim("table")
    assert rep["ok"]
    assert rep["claim"] == "table"
    assert rep["elapsed"] >= 0
    for a in rep["assertions"]:
        assert set(a) == {"name", "ok", "detail"}
        assert a["ok"]


def test_f1_claim_passes():
    rep = run_claim("f1")
    assert rep["ok"]
    assert len(rep["assertions"]) >= 4


def test_cx2_claim_at_thirteen():
    rep = run_claim("cx2", {"p": 13})
    assert rep["ok"]


def test_transfer_shift_claim_passes():
    rep = run_claim("transfer-shift")
    assert rep["ok"]


def test_underscore_alias():
    rep = run_claim("edge_add")
    assert rep["claim"] == "edge-add"
    assert rep["ok"]


def test_unknown_claim():
    with pytest.raises(ValueError, match="unknown claim"):
        run_claim("nope")


def test_exception_becomes_failed_assertion():
    rep = run_claim("cx2", {"p": 6})
    assert not rep["ok"]
    last = rep["assertions"][-1]
    assert last["name"] == "cx2 ran to completion"
    assert not last["ok"]
    assert "p = 6" in last["detail"]


def test_first_failure():
    good = run_claim("table")
    bad = run_claim("cx2", {"p": 6})
    assert first_failure([good]) is None
    assert first_failure([good, bad]) == "cx2: cx2 ran to completion"
    assert first_failure([bad, good]) == "cx2: cx2 ran to completion"
