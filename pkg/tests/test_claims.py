import copy
import json

import pytest

from pistar.claims import (KINDS, REFUTED, RESOLVED, UNRESOLVED, VERIFIED, Claim, ClaimsReport,
                           ClaimResult, builtin_ledger, dump_claims, load_claims, run_claim,
                           run_claims)


@pytest.fixture(scope="module")
def ledger():
    return {c.id: c for c in builtin_ledger()}


def test_ledger_shape(ledger):
    assert len(ledger) >= 60
    assert all(c.provenance and c.kind in KINDS for c in ledger.values())
    assert len(ledger) == len(builtin_ledger())


def test_single_claims(ledger):
    assert run_claim(ledger["L3.1-A2"]).status == VERIFIED
    assert run_claim(ledger["L3.2-A5-witness"]).status == VERIFIED
    assert run_claim(ledger["P4.8-b05"]).status == VERIFIED


def test_tampered_witness_is_refuted(ledger):
    bad = copy.deepcopy(ledger["L3.2-A5-witness"])
    bad.payload["expected"] = "-e16"
    r = run_claim(bad)
    assert r.status == REFUTED and r.evidence["value"] == "e16"


def test_tampered_membership_is_refuted(ledger):
    bad = copy.deepcopy(ledger["P4.8-b05"])
    bad.payload["members"], bad.payload["nonmembers"] = ["A2"], ["A4"]
    r = run_claim(bad)
    assert r.status == REFUTED


def test_readings_resolve(ledger):
    r = run_claim(ledger["P4.8-b16"])
    assert r.status == RESOLVED and r.reading in ledger["P4.8-b16"].readings


def test_unresolved_when_no_reading_works(ledger):
    c = copy.deepcopy(ledger["P4.8-b16"])
    c.readings = ["x1- x2- x3- x4- x5+"]
    c.payload["members"], c.payload["nonmembers"] = ["A9"], []
    assert run_claim(c).status == UNRESOLVED


def test_parse_failure_is_a_refutation():
    c = Claim("T", "identity_member", ["A1"], {"poly": "[x1+,", "members": ["A1"], "nonmembers": []}, "t")
    assert run_claim(c).status == REFUTED


def test_unknown_kind():
    with pytest.raises(ValueError):
        Claim("T", "guess", [], {}, "")


def test_file_round_trip(tmp_path, ledger):
    path = tmp_path / "claims.json"
    claims = [ledger["L3.1-A1"], ledger["P4.8-b16"]]
    dump_claims(claims, str(path))
    assert [c.to_json() for c in load_claims(str(path))] == [c.to_json() for c in claims]


def test_run_claims_selection_and_order(ledger):
    report = run_claims(list(ledger.values()), only=["P4.8-b05", "L3.1-A1"], workers=2)
    assert [r.id for r in report.results if r.status != "skipped"] == ["L3.1-A1", "P4.8-b05"]
    counts = dict(report.summary)
    assert counts.pop("total") == sum(counts.values()) == len(ledger)
    with pytest.raises(KeyError):
        run_claims(list(ledger.values()), only=["missing"])


def test_exit_codes():
    mk = lambda *st: ClaimsReport([ClaimResult(str(i), s) for i, s in enumerate(st)])
    assert mk(VERIFIED, RESOLVED).exit_code == 0
    assert mk(VERIFIED, UNRESOLVED).exit_code == 3
    assert mk(UNRESOLVED, REFUTED).exit_code == 1


def test_deterministic_report(ledger):
    subset = ["P4.8-b16", "P4.8-b05", "L3.2-A9-center", "X-codim-A2-1"]
    a = run_claims(list(ledger.values()), only=subset, workers=1).to_json()
    b = run_claims(list(ledger.values()), only=subset, workers=3).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
