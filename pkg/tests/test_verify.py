import json

import pytest

from qmatrix import Q, QuantumMatrixAlgebra, evaluate_text, scalar_ratio
from qmatrix.verify import (IdentityRecord, default_manifest, load_manifest, replay_n3_proof,
                            run_identity_suite, run_records, transpose_record)

A3 = QuantumMatrixAlgebra(3)
SUITE3 = load_manifest(default_manifest("identities_n3.json"))
REPLAY = load_manifest(default_manifest("replay_n3.json"))


def test_suite_n3_passes():
    report = run_identity_suite(3)
    assert report.passed
    assert [r.name for r in report.results] == [r.name for r in SUITE3]
    assert report["c_gamma_of_minor_12_23"].passed
    assert all(r["residual"] == "0" for r in report.to_json()["records"])


def test_suite_n2_passes():
    report = run_identity_suite(2)
    assert report.passed and len(report.results) == 4


def test_perturbed_record_fails_with_residual(tmp_path):
    data = json.loads(default_manifest("identities_n3.json").read_text())
    data["records"][2]["rhs"] += " + Y[1,1]^3"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    report = run_identity_suite(3, manifest=path)
    bad = report.failures
    assert [r.name for r in bad] == ["c_gamma_of_minor_12_23"]
    # residual is lhs - rhs
    assert bad[0].residual == -(A3.gen(1, 1) ** 3)
    assert report.to_json()["records"][2]["residual"] == "-Y[1,1]^3"


def test_unknown_n_rejected():
    with pytest.raises(ValueError):
        run_identity_suite(4)


def test_replay_passes_in_order():
    report = replay_n3_proof()
    assert report.passed
    assert [r.name for r in report.results] == [r.name for r in REPLAY]
    kinds = {r.kind for r in REPLAY}
    assert kinds == {"identity", "normal", "central"}


def test_replay_fixed_list_covered():
    fixed = {"Y[3,1]", "Y[1,1]", "Y[1,3]", "Y[3,3]", "minor([1,2],[2,3])", "minor([1,3],[1,3])",
             "minor([2,3],[1,2])", "minor([1,2,3],[1,2,3])"}
    sides = {s for r in REPLAY if r.name.startswith("fixed_") for s in (r.lhs, r.rhs)}
    assert fixed <= sides


def test_replay_with_sandboxed_relation_fails():
    bad = QuantumMatrixAlgebra(3, relation_coeffs={"rect": 0})
    assert len(replay_n3_proof(bad).failures) > 1


@pytest.mark.parametrize("v", [2, 3, -2])
def test_replay_specialized_agrees(v):
    exact = replay_n3_proof()
    spec = replay_n3_proof(A3.specialized(v))
    assert [r.status for r in spec.results] == [r.status for r in exact.results]


@pytest.mark.parametrize("records", [SUITE3, REPLAY], ids=["suite", "replay"])
def test_tau_closure(records):
    report = run_records([transpose_record(r) for r in records], A3)
    assert report.passed


def test_gamma_maps_expansions_to_det_identities():
    # gamma of the [1,3|1,2] expansion gives record (e) up to a scalar,
    # and gamma of the [1,3|1,3] expansion gives record (b)
    pairs = [("g_expansion_13_12", "e_gamma_of_minor_13_12"),
             (("minor([1,3],[1,3])", "Y[1,1]*Y[3,3] - q*Y[1,3]*Y[3,1]"), "b_gamma_of_minor_13_13")]
    recs = {r.name: r for r in SUITE3}
    for src, dst in pairs:
        lhs, rhs = (recs[src].lhs, recs[src].rhs) if isinstance(src, str) else src
        g_lhs = evaluate_text(f"gamma({lhs})", A3)
        g_rhs = evaluate_text(f"gamma({rhs})", A3)
        mu = scalar_ratio(g_lhs, evaluate_text(recs[dst].lhs, A3))
        assert mu is not None
        assert g_rhs == evaluate_text(recs[dst].rhs, A3).scale(mu)


def test_gamma_of_record_f():
    x = evaluate_text("gamma(minor([2,3],[1,2]))", A3)
    y = evaluate_text("Y[3,1]*det(3)", A3)
    assert scalar_ratio(x, y) == Q ** 2


def test_record_roundtrip_helpers():
    rec = IdentityRecord.from_dict({"name": "x", "lhs": "Y[1,1]", "rhs": "Y[1,1]"}, n=2)
    assert rec.shape == (2, 2)
    t = transpose_record(rec)
    assert t.lhs == "tau(Y[1,1])"
    bad = IdentityRecord("broken", "Y[9,9]", "0", 2)
    report = run_records([bad], QuantumMatrixAlgebra(2))
    assert not report.passed and "IndexOutOfRange" in report.results[0].detail
