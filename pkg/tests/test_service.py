import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore", DeprecationWarning)
    from fastapi.testclient import TestClient

from qgame import __version__
from qgame.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok", "version": __version__}


def test_verify_dilemma_equilibrium(client):
    r = client.post("/verify", json={
        "game": "pd", "space": "s1", "sin2gamma": 0.5, "profile": "cprime-cprime"})
    assert r.status_code == 200
    body = r.json()
    assert body["is_ne"] is True
    assert body["payoffs"] == pytest.approx([3.0, 3.0])
    assert body["max_gain"] == pytest.approx(0.0, abs=1e-6)
    assert body["gamma"] == pytest.approx(0.7853981633974483)


def test_verify_reports_actual_anticoordination_payoffs(client):
    # the phase-flip defector pair stops short: at sin2g = 0.5 each earns
    # 3 sin2g = 1.5 but a unilateral phase-cooperation reply earns more,
    # so the honest verdict is no equilibrium
    r = client.post("/verify", json={
        "game": "chicken", "space": "s2", "sin2gamma": 0.5, "profile": "dprime-dprime"})
    assert r.status_code == 200
    body = r.json()
    assert body["payoffs"] == pytest.approx([1.5, 1.5], abs=1e-9)
    assert body["is_ne"] is False
    assert body["max_gain"] > 0.2


def test_verify_unknown_game_is_400(client):
    r = client.post("/verify", json={
        "game": "poker", "space": "s1", "sin2gamma": 0.5, "profile": "dd"})
    assert r.status_code == 400
    assert "poker" in r.json()["detail"]


def test_verify_out_of_range_sin2gamma_is_422(client):
    r = client.post("/verify", json={
        "game": "pd", "space": "s1", "sin2gamma": 1.5, "profile": "dd"})
    assert r.status_code == 422


def test_verify_profile_length_mismatch_is_400(client):
    r = client.post("/verify", json={
        "game": "pd", "space": "s1", "sin2gamma": 0.5, "profile": "d-d-d"})
    assert r.status_code == 400


def test_sweep_shape_and_order(client):
    r = client.post("/sweep", json={
        "game": "pd", "space": "s1",
        "sin2gamma": {"lo": 0.0, "hi": 1.0, "count": 3},
        "profiles": ["dd", "cprime-cprime"]})
    assert r.status_code == 200
    body = r.json()
    assert body["n_players"] == 2
    assert len(body["rows"]) == 6
    assert [row["sin2gamma"] for row in body["rows"]] == [0.0, 0.0, 0.5, 0.5, 1.0, 1.0]
    assert body["rows"][0]["k"] is None


def test_sweep_k_grid(client):
    r = client.post("/sweep", json={
        "game": "pd", "space": "s1k",
        "k_grid": {"lo": 0.0, "hi": 1.0, "count": 2},
        "sin2gamma": {"lo": 0.8, "hi": 0.8, "count": 1},
        "profiles": ["c2-c2"]})
    assert r.status_code == 200
    rows = r.json()["rows"]
    assert [row["k"] for row in rows] == [0.0, 1.0]
    assert rows[0]["is_ne"] is True and rows[1]["is_ne"] is False


def test_threshold_endpoint(client):
    r = client.post("/threshold", json={
        "game": "pd", "space": "s1", "profile": "cprime-cprime"})
    assert r.status_code == 200
    body = r.json()
    assert body["sin2gamma_star"] == pytest.approx(0.4, abs=1e-3)
    assert body["ne_lo"] is False and body["ne_hi"] is True
    assert body["space"] == "s1" and body["k"] is None


def test_threshold_without_bracket_is_409(client):
    r = client.post("/threshold", json={
        "game": "pd", "space": "s1", "profile": "dd", "lo": 0.25, "hi": 0.35})
    assert r.status_code == 409


def test_probe_formula_agreement(client):
    r = client.post("/probe", json={"check": "s2-probs", "trials": 50, "seed": 7})
    assert r.status_code == 200
    body = r.json()
    assert body["summary"]["max_abs_deviation"] < 1e-10
    assert body["summary"]["max_sum_deviation"] < 1e-10
    assert body["columns"]
    assert len(body["rows"]) == 1


def test_probe_reports_coordination_claim_gap(client):
    r = client.post("/probe", json={
        "check": "bos-s2-ne", "grid": 5,
        "resolution": {"steps_theta": 61, "steps_phi": 31}})
    assert r.status_code == 200
    body = r.json()
    # the o-o profile is the equilibrium everywhere and keeps payoffs (2, 1);
    # the claimed curve agrees only at full entanglement, a gap the probe owns
    oo = [row for row in body["rows"] if row["profile"] == "o-o"]
    assert all(row["is_ne"] for row in oo)
    assert all(row["payoff_0"] == pytest.approx(2.0) for row in oo)
    assert body["summary"]["max_claim_deviation_at_ne"] == pytest.approx(1.0, abs=1e-9)
    assert body["notes"]


def test_probe_unknown_check_is_400(client):
    r = client.post("/probe", json={"check": "nonsense"})
    assert r.status_code == 400
