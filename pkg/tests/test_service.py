"""HTTP API: endpoints, schema, error mapping, determinism."""

import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from vmeson import __version__, reference
from vmeson.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    body = client.get("/health").json()
    assert body["status"] == "ok"
    assert body["version"] == __version__
    assert body["reference_checksum"] == reference.checksum()


def test_channels_listing(client):
    body = client.get("/channels").json()
    labels = [c["label"] for c in body]
    assert labels == sorted(labels)
    by_label = {c["label"]: c for c in body}
    assert by_label["D*_u"]["flavor1"] == "c"
    assert by_label["D*_u"]["flavor2"] == "u"
    assert by_label["bbbar"]["param_set_id"] == "bottomonium"
    assert by_label["bbbar"]["m1_gev"] == 5.1242


def test_spectrum_schema_and_units(client):
    resp = client.post(
        "/spectrum", json={"channel": "D*_u", "n_states": 2, "grid_n": 40, "q_max": 25}
    )
    assert resp.status_code == 200
    body = resp.json()
    assert set(body) == {"meta", "channel", "params", "grid", "states", "diagnostics"}
    assert body["channel"] == "D*_u"
    assert body["grid"] == {"n": 40, "q_max": 25.0, "scale": 2.0}
    st = body["states"][0]
    assert set(st) == {"n", "label", "mass_mev", "f_v_mev", "f_v_unc_mev", "diagnostics"}
    assert 1500 < st["mass_mev"] < 2500  # MeV at the boundary
    assert st["label"] == "1S"
    assert st["f_v_unc_mev"] is None


def test_spectrum_accepts_channel_alias(client):
    resp = client.post(
        "/spectrum", json={"channel": "jpsi", "n_states": 1, "grid_n": 40, "q_max": 25}
    )
    assert resp.status_code == 200
    assert resp.json()["channel"] == "ccbar"


def test_spectrum_with_overrides_echoes_params(client):
    resp = client.post(
        "/spectrum",
        json={
            "channel": "D*_u",
            "n_states": 1,
            "grid_n": 40,
            "q_max": 25,
            "overrides": {"lam": 0.25, "u": 0.40},
        },
    )
    body = resp.json()
    assert body["params"]["lam"] == 0.25
    assert body["params"]["quark_masses"]["u"] == 0.40


def test_unknown_channel_is_client_error(client):
    resp = client.post("/spectrum", json={"channel": "X*"})
    assert resp.status_code == 400
    assert "unknown channel" in resp.json()["detail"]


def test_unknown_override_is_client_error(client):
    resp = client.post(
        "/spectrum", json={"channel": "ccbar", "overrides": {"kappa": 0.1}}
    )
    assert resp.status_code == 400
    assert "kappa" in resp.json()["detail"]


def test_validation_error(client):
    resp = client.post("/spectrum", json={"channel": "ccbar", "n_states": 0})
    assert resp.status_code == 422


def test_decay_with_scan(client):
    resp = client.post(
        "/decay",
        json={
            "channel": "D*_u",
            "n_states": 1,
            "grid_n": 40,
            "q_max": 25,
            "scan": True,
            "scan_fraction": 0.05,
            "scan_grid_n": 32,
            "scan_q_max": 25,
        },
    )
    assert resp.status_code == 200
    st = resp.json()["states"][0]
    assert st["f_v_unc_mev"] is not None
    assert st["f_v_unc_mev"] > 0


def test_scan_endpoint(client):
    resp = client.post(
        "/scan",
        json={
            "channel": "D*_u",
            "fraction": 0.05,
            "grid_n": 32,
            "q_max": 25,
            "exclude": ["a", "alpha", "v0", "lambda_qcd"],
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["n_samples"] == 9  # 2^3 corners + center
    assert body["n_failed"] == 0
    assert body["mass_spread_mev"][0] > 0


def test_converge_endpoint_reports_ladder(client):
    resp = client.post(
        "/converge", json={"channel": "D*_u", "n_states": 1, "tol_mev": 2000.0}
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["tol_mev"] == 2000.0
    assert len(body["history"]) >= 2
    assert body["history"][-1]["drift_mev"] < 2000.0


def test_compare_rows(client):
    resp = client.post(
        "/compare", json={"channel": "D*_u", "n_states": 2, "grid_n": 40, "q_max": 25}
    )
    assert resp.status_code == 200
    body = resp.json()
    rows = {r["label"]: r for r in body["masses"]}
    assert rows["1S"]["th_mev"] == 2006.5
    assert rows["1S"]["ex_mev"] == 2006.7
    assert rows["1S"]["delta_th_mev"] == pytest.approx(
        rows["1S"]["computed_mev"] - 2006.5
    )
    assert rows["2S"]["ex_mev"] is None
    decays = {r["label"]: r for r in body["decay_constants"]}
    assert decays["1S"]["reference_mev"] == 339.0


def test_repeated_requests_are_identical(client):
    payload = {"channel": "D*_u", "n_states": 1, "grid_n": 40, "q_max": 25}
    a = client.post("/spectrum", json=payload).content
    b = client.post("/spectrum", json=payload).content
    assert a == b
