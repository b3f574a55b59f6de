"""HTTP service endpoints: request/response schemas and error mapping."""

import math

import pytest
from fastapi.testclient import TestClient

from abcoulomb.service import app, create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok"}


def test_create_app_returns_fresh_instance():
    assert create_app() is not app


class TestSpectrumEndpoint:
    def test_ground_level_row(self, client):
        resp = client.post("/v1/spectrum", json={
            "coupling": {"a": 0.3, "flux": 0.0},
            "l_min": 0, "l_max": 0, "n_max": 0,
        })
        assert resp.status_code == 200
        body = resp.json()
        assert set(body) == {"config", "rows", "validation"}
        assert body["validation"] is None
        assert len(body["rows"]) == 1
        row = body["rows"][0]
        assert row["model"] == "dirac"
        assert row["e_over_m"] == pytest.approx(0.8, abs=1e-15)
        assert row["lambda_over_m"] == pytest.approx(0.6, abs=1e-15)
        assert row["regime"] == "subcritical"

    def test_keys_are_snake_case(self, client):
        resp = client.post("/v1/spectrum", json={
            "coupling": {"a": 0.3}, "l_min": 0, "l_max": 1, "n_max": 1,
        })
        for row in resp.json()["rows"]:
            for key in row:
                assert key == key.lower() and " " not in key

    def test_supercritical_only_maps_to_422(self, client):
        resp = client.post("/v1/spectrum", json={
            "coupling": {"a": 0.6}, "l_min": 0, "l_max": 0, "n_max": 0,
        })
        assert resp.status_code == 422

    def test_zero_coupling_flagged(self, client):
        resp = client.post("/v1/spectrum", json={
            "coupling": {"a": 0.0}, "l_min": 0, "l_max": 1, "n_max": 1,
        })
        assert resp.status_code == 200
        body = resp.json()
        assert body["rows"] == []
        assert body["config"]["zero_coupling"] is True

    def test_kg_tower(self, client):
        resp = client.post("/v1/spectrum", json={
            "coupling": {"a": 0.3}, "l_min": 0, "l_max": 1, "n_max": 1,
            "models": ["kg"],
        })
        rows = resp.json()["rows"]
        # l = 0 is excluded (supercritical row), l = 1 carries one level
        regimes = {r["l"]: r["regime"] for r in rows}
        assert regimes[0] == "supercritical"
        levels = [r for r in rows if r["e_over_m"] is not None]
        assert len(levels) == 1
        assert levels[0]["e_over_m"] == pytest.approx(0.9793691989141009,
                                                      rel=1e-12)

    def test_bad_range_maps_to_request_validation(self, client):
        resp = client.post("/v1/spectrum", json={
            "coupling": {"a": 0.3}, "l_min": 2, "l_max": 0, "n_max": 0,
        })
        assert resp.status_code == 422  # pydantic request validation


class TestCrossSectionEndpoint:
    def test_rows_and_identity(self, client):
        resp = client.post("/v1/cross-section", json={
            "coupling": {"a": 0.3, "flux": 0.25},
            "kinematics": {"momentum": 0.75},
            "phi_grid": {"start": 0.3, "stop": 3.0, "count": 5},
        })
        assert resp.status_code == 200
        rows = resp.json()["rows"]
        assert len(rows) == 5
        for row in rows:
            f_tot = complex(row["re_f_ab"] + row["re_f_a"],
                            row["im_f_ab"] + row["im_f_a"])
            assert row["dsigma"] == pytest.approx(abs(f_tot) ** 2, rel=1e-12)

    def test_integer_flux_without_coulomb_all_zero(self, client):
        resp = client.post("/v1/cross-section", json={
            "coupling": {"a": 0.0, "flux": 2.0},
            "kinematics": {"momentum": 1.0},
            "phi_grid": {"start": 0.5, "stop": 3.0, "count": 8},
        })
        assert all(r["dsigma"] == 0.0 for r in resp.json()["rows"])

    def test_energy_momentum_exclusive(self, client):
        resp = client.post("/v1/cross-section", json={
            "coupling": {"a": 0.3},
            "kinematics": {"momentum": 0.75, "energy": 1.25},
            "phi_grid": {"start": 0.3, "stop": 3.0, "count": 3},
        })
        assert resp.status_code == 422

    def test_forward_cone_rejected(self, client):
        resp = client.post("/v1/cross-section", json={
            "coupling": {"a": 0.3},
            "kinematics": {"momentum": 0.75},
            "phi_grid": {"start": 0.0, "stop": 1.0, "count": 3},
        })
        assert resp.status_code == 422


class TestPhaseShiftsEndpoint:
    def test_supercritical_rows_flagged_not_fatal(self, client):
        resp = client.post("/v1/phase-shifts", json={
            "coupling": {"a": 0.2, "flux": 0.3},
            "kinematics": {"energy": 1.25},
            "l_max": 2,
        })
        assert resp.status_code == 200
        rows = {r["l"]: r for r in resp.json()["rows"]}
        assert rows[-1]["regime"] == "supercritical"
        assert rows[-1]["delta_total"] is None
        assert rows[0]["abs_s"] == pytest.approx(1.0, abs=1e-12)

    def test_energy_below_threshold(self, client):
        resp = client.post("/v1/phase-shifts", json={
            "coupling": {"a": 0.2}, "kinematics": {"energy": 0.9}, "l_max": 1,
        })
        assert resp.status_code == 422


class TestWavefunctionEndpoint:
    def test_bound_state_normalized_samples(self, client):
        resp = client.post("/v1/wavefunction", json={
            "coupling": {"a": 0.3}, "l": 0, "n": 0,
            "r_grid": {"start": 1e-3, "stop": 30.0, "count": 200,
                       "spacing": "log"},
        })
        assert resp.status_code == 200
        rows = resp.json()["rows"]
        assert len(rows) == 200
        assert all(set(r) == {"r", "f", "g"} for r in rows)

    def test_continuum(self, client):
        resp = client.post("/v1/wavefunction", json={
            "coupling": {"a": 0.2, "flux": 0.3}, "l": 0, "energy": 1.25,
            "r_grid": {"start": 1e-3, "stop": 10.0, "count": 64,
                       "spacing": "log"},
        })
        assert resp.status_code == 200
        assert resp.json()["config"]["xi"] == pytest.approx(
            0.36406416754048626, abs=1e-12)

    def test_state_selection_required(self, client):
        resp = client.post("/v1/wavefunction", json={
            "coupling": {"a": 0.3}, "l": 0,
        })
        assert resp.status_code == 422

    def test_supercritical(self, client):
        resp = client.post("/v1/wavefunction", json={
            "coupling": {"a": 0.6}, "l": 0, "n": 0,
        })
        assert resp.status_code == 422


class TestValidateEndpoint:
    def test_subset_runs(self, client):
        resp = client.post("/v1/validate", json={
            "checks": ["spectrum_closed_form", "kg_exclusion"],
        })
        assert resp.status_code == 200
        body = resp.json()
        assert body["validation"]["all_passed"] is True
        assert [c["name"] for c in body["validation"]["checks"]] == [
            "spectrum_closed_form", "kg_exclusion"]

    def test_unknown_check_rejected(self, client):
        resp = client.post("/v1/validate", json={"checks": ["nope"]})
        assert resp.status_code == 422

    def test_empty_selection_rejected(self, client):
        resp = client.post("/v1/validate", json={"checks": []})
        assert resp.status_code == 422

    def test_impossible_tolerance_fails_suite(self, client):
        resp = client.post("/v1/validate", json={
            "checks": ["near_pole_law"],
            "tolerance_overrides": {"near_pole_law": 1e-30},
        })
        assert resp.status_code == 200
        assert resp.json()["validation"]["all_passed"] is False

    def test_profile_env_selects_tolerances(self, client, monkeypatch):
        monkeypatch.setenv("ABC_TOLERANCE_PROFILE", "strict")
        resp = client.post("/v1/validate", json={
            "checks": ["spectrum_closed_form"],
        })
        assert resp.status_code == 200
        assert resp.json()["config"]["tolerance_profile"] == "strict"

    def test_request_profile_overrides_env(self, client, monkeypatch):
        monkeypatch.setenv("ABC_TOLERANCE_PROFILE", "strict")
        resp = client.post("/v1/validate", json={
            "checks": ["spectrum_closed_form"],
            "tolerance_profile": "default",
        })
        assert resp.json()["config"]["tolerance_profile"] == "default"
