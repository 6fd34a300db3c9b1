from app.core.config.settings import settings


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_list_presets(client):
    response = client.get("/api/v1/presets")
    assert response.status_code == 200
    by_scale = {p["scale"]: p for p in response.json()}
    assert set(by_scale) == {"small", "medium", "large"}
    assert by_scale["medium"] == {
        "scale": "medium",
        "height": 10,
        "width": 10,
        "n_agents": 10,
        "n_obstacles": 3,
        "n_freeways": 1,
    }


def test_unknown_preset_is_404(client):
    assert client.get("/api/v1/presets/large").status_code == 200
    assert client.get("/api/v1/presets/huge").status_code == 404
    assert client.get("/api/v1/presets/custom").status_code == 404


def test_run_returns_metric_series(client):
    response = client.post(
        "/api/v1/runs",
        json={"scale": "small", "episodes": 6, "seed": 4, "overrides": {"alpha": 0.2}},
    )
    assert response.status_code == 200
    body = response.json()
    assert [m["episode"] for m in body["metrics"]] == list(range(1, 7))
    assert body["summary"]["final_window"] == 6
    assert body["summary"]["total_steps"] > 0
    assert body["scenario"]["params"]["alpha"] == 0.2
    assert body["inference"] == []


def test_run_with_inference_attack_and_no_ldp(client):
    response = client.post(
        "/api/v1/runs",
        json={"scale": "small", "episodes": 3, "attack": "inference", "attackers": 0.2, "epsilon": None},
    )
    assert response.status_code == 200
    body = response.json()
    assert body["scenario"]["privacy_epsilon"] is None
    assert len(body["inference"]) == 3


def test_run_episode_cap(client):
    response = client.post("/api/v1/runs", json={"episodes": settings.api_max_episodes + 1})
    assert response.status_code == 422
    assert "API limit" in response.json()["detail"]


def test_invalid_scenario_is_422(client):
    response = client.post("/api/v1/runs", json={"episodes": 2, "attackers": 0.4})
    assert response.status_code == 422

    response = client.post("/api/v1/runs", json={"episodes": 2, "overrides": {"learning_rate": 1}})
    assert response.status_code == 422


def test_runs_are_rate_limited(client):
    limit = int(settings.api_rate_limit.split("/")[0])
    codes = [
        client.post("/api/v1/runs", json={"episodes": 1}).status_code for _ in range(limit + 1)
    ]
    assert codes[:limit] == [200] * limit
    assert codes[-1] == 429
