"""
Tests for the FastAPI application.
"""

import pytest
from fastapi.testclient import TestClient
from app.main import app


@pytest.fixture
def client():
    """Create a test client."""
    return TestClient(app)


class TestRootEndpoint:
    """Tests for the root endpoint."""

    def test_root_returns_info(self, client):
        """Should return application information."""
        response = client.get("/")

        assert response.status_code == 200
        data = response.json()
        assert "name" in data
        assert "version" in data
        assert "documentation" in data
        assert data["endpoints"]["compute"] == "/api/v1/invariants/compute"

    def test_listed_endpoints_are_routed(self, client):
        """Should only list paths the application serves."""
        routed = {route.path for route in app.routes}
        listed = client.get("/").json()["endpoints"]
        assert set(listed.values()) <= routed
        assert set(listed) == {"health", "compute", "enumerate", "relations", "invariance", "kontsevich", "welschinger"}


class TestHealthEndpoint:
    """Tests for the health check endpoint."""

    def test_health_check(self, client):
        """Should return healthy status."""
        response = client.get("/api/v1/health")

        assert response.status_code == 200
        data = response.json()
        assert data["status"] == "healthy"
        assert data["version"] == "0.1.0"

    def test_process_time_header(self, client):
        """Should time every request."""
        response = client.get("/api/v1/health")
        assert "X-Process-Time" in response.headers


class TestComputeEndpoint:
    """Tests for invariant computation."""

    def test_compute_conic(self, client):
        """Should count one conic through three real and one complex point."""
        response = client.post(
            "/api/v1/invariants/compute",
            json={"p2_degree": 2, "real": 3, "complex": 1, "seed": 7},
        )

        assert response.status_code == 200
        data = response.json()
        assert data["invariant"] == "rB"
        assert data["value"]["text"] == "1"
        assert data["value"]["variable"] == "y"
        assert data["seeds"] == [7]

    def test_compute_cubic(self, client):
        """Should return the refined count of cubics."""
        response = client.post(
            "/api/v1/invariants/compute",
            json={"p2_degree": 3, "real": 8, "seed": 7},
        )

        assert response.status_code == 200
        assert response.json()["value"]["text"] == "y + 10 + y^-1"

    def test_compute_with_explicit_config(self, client):
        """Should use the given configuration and record no seed."""
        response = client.post(
            "/api/v1/invariants/compute",
            json={
                "p2_degree": 1,
                "real": 2,
                "config": {"points": [["0", "0"], ["3", "7"]], "r": 2, "s": 0},
            },
        )

        assert response.status_code == 200
        data = response.json()
        assert data["value"]["text"] == "1"
        assert data["seeds"] == []

    def test_compute_explicit_degree(self, client):
        """Should accept an explicit list of ends."""
        response = client.post(
            "/api/v1/invariants/compute",
            json={"degree": {"ends": [[-1, 0], [0, -1], [1, 1]]}, "real": 2},
        )

        assert response.status_code == 200
        assert response.json()["degree"]["ends"] == [[-1, 0], [0, -1], [1, 1]]

    def test_count_mismatch_is_bad_request(self, client):
        """Should return 400 when the counts do not add up."""
        response = client.post(
            "/api/v1/invariants/compute",
            json={"p2_degree": 2, "real": 4},
        )

        assert response.status_code == 400
        assert "Condition count mismatch" in response.json()["detail"]

    def test_severi_with_complex_points(self, client):
        """Should return 400 for the Severi invariant with complex points."""
        response = client.post(
            "/api/v1/invariants/compute",
            json={"invariant": "severi", "p2_degree": 2, "real": 3, "complex": 1},
        )

        assert response.status_code == 400

    def test_two_degree_sources(self, client):
        """Should reject a request naming both degree sources."""
        response = client.post(
            "/api/v1/invariants/compute",
            json={"p2_degree": 1, "degree": {"ends": [[-1, 0], [0, -1], [1, 1]]}, "real": 2},
        )

        assert response.status_code == 422


class TestEnumerateEndpoint:
    """Tests for curve enumeration."""

    def test_enumerate_line(self, client):
        """Should return the single line through two points."""
        response = client.post(
            "/api/v1/curves/enumerate",
            json={"p2_degree": 1, "real": 2, "seed": 1},
        )

        assert response.status_code == 200
        data = response.json()
        assert data["labeled_count"] == 1
        assert len(data["curves"]) == 1
        assert not data["degenerate"]
        assert len(data["config"]["points"]) == 2

    def test_enumerate_without_curves(self, client):
        """Should omit curves when asked."""
        response = client.post(
            "/api/v1/curves/enumerate",
            json={"p2_degree": 2, "real": 5, "seed": 2, "list_curves": False},
        )

        assert response.status_code == 200
        data = response.json()
        assert data["curves"] == []
        assert data["g_order"] == 8


class TestVerificationEndpoints:
    """Tests for the verifiers and oracles."""

    def test_relations(self, client):
        """Should report no violations."""
        response = client.post(
            "/api/v1/verify/relations",
            json={"relation": "B", "samples": 50, "seed": 4},
        )

        assert response.status_code == 200
        data = response.json()
        assert data["ok"] is True
        assert data["samples"] == 50
        assert data["violations"] == []

    def test_unknown_relation(self, client):
        """Should reject unknown relation names."""
        response = client.post("/api/v1/verify/relations", json={"relation": "D"})
        assert response.status_code == 422

    def test_invariance(self, client):
        """Should agree across seeds."""
        response = client.post(
            "/api/v1/verify/invariance",
            json={"p2_degree": 2, "real": 3, "complex": 1, "seeds": [1, 2]},
        )

        assert response.status_code == 200
        data = response.json()
        assert data["consistent"] is True
        assert data["value"]["text"] == "1"
        assert set(data["values"]) == {"1", "2"}
        assert data["mismatch_seeds"] is None

    def test_invariance_needs_two_seeds(self, client):
        """Should reject a single seed."""
        response = client.post(
            "/api/v1/verify/invariance",
            json={"p2_degree": 2, "real": 5, "seeds": [1]},
        )
        assert response.status_code == 422

    def test_kontsevich(self, client):
        """Should return the classical counts."""
        response = client.get("/api/v1/verify/kontsevich", params={"max_degree": 4})

        assert response.status_code == 200
        data = response.json()
        assert data["oracle"] == "kontsevich"
        assert data["values"] == {"1": "1", "2": "1", "3": "12", "4": "620"}

    def test_kontsevich_degree_range(self, client):
        """Should reject degrees outside 1..12."""
        response = client.get("/api/v1/verify/kontsevich", params={"max_degree": 0})
        assert response.status_code == 422

    def test_welschinger(self, client):
        """Should return 8 for cubics."""
        response = client.post("/api/v1/verify/welschinger", json={"p2_degree": 3, "seed": 1})

        assert response.status_code == 200
        assert response.json()["values"] == {"3": "8"}


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
