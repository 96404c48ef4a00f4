import pytest
from fastapi.testclient import TestClient

from icefold.service import create_app


@pytest.fixture
def client():
    return TestClient(create_app())


def new_session(client, fixture="a3"):
    r = client.post("/api/sessions", json={"fixture": fixture})
    assert r.status_code == 201
    return r.json()


class TestSessions:
    def test_fixture_list(self, client):
        r = client.get("/api/fixtures")
        assert r.status_code == 200
        assert set(r.json()["fixtures"]) == {"a3", "a5", "zl2-potential"}

    def test_create_and_fetch(self, client):
        state = new_session(client)
        sid = state["session"]
        assert state["depth"] == 0 and state["path"] == []
        assert {v["id"] for v in state["quiver"]["vertices"]} == {1, 2, 3, 4, 5, 6}
        again = client.get(f"/api/sessions/{sid}")
        assert again.status_code == 200
        assert again.json() == state

    def test_unknown_fixture_404(self, client):
        r = client.post("/api/sessions", json={"fixture": "nope"})
        assert r.status_code == 404

    def test_malformed_body_400(self, client):
        r = client.post("/api/sessions", json={"fixture": 7})
        assert r.status_code == 400

    def test_unknown_session_404(self, client):
        assert client.get("/api/sessions/deadbeef").status_code == 404
        assert client.post("/api/sessions/deadbeef/undo").status_code == 404


class TestMutation:
    def test_mutate_and_undo(self, client):
        sid = new_session(client)["session"]
        r = client.post(f"/api/sessions/{sid}/mutate", json={"key": "1"})
        assert r.status_code == 200
        state = r.json()
        assert state["depth"] == 1 and state["path"] == ["1"]
        assert state["variables"]["1"] == "(x2 + x4)/x1"
        back = client.post(f"/api/sessions/{sid}/undo")
        assert back.status_code == 200
        assert back.json()["depth"] == 0
        assert back.json()["variables"]["1"] == "x1"

    def test_mutation_changes_matrix_sign(self, client):
        sid = new_session(client)["session"]
        before = client.get(f"/api/sessions/{sid}").json()["matrix"]
        after = client.post(f"/api/sessions/{sid}/mutate", json={"key": "2"}).json()[
            "matrix"
        ]
        i = before["rows"].index("1")
        j = before["cols"].index("2")
        assert after["entries"][i][j] == -before["entries"][i][j]

    def test_unknown_key_400(self, client):
        sid = new_session(client)["session"]
        r = client.post(f"/api/sessions/{sid}/mutate", json={"key": "99"})
        assert r.status_code == 400

    def test_frozen_key_409(self, client):
        sid = new_session(client)["session"]
        r = client.post(f"/api/sessions/{sid}/mutate", json={"key": "4"})
        assert r.status_code == 409

    def test_undo_at_root_409(self, client):
        sid = new_session(client)["session"]
        assert client.post(f"/api/sessions/{sid}/undo").status_code == 409


class TestFoldAndVariables:
    def test_fold(self, client):
        sid = new_session(client)["session"]
        r = client.post(f"/api/sessions/{sid}/fold")
        assert r.status_code == 200
        data = r.json()
        assert data["rows"] == ["[1]", "[2]", "[4]", "[5]"]
        assert data["entries"] == [[0, 2], [-1, 0], [1, 0], [0, 1]]
        assert data["symmetrizer"] == [2, 1]

    def test_variables_listing(self, client):
        sid = new_session(client)["session"]
        client.post(f"/api/sessions/{sid}/mutate", json={"key": "1"})
        r = client.get(f"/api/sessions/{sid}/variables")
        assert r.status_code == 200
        assert "(x2 + x4)/x1" in r.json()["variables"]
