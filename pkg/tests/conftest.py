import pytest


@pytest.fixture(autouse=True)
def fast_scrypt(monkeypatch):
    """Dial the KDF work factor down for the suite; the encoded form is
    self-describing, so verification still exercises the real code path."""
    import life.service.auth as auth

    monkeypatch.setattr(auth, "SCRYPT_N", 2**10)


@pytest.fixture()
def service():
    """In-memory deployment: four users (owner/editor/viewer/outsider), one
    project with the first three as members, one empty text document."""
    from fastapi.testclient import TestClient

    from life.service.app import create_app
    from life.service.auth import Authenticator
    from life.service.config import Config
    from life.store import MemoryStore

    store = MemoryStore()
    auth = Authenticator(store)
    users = {}
    for name in ("owner", "editor", "viewer", "outsider"):
        users[name] = auth.create_user(f"user_{name}", f"{name} pass phrase")
    app = create_app(store, Config(base_iri="http://t.example.org/"))
    client = TestClient(app)
    headers = {}
    for name in users:
        token = client.post(
            "/api/v1/auth/login",
            json={"username": f"user_{name}", "password": f"{name} pass phrase"},
        ).json()["token"]
        headers[name] = {"Authorization": f"Bearer {token}"}

    project = client.post("/api/v1/projects", headers=headers["owner"], json={
        "name": "Matrix", "language_code": "dmo",
        "alphabet": ["a", "b", "ch", "c", "k", "i", "t", "d", "o", "l", "r", "s", "u"],
        "pos_inventory": ["n", "v"],
    }).json()
    pid = project["id"]
    for member in ("editor", "viewer"):
        r = client.put(
            f"/api/v1/projects/{pid}/members/{users[member].id}",
            headers=headers["owner"], json={"role": member},
        )
        assert r.status_code == 200, r.text

    text = client.post(f"/api/v1/projects/{pid}/texts", headers=headers["owner"], json={
        "title": "T", "utterances": [],
    }).json()
    return {
        "store": store, "client": client, "headers": headers, "users": users,
        "pid": pid, "tid": text["id"],
    }
