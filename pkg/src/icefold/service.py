"""JSON-over-HTTP session service for interactive exploration.

A session wraps a seed history over a bundled fixture. All state lives in
process memory; the service is meant for a single local user.

Routes (all under /api):

    GET  /api/fixtures                     available fixture names
    POST /api/sessions {fixture}           create a session        -> 201
    GET  /api/sessions/{id}                current state
    POST /api/sessions/{id}/mutate {key}   mutate at an unfrozen key
    POST /api/sessions/{id}/undo           pop the last mutation   -> 409 at root
    POST /api/sessions/{id}/fold           folded matrix of the fixture
    GET  /api/sessions/{id}/variables      cluster variable strings

Unknown sessions and fixtures give 404, malformed bodies 400, operations
that are valid in form but impossible in the current state 409.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .cluster import Seed, seed_from_quiver
from .errors import IcefoldError
from .fileformat import QuiverFile, fixture_names, load_fixture
from .mutation import fold_matrix


@dataclass
class Session:
    id: str
    fixture: str
    data: QuiverFile
    history: list[tuple[str | None, Seed]] = field(default_factory=list)

    @property
    def seed(self) -> Seed:
        return self.history[-1][1]

    def state(self) -> dict:
        q = self.data.quiver
        m = self.seed.matrix
        names = list(m.row_index)
        return {
            "session": self.id,
            "fixture": self.fixture,
            "depth": len(self.history) - 1,
            "path": [k for k, _ in self.history[1:]],
            "quiver": {
                "vertices": [
                    {"id": v.id, "label": v.label, "frozen": v.id in q.frozen_vertices}
                    for v in q.vertices
                ],
                "arrows": [
                    {
                        "id": a.id,
                        "source": a.source,
                        "target": a.target,
                        "frozen": a.id in q.frozen_arrows,
                    }
                    for a in q.arrows
                ],
            },
            "matrix": {
                "rows": names,
                "cols": list(m.col_index),
                "entries": [list(row) for row in m.entries],
            },
            "variables": {
                k: self.seed.variable(k).to_string([f"x{r}" for r in names])
                for k in names
            },
            "orbits": (
                [
                    {"key": o.key, "members": list(o.members)}
                    for o in self.data.action.orbits()
                ]
                if self.data.action is not None
                else []
            ),
        }


def create_app() -> FastAPI:
    app = FastAPI(title="icefold", docs_url=None, redoc_url=None)
    sessions: dict[str, Session] = {}

    def _err(status: int, message: str) -> JSONResponse:
        return JSONResponse({"error": message}, status_code=status)

    @app.get("/api/fixtures")
    def list_fixtures():
        return {"fixtures": fixture_names()}

    @app.post("/api/sessions", status_code=201)
    def create_session(body: dict):
        name = body.get("fixture")
        if not isinstance(name, str):
            return _err(400, "body must contain a fixture name")
        if name not in fixture_names():
            return _err(404, f"no fixture named {name!r}")
        data = load_fixture(name)
        sid = uuid.uuid4().hex[:12]
        s = Session(sid, name, data)
        s.history.append((None, seed_from_quiver(data.quiver)))
        sessions[sid] = s
        return s.state()

    def _get(sid: str) -> Session | None:
        return sessions.get(sid)

    @app.get("/api/sessions/{sid}")
    def get_state(sid: str):
        s = _get(sid)
        if s is None:
            return _err(404, "unknown session")
        return s.state()

    @app.post("/api/sessions/{sid}/mutate")
    def mutate(sid: str, body: dict):
        s = _get(sid)
        if s is None:
            return _err(404, "unknown session")
        key = body.get("key")
        if not isinstance(key, str):
            return _err(400, "body must contain a key")
        if key not in s.seed.matrix.row_index:
            return _err(400, f"unknown key {key!r}")
        if key not in s.seed.matrix.col_index:
            return _err(409, f"key {key!r} is frozen")
        try:
            nxt = s.seed.mutate(key)
        except IcefoldError as exc:
            return _err(409, str(exc))
        s.history.append((key, nxt))
        return s.state()

    @app.post("/api/sessions/{sid}/undo")
    def undo(sid: str):
        s = _get(sid)
        if s is None:
            return _err(404, "unknown session")
        if len(s.history) == 1:
            return _err(409, "nothing to undo")
        s.history.pop()
        return s.state()

    @app.post("/api/sessions/{sid}/fold")
    def fold(sid: str):
        s = _get(sid)
        if s is None:
            return _err(404, "unknown session")
        if s.data.action is None:
            return _err(409, "fixture has no group action")
        try:
            folded = fold_matrix(s.data.quiver, s.data.action)
        except IcefoldError as exc:
            return _err(409, str(exc))
        return {
            "rows": list(folded.row_index),
            "cols": list(folded.col_index),
            "entries": [
                [int(x) if x.denominator == 1 else str(x) for x in row]
                for row in folded.entries
            ],
            "symmetrizer": list(folded.symmetrizer),
        }

    @app.get("/api/sessions/{sid}/variables")
    def variables(sid: str):
        s = _get(sid)
        if s is None:
            return _err(404, "unknown session")
        names = [f"x{r}" for r in s.seed.matrix.row_index]
        return {
            "variables": [
                s.seed.variable(k).to_string(names) for k in s.seed.matrix.col_index
            ]
        }

    return app
