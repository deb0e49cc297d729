"""HTTP session API over the simulator.

Sessions hold a live state plus the history of applied rotations; every
mutation returns the full session payload (state text, scene document,
measures, plane classes, history) so clients never compute physics
locally.  Angles cross the wire in units of pi.

Error mapping: unknown session 404, malformed body 400, well-formed but
invalid values (bad state text, bad generator) 422.

An optional journal file records one JSON line per applied step:
{"ts": ..., "session": ..., "generator": ..., "angle": ...}.
"""
from __future__ import annotations

import datetime as _dt
import json
import math
import threading
import uuid
from dataclasses import dataclass, field
from functools import lru_cache

from fastapi import Body, FastAPI, HTTPException
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .gates import RotationStep, cnot_sequence, trace
from .measures import classify, concurrence, purity
from .rules import (
    GENERATORS,
    enumerate_stabilizers,
    classify_plane,
    graph_to_doc,
    is_stabilizer_state,
    plane_of,
)
from .scene import scene_from_state, scene_to_doc
from .states import (
    Generator,
    StateParseError,
    TwoQubitState,
    apply,
    format_state,
    parse_state,
    reduced_density,
    rotation_unitary,
)

__all__ = ["create_app"]


@dataclass
class _Session:
    id: str
    initial: TwoQubitState
    history: list[tuple[RotationStep, TwoQubitState]] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def current(self) -> TwoQubitState:
        return self.history[-1][1] if self.history else self.initial


class _SessionStore:
    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._sessions: dict[str, _Session] = {}

    def create(self, state: TwoQubitState) -> _Session:
        session = _Session(uuid.uuid4().hex, state)
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, sid: str) -> _Session:
        with self._lock:
            session = self._sessions.get(sid)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {sid!r}")
        return session


class _Journal:
    def __init__(self, path: str | None) -> None:
        self._path = path
        self._lock = threading.Lock()

    def record(self, session_id: str, generator: Generator, angle_turns: float) -> None:
        if self._path is None:
            return
        entry = {
            "ts": _dt.datetime.now(_dt.timezone.utc).isoformat(),
            "session": session_id,
            "generator": generator.label,
            "angle": angle_turns,
        }
        line = json.dumps(entry) + "\n"
        with self._lock, open(self._path, "a", encoding="utf-8") as handle:
            handle.write(line)


def _session_payload(session: _Session) -> dict:
    state = session.current
    c = classify(state)
    planes = None
    if is_stabilizer_state(state):
        planes = {g.label: classify_plane(state, g).value for g in GENERATORS}
    return {
        "id": session.id,
        "state": format_state(state),
        "scene": scene_to_doc(scene_from_state(state)),
        "measures": {
            "classification": c.kind.value,
            "r": c.r,
            "r_tilde": c.r_tilde,
            "concurrence": concurrence(state),
            "purity": purity(reduced_density(state, 1)),
        },
        "planes": planes,
        "history": [
            {"generator": step.generator.label, "angle": step.angle / math.pi}
            for step, _ in session.history
        ],
    }


@lru_cache(maxsize=1)
def _graph_doc() -> dict:
    return graph_to_doc(enumerate_stabilizers())


def _trace_doc(input_state: TwoQubitState) -> dict:
    steps, phase = cnot_sequence()
    result = trace(input_state, steps)
    return {
        "input": {
            "state": format_state(result.input),
            "scene": scene_to_doc(scene_from_state(result.input)),
        },
        "steps": [
            {
                "generator": ts.step.generator.label,
                "angle": ts.step.angle / math.pi,
                "note": ts.step.note,
                "state": format_state(ts.state),
                "scene": scene_to_doc(ts.scene),
            }
            for ts in result.steps
        ],
        "sequence_phase": {"re": phase.real, "im": phase.imag},
        "global_phase": {"re": result.global_phase.real, "im": result.global_phase.imag},
    }


def create_app(journal_path: str | None = None, ui_dir: str | None = None) -> FastAPI:
    """Build the API application; optionally journal applies and serve a UI."""
    app = FastAPI(title="dualbloch", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    store = _SessionStore()
    journal = _Journal(journal_path)

    @app.exception_handler(RequestValidationError)
    async def _malformed_body(request, exc):  # noqa: ANN001
        return JSONResponse(status_code=400, content={"error": "malformed request body"})

    @app.exception_handler(HTTPException)
    async def _error_body(request, exc):  # noqa: ANN001
        # One error shape for every status: {"error": message}.
        return JSONResponse(status_code=exc.status_code, content={"error": exc.detail})

    def _parse_state_or_422(text: str) -> TwoQubitState:
        try:
            return parse_state(text)
        except StateParseError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None

    @app.post("/sessions")
    def create_session(body: dict | None = Body(default=None)):
        if body is not None and not isinstance(body, dict):
            raise HTTPException(status_code=400, detail="body must be a JSON object")
        text = "uu"
        if body and "state" in body:
            if not isinstance(body["state"], str):
                raise HTTPException(status_code=400, detail="state must be a string")
            text = body["state"]
        session = store.create(_parse_state_or_422(text))
        return _session_payload(session)

    @app.get("/sessions/{sid}")
    def get_session(sid: str):
        return _session_payload(store.get(sid))

    @app.post("/sessions/{sid}/apply")
    def apply_rotation(sid: str, body: dict = Body(...)):
        session = store.get(sid)
        if not isinstance(body, dict):
            raise HTTPException(status_code=400, detail="body must be a JSON object")
        generator = body.get("generator")
        angle = body.get("angle")
        if not isinstance(generator, str):
            raise HTTPException(status_code=400, detail="generator must be a string")
        if isinstance(angle, bool) or not isinstance(angle, (int, float)):
            raise HTTPException(status_code=400, detail="angle must be a number (units of pi)")
        try:
            gen = Generator.parse(generator)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        radians = float(angle) * math.pi
        with session.lock:
            nxt = apply(rotation_unitary(gen, radians), session.current)
            session.history.append((RotationStep(gen, radians), nxt))
        journal.record(session.id, gen, float(angle))
        return _session_payload(session)

    @app.post("/sessions/{sid}/undo")
    def undo_rotation(sid: str):
        session = store.get(sid)
        with session.lock:
            if not session.history:
                raise HTTPException(status_code=422, detail="history is empty")
            session.history.pop()
        return _session_payload(session)

    @app.get("/stabilizers/graph")
    def stabilizer_graph():
        return _graph_doc()

    @app.get("/gates/cnot/trace")
    def cnot_trace(input: str = "uu"):
        return _trace_doc(_parse_state_or_422(input))

    @app.get("/planes")
    def planes():
        return {g.label: plane_of(g).label for g in GENERATORS}

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
