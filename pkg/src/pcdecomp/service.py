"""JSON-over-HTTP facade with named elicitation sessions persisted to disk.

A session starts as an all-ones matrix (every cell "not yet judged") and
accepts one judgment at a time; each accepted edit writes the value at
(i, j) and its reciprocal at (j, i), so every intermediate state is a valid
PC matrix. Edits are version-checked: clients send the revision they saw
and get 409 on mismatch. The event history (edits, approximation steps,
undos) replays deterministically from the all-ones matrix, which is how
undo is implemented.

Sessions are stored one JSON document per session in the directory named by
the ``PCDECOMP_DATA_DIR`` environment variable (default
``./pcdecomp_sessions``); restarting the service preserves all state.
Error bodies carry machine-readable ``code`` fields.
"""

from __future__ import annotations

import json
import math
import os
import threading
import time
import uuid
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .core import (
    ENTRY_MAX,
    ENTRY_MIN,
    PCMatrix,
    _pc_from_log,
    identity,
    inconsistency,
    new_pc_matrix,
    worst_triad,
)
from .decomp import decompose
from .errors import PCError
from .extend import approximate_once
from .weights import geometric_mean_weights, rank_entities, reconstruction_error

DATA_DIR_ENV = "PCDECOMP_DATA_DIR"


def _error(status: int, code: str, message: str) -> HTTPException:
    return HTTPException(status_code=status, detail={"code": code, "message": message})


@dataclass
class Session:
    id: str
    labels: list[str]
    matrix: PCMatrix
    revision: int
    history: list[dict[str, Any]]


def _set_entry(matrix: PCMatrix, i: int, j: int, value: float) -> PCMatrix:
    logs = matrix.log_entries.copy()
    logs.flags.writeable = True
    if i < j:
        logs[i, j] = math.log(value)
    else:
        logs[j, i] = -math.log(value)
    return _pc_from_log(logs)


def _replay(labels: list[str], history: list[dict[str, Any]]) -> PCMatrix:
    matrix = identity(len(labels))
    for event in history:
        if event["type"] == "entry":
            matrix = _set_entry(matrix, event["i"], event["j"], event["value"])
        elif event["type"] == "approximate":
            matrix = approximate_once(matrix)
        else:
            raise ValueError(f"unknown history event type {event['type']!r}")
    return matrix


class SessionStore:
    """File-backed session store; one JSON document per session."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def lock(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(session_id, threading.Lock())

    def _path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.json"

    def create(self, labels: list[str]) -> Session:
        session = Session(
            id=uuid.uuid4().hex[:12],
            labels=list(labels),
            matrix=identity(len(labels)),
            revision=0,
            history=[],
        )
        with self.lock(session.id):
            self._persist(session)
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        session = self._sessions.get(session_id)
        if session is None:
            session = self._load(session_id)
            if session is None:
                raise _error(404, "unknown_session", f"no session {session_id!r}")
            self._sessions[session_id] = session
        return session

    def save(self, session: Session):
        self._persist(session)
        self._sessions[session.id] = session

    def _persist(self, session: Session):
        payload = {
            "id": session.id,
            "labels": session.labels,
            "log_matrix": session.matrix.log_entries.tolist(),
            "revision": session.revision,
            "history": session.history,
        }
        path = self._path(session.id)
        tmp = path.with_suffix(".json.tmp")
        tmp.write_text(json.dumps(payload), encoding="utf-8")
        tmp.replace(path)

    def _load(self, session_id: str) -> Session | None:
        path = self._path(session_id)
        if not path.exists():
            return None
        data = json.loads(path.read_text(encoding="utf-8"))
        return Session(
            id=data["id"],
            labels=list(data["labels"]),
            matrix=_pc_from_log(np.asarray(data["log_matrix"], dtype=float)),
            revision=int(data["revision"]),
            history=list(data["history"]),
        )


def _judged_pairs(history: list[dict[str, Any]]) -> set[tuple[int, int]]:
    judged: set[tuple[int, int]] = set()
    for event in history:
        if event["type"] == "entry":
            i, j = event["i"], event["j"]
            judged.add((min(i, j), max(i, j)))
    return judged


def analysis_block(matrix: PCMatrix, labels: list[str],
                   judged: set[tuple[int, int]] | None = None) -> dict[str, Any]:
    """Everything the UI renders: weights, ranking, the inconsistency gauge,
    the worst triad with the decomposition of its 3x3 submatrix, the weight
    reconstruction error, and which cells have never been judged."""
    w = geometric_mean_weights(matrix)
    block: dict[str, Any] = {
        "weights": w.values.tolist(),
        "ranking": rank_entities(w, labels),
        "inconsistency": inconsistency(matrix),
        "worst_triad": None,
        "decomposition": None,
        "reconstruction_error": reconstruction_error(matrix),
    }
    if matrix.n >= 3:
        triad, deviation = worst_triad(matrix)
        block["worst_triad"] = {"i": triad.i, "j": triad.j, "k": triad.k, "deviation": deviation}
        idx = np.array(triad.indices)
        sub = _pc_from_log(matrix.log_entries[np.ix_(idx, idx)])
        result = decompose(sub)
        block["decomposition"] = {
            "indices": list(triad.indices),
            "k": result.ortho.k,
            "Y": result.consistent.y,
            "Z": result.consistent.z,
            "log_params": list(result.log_params),
            "ortho": result.ortho.matrix.entries.tolist(),
            "consistent": result.consistent.matrix.entries.tolist(),
        }
    if judged is not None:
        block["unjudged"] = [
            [i, j] for i in range(matrix.n) for j in range(i + 1, matrix.n)
            if (i, j) not in judged
        ]
    return block


def _session_body(session: Session) -> dict[str, Any]:
    return {
        "id": session.id,
        "labels": session.labels,
        "matrix": session.matrix.entries.tolist(),
        "revision": session.revision,
        "history": session.history,
    }


class CreateSessionBody(BaseModel):
    labels: list[str] = Field(min_length=2)


class EntryBody(BaseModel):
    i: int
    j: int
    value: float
    revision: int


class RevisionBody(BaseModel):
    revision: int


class AnalyzeBody(BaseModel):
    matrix: list[list[float]]
    labels: list[str] | None = None


def create_app(data_dir: str | Path | None = None) -> FastAPI:
    """Build the application; ``data_dir`` falls back to the
    ``PCDECOMP_DATA_DIR`` environment variable."""
    if data_dir is None:
        data_dir = os.environ.get(DATA_DIR_ENV, "./pcdecomp_sessions")
    store = SessionStore(data_dir)
    app = FastAPI(title="pcdecomp service", version="1")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.store = store

    def _check_revision(session: Session, revision: int):
        if revision != session.revision:
            raise _error(409, "revision_conflict",
                         f"revision {revision} does not match current {session.revision}")

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        if len(set(body.labels)) != len(body.labels):
            raise _error(422, "duplicate_labels", "labels must be unique")
        if any(not label.strip() for label in body.labels):
            raise _error(422, "empty_label", "labels must be non-empty")
        session = store.create(body.labels)
        return _session_body(session)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        with store.lock(session_id):
            session = store.get(session_id)
            body = _session_body(session)
            body["unjudged"] = analysis_block(
                session.matrix, session.labels, _judged_pairs(session.history)
            )["unjudged"]
            return body

    @app.put("/sessions/{session_id}/entry")
    def put_entry(session_id: str, body: EntryBody):
        with store.lock(session_id):
            session = store.get(session_id)
            _check_revision(session, body.revision)
            n = session.matrix.n
            if not (0 <= body.i < n and 0 <= body.j < n) or body.i == body.j:
                raise _error(422, "bad_cell", f"cell ({body.i}, {body.j}) is not an off-diagonal cell of a {n}x{n} matrix")
            if not math.isfinite(body.value) or body.value <= 0.0:
                raise _error(400, "invalid_judgment", f"judgment must be a positive finite ratio, got {body.value!r}")
            if not (ENTRY_MIN <= body.value <= ENTRY_MAX):
                raise _error(422, "entry_out_of_range", f"judgment {body.value!r} outside [{ENTRY_MIN}, {ENTRY_MAX}]")
            old = float(session.matrix.entries[body.i, body.j])
            session.matrix = _set_entry(session.matrix, body.i, body.j, body.value)
            session.history.append({
                "type": "entry", "ts": time.time(),
                "i": body.i, "j": body.j, "old": old, "value": body.value,
            })
            session.revision += 1
            store.save(session)
            return {
                "revision": session.revision,
                "matrix": session.matrix.entries.tolist(),
                "analysis": analysis_block(session.matrix, session.labels,
                                           _judged_pairs(session.history)),
            }

    @app.get("/sessions/{session_id}/analysis")
    def get_analysis(session_id: str):
        with store.lock(session_id):
            session = store.get(session_id)
            return analysis_block(session.matrix, session.labels,
                                  _judged_pairs(session.history))

    @app.post("/sessions/{session_id}/approximate")
    def post_approximate(session_id: str, body: RevisionBody):
        with store.lock(session_id):
            session = store.get(session_id)
            _check_revision(session, body.revision)
            if session.matrix.n < 3:
                raise _error(422, "dimension_too_small", "approximation needs at least 3 entities")
            before = inconsistency(session.matrix)
            stepped = approximate_once(session.matrix)
            change = float(np.expm1(np.abs(stepped.log_entries - session.matrix.log_entries)).max())
            session.matrix = stepped
            session.history.append({"type": "approximate", "ts": time.time()})
            session.revision += 1
            store.save(session)
            return {
                "revision": session.revision,
                "matrix": session.matrix.entries.tolist(),
                "step": {
                    "inconsistency_before": before,
                    "inconsistency_after": inconsistency(session.matrix),
                    "max_change": change,
                },
                "analysis": analysis_block(session.matrix, session.labels,
                                           _judged_pairs(session.history)),
            }

    @app.post("/sessions/{session_id}/undo")
    def post_undo(session_id: str, body: RevisionBody):
        with store.lock(session_id):
            session = store.get(session_id)
            _check_revision(session, body.revision)
            if not session.history:
                raise _error(422, "nothing_to_undo", "the session has no history")
            session.history.pop()
            session.matrix = _replay(session.labels, session.history)
            session.revision += 1
            store.save(session)
            return {
                "revision": session.revision,
                "matrix": session.matrix.entries.tolist(),
                "analysis": analysis_block(session.matrix, session.labels,
                                           _judged_pairs(session.history)),
            }

    @app.post("/matrices/analyze")
    def analyze(body: AnalyzeBody):
        try:
            matrix = new_pc_matrix(np.asarray(body.matrix, dtype=float))
        except PCError as exc:
            raise _error(422, exc.code, str(exc)) from None
        labels = body.labels
        if labels is None:
            labels = [f"E{i + 1}" for i in range(matrix.n)]
        elif len(labels) != matrix.n or len(set(labels)) != len(labels):
            raise _error(422, "label_mismatch", "labels must be unique and match the dimension")
        return {
            "matrix": matrix.entries.tolist(),
            "labels": labels,
            "analysis": analysis_block(matrix, labels),
        }

    return app
