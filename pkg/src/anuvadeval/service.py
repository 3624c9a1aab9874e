"""Annotation HTTP service: serves items to judges, persists ratings.

All durable state lives in the append-only rating log; the in-memory
session table is rebuilt from the corpus and the log at startup, so a
crash and restart reconstruct identical progress. The session id doubles
as the bearer token (an unknown id is a 404). Judges rate blind: the UI
is expected not to display the system id carried in the payload.

Endpoints:
    GET  /api/session/{id}/next      current item payload or completion
    POST /api/session/{id}/rating    submit a complete rating record
    GET  /api/session/{id}/progress  {done, total}
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .corpus import Corpus
from .errors import MissingCriterion, OutOfRangeRating, UnknownSegment
from .ratings import CRITERIA, RatingLog, RatingRecord, validate_and_store

ItemKey = tuple[str, str, int]  # (system_id, doc_id, seg_id)


def build_queue(corpus: Corpus) -> tuple[ItemKey, ...]:
    """Every (system, segment) pair once, systems rotated per segment
    within each document so consecutive items alternate systems."""
    system_ids = corpus.system_ids
    if not system_ids:
        raise ValueError("corpus has no systems attached")
    queue: list[ItemKey] = []
    for doc in corpus.documents:
        for seg in doc.segments:
            offset = (seg.seg_id - 1) % len(system_ids)
            rotated = system_ids[offset:] + system_ids[:offset]
            for system_id in rotated:
                queue.append((system_id, doc.doc_id, seg.seg_id))
    return tuple(queue)


@dataclass
class Session:
    session_id: str
    judge_id: str
    queue: tuple[ItemKey, ...]
    cursor: int = 0

    @property
    def done(self) -> bool:
        return self.cursor >= len(self.queue)

    @property
    def current(self) -> ItemKey:
        return self.queue[self.cursor]


def restore_cursor(queue: tuple[ItemKey, ...], judge_id: str,
                   log: RatingLog) -> int:
    """Length of the leading run of queue items this judge has rated."""
    rated = {record.item_key for record in log.effective().values()
             if record.judge_id == judge_id}
    cursor = 0
    for key in queue:
        if key not in rated:
            break
        cursor += 1
    return cursor


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message})


def create_app(corpus: Corpus, judges: list[str],
               log_path: str | Path, ui_dir: str | Path | None = None
               ) -> FastAPI:
    if not judges:
        raise ValueError("at least one judge required")
    queue = build_queue(corpus)
    log = RatingLog(log_path)
    sessions = {
        judge: Session(session_id=judge, judge_id=judge, queue=queue,
                       cursor=restore_cursor(queue, judge, log))
        for judge in judges
    }
    segment_keys = set(corpus.segment_keys())
    system_ids = set(corpus.system_ids)
    segments = {seg.key: seg for seg in corpus.iter_segments()}
    hypotheses = {
        (sys.system_id, *key): text
        for sys in corpus.systems for key, text in sys.hypotheses.items()
    }
    write_lock = threading.Lock()
    criteria_payload = [
        {
            "index": c.index,
            "short_name": c.short_name,
            "description_hi": c.description_hi,
            "description_en": c.description_en,
        }
        for c in CRITERIA
    ]

    app = FastAPI(title="anuvadeval annotation service")
    # the UI may be served from a different origin during development;
    # session ids in the path are the only credential either way
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    @app.get("/api/session/{session_id}/next")
    def next_item(session_id: str):
        session = sessions.get(session_id)
        if session is None:
            return _error(404, "unknown session")
        if session.done:
            return {"completed": True, "done": session.cursor,
                    "total": len(session.queue)}
        system_id, doc_id, seg_id = session.current
        segment = segments[(doc_id, seg_id)]
        return {
            "completed": False,
            "judge_id": session.judge_id,
            "system_id": system_id,
            "doc_id": doc_id,
            "seg_id": seg_id,
            "source": segment.source,
            "hypothesis": hypotheses[(system_id, doc_id, seg_id)],
            "criteria": criteria_payload,
            "done": session.cursor,
            "total": len(session.queue),
        }

    @app.post("/api/session/{session_id}/rating")
    async def submit_rating(session_id: str, request: Request):
        session = sessions.get(session_id)
        if session is None:
            return _error(404, "unknown session")
        try:
            body = await request.json()
        except Exception:
            return _error(400, "body is not valid JSON")
        if not isinstance(body, dict):
            return _error(400, "body must be an object")
        required = ("judge_id", "system_id", "doc_id", "seg_id", "ratings",
                    "timestamp")
        missing = [name for name in required if name not in body]
        if missing:
            return _error(400, f"missing fields: {', '.join(missing)}")
        if not isinstance(body["ratings"], list):
            return _error(400, "ratings must be a list")
        try:
            record = RatingRecord(
                judge_id=str(body["judge_id"]),
                system_id=str(body["system_id"]),
                doc_id=str(body["doc_id"]),
                seg_id=int(body["seg_id"]),
                ratings=tuple(body["ratings"]),
                timestamp=str(body["timestamp"]),
            )
        except (TypeError, ValueError):
            return _error(400, "malformed rating record")
        if session.done:
            return _error(409, "session already complete")
        if record.judge_id != session.judge_id or \
                record.item_key != session.current:
            return _error(409, "rating is not for the current item")
        try:
            with write_lock:
                record_id = validate_and_store(
                    record, log, segment_keys=segment_keys,
                    system_ids=system_ids)
                session.cursor += 1
        except (OutOfRangeRating, MissingCriterion, UnknownSegment) as err:
            return _error(422, str(err))
        return {"stored": record_id, "done": session.cursor,
                "total": len(session.queue)}

    @app.get("/api/session/{session_id}/progress")
    def progress(session_id: str):
        session = sessions.get(session_id)
        if session is None:
            return _error(404, "unknown session")
        return {"done": session.cursor, "total": len(session.queue)}

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True),
                  name="ui")

    return app
