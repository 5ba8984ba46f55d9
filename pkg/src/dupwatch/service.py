"""HTTP serving layer: recommendation and feed endpoints, click-event
telemetry, and background retraining with atomic snapshot swaps.

Each class is served from an immutable Snapshot (corpus + fitted
ensemble). A retrain tick reloads the corpus file, refits, and swaps the
snapshot in one assignment; failures keep the previous snapshot serving.
"""

from __future__ import annotations

import json
import logging
import os
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field, model_validator

from dupwatch import feeds
from dupwatch.corpus import ClassCorpus, load_corpus, post_to_record, unresolved_followup_count
from dupwatch.ensemble import (
    DEFAULT_WEIGHTS,
    DraftQuestion,
    EnsembleModel,
    FieldKind,
    fit_ensemble,
    recommend,
    validate_weights,
)

log = logging.getLogger("dupwatch.service")

ENV_PREFIX = "DW_"


@dataclass
class ServiceConfig:
    """Runtime configuration; numeric defaults are the published constants."""

    corpus_paths: dict[str, str] = field(default_factory=dict)
    retrain_interval_seconds: int = 900
    feed_size: int = 6
    recommendation_k: int = 5
    theta_days: float = 7.0
    age_cutoff_days: float = 21.0
    weights: dict[FieldKind, float] = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))
    listen_address: str = "127.0.0.1:8571"
    event_log_path: str = "events.jsonl"
    ui_dir: str | None = None

    def __post_init__(self):
        validate_weights(self.weights)
        if self.retrain_interval_seconds <= 0:
            raise ValueError("retrain_interval_seconds must be positive")

    @property
    def host(self) -> str:
        return self.listen_address.rsplit(":", 1)[0]

    @property
    def port(self) -> int:
        return int(self.listen_address.rsplit(":", 1)[1])


def _parse_weights(raw: dict) -> dict[FieldKind, float]:
    return {FieldKind(name): float(value) for name, value in raw.items()}


def load_config(path: str | Path | None = None, overrides: dict | None = None) -> ServiceConfig:
    """Build config from a JSON file, DW_* environment variables, then overrides."""
    raw: dict = {}
    if path is not None:
        raw.update(json.loads(Path(path).read_text(encoding="utf-8")))
    for key in (
        "retrain_interval_seconds",
        "feed_size",
        "recommendation_k",
        "theta_days",
        "age_cutoff_days",
        "listen_address",
        "event_log_path",
        "ui_dir",
    ):
        env = os.environ.get(ENV_PREFIX + key.upper())
        if env is not None:
            raw[key] = env
    if overrides:
        raw.update({k: v for k, v in overrides.items() if v is not None})

    kwargs: dict = {}
    kwargs["corpus_paths"] = dict(raw.get("corpus_paths", {}))
    for key, cast in (
        ("retrain_interval_seconds", int),
        ("feed_size", int),
        ("recommendation_k", int),
        ("theta_days", float),
        ("age_cutoff_days", float),
        ("listen_address", str),
        ("event_log_path", str),
    ):
        if key in raw:
            kwargs[key] = cast(raw[key])
    if raw.get("ui_dir"):
        kwargs["ui_dir"] = str(raw["ui_dir"])
    if "weights" in raw:
        kwargs["weights"] = _parse_weights(raw["weights"])
    return ServiceConfig(**kwargs)


@dataclass(frozen=True)
class Snapshot:
    """One consistent, fully trained serving state for a class."""

    class_id: str
    corpus: ClassCorpus
    ensemble: EnsembleModel
    trained_at: str  # ISO timestamp, also the snapshot identity in responses
    corpus_path: str


class EventLog:
    """Append-only JSON Lines event sink; appends are serialized and fsynced."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._fh = self.path.open("a", encoding="utf-8")

    def append(self, record: dict) -> None:
        line = json.dumps(record, ensure_ascii=False)
        with self._lock:
            self._fh.write(line + "\n")
            self._fh.flush()
            os.fsync(self._fh.fileno())

    def close(self) -> None:
        with self._lock:
            self._fh.close()


class SnapshotManager:
    """Holds the active snapshot per class and performs retrain ticks."""

    def __init__(self, config: ServiceConfig):
        self.config = config
        self._snapshots: dict[str, Snapshot] = {}
        self._lock = threading.Lock()

    def load_all(self) -> None:
        """Initial training; any failure aborts startup."""
        for class_id, path in self.config.corpus_paths.items():
            snapshot = self._build_snapshot(class_id, path)
            with self._lock:
                self._snapshots[class_id] = snapshot

    def _build_snapshot(self, class_id: str, path: str) -> Snapshot:
        corpus = load_corpus(path)
        ensemble = fit_ensemble(corpus, self.config.weights)
        return Snapshot(
            class_id=class_id,
            corpus=corpus,
            ensemble=ensemble,
            trained_at=ensemble.trained_at.isoformat(),
            corpus_path=path,
        )

    def retrain_tick(self, class_id: str) -> Snapshot | None:
        """Reload + refit one class; keep the old snapshot on any failure."""
        path = self.config.corpus_paths.get(class_id)
        if path is None:
            raise KeyError(f"unknown class {class_id!r}")
        try:
            snapshot = self._build_snapshot(class_id, path)
        except Exception:
            log.exception("retrain failed for class %s; keeping previous snapshot", class_id)
            return None
        with self._lock:
            self._snapshots[class_id] = snapshot
        return snapshot

    def retrain_all(self) -> None:
        for class_id in list(self.config.corpus_paths):
            self.retrain_tick(class_id)

    def get(self, class_id: str) -> Snapshot | None:
        # dict reads are atomic; each handler grabs the snapshot exactly once
        return self._snapshots.get(class_id)

    def class_ids(self) -> list[str]:
        return sorted(self._snapshots)


class RetrainScheduler:
    def __init__(self, manager: SnapshotManager, interval_seconds: float):
        self._manager = manager
        self._interval = interval_seconds
        self._stop = threading.Event()
        self._thread = threading.Thread(target=self._run, name="dw-retrain", daemon=True)

    def start(self) -> None:
        self._thread.start()

    def stop(self) -> None:
        self._stop.set()
        self._thread.join(timeout=5)

    def _run(self) -> None:
        while not self._stop.wait(self._interval):
            self._manager.retrain_all()


class DraftIn(BaseModel):
    title: str = ""
    body: str = ""
    tags: list[str] = Field(default_factory=list)


EventType = Literal["new_post_click", "recommendation_click", "submit_post_click"]


class EventIn(BaseModel):
    event_type: EventType
    class_id: str
    user_token: str
    post_id: Optional[str] = None
    at: Optional[str] = None

    @model_validator(mode="after")
    def _check_post_id(self):
        if self.event_type == "recommendation_click":
            if not self.post_id:
                raise ValueError("recommendation_click requires post_id")
        elif self.post_id is not None:
            raise ValueError(f"{self.event_type} must not carry post_id")
        return self


def _snapshot_or_404(manager: SnapshotManager, class_id: str) -> Snapshot:
    snapshot = manager.get(class_id)
    if snapshot is None:
        raise HTTPException(status_code=404, detail={"error": "unknown_class", "class_id": class_id})
    return snapshot


def create_app(
    config: ServiceConfig,
    *,
    start_scheduler: bool = True,
) -> FastAPI:
    """Build the application; corpora are loaded and fitted on startup."""
    app = FastAPI(title="dupwatch", version="0.1.0")
    manager = SnapshotManager(config)
    manager.load_all()
    event_log = EventLog(config.event_log_path)
    scheduler = RetrainScheduler(manager, config.retrain_interval_seconds)
    app.state.manager = manager
    app.state.event_log = event_log
    app.state.config = config

    if start_scheduler:
        scheduler.start()

        @app.on_event("shutdown")
        def _stop_scheduler():
            scheduler.stop()
            event_log.close()

    @app.post("/classes/{class_id}/recommend")
    def recommend_endpoint(class_id: str, draft: DraftIn):
        snapshot = _snapshot_or_404(manager, class_id)
        req = DraftQuestion(title=draft.title, body=draft.body, tags=tuple(draft.tags))
        if req.is_empty():
            raise HTTPException(status_code=400, detail={"error": "empty_draft"})
        if snapshot.ensemble.n_posts == 0:
            recs = []
        else:
            recs = recommend(snapshot.ensemble, req, config.recommendation_k)
        return {
            "class_id": class_id,
            "trained_at": snapshot.trained_at,
            "n_posts": snapshot.ensemble.n_posts,
            "recommendations": [
                {
                    "post_id": r.post_id,
                    "score": r.score,
                    "per_field_scores": {k.value: v for k, v in r.per_field_scores.items()},
                }
                for r in recs
            ],
        }

    @app.get("/classes/{class_id}/feed/student")
    def student_feed_endpoint(class_id: str):
        snapshot = _snapshot_or_404(manager, class_id)
        items = feeds.student_feed(
            snapshot.corpus,
            now=datetime.now(timezone.utc),
            n=config.feed_size,
            theta_days=config.theta_days,
            age_cutoff_days=config.age_cutoff_days,
        )
        return {
            "items": [
                {
                    "post_id": it.post_id,
                    "importance": it.importance,
                    "views": it.views,
                    "followups": it.followups,
                    "age_days": it.age_days,
                }
                for it in items
            ]
        }

    @app.get("/classes/{class_id}/feed/instructor")
    def instructor_feed_endpoint(class_id: str):
        snapshot = _snapshot_or_404(manager, class_id)
        items = feeds.instructor_feed(snapshot.corpus, n=config.feed_size)
        return {
            "items": [
                {
                    "post_id": it.post_id,
                    "unresolved_followups": it.unresolved_followups,
                    "views": it.views,
                    "followups": it.followups,
                    "age_days": it.age_days,
                }
                for it in items
            ]
        }

    @app.get("/classes/{class_id}/posts/{post_id}")
    def post_endpoint(class_id: str, post_id: str):
        snapshot = _snapshot_or_404(manager, class_id)
        for post in snapshot.corpus.posts:
            if post.id == post_id:
                record = post_to_record(post)
                record["unresolved_followups"] = unresolved_followup_count(post)
                return {"post": record}
        raise HTTPException(status_code=404, detail={"error": "unknown_post", "post_id": post_id})

    @app.post("/events")
    def events_endpoint(event: EventIn):
        record = event.model_dump()
        if record.get("at") is None:
            record["at"] = datetime.now(timezone.utc).isoformat()
        try:
            event_log.append(record)
        except OSError as exc:
            raise HTTPException(status_code=500, detail={"error": "event_log_write_failed"}) from exc
        return {"ok": True}

    @app.get("/health")
    def health_endpoint():
        classes = []
        for class_id in manager.class_ids():
            snapshot = manager.get(class_id)
            classes.append(
                {
                    "class_id": class_id,
                    "trained_at": snapshot.trained_at,
                    "n_posts": snapshot.ensemble.n_posts,
                }
            )
        return {"classes": classes}

    ui_dir = config.ui_dir
    if ui_dir and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def serve(config: ServiceConfig) -> None:
    """Run the HTTP service until interrupted."""
    import uvicorn

    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
