"""Forum data model and JSON Lines corpus loading.

A corpus file holds one post per line as a JSON object. Required keys:
``id``, ``class_id``, ``title``, ``body``, ``created_at``. Optional keys:
``tags``, ``views``, ``instructor_answer``, ``student_answer``,
``followups``. Timestamps are ISO-8601 and normalized to UTC internally.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path


class CorpusError(ValueError):
    """Malformed or inconsistent corpus data."""


@dataclass(frozen=True)
class Followup:
    text: str
    resolved: bool = False
    contributions: tuple[str, ...] = ()


@dataclass(frozen=True)
class Post:
    id: str
    class_id: str
    title: str
    body: str
    created_at: datetime
    tags: tuple[str, ...] = ()
    views: int = 0
    instructor_answer: str | None = None
    student_answer: str | None = None
    followups: tuple[Followup, ...] = ()


@dataclass(frozen=True)
class ClassCorpus:
    """Immutable snapshot of one class's posts, sorted by created_at."""

    class_id: str
    posts: tuple[Post, ...]
    loaded_at: datetime = field(default_factory=lambda: datetime.now(timezone.utc))

    def __len__(self) -> int:
        return len(self.posts)

    def prefix(self, n: int) -> "ClassCorpus":
        """The chronologically first n posts as a corpus."""
        return ClassCorpus(self.class_id, self.posts[:n], self.loaded_at)


def parse_timestamp(value: str) -> datetime:
    """Parse an ISO-8601 timestamp; naive values are taken as UTC."""
    if not isinstance(value, str):
        raise CorpusError(f"timestamp must be a string, got {type(value).__name__}")
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        dt = datetime.fromisoformat(text)
    except ValueError as exc:
        raise CorpusError(f"unparseable timestamp {value!r}") from exc
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def _require_str(record: dict, key: str) -> str:
    if key not in record:
        raise CorpusError(f"missing required key {key!r}")
    value = record[key]
    if not isinstance(value, str):
        raise CorpusError(f"key {key!r} must be a string")
    return value


def _optional_str(record: dict, key: str) -> str | None:
    value = record.get(key)
    if value is None:
        return None
    if not isinstance(value, str):
        raise CorpusError(f"key {key!r} must be a string or null")
    return value


def _followup_from_record(raw: object) -> Followup:
    if not isinstance(raw, dict):
        raise CorpusError("each followup must be an object")
    text = raw.get("text", "")
    if not isinstance(text, str):
        raise CorpusError("followup text must be a string")
    resolved = raw.get("resolved", False)
    if not isinstance(resolved, bool):
        raise CorpusError("followup resolved must be a boolean")
    contributions = raw.get("contributions", [])
    if not isinstance(contributions, list) or not all(isinstance(c, str) for c in contributions):
        raise CorpusError("followup contributions must be a list of strings")
    return Followup(text=text, resolved=resolved, contributions=tuple(contributions))


def post_from_record(record: dict) -> Post:
    """Validate one JSON record and build a Post."""
    if not isinstance(record, dict):
        raise CorpusError("record must be a JSON object")
    views = record.get("views", 0)
    if not isinstance(views, int) or isinstance(views, bool) or views < 0:
        raise CorpusError("views must be a non-negative integer")
    tags = record.get("tags", [])
    if not isinstance(tags, list) or not all(isinstance(t, str) for t in tags):
        raise CorpusError("tags must be a list of strings")
    followups_raw = record.get("followups", [])
    if not isinstance(followups_raw, list):
        raise CorpusError("followups must be a list")
    return Post(
        id=_require_str(record, "id"),
        class_id=_require_str(record, "class_id"),
        title=_require_str(record, "title"),
        body=_require_str(record, "body"),
        created_at=parse_timestamp(record.get("created_at")
                                   if isinstance(record.get("created_at"), str)
                                   else _require_str(record, "created_at")),
        tags=tuple(tags),
        views=views,
        instructor_answer=_optional_str(record, "instructor_answer"),
        student_answer=_optional_str(record, "student_answer"),
        followups=tuple(_followup_from_record(f) for f in followups_raw),
    )


def post_to_record(post: Post) -> dict:
    record = {
        "id": post.id,
        "class_id": post.class_id,
        "title": post.title,
        "body": post.body,
        "created_at": post.created_at.isoformat().replace("+00:00", "Z"),
        "tags": list(post.tags),
        "views": post.views,
        "instructor_answer": post.instructor_answer,
        "student_answer": post.student_answer,
        "followups": [
            {"text": f.text, "resolved": f.resolved, "contributions": list(f.contributions)}
            for f in post.followups
        ],
    }
    return record


def load_corpus(path: str | Path) -> ClassCorpus:
    """Load a JSON Lines corpus file into a chronologically sorted corpus."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"corpus file not found: {path}")
    posts: list[Post] = []
    seen_ids: set[str] = set()
    class_id: str | None = None
    with path.open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path}:{line_no}: invalid JSON: {exc.msg}") from exc
            try:
                post = post_from_record(record)
            except CorpusError as exc:
                raise CorpusError(f"{path}:{line_no}: {exc}") from exc
            if post.id in seen_ids:
                raise CorpusError(f"{path}:{line_no}: duplicate post id {post.id!r}")
            seen_ids.add(post.id)
            if class_id is None:
                class_id = post.class_id
            elif post.class_id != class_id:
                raise CorpusError(
                    f"{path}:{line_no}: class_id {post.class_id!r} differs from {class_id!r}"
                )
            posts.append(post)
    posts.sort(key=lambda p: p.created_at)
    return ClassCorpus(class_id=class_id or "", posts=tuple(posts))


def save_corpus(corpus: ClassCorpus, path: str | Path) -> None:
    """Write a corpus back out as JSON Lines (round-trips through load_corpus)."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for post in corpus.posts:
            fh.write(json.dumps(post_to_record(post), ensure_ascii=False) + "\n")


def unresolved_followup_count(post: Post) -> int:
    """How many followup discussions on the post are still unresolved."""
    return sum(1 for f in post.followups if not f.resolved)
