"""Ten-criterion human adequacy ratings: validation, storage, aggregation.

Judges rate each (system, segment) pair on ten criteria, 0..4 each. The
segment-level human score is the flat mean over every criterion rating of
every judge; document and system scores are unweighted means of segment
scores. The store is an append-only JSONL log with last-wins semantics
per (judge, system, doc, seg) key, so revisions keep an audit trail.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources as importlib_resources
from pathlib import Path
from typing import Iterable, Sequence

from .bleu import LEVEL_DOCUMENT, LEVEL_SEGMENT, LEVEL_SYSTEM
from .corpus import SegmentKey
from .errors import (
    MissingCriterion,
    NoRatings,
    OutOfRangeRating,
    ParseError,
    UnknownSegment,
)

CRITERIA_COUNT = 10
RATING_MIN = 0
RATING_MAX = 4

RatingKey = tuple[str, str, str, int]  # (judge, system, doc, seg)


@dataclass(frozen=True)
class Criterion:
    index: int
    short_name: str
    description_hi: str
    description_en: str


def _load_rubric() -> tuple[Criterion, ...]:
    ref = importlib_resources.files("anuvadeval.data") / "rubric.json"
    entries = json.loads(ref.read_text(encoding="utf-8"))
    criteria = tuple(Criterion(**entry) for entry in entries)
    assert len(criteria) == CRITERIA_COUNT
    assert [c.index for c in criteria] == list(range(1, CRITERIA_COUNT + 1))
    return criteria


CRITERIA: tuple[Criterion, ...] = _load_rubric()


@dataclass(frozen=True)
class RatingRecord:
    judge_id: str
    system_id: str
    doc_id: str
    seg_id: int
    ratings: tuple[int, ...]
    timestamp: str

    @property
    def key(self) -> RatingKey:
        return (self.judge_id, self.system_id, self.doc_id, self.seg_id)

    @property
    def item_key(self) -> tuple[str, str, int]:
        return (self.system_id, self.doc_id, self.seg_id)

    def to_json(self) -> str:
        return json.dumps(
            {
                "judge_id": self.judge_id,
                "system_id": self.system_id,
                "doc_id": self.doc_id,
                "seg_id": self.seg_id,
                "ratings": list(self.ratings),
                "timestamp": self.timestamp,
            },
            ensure_ascii=False, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "RatingRecord":
        data = json.loads(text)
        return cls(judge_id=data["judge_id"], system_id=data["system_id"],
                   doc_id=data["doc_id"], seg_id=int(data["seg_id"]),
                   ratings=tuple(int(r) for r in data["ratings"]),
                   timestamp=data["timestamp"])


def validate_record(record: RatingRecord,
                    segment_keys: Iterable[SegmentKey] | None = None,
                    system_ids: Iterable[str] | None = None) -> None:
    """Raise if the record violates the rubric or references unknown keys."""
    if len(record.ratings) != CRITERIA_COUNT:
        raise MissingCriterion(
            f"expected {CRITERIA_COUNT} ratings, got {len(record.ratings)}")
    for idx, value in enumerate(record.ratings, start=1):
        if isinstance(value, bool) or not isinstance(value, int) or \
                not RATING_MIN <= value <= RATING_MAX:
            raise OutOfRangeRating(
                f"criterion {idx}: rating {value!r} outside "
                f"{RATING_MIN}..{RATING_MAX}")
    if segment_keys is not None and \
            (record.doc_id, record.seg_id) not in set(segment_keys):
        raise UnknownSegment(
            f"no segment {record.doc_id}/{record.seg_id} in corpus")
    if system_ids is not None and record.system_id not in set(system_ids):
        raise UnknownSegment(f"unknown system {record.system_id!r}")


class RatingLog:
    """Append-only JSONL store of RatingRecords.

    Appends go straight to disk; the effective state is the last record
    per (judge, system, doc, seg) key, so replaying the file always
    reconstructs identical state.
    """

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._records: list[RatingRecord] = []
        if self.path.exists():
            for line_no, raw in enumerate(
                    self.path.read_text(encoding="utf-8").splitlines(),
                    start=1):
                if not raw.strip():
                    continue
                try:
                    self._records.append(RatingRecord.from_json(raw))
                except (json.JSONDecodeError, KeyError):
                    raise ParseError("invalid rating record",
                                     path=str(self.path),
                                     line_no=line_no) from None

    def append(self, record: RatingRecord) -> int:
        """Append a pre-validated record; returns its record id."""
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(record.to_json() + "\n")
        self._records.append(record)
        return len(self._records)

    def all_records(self) -> tuple[RatingRecord, ...]:
        return tuple(self._records)

    def effective(self) -> dict[RatingKey, RatingRecord]:
        """Latest record per key (submission order decides)."""
        state: dict[RatingKey, RatingRecord] = {}
        for record in self._records:
            state[record.key] = record
        return state

    def records_for_item(self, system_id: str, doc_id: str,
                         seg_id: int) -> list[RatingRecord]:
        """Effective records (one per judge) for a (system, segment) pair."""
        wanted = (system_id, doc_id, seg_id)
        return [r for r in self.effective().values()
                if r.item_key == wanted]


def validate_and_store(record: RatingRecord, store: RatingLog,
                       segment_keys: Iterable[SegmentKey] | None = None,
                       system_ids: Iterable[str] | None = None) -> int:
    """Validate then append; returns the stored record id."""
    validate_record(record, segment_keys=segment_keys, system_ids=system_ids)
    return store.append(record)


@dataclass(frozen=True)
class HumanScore:
    value: float
    normalized: float
    level: str

    def __post_init__(self):
        if not 0.0 <= self.value <= 4.0:
            raise ValueError("value outside 0..4")
        if self.normalized != self.value / 4.0:
            raise ValueError("normalized must equal value / 4")


def _human_score(value: float, level: str) -> HumanScore:
    return HumanScore(value=value, normalized=value / 4.0, level=level)


def segment_human_score(records: Sequence[RatingRecord]) -> HumanScore:
    """Flat mean over all criterion ratings of all judges' records."""
    if not records:
        raise NoRatings("no rating records for segment")
    total = sum(sum(r.ratings) for r in records)
    count = sum(len(r.ratings) for r in records)
    return _human_score(total / count, LEVEL_SEGMENT)


def aggregate_human(level: str,
                    scores: Sequence[HumanScore]) -> HumanScore:
    """Unweighted mean of segment scores at document or system level."""
    if level not in (LEVEL_DOCUMENT, LEVEL_SYSTEM):
        raise ValueError("level must be document or system")
    if not scores:
        raise NoRatings("no segment scores to aggregate")
    return _human_score(sum(s.value for s in scores) / len(scores), level)
