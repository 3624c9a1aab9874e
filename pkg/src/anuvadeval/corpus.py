"""Evaluation corpus: documents, segments, references, system hypotheses.

On-disk layout is one UTF-8 text file per role (source, each reference,
each hypothesis) with one segment per line, plus a manifest that maps
document ids to 1-based inclusive line ranges. A Corpus is immutable after
construction; attach_system returns a new Corpus.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterator, Mapping

from .errors import (
    DuplicateSystemId,
    EmptyReferenceSet,
    EmptySource,
    LineCountMismatch,
    ManifestGap,
    ParseError,
)

SegmentKey = tuple[str, int]


@dataclass(frozen=True)
class Segment:
    doc_id: str
    seg_id: int
    source: str
    references: tuple[str, ...]

    @property
    def key(self) -> SegmentKey:
        return (self.doc_id, self.seg_id)

    def nonblank_references(self, limit: int | None = None) -> tuple[str, ...]:
        """References in file order, blanks dropped, optionally only the
        first `limit` reference positions."""
        refs = self.references if limit is None else self.references[:limit]
        return tuple(r for r in refs if r.strip())


@dataclass(frozen=True)
class Document:
    doc_id: str
    segments: tuple[Segment, ...]


@dataclass(frozen=True)
class SystemOutput:
    system_id: str
    hypotheses: Mapping[SegmentKey, str]


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...]
    systems: tuple[SystemOutput, ...] = ()

    def iter_segments(self) -> Iterator[Segment]:
        for doc in self.documents:
            yield from doc.segments

    def segment_keys(self) -> tuple[SegmentKey, ...]:
        return tuple(seg.key for seg in self.iter_segments())

    @property
    def segment_count(self) -> int:
        return sum(len(doc.segments) for doc in self.documents)

    @property
    def max_reference_count(self) -> int:
        return max((len(seg.references) for seg in self.iter_segments()),
                   default=0)

    def system(self, system_id: str) -> SystemOutput:
        for sys in self.systems:
            if sys.system_id == system_id:
                return sys
        raise KeyError(system_id)

    @property
    def system_ids(self) -> tuple[str, ...]:
        return tuple(sys.system_id for sys in self.systems)


def read_lines(path: str | Path) -> list[str]:
    """All lines of a UTF-8 file with trailing newlines stripped, nothing
    else touched (internal whitespace stays raw until the text pipeline)."""
    with open(path, encoding="utf-8", newline="") as fh:
        data = fh.read()
    if not data:
        return []
    if data.endswith("\n"):
        data = data[:-1]
    return [line[:-1] if line.endswith("\r") else line
            for line in data.split("\n")]


def parse_manifest(path: str | Path) -> list[tuple[str, int, int]]:
    """Parse `doc_id<TAB>start<TAB>end` lines (1-based inclusive ranges)."""
    entries = []
    path = Path(path)
    for line_no, raw in enumerate(read_lines(path), start=1):
        if not raw.strip() or raw.startswith("#"):
            continue
        fields = raw.split("\t")
        if len(fields) != 3:
            raise ParseError("expected `doc_id<TAB>start<TAB>end`",
                             path=str(path), line_no=line_no)
        doc_id = fields[0].strip()
        if not doc_id:
            raise ParseError("empty doc_id", path=str(path), line_no=line_no)
        try:
            start, end = int(fields[1]), int(fields[2])
        except ValueError:
            raise ParseError("line numbers must be integers",
                             path=str(path), line_no=line_no) from None
        entries.append((doc_id, start, end))
    return entries


def load_corpus(source_path: str | Path,
                reference_paths: list[str | Path],
                manifest_path: str | Path) -> Corpus:
    """Build a Corpus (without systems) from parallel line-per-segment files.

    All files must have identical line counts, the manifest must partition
    the lines into documents, every source line must be non-blank, and every
    segment needs at least one non-blank reference.
    """
    if not 1 <= len(reference_paths) <= 4:
        raise ValueError("between 1 and 4 reference files required")

    source_lines = read_lines(source_path)
    reference_lines = [read_lines(p) for p in reference_paths]
    n = len(source_lines)
    for path, lines in zip(reference_paths, reference_lines):
        if len(lines) != n:
            raise LineCountMismatch(
                f"{path}: {len(lines)} lines, source has {n}")

    entries = parse_manifest(manifest_path)
    entries.sort(key=lambda e: e[1])
    seen_docs = set()
    expected_start = 1
    for doc_id, start, end in entries:
        if doc_id in seen_docs:
            raise ManifestGap(f"duplicate doc_id {doc_id!r}")
        seen_docs.add(doc_id)
        if start != expected_start or end < start:
            raise ManifestGap(
                f"{doc_id!r}: lines {start}-{end} do not continue the "
                f"partition at line {expected_start}")
        expected_start = end + 1
    if expected_start != n + 1:
        raise ManifestGap(
            f"manifest covers lines 1-{expected_start - 1}, corpus has {n}")

    documents = []
    for doc_id, start, end in entries:
        segments = []
        for seg_id, line_idx in enumerate(range(start - 1, end), start=1):
            source = source_lines[line_idx]
            if not source.strip():
                raise EmptySource(f"source line {line_idx + 1} is blank")
            references = tuple(lines[line_idx] for lines in reference_lines)
            if not any(r.strip() for r in references):
                raise EmptyReferenceSet(
                    f"segment {doc_id}/{seg_id} has no non-blank reference")
            segments.append(Segment(doc_id=doc_id, seg_id=seg_id,
                                    source=source, references=references))
        documents.append(Document(doc_id=doc_id, segments=tuple(segments)))
    return Corpus(documents=tuple(documents))


def attach_system(corpus: Corpus, system_id: str,
                  hypothesis_path: str | Path) -> Corpus:
    """Return a new Corpus with one more system's hypotheses attached.

    Re-attaching the same id with identical content is a no-op; different
    content under the same id raises DuplicateSystemId.
    """
    lines = read_lines(hypothesis_path)
    keys = corpus.segment_keys()
    if len(lines) != len(keys):
        raise LineCountMismatch(
            f"{hypothesis_path}: {len(lines)} lines, corpus has {len(keys)} "
            "segments")
    hypotheses = dict(zip(keys, lines))

    existing = [s for s in corpus.systems if s.system_id == system_id]
    if existing:
        if dict(existing[0].hypotheses) == hypotheses:
            return corpus
        raise DuplicateSystemId(
            f"system {system_id!r} already attached with different content")
    new_system = SystemOutput(system_id=system_id, hypotheses=hypotheses)
    return replace(corpus, systems=corpus.systems + (new_system,))


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write one JSON record per segment (doc_id, seg_id, source,
    references, hypotheses keyed by system id)."""
    with open(path, "w", encoding="utf-8") as fh:
        for seg in corpus.iter_segments():
            record = {
                "doc_id": seg.doc_id,
                "seg_id": seg.seg_id,
                "source": seg.source,
                "references": list(seg.references),
                "hypotheses": {
                    sys.system_id: sys.hypotheses[seg.key]
                    for sys in corpus.systems
                },
            }
            fh.write(json.dumps(record, ensure_ascii=False,
                                separators=(",", ":")) + "\n")


def load_serialized_corpus(path: str | Path) -> Corpus:
    """Inverse of save_corpus."""
    docs: dict[str, list[Segment]] = {}
    doc_order: list[str] = []
    system_maps: dict[str, dict[SegmentKey, str]] = {}
    system_order: list[str] = []
    path = Path(path)
    for line_no, raw in enumerate(
            path.read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            record = json.loads(raw)
        except json.JSONDecodeError:
            raise ParseError("invalid JSON record", path=str(path),
                             line_no=line_no) from None
        seg = Segment(doc_id=record["doc_id"], seg_id=record["seg_id"],
                      source=record["source"],
                      references=tuple(record["references"]))
        if seg.doc_id not in docs:
            docs[seg.doc_id] = []
            doc_order.append(seg.doc_id)
        docs[seg.doc_id].append(seg)
        for system_id, text in record["hypotheses"].items():
            if system_id not in system_maps:
                system_maps[system_id] = {}
                system_order.append(system_id)
            system_maps[system_id][seg.key] = text
    documents = tuple(Document(doc_id=d, segments=tuple(docs[d]))
                      for d in doc_order)
    systems = tuple(SystemOutput(system_id=s, hypotheses=system_maps[s])
                    for s in system_order)
    return Corpus(documents=documents, systems=systems)
