"""Human-vs-metric correlation and the grid report around it.

The report mirrors the layout used throughout this toolkit: one row per
metric configuration, one column per (system, reference count) pair, each
cell the correlation between the per-segment human scores and that
configuration's per-segment metric scores. Cells whose score vectors have
zero variance are reported as undefined rather than as any number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .bleu import LEVEL_DOCUMENT, LEVEL_SEGMENT, LEVEL_SYSTEM
from .corpus import Corpus, Segment
from .errors import LengthMismatch, MissingRatings
from .ratings import RatingLog, segment_human_score
from .scoring import ScoringContext, score_segment, segment_tokens

UNDEFINED_CELL = "undefined"

# scorer(config_id, system_id, segment, hyp_tokens, ref_tokens) -> float
SegmentScorer = Callable[..., float]


def pearson(x: Sequence[float], y: Sequence[float]) -> float | None:
    """Pearson product-moment coefficient; None when either variance is 0."""
    if len(x) != len(y) or len(x) < 2:
        raise LengthMismatch(
            f"need two equal-length vectors of >= 2 points, "
            f"got {len(x)} and {len(y)}")
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    var_x = float(np.dot(dx, dx))
    var_y = float(np.dot(dy, dy))
    if var_x == 0.0 or var_y == 0.0:
        return None
    return float(np.dot(dx, dy) / math.sqrt(var_x * var_y))


def average_ranks(values: Sequence[float]) -> list[float]:
    """1-based ranks with ties assigned the mean of their rank range."""
    xs = np.asarray(values, dtype=float)
    order = np.argsort(xs, kind="stable")
    ranks = np.empty(len(xs), dtype=float)
    i = 0
    while i < len(xs):
        j = i
        while j + 1 < len(xs) and xs[order[j + 1]] == xs[order[i]]:
            j += 1
        mean_rank = (i + j) / 2.0 + 1.0
        for k in range(i, j + 1):
            ranks[order[k]] = mean_rank
        i = j + 1
    return ranks.tolist()


def spearman(x: Sequence[float], y: Sequence[float]) -> float | None:
    """Pearson over average-tied ranks."""
    if len(x) != len(y) or len(x) < 2:
        raise LengthMismatch(
            f"need two equal-length vectors of >= 2 points, "
            f"got {len(x)} and {len(y)}")
    return pearson(average_ranks(x), average_ranks(y))


METHODS = {"pearson": pearson, "spearman": spearman}


@dataclass(frozen=True)
class ScoreVectorPair:
    """Human and metric score vectors aligned by segment key."""

    keys: tuple
    human: tuple[float, ...]
    metric: tuple[float, ...]

    def __post_init__(self):
        if not (len(self.keys) == len(self.human) == len(self.metric)):
            raise LengthMismatch("keys, human, metric must align")


@dataclass(frozen=True)
class CorrelationReport:
    method: str
    level: str
    row_ids: tuple[str, ...]
    columns: tuple[tuple[str, int], ...]
    cells: dict[tuple[str, tuple[str, int]], float | None]

    def cell(self, config_id: str, system_id: str,
             ref_count: int) -> float | None:
        return self.cells[(config_id, (system_id, ref_count))]

    def _formatted(self, value: float | None) -> str:
        return UNDEFINED_CELL if value is None else f"{value:.3f}"

    def to_tsv(self) -> str:
        lines = [f"# method: {self.method}\tlevel: {self.level}"]
        header = ["config_id"] + [f"{sys}:{rc}" for sys, rc in self.columns]
        lines.append("\t".join(header))
        for row_id in self.row_ids:
            cells = [self._formatted(self.cells[(row_id, col)])
                     for col in self.columns]
            lines.append("\t".join([row_id] + cells))
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        """Aligned, human-readable rendering of the same grid."""
        header = ["config"] + [f"{sys} ({rc} ref)" for sys, rc
                               in self.columns]
        rows = [header]
        for row_id in self.row_ids:
            rows.append([row_id] + [self._formatted(self.cells[(row_id, c)])
                                    for c in self.columns])
        widths = [max(len(row[i]) for row in rows)
                  for i in range(len(header))]
        lines = [f"correlation ({self.method}, {self.level} level)"]
        for idx, row in enumerate(rows):
            lines.append("  ".join(
                cell.ljust(widths[i]) if i == 0 else cell.rjust(widths[i])
                for i, cell in enumerate(row)))
            if idx == 0:
                lines.append("  ".join("-" * w for w in widths))
        return "\n".join(lines) + "\n"


def _default_scorer(ctx: ScoringContext) -> SegmentScorer:
    def scorer(config_id: str, system_id: str, segment: Segment,
               hyp, refs) -> float:
        return score_segment(config_id, hyp, refs, ctx)
    return scorer


def human_segment_vector(corpus: Corpus, log: RatingLog,
                         system_id: str) -> tuple[tuple, tuple[float, ...]]:
    """(segment keys, per-segment human scores) for one system; raises
    MissingRatings listing every unrated segment."""
    keys, values, missing = [], [], []
    for seg in corpus.iter_segments():
        records = log.records_for_item(system_id, seg.doc_id, seg.seg_id)
        if not records:
            missing.append((system_id, seg.doc_id, seg.seg_id))
            continue
        keys.append(seg.key)
        values.append(segment_human_score(records).value)
    if missing:
        raise MissingRatings(missing)
    return tuple(keys), tuple(values)


def build_report(corpus: Corpus, log: RatingLog,
                 config_ids: tuple[str, ...],
                 ref_counts: tuple[int, ...],
                 method: str = "pearson",
                 level: str = LEVEL_SEGMENT,
                 ctx: ScoringContext | None = None,
                 scorer: SegmentScorer | None = None) -> CorrelationReport:
    """Correlate human scores against every (config, system, ref_count).

    At segment level each cell correlates across segments within one
    system; at document level the vectors are pooled to per-document
    means first. At system level scores pool to one value per system and
    the correlation runs across systems, so the columns collapse to one
    per reference count. Deterministic given corpus, log snapshot, and
    configs.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if level not in (LEVEL_SEGMENT, LEVEL_DOCUMENT, LEVEL_SYSTEM):
        raise ValueError("level must be segment, document, or system")
    if ctx is None:
        ctx = ScoringContext()
    if scorer is None:
        scorer = _default_scorer(ctx)
    coefficient = METHODS[method]

    # Missing ratings are collected across all systems before failing.
    human_vectors: dict[str, tuple[tuple, tuple[float, ...]]] = {}
    missing: list = []
    for system in corpus.systems:
        try:
            human_vectors[system.system_id] = human_segment_vector(
                corpus, log, system.system_id)
        except MissingRatings as err:
            missing.extend(err.keys)
    if missing:
        raise MissingRatings(missing)

    if level == LEVEL_SYSTEM:
        return _system_level_report(corpus, human_vectors, config_ids,
                                    ref_counts, method, scorer)

    columns = tuple((system.system_id, rc)
                    for system in corpus.systems for rc in ref_counts)
    cells: dict[tuple[str, tuple[str, int]], float | None] = {}
    for system in corpus.systems:
        keys, human = human_vectors[system.system_id]
        for ref_count in ref_counts:
            token_cache = {
                seg.key: segment_tokens(seg, ref_count,
                                        system.hypotheses[seg.key])
                for seg in corpus.iter_segments()
            }
            for config_id in config_ids:
                metric = tuple(
                    scorer(config_id, system.system_id, seg,
                           *token_cache[seg.key])
                    for seg in corpus.iter_segments())
                pair = ScoreVectorPair(keys=keys, human=human, metric=metric)
                if level == LEVEL_DOCUMENT:
                    x, y = _pool_by_document(pair)
                else:
                    x, y = pair.human, pair.metric
                cells[(config_id, (system.system_id, ref_count))] = \
                    coefficient(x, y)
    return CorrelationReport(method=method, level=level,
                             row_ids=tuple(config_ids), columns=columns,
                             cells=cells)


def _system_level_report(corpus: Corpus, human_vectors, config_ids,
                         ref_counts, method, scorer) -> CorrelationReport:
    """One pooled score per system on each side; correlation across
    systems, one column per reference count."""
    coefficient = METHODS[method]
    columns = tuple(("all-systems", rc) for rc in ref_counts)
    cells: dict[tuple[str, tuple[str, int]], float | None] = {}
    human_means = [
        sum(human_vectors[s.system_id][1]) / len(human_vectors[s.system_id][1])
        for s in corpus.systems
    ]
    for ref_count in ref_counts:
        metric_means: dict[str, list[float]] = {c: [] for c in config_ids}
        for system in corpus.systems:
            token_cache = {
                seg.key: segment_tokens(seg, ref_count,
                                        system.hypotheses[seg.key])
                for seg in corpus.iter_segments()
            }
            for config_id in config_ids:
                values = [scorer(config_id, system.system_id, seg,
                                 *token_cache[seg.key])
                          for seg in corpus.iter_segments()]
                metric_means[config_id].append(sum(values) / len(values))
        for config_id in config_ids:
            cells[(config_id, ("all-systems", ref_count))] = coefficient(
                human_means, metric_means[config_id])
    return CorrelationReport(method=method, level=LEVEL_SYSTEM,
                             row_ids=tuple(config_ids), columns=columns,
                             cells=cells)


def _pool_by_document(pair: ScoreVectorPair):
    """Mean human and metric scores per document, in document order."""
    doc_order: list[str] = []
    human: dict[str, list[float]] = {}
    metric: dict[str, list[float]] = {}
    for (doc_id, _), h, m in zip(pair.keys, pair.human, pair.metric):
        if doc_id not in human:
            doc_order.append(doc_id)
            human[doc_id] = []
            metric[doc_id] = []
        human[doc_id].append(h)
        metric[doc_id].append(m)
    xs = tuple(sum(human[d]) / len(human[d]) for d in doc_order)
    ys = tuple(sum(metric[d]) / len(metric[d]) for d in doc_order)
    return xs, ys


def write_report_files(report: CorrelationReport,
                       out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    tsv_path = out / "correlation_report.tsv"
    txt_path = out / "correlation_report.txt"
    tsv_path.write_text(report.to_tsv(), encoding="utf-8")
    txt_path.write_text(report.to_text(), encoding="utf-8")
    return [tsv_path, txt_path]
