"""Applies metric configurations across a corpus and emits score records.

The eight reportable configurations are bleu-1..bleu-4 and the four
matcher combinations meteor-es, meteor-ey, meteor-esy, meteor-esyp;
nist-1..nist-4 (arithmetic-mean variant) are additionally accepted by the
scoring commands. Record layouts (tab-separated, exact column order):

    segment level:  system_id, config_id, doc_id, seg_id, value
    document level: system_id, config_id, doc_id, value
    system level:   system_id, config_id, value
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from . import bleu as bleu_mod
from .bleu import BleuConfig, NgramStats
from .corpus import Corpus, Segment
from .errors import InsufficientReferences
from .meteor import CONFIG_STAGES, MatchResources, MeteorParams, meteor_segment
from .textproc import (
    TokenSequence,
    default_suffix_inventory,
    empty_paraphrase_table,
    empty_synonym_lexicon,
    prepare,
)

DEFAULT_CONFIG_IDS = ("bleu-1", "bleu-2", "bleu-3", "bleu-4",
                      "meteor-es", "meteor-ey", "meteor-esy", "meteor-esyp")

_BLEU_RE = re.compile(r"^bleu-([1-4])$")
_NIST_RE = re.compile(r"^nist-([1-4])$")

# Zero scores flatten sentence-level correlation, so the correlation
# pipeline smooths; standalone scoring does not.
CORRELATION_EPSILON = 1e-9


def default_resources() -> MatchResources:
    return MatchResources(inventory=default_suffix_inventory(),
                          synonyms=empty_synonym_lexicon(),
                          paraphrases=empty_paraphrase_table())


@dataclass(frozen=True)
class ScoringContext:
    """Everything needed to score any configuration: matcher resources,
    scoring parameters, and smoothing."""

    resources: MatchResources = field(default_factory=default_resources)
    meteor_params: MeteorParams = field(default_factory=MeteorParams)
    bp_mode: str = bleu_mod.BP_PAPER_LINEAR
    epsilon: float = 0.0


def parse_config_ids(csv: str) -> tuple[str, ...]:
    ids = tuple(part.strip() for part in csv.split(",") if part.strip())
    for config_id in ids:
        if not (config_id in CONFIG_STAGES or _BLEU_RE.match(config_id)
                or _NIST_RE.match(config_id)):
            raise ValueError(f"unknown config id {config_id!r}")
    if not ids:
        raise ValueError("no config ids given")
    return ids


def score_segment(config_id: str, hyp: TokenSequence,
                  refs: list[TokenSequence], ctx: ScoringContext) -> float:
    """Score one segment under one configuration."""
    if m := _BLEU_RE.match(config_id):
        config = BleuConfig(max_n=int(m.group(1)), bp_mode=ctx.bp_mode,
                            epsilon=ctx.epsilon)
        return bleu_mod.bleu_segment(hyp, refs, config).value
    if m := _NIST_RE.match(config_id):
        return bleu_mod.nist_variant_segment(
            hyp, refs, int(m.group(1)), bp_mode=ctx.bp_mode).value
    stages = CONFIG_STAGES[config_id]
    return meteor_segment(hyp, refs, stages, ctx.meteor_params,
                          ctx.resources, config_id=config_id).value


def segment_tokens(segment: Segment, ref_count: int,
                   hypothesis: str) -> tuple[TokenSequence,
                                             list[TokenSequence]]:
    """Tokenize a hypothesis and the first `ref_count` usable references."""
    refs = segment.nonblank_references(limit=ref_count)
    if not refs:
        raise InsufficientReferences(
            f"segment {segment.doc_id}/{segment.seg_id} has no usable "
            f"reference among the first {ref_count}")
    return prepare(hypothesis), [prepare(r) for r in refs]


@dataclass(frozen=True)
class ScoreTable:
    """All score records for one (corpus, configs, ref_count) run."""

    segment_rows: tuple[tuple[str, str, str, int, float], ...]
    document_rows: tuple[tuple[str, str, str, float], ...]
    system_rows: tuple[tuple[str, str, float], ...]

    def segment_value(self, system_id: str, config_id: str, doc_id: str,
                      seg_id: int) -> float:
        for row in self.segment_rows:
            if row[:4] == (system_id, config_id, doc_id, seg_id):
                return row[4]
        raise KeyError((system_id, config_id, doc_id, seg_id))


def score_corpus(corpus: Corpus, config_ids: tuple[str, ...],
                 ref_count: int, ctx: ScoringContext) -> ScoreTable:
    """Score every (system, config, segment) triple plus document and
    system roll-ups.

    BLEU roll-ups pool the n-gram counts across segments and apply the
    formula once; the other metrics roll up as the mean of their segment
    scores.
    """
    if corpus.max_reference_count < ref_count:
        raise InsufficientReferences(
            f"corpus carries {corpus.max_reference_count} references, "
            f"{ref_count} requested")

    segment_rows: list[tuple[str, str, str, int, float]] = []
    document_rows: list[tuple[str, str, str, float]] = []
    system_rows: list[tuple[str, str, float]] = []

    for system in corpus.systems:
        token_cache = {
            seg.key: segment_tokens(seg, ref_count,
                                    system.hypotheses[seg.key])
            for seg in corpus.iter_segments()
        }
        for config_id in config_ids:
            if m := _BLEU_RE.match(config_id):
                config = BleuConfig(max_n=int(m.group(1)),
                                    bp_mode=ctx.bp_mode,
                                    epsilon=ctx.epsilon)
                all_stats: list[NgramStats] = []
                for doc in corpus.documents:
                    doc_stats: list[NgramStats] = []
                    for seg in doc.segments:
                        hyp, refs = token_cache[seg.key]
                        if len(hyp) == 0:
                            stats = NgramStats(
                                matched=(0,) * config.max_n,
                                total=(0,) * config.max_n,
                                hyp_len=0,
                                ref_len=bleu_mod.effective_ref_len(0, refs))
                        else:
                            stats = bleu_mod.segment_stats(hyp, refs,
                                                           config.max_n)
                        doc_stats.append(stats)
                        segment_rows.append(
                            (system.system_id, config_id, seg.doc_id,
                             seg.seg_id,
                             bleu_mod.score_from_stats(stats, config)))
                    document_rows.append(
                        (system.system_id, config_id, doc.doc_id,
                         bleu_mod.bleu_aggregate(
                             doc_stats, bleu_mod.LEVEL_DOCUMENT,
                             config).value))
                    all_stats.extend(doc_stats)
                system_rows.append(
                    (system.system_id, config_id,
                     bleu_mod.bleu_aggregate(
                         all_stats, bleu_mod.LEVEL_SYSTEM, config).value))
            else:
                all_values: list[float] = []
                for doc in corpus.documents:
                    doc_values: list[float] = []
                    for seg in doc.segments:
                        hyp, refs = token_cache[seg.key]
                        value = score_segment(config_id, hyp, refs, ctx)
                        doc_values.append(value)
                        segment_rows.append(
                            (system.system_id, config_id, seg.doc_id,
                             seg.seg_id, value))
                    document_rows.append(
                        (system.system_id, config_id, doc.doc_id,
                         sum(doc_values) / len(doc_values)))
                    all_values.extend(doc_values)
                system_rows.append(
                    (system.system_id, config_id,
                     sum(all_values) / len(all_values)))

    return ScoreTable(segment_rows=tuple(segment_rows),
                      document_rows=tuple(document_rows),
                      system_rows=tuple(system_rows))


def write_score_files(table: ScoreTable, out_dir: str | Path) -> list[Path]:
    """Write the three score record files; returns their paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    seg_path = out / "scores_segment.tsv"
    doc_path = out / "scores_document.tsv"
    sys_path = out / "scores_system.tsv"

    with open(seg_path, "w", encoding="utf-8") as fh:
        fh.write("system_id\tconfig_id\tdoc_id\tseg_id\tvalue\n")
        for system_id, config_id, doc_id, seg_id, value in table.segment_rows:
            fh.write(f"{system_id}\t{config_id}\t{doc_id}\t{seg_id}\t"
                     f"{value:.6f}\n")
    with open(doc_path, "w", encoding="utf-8") as fh:
        fh.write("system_id\tconfig_id\tdoc_id\tvalue\n")
        for system_id, config_id, doc_id, value in table.document_rows:
            fh.write(f"{system_id}\t{config_id}\t{doc_id}\t{value:.6f}\n")
    with open(sys_path, "w", encoding="utf-8") as fh:
        fh.write("system_id\tconfig_id\tvalue\n")
        for system_id, config_id, value in table.system_rows:
            fh.write(f"{system_id}\t{config_id}\t{value:.6f}\n")
    return [seg_path, doc_path, sys_path]
