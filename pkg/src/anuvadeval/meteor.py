"""Staged-matching METEOR: exact, stem, synonym, and paraphrase matchers.

The four matcher stages run in a fixed cascade; each stage only sees
tokens left unmatched by earlier stages. The first three stages pair
single tokens, the paraphrase stage may pair multi-token phrases. Within
a stage, hypothesis positions are taken left to right and each is paired
with the leftmost compatible unmatched reference position, which makes
the alignment deterministic (no search over alternatives).
"""

from __future__ import annotations

from dataclasses import dataclass

from .bleu import LEVEL_SEGMENT, MetricScore
from .textproc import (
    ParaphraseTable,
    SuffixInventory,
    SynonymLexicon,
    TokenSequence,
    stem,
    synonyms_match,
)

STAGE_EXACT = "exact"
STAGE_STEM = "stem"
STAGE_SYNONYM = "synonym"
STAGE_PARAPHRASE = "paraphrase"
STAGE_ORDER = (STAGE_EXACT, STAGE_STEM, STAGE_SYNONYM, STAGE_PARAPHRASE)

# The four matcher combinations reported by the toolkit, in report order.
CONFIG_STAGES: dict[str, tuple[str, ...]] = {
    "meteor-es": (STAGE_EXACT, STAGE_STEM),
    "meteor-ey": (STAGE_EXACT, STAGE_SYNONYM),
    "meteor-esy": (STAGE_EXACT, STAGE_STEM, STAGE_SYNONYM),
    "meteor-esyp": (STAGE_EXACT, STAGE_STEM, STAGE_SYNONYM,
                    STAGE_PARAPHRASE),
}


def table1_configs() -> list[tuple[str, ...]]:
    """The four stage sets, each starting from the exact matcher."""
    return list(CONFIG_STAGES.values())


@dataclass(frozen=True)
class Match:
    """One aligned span pair. Unigram stages always have span length 1 on
    both sides; paraphrase spans may be longer."""

    hyp_start: int
    hyp_len: int
    ref_start: int
    ref_len: int
    stage: str


@dataclass(frozen=True)
class Alignment:
    matches: tuple[Match, ...]
    hyp_len: int
    ref_len: int

    def __post_init__(self):
        hyp_used = [False] * self.hyp_len
        ref_used = [False] * self.ref_len
        for m in self.matches:
            if m.stage not in STAGE_ORDER:
                raise ValueError(f"unknown stage {m.stage!r}")
            if m.stage != STAGE_PARAPHRASE and (m.hyp_len != 1 or
                                                m.ref_len != 1):
                raise ValueError(f"{m.stage} matches must be unigrams")
            if m.hyp_len < 1 or m.ref_len < 1:
                raise ValueError("spans must be non-empty")
            for i in range(m.hyp_start, m.hyp_start + m.hyp_len):
                if i < 0 or i >= self.hyp_len or hyp_used[i]:
                    raise ValueError(f"hyp index {i} out of range or reused")
                hyp_used[i] = True
            for j in range(m.ref_start, m.ref_start + m.ref_len):
                if j < 0 or j >= self.ref_len or ref_used[j]:
                    raise ValueError(f"ref index {j} out of range or reused")
                ref_used[j] = True

    @property
    def matched_hyp_tokens(self) -> int:
        return sum(m.hyp_len for m in self.matches)

    @property
    def matched_ref_tokens(self) -> int:
        return sum(m.ref_len for m in self.matches)


@dataclass(frozen=True)
class MeteorParams:
    """alpha balances precision vs recall in the harmonic mean, beta is
    the fragmentation exponent, gamma the fragmentation weight."""

    alpha: float = 0.9
    beta: float = 3.0
    gamma: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must be in [0, 1]")
        if self.beta < 0.0:
            raise ValueError("beta must be >= 0")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError("gamma must be in [0, 1]")


@dataclass(frozen=True)
class MatchResources:
    """Stemmer inventory, synonym lexicon, and paraphrase table shared by
    the matcher stages. Immutable; safe for concurrent use."""

    inventory: SuffixInventory
    synonyms: SynonymLexicon
    paraphrases: ParaphraseTable


def _unigram_pass(hyp_len: int, ref_len: int,
                  hyp_used: list[bool], ref_used: list[bool],
                  stage: str, compatible) -> list[Match]:
    """Greedy left-to-right pass: each free hypothesis index pairs with
    the leftmost free compatible reference index."""
    matches = []
    for i in range(hyp_len):
        if hyp_used[i]:
            continue
        for j in range(ref_len):
            if ref_used[j]:
                continue
            if compatible(i, j):
                matches.append(Match(i, 1, j, 1, stage))
                hyp_used[i] = True
                ref_used[j] = True
                break
    return matches


def _paraphrase_pass(hyp: TokenSequence, ref: TokenSequence,
                     hyp_used: list[bool], ref_used: list[bool],
                     table: ParaphraseTable) -> list[Match]:
    matches = []
    max_len = min(table.max_phrase_len, len(hyp))
    for span_len in range(max_len, 0, -1):
        for i in range(len(hyp) - span_len + 1):
            if any(hyp_used[i:i + span_len]):
                continue
            phrase = tuple(hyp[i:i + span_len])
            equivalents = table.equivalents(phrase)
            if not equivalents:
                continue
            # Leftmost available reference placement wins; ties prefer the
            # longer equivalent phrase, then lexicographic order.
            best = None
            for other in sorted(equivalents, key=lambda p: (-len(p), p)):
                L = len(other)
                if L > len(ref):
                    continue
                for j in range(len(ref) - L + 1):
                    if any(ref_used[j:j + L]):
                        continue
                    if tuple(ref[j:j + L]) == other:
                        if best is None or j < best[0]:
                            best = (j, other)
                        break
            if best is None:
                continue
            j, other = best
            matches.append(Match(i, span_len, j, len(other),
                                 STAGE_PARAPHRASE))
            for k in range(i, i + span_len):
                hyp_used[k] = True
            for k in range(j, j + len(other)):
                ref_used[k] = True
    return matches


def align(hyp: TokenSequence, ref: TokenSequence,
          stages: tuple[str, ...] | frozenset[str],
          resources: MatchResources) -> Alignment:
    """Run the enabled matcher stages in cascade order over (hyp, ref)."""
    enabled = set(stages)
    if not enabled:
        raise ValueError("at least one stage required")
    if STAGE_EXACT not in enabled:
        raise ValueError("the exact stage is the cascade base")
    unknown = enabled - set(STAGE_ORDER)
    if unknown:
        raise ValueError(f"unknown stages: {sorted(unknown)}")

    hyp_used = [False] * len(hyp)
    ref_used = [False] * len(ref)
    matches: list[Match] = []

    for stage in STAGE_ORDER:
        if stage not in enabled:
            continue
        if stage == STAGE_EXACT:
            matches += _unigram_pass(
                len(hyp), len(ref), hyp_used, ref_used, stage,
                lambda i, j: hyp[i] == ref[j])
        elif stage == STAGE_STEM:
            hyp_stems = [stem(t, resources.inventory) for t in hyp]
            ref_stems = [stem(t, resources.inventory) for t in ref]
            matches += _unigram_pass(
                len(hyp), len(ref), hyp_used, ref_used, stage,
                lambda i, j: hyp_stems[i] == ref_stems[j])
        elif stage == STAGE_SYNONYM:
            matches += _unigram_pass(
                len(hyp), len(ref), hyp_used, ref_used, stage,
                lambda i, j: synonyms_match(hyp[i], ref[j],
                                            resources.synonyms))
        elif stage == STAGE_PARAPHRASE:
            matches += _paraphrase_pass(hyp, ref, hyp_used, ref_used,
                                        resources.paraphrases)
    return Alignment(matches=tuple(matches), hyp_len=len(hyp),
                     ref_len=len(ref))


def count_chunks(alignment: Alignment) -> int:
    """Number of maximal runs of matches contiguous and identically
    ordered on both sides; 0 when there are no matches."""
    if not alignment.matches:
        return 0
    ordered = sorted(alignment.matches, key=lambda m: m.hyp_start)
    chunks = 1
    for prev, cur in zip(ordered, ordered[1:]):
        contiguous = (cur.hyp_start == prev.hyp_start + prev.hyp_len and
                      cur.ref_start == prev.ref_start + prev.ref_len)
        if not contiguous:
            chunks += 1
    return chunks


def meteor_segment(hyp: TokenSequence, refs: list[TokenSequence],
                   stages: tuple[str, ...] | frozenset[str],
                   params: MeteorParams,
                   resources: MatchResources,
                   config_id: str | None = None) -> MetricScore:
    """Best score over the references.

    Per reference: precision = matched hyp tokens / |hyp|, recall =
    matched ref tokens / |ref|, combined by the alpha-weighted harmonic
    mean, then discounted by gamma * (chunks / matched hyp tokens)^beta.
    """
    if config_id is None:
        config_id = _config_id_for(stages)
    if len(hyp) == 0 or not refs:
        return MetricScore(0.0, config_id, LEVEL_SEGMENT)
    best = 0.0
    for ref in refs:
        if len(ref) == 0:
            continue
        alignment = align(hyp, ref, stages, resources)
        m_hyp = alignment.matched_hyp_tokens
        if m_hyp == 0:
            continue
        m_ref = alignment.matched_ref_tokens
        precision = m_hyp / len(hyp)
        recall = m_ref / len(ref)
        fmean = (precision * recall) / (params.alpha * precision +
                                        (1.0 - params.alpha) * recall)
        chunks = count_chunks(alignment)
        penalty = params.gamma * (chunks / m_hyp) ** params.beta
        score = (1.0 - penalty) * fmean
        if score > best:
            best = score
    return MetricScore(best, config_id, LEVEL_SEGMENT)


def _config_id_for(stages) -> str:
    enabled = set(stages)
    for config_id, combo in CONFIG_STAGES.items():
        if set(combo) == enabled:
            return config_id
    letters = "".join(s[0] for s in STAGE_ORDER if s in enabled)
    return f"meteor-{letters}"
