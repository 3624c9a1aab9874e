"""N-gram precision metrics: BLEU and an arithmetic-mean variant.

Scores use the formula

    score = factor * exp(sum_n w_n * log(p_n))

where p_n is the clipped n-gram precision and `factor` penalizes
hypotheses shorter than the reference. The default length factor is the
linear min(1, hyp_len/ref_len); the classic exponential penalty
exp(1 - ref_len/hyp_len) is available as an option. The arithmetic-mean
variant replaces the geometric mean of the p_n with their plain average,
which keeps partial credit when some n-gram order has zero matches.

All functions are pure over immutable inputs; aggregation across segments
is a commutative fold over pooled counts.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .errors import EmptyHypothesis
from .textproc import TokenSequence

BP_PAPER_LINEAR = "paper_linear"
BP_CLASSIC_EXPONENTIAL = "classic_exponential"
BP_MODES = (BP_PAPER_LINEAR, BP_CLASSIC_EXPONENTIAL)

LEVEL_SEGMENT = "segment"
LEVEL_DOCUMENT = "document"
LEVEL_SYSTEM = "system"


@dataclass(frozen=True)
class MetricScore:
    value: float
    config_id: str
    level: str


@dataclass(frozen=True)
class BleuConfig:
    """Scoring parameters: n-gram order, weights, length-penalty mode,
    and additive smoothing (epsilon=0 disables smoothing)."""

    max_n: int = 4
    weights: tuple[float, ...] = field(default=())
    bp_mode: str = BP_PAPER_LINEAR
    epsilon: float = 0.0

    def __post_init__(self):
        if not 1 <= self.max_n <= 4:
            raise ValueError("max_n must be in 1..4")
        weights = self.weights or tuple([1.0 / self.max_n] * self.max_n)
        object.__setattr__(self, "weights", tuple(float(w) for w in weights))
        if len(self.weights) != self.max_n:
            raise ValueError("need exactly max_n weights")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be non-negative")
        if abs(sum(self.weights) - 1.0) > 1e-9:
            raise ValueError("weights must sum to 1")
        if self.bp_mode not in BP_MODES:
            raise ValueError(f"unknown bp_mode {self.bp_mode!r}")
        if self.epsilon < 0:
            raise ValueError("epsilon must be >= 0")

    @property
    def config_id(self) -> str:
        return f"bleu-{self.max_n}"


@dataclass(frozen=True)
class NgramStats:
    """Clipped-match counts per n-gram order plus the two lengths that
    feed the length factor. Index n-1 holds order n."""

    matched: tuple[int, ...]
    total: tuple[int, ...]
    hyp_len: int
    ref_len: int

    def __post_init__(self):
        if len(self.matched) != len(self.total):
            raise ValueError("matched/total order count mismatch")
        for n, (m, t) in enumerate(zip(self.matched, self.total), start=1):
            if not 0 <= m <= t:
                raise ValueError(f"order {n}: matched {m} outside 0..{t}")


def ngram_counts(seq: TokenSequence, n: int) -> Counter:
    """Multiset of all contiguous n-token windows of seq."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Counter(tuple(seq[i:i + n]) for i in range(len(seq) - n + 1))


def clipped_matches(hyp: TokenSequence, refs: list[TokenSequence],
                    n: int) -> tuple[int, int]:
    """(matched_clipped, total_hyp) for order n.

    Each hypothesis n-gram earns min(its hyp count, its max count in any
    single reference).
    """
    if not refs:
        raise ValueError("at least one reference required")
    hyp_counts = ngram_counts(hyp, n)
    total = max(0, len(hyp) - n + 1)
    if not hyp_counts:
        return 0, total
    ref_max: Counter = Counter()
    for ref in refs:
        for gram, count in ngram_counts(ref, n).items():
            if count > ref_max[gram]:
                ref_max[gram] = count
    matched = sum(min(count, ref_max[gram])
                  for gram, count in hyp_counts.items())
    return matched, total


def effective_ref_len(hyp_len: int, refs: list[TokenSequence]) -> int:
    """Length of the reference closest to hyp_len; ties pick the shorter."""
    lens = sorted(len(r) for r in refs)
    return min(lens, key=lambda L: (abs(L - hyp_len), L))


def brevity_factor(hyp_len: int, ref_len: int,
                   bp_mode: str = BP_PAPER_LINEAR) -> float:
    """Multiplicative length factor in (0, 1]; 1 when hyp_len >= ref_len."""
    if ref_len < 1:
        raise ValueError("ref_len must be >= 1")
    if hyp_len == 0:
        raise EmptyHypothesis("zero-length hypothesis")
    if hyp_len >= ref_len:
        return 1.0
    if bp_mode == BP_PAPER_LINEAR:
        return hyp_len / ref_len
    if bp_mode == BP_CLASSIC_EXPONENTIAL:
        return math.exp(1.0 - ref_len / hyp_len)
    raise ValueError(f"unknown bp_mode {bp_mode!r}")


def segment_stats(hyp: TokenSequence, refs: list[TokenSequence],
                  max_n: int) -> NgramStats:
    """Collect per-order clipped counts and lengths for one segment."""
    matched, total = [], []
    for n in range(1, max_n + 1):
        m, t = clipped_matches(hyp, refs, n)
        matched.append(m)
        total.append(t)
    return NgramStats(matched=tuple(matched), total=tuple(total),
                      hyp_len=len(hyp),
                      ref_len=effective_ref_len(len(hyp), refs))


def pool_stats(stats: list[NgramStats]) -> NgramStats:
    """Sum counts and lengths across segments (corpus-style pooling)."""
    if not stats:
        raise ValueError("at least one segment required")
    orders = len(stats[0].matched)
    if any(len(s.matched) != orders for s in stats):
        raise ValueError("all stats must share max_n")
    return NgramStats(
        matched=tuple(sum(s.matched[i] for s in stats)
                      for i in range(orders)),
        total=tuple(sum(s.total[i] for s in stats) for i in range(orders)),
        hyp_len=sum(s.hyp_len for s in stats),
        ref_len=sum(s.ref_len for s in stats),
    )


def precisions(stats: NgramStats, epsilon: float = 0.0) -> list[float]:
    """p_n per order. With smoothing, epsilon is added to the matched
    count. An order with no hypothesis n-grams at all is vacuously
    perfect (1.0), which keeps the hyp == ref identity exact at every
    hypothesis length."""
    values = []
    for m, t in zip(stats.matched, stats.total):
        if t == 0:
            values.append(1.0)
        elif epsilon > 0:
            values.append((m + epsilon) / t)
        else:
            values.append(m / t)
    return values


def score_from_stats(stats: NgramStats, config: BleuConfig) -> float:
    """Apply the weighted-log-precision formula once to a stats block."""
    if stats.hyp_len == 0:
        return 0.0
    p = precisions(stats, config.epsilon)
    if any(v == 0.0 for v in p):
        return 0.0
    log_sum = sum(w * math.log(v) for w, v in zip(config.weights, p))
    factor = brevity_factor(stats.hyp_len, stats.ref_len, config.bp_mode)
    return factor * math.exp(log_sum)


def bleu_segment(hyp: TokenSequence, refs: list[TokenSequence],
                 config: BleuConfig) -> MetricScore:
    """Sentence-level score; an empty hypothesis scores 0."""
    if len(hyp) == 0:
        return MetricScore(0.0, config.config_id, LEVEL_SEGMENT)
    stats = segment_stats(hyp, refs, config.max_n)
    return MetricScore(score_from_stats(stats, config), config.config_id,
                       LEVEL_SEGMENT)


def bleu_aggregate(stats: list[NgramStats], level: str,
                   config: BleuConfig) -> MetricScore:
    """Document- or system-level score over pooled segment stats."""
    if level not in (LEVEL_DOCUMENT, LEVEL_SYSTEM):
        raise ValueError("level must be document or system")
    pooled = pool_stats(stats)
    return MetricScore(score_from_stats(pooled, config), config.config_id,
                       level)


def nist_variant_from_stats(stats: NgramStats,
                            bp_mode: str = BP_PAPER_LINEAR) -> float:
    """Arithmetic mean of the p_n times the length factor.

    Orders with a zero denominator contribute 0 to the mean, so one empty
    order dilutes the score instead of zeroing it the way the geometric
    mean does.
    """
    if stats.hyp_len == 0:
        return 0.0
    p = []
    for m, t in zip(stats.matched, stats.total):
        p.append(m / t if t > 0 else 0.0)
    factor = brevity_factor(stats.hyp_len, stats.ref_len, bp_mode)
    return factor * sum(p) / len(p)


def nist_variant_segment(hyp: TokenSequence, refs: list[TokenSequence],
                         max_n: int,
                         bp_mode: str = BP_PAPER_LINEAR) -> MetricScore:
    """Sentence-level arithmetic-mean variant; empty hypothesis scores 0."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    config_id = f"nist-{max_n}"
    if len(hyp) == 0:
        return MetricScore(0.0, config_id, LEVEL_SEGMENT)
    stats = segment_stats(hyp, refs, max_n)
    return MetricScore(nist_variant_from_stats(stats, bp_mode), config_id,
                       LEVEL_SEGMENT)
