"""N-gram metric tests, anchored by an independent brute-force scorer.

The oracle below shares no code with the package: explicit slice loops,
plain dicts, its own length and smoothing handling.
"""

import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from anuvadeval.bleu import (
    BP_CLASSIC_EXPONENTIAL,
    BP_PAPER_LINEAR,
    BleuConfig,
    NgramStats,
    bleu_aggregate,
    bleu_segment,
    brevity_factor,
    clipped_matches,
    effective_ref_len,
    ngram_counts,
    nist_variant_from_stats,
    nist_variant_segment,
    pool_stats,
    score_from_stats,
)
from anuvadeval.errors import EmptyHypothesis

ALPHABET = ["a", "b", "c", "d", "e"]


def oracle_ngram_table(seq, n):
    table = {}
    for i in range(len(seq) - n + 1):
        gram = tuple(seq[i:i + n])
        table[gram] = table.get(gram, 0) + 1
    return table


def oracle_bleu(hyp, refs, max_n, bp_mode, epsilon=0.0):
    if len(hyp) == 0:
        return 0.0
    ref_len = None
    for ref in refs:
        length = len(ref)
        if ref_len is None:
            ref_len = length
            continue
        if abs(length - len(hyp)) < abs(ref_len - len(hyp)):
            ref_len = length
        elif abs(length - len(hyp)) == abs(ref_len - len(hyp)) and \
                length < ref_len:
            ref_len = length
    precisions = []
    for n in range(1, max_n + 1):
        total = len(hyp) - n + 1
        if total <= 0:
            precisions.append(1.0)  # no n-grams of this order to get wrong
            continue
        matched = 0
        hyp_table = oracle_ngram_table(hyp, n)
        for gram, count in hyp_table.items():
            best = 0
            for ref in refs:
                in_ref = oracle_ngram_table(ref, n).get(gram, 0)
                if in_ref > best:
                    best = in_ref
            matched += min(count, best)
        if epsilon > 0:
            precisions.append((matched + epsilon) / total)
        else:
            precisions.append(matched / total)
    if any(p == 0.0 for p in precisions):
        return 0.0
    weight = 1.0 / max_n
    log_sum = sum(weight * math.log(p) for p in precisions)
    if len(hyp) >= ref_len:
        factor = 1.0
    elif bp_mode == BP_PAPER_LINEAR:
        factor = len(hyp) / ref_len
    else:
        factor = math.exp(1.0 - ref_len / len(hyp))
    return factor * math.exp(log_sum)


def random_pair(rng, min_hyp_len=0):
    hyp = tuple(rng.choices(ALPHABET, k=rng.randint(min_hyp_len, 8)))
    refs = [tuple(rng.choices(ALPHABET, k=rng.randint(1, 8)))
            for _ in range(rng.randint(1, 4))]
    return hyp, refs


class TestNgramCounts:
    def test_bigram_multiplicities(self):
        counts = ngram_counts(("a", "b", "a", "b"), 2)
        assert counts == {("a", "b"): 2, ("b", "a"): 1}

    def test_full_length_single_gram(self):
        seq = ("x", "y", "z")
        assert ngram_counts(seq, 3) == {("x", "y", "z"): 1}

    def test_order_longer_than_sequence(self):
        assert ngram_counts(("a", "b"), 3) == {}


class TestClippedMatches:
    def test_clipping(self):
        matched, total = clipped_matches(("the", "the", "the"),
                                         [("the", "cat")], 1)
        assert (matched, total) == (1, 3)

    def test_identity(self):
        seq = ("a", "b", "c")
        for n in (1, 2, 3):
            matched, total = clipped_matches(seq, [seq], n)
            assert matched == total == len(seq) - n + 1

    def test_disjoint(self):
        matched, total = clipped_matches(("a", "a"), [("b", "c")], 1)
        assert (matched, total) == (0, 2)

    def test_adding_reference_never_decreases(self):
        rng = random.Random(7)
        for _ in range(200):
            hyp, refs = random_pair(rng, min_hyp_len=1)
            extra = tuple(rng.choices(ALPHABET, k=rng.randint(1, 8)))
            for n in range(1, 5):
                before, _ = clipped_matches(hyp, refs, n)
                after, _ = clipped_matches(hyp, refs + [extra], n)
                assert after >= before


class TestBrevityFactor:
    def test_linear(self):
        assert brevity_factor(3, 4, BP_PAPER_LINEAR) == pytest.approx(0.75)

    @pytest.mark.parametrize("mode", [BP_PAPER_LINEAR,
                                      BP_CLASSIC_EXPONENTIAL])
    def test_no_penalty_when_long_enough(self, mode):
        assert brevity_factor(4, 4, mode) == 1.0
        assert brevity_factor(9, 4, mode) == 1.0

    def test_classic_exponential(self):
        assert brevity_factor(2, 4, BP_CLASSIC_EXPONENTIAL) == \
            pytest.approx(math.exp(-1.0), abs=1e-12)

    def test_empty_hypothesis(self):
        with pytest.raises(EmptyHypothesis):
            brevity_factor(0, 4, BP_PAPER_LINEAR)


def test_effective_ref_len_closest_ties_shorter():
    refs = [("a",) * 2, ("a",) * 6, ("a",) * 4]
    assert effective_ref_len(4, refs) == 4
    assert effective_ref_len(5, refs) == 4  # ties 4 vs 6 -> shorter
    assert effective_ref_len(100, refs) == 6


class TestBleuSegment:
    def test_identity_is_one(self):
        seq = ("a", "b", "c", "d")
        score = bleu_segment(seq, [seq], BleuConfig(max_n=4))
        assert score.value == 1.0

    def test_short_hypothesis_linear_factor(self):
        score = bleu_segment(("a", "b", "c"), [("a", "b", "c", "d")],
                             BleuConfig(max_n=1))
        assert score.value == pytest.approx(0.75, abs=1e-12)

    def test_zero_bigram_overlap_zeroes_score(self):
        score = bleu_segment(("a", "b"), [("b", "a")], BleuConfig(max_n=2))
        # unigram precision is 1 but there is no matching bigram
        assert score.value == 0.0

    def test_empty_hypothesis_scores_zero(self):
        score = bleu_segment((), [("a",)], BleuConfig(max_n=2))
        assert score.value == 0.0

    def test_oracle_equivalence_quick(self):
        rng = random.Random(13)
        for _ in range(300):
            hyp, refs = random_pair(rng)
            for max_n in (1, 2, 3, 4):
                for mode in (BP_PAPER_LINEAR, BP_CLASSIC_EXPONENTIAL):
                    ours = bleu_segment(
                        hyp, refs, BleuConfig(max_n=max_n, bp_mode=mode))
                    expected = oracle_bleu(hyp, refs, max_n, mode)
                    assert ours.value == pytest.approx(expected, abs=1e-12)

    def test_oracle_equivalence_with_smoothing(self):
        rng = random.Random(17)
        for _ in range(200):
            hyp, refs = random_pair(rng)
            for max_n in (1, 2, 3, 4):
                ours = bleu_segment(
                    hyp, refs,
                    BleuConfig(max_n=max_n, epsilon=1e-9))
                expected = oracle_bleu(hyp, refs, max_n, BP_PAPER_LINEAR,
                                       epsilon=1e-9)
                assert ours.value == pytest.approx(expected, abs=1e-12)

    @given(st.integers(0, 2**32 - 1))
    def test_score_bounds(self, seed):
        rng = random.Random(seed)
        hyp, refs = random_pair(rng)
        for mode in (BP_PAPER_LINEAR, BP_CLASSIC_EXPONENTIAL):
            score = bleu_segment(hyp, refs,
                                 BleuConfig(max_n=4, bp_mode=mode))
            assert 0.0 <= score.value <= 1.0


class TestAggregate:
    def test_single_segment_equals_segment_score(self):
        rng = random.Random(3)
        for _ in range(50):
            hyp, refs = random_pair(rng, min_hyp_len=1)
            config = BleuConfig(max_n=2, epsilon=1e-9)
            from anuvadeval.bleu import segment_stats
            stats = segment_stats(hyp, refs, 2)
            pooled = bleu_aggregate([stats], "document", config)
            single = bleu_segment(hyp, refs, config)
            assert pooled.value == pytest.approx(single.value, abs=1e-12)

    def test_identical_segments_score_one(self):
        from anuvadeval.bleu import segment_stats
        seq = ("a", "b", "c")
        stats = [segment_stats(seq, [seq], 2) for _ in range(2)]
        score = bleu_aggregate(stats, "system", BleuConfig(max_n=2))
        assert score.value == 1.0

    def test_pooled_smoothed_precision(self):
        # two unigram stat blocks: (1 of 2 matched) and (0 of 2 matched);
        # pooled p1 = (1 + eps) / 4 and both lengths pool to 4 vs 4.
        eps = 1e-9
        stats = [
            NgramStats(matched=(1,), total=(2,), hyp_len=2, ref_len=2),
            NgramStats(matched=(0,), total=(2,), hyp_len=2, ref_len=2),
        ]
        pooled = pool_stats(stats)
        assert pooled == NgramStats(matched=(1,), total=(4,), hyp_len=4,
                                    ref_len=4)
        score = bleu_aggregate(stats, "document",
                               BleuConfig(max_n=1, epsilon=eps))
        # brute-force pooled computation
        expected = min(1.0, 4 / 4) * math.exp(math.log((1 + eps) / 4))
        assert score.value == pytest.approx(expected, abs=1e-15)


class TestNistVariant:
    def test_identity_is_one(self):
        seq = ("a", "b", "c")
        assert nist_variant_segment(seq, [seq], 2).value == 1.0

    def test_partial_credit_where_bleu_zeroes(self):
        # unigrams all match, no bigram does
        hyp, ref = ("a", "b"), ("b", "a")
        nist = nist_variant_segment(hyp, [ref], 2)
        assert nist.value == pytest.approx(0.5, abs=1e-12)
        assert bleu_segment(hyp, [ref], BleuConfig(max_n=2)).value == 0.0

    def test_all_orders_zero(self):
        assert nist_variant_segment(("a",), [("b",)], 2).value == 0.0

    def test_arithmetic_dominates_geometric(self):
        rng = random.Random(23)
        for _ in range(300):
            max_n = rng.randint(1, 4)
            totals = [rng.randint(1, 9) for _ in range(max_n)]
            matched = [rng.randint(0, t) for t in totals]
            hyp_len = totals[0]
            ref_len = rng.randint(1, 9)
            stats = NgramStats(matched=tuple(matched), total=tuple(totals),
                               hyp_len=hyp_len, ref_len=ref_len)
            arith = nist_variant_from_stats(stats)
            geom = score_from_stats(stats, BleuConfig(max_n=max_n))
            assert arith >= geom - 1e-12
