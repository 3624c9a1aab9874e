"""English-Hindi MT evaluation toolkit.

Scores hypotheses with BLEU (linear or exponential length factor), an
arithmetic-mean n-gram variant, and staged-matching METEOR; collects
ten-criterion 0-4 human ratings through an annotation service; and
correlates human against automatic scores at segment and document level.
"""

from .bleu import (
    BleuConfig,
    MetricScore,
    NgramStats,
    bleu_aggregate,
    bleu_segment,
    brevity_factor,
    clipped_matches,
    ngram_counts,
    nist_variant_segment,
)
from .corpus import (
    Corpus,
    Document,
    Segment,
    SystemOutput,
    attach_system,
    load_corpus,
    load_serialized_corpus,
    save_corpus,
)
from .correlate import (
    CorrelationReport,
    ScoreVectorPair,
    build_report,
    pearson,
    spearman,
)
from .meteor import (
    Alignment,
    Match,
    MatchResources,
    MeteorParams,
    align,
    count_chunks,
    meteor_segment,
    table1_configs,
)
from .ratings import (
    CRITERIA,
    Criterion,
    HumanScore,
    RatingLog,
    RatingRecord,
    aggregate_human,
    segment_human_score,
    validate_and_store,
)
from .scoring import (
    DEFAULT_CONFIG_IDS,
    ScoringContext,
    score_corpus,
    score_segment,
)
from .textproc import (
    ParaphraseTable,
    SuffixInventory,
    SynonymLexicon,
    default_suffix_inventory,
    load_paraphrase_table,
    load_suffix_inventory,
    load_synonym_lexicon,
    normalize,
    stem,
    synonyms_match,
    tokenize,
)

__version__ = "0.1.0"
