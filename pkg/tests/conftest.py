"""Shared fixtures: on-disk corpora, matcher resources, scripted ratings."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from anuvadeval.corpus import Corpus, attach_system, load_corpus
from anuvadeval.meteor import MatchResources
from anuvadeval.ratings import RatingRecord
from anuvadeval.textproc import (
    ParaphraseTable,
    SuffixInventory,
    SynonymLexicon,
    default_suffix_inventory,
)


def write_lines(path: Path, lines: list[str]) -> Path:
    path.write_text("".join(line + "\n" for line in lines),
                    encoding="utf-8")
    return path


def write_corpus_dir(base: Path, sources: list[str],
                     reference_columns: list[list[str]],
                     doc_ranges: list[tuple[str, int, int]]) -> Path:
    """Lay out a corpus directory; returns the manifest path."""
    base.mkdir(parents=True, exist_ok=True)
    write_lines(base / "source.txt", sources)
    for k, refs in enumerate(reference_columns, start=1):
        write_lines(base / f"ref{k}.txt", refs)
    manifest = base / "manifest.tsv"
    write_lines(manifest,
                [f"{d}\t{s}\t{e}" for d, s, e in doc_ranges])
    return manifest


@pytest.fixture
def tiny_corpus(tmp_path) -> Corpus:
    """2 documents x 2 segments, 2 references, no systems."""
    manifest = write_corpus_dir(
        tmp_path / "corpus",
        sources=["the house is big", "he went home",
                 "water is cold", "the cat sat"],
        reference_columns=[
            ["घर बड़ा है", "वह घर गया", "पानी ठंडा है", "बिल्ली बैठी"],
            ["मकान बड़ा है", "वह घर चला गया", "जल ठंडा है", "बिल्ली बैठ गयी"],
        ],
        doc_ranges=[("d1", 1, 2), ("d2", 3, 4)],
    )
    return load_corpus(manifest.parent / "source.txt",
                       [manifest.parent / "ref1.txt",
                        manifest.parent / "ref2.txt"],
                       manifest)


@pytest.fixture
def synonym_fixture() -> SynonymLexicon:
    return SynonymLexicon(membership={
        "घर": frozenset({"17"}),
        "मकान": frozenset({"17"}),
        "पानी": frozenset({"3"}),
        "जल": frozenset({"3"}),
    })


@pytest.fixture
def paraphrase_fixture() -> ParaphraseTable:
    pairs = {
        ("चला", "गया"): frozenset({("गया",), ("निकला",)}),
        ("गया",): frozenset({("चला", "गया")}),
        ("निकला",): frozenset({("चला", "गया")}),
        ("बैठ", "गयी"): frozenset({("बैठी",)}),
        ("बैठी",): frozenset({("बैठ", "गयी")}),
    }
    return ParaphraseTable(equivalents_map=pairs)


@pytest.fixture
def resources(synonym_fixture, paraphrase_fixture) -> MatchResources:
    return MatchResources(inventory=default_suffix_inventory(),
                          synonyms=synonym_fixture,
                          paraphrases=paraphrase_fixture)


def random_resources(rng: random.Random, alphabet: list[str]
                     ) -> MatchResources:
    """Synthetic stem/synonym/paraphrase resources over a token alphabet."""
    suffixes = sorted(rng.sample(alphabet, k=min(2, len(alphabet))))
    inventory = SuffixInventory.from_suffixes(suffixes, min_stem_len=1)
    membership = {}
    for idx in range(3):
        members = rng.sample(alphabet, k=2)
        for token in members:
            membership.setdefault(token, set()).add(str(idx))
    lexicon = SynonymLexicon(membership={
        t: frozenset(ids) for t, ids in membership.items()})
    table = {}
    for _ in range(3):
        a = tuple(rng.choices(alphabet, k=rng.randint(1, 2)))
        b = tuple(rng.choices(alphabet, k=rng.randint(1, 2)))
        table.setdefault(a, set()).add(b)
        table.setdefault(b, set()).add(a)
    paraphrases = ParaphraseTable(equivalents_map={
        p: frozenset(eq) for p, eq in table.items()})
    return MatchResources(inventory=inventory, synonyms=lexicon,
                          paraphrases=paraphrases)


# --- synthetic end-to-end fixture: 2 docs x 10 segments, 3 systems,
# --- 4 references, scripted ratings --------------------------------------

FIXTURE_SYSTEMS = ("alpha", "beta", "gamma")
FIXTURE_VOCAB = [f"w{i:02d}" for i in range(20)]


def _fixture_reference(i: int) -> list[str]:
    return [FIXTURE_VOCAB[(i * 7 + k) % len(FIXTURE_VOCAB)]
            for k in range(8)]


def _fixture_damage(system_index: int, i: int) -> int:
    return (i + 3 * system_index) % 7


def fixture_human_value(system_index: int, i: int) -> int:
    """Scripted 0..4 rating tied (deterministically) to hypothesis damage."""
    return max(0, 4 - (_fixture_damage(system_index, i) + 1) // 2)


def build_fixture_corpus(base: Path) -> tuple[Path, dict[str, Path]]:
    """Write the synthetic corpus; returns (manifest, system hyp files)."""
    n = 20
    sources = [f"source sentence {i:02d}" for i in range(n)]
    base_refs = [_fixture_reference(i) for i in range(n)]
    ref_cols = [
        [" ".join(tokens) for tokens in base_refs],
        [" ".join(["x00"] + tokens[1:]) for tokens in base_refs],
        [" ".join(tokens[::-1]) for tokens in base_refs],
        [" ".join(tokens + ["x01"]) for tokens in base_refs],
    ]
    manifest = write_corpus_dir(
        base, sources, ref_cols,
        [("doc1", 1, 10), ("doc2", 11, 20)])
    write_lines(base / "synonyms.tsv",
                ["1\tw00\tj00", "2\tw05\tj05", "3\tw10\tj10"])
    write_lines(base / "paraphrases.tsv",
                ["w01 w02\tj12", "w03\tj03 j04"])

    hyp_paths = {}
    for s_idx, system_id in enumerate(FIXTURE_SYSTEMS):
        lines = []
        for i in range(n):
            tokens = list(_fixture_reference(i))
            d = _fixture_damage(s_idx, i)
            kept = tokens[: len(tokens) - d]
            junk = [f"j{(i + k) % 15:02d}" for k in range(d)]
            lines.append(" ".join(kept + junk))
        hyp_paths[system_id] = write_lines(base / f"hyp_{system_id}.txt",
                                           lines)
    return manifest, hyp_paths


def load_fixture_corpus(base: Path) -> Corpus:
    manifest, hyp_paths = build_fixture_corpus(base)
    corpus = load_corpus(base / "source.txt",
                         [base / f"ref{k}.txt" for k in range(1, 5)],
                         manifest)
    for system_id, path in hyp_paths.items():
        corpus = attach_system(corpus, system_id, path)
    return corpus


def scripted_rating_records(corpus: Corpus) -> list[RatingRecord]:
    """One judge rates every (system, segment) pair deterministically."""
    records = []
    flat_index = {seg.key: i for i, seg in enumerate(corpus.iter_segments())}
    for s_idx, system_id in enumerate(corpus.system_ids):
        for seg in corpus.iter_segments():
            i = flat_index[seg.key]
            base_value = fixture_human_value(s_idx, i)
            ratings = tuple(
                min(4, base_value + (k % 2)) if base_value < 4
                else base_value
                for k in range(10))
            records.append(RatingRecord(
                judge_id="j1", system_id=system_id, doc_id=seg.doc_id,
                seg_id=seg.seg_id, ratings=ratings,
                timestamp=f"2026-01-01T00:{i:02d}:00Z"))
    return records


def write_rating_log(path: Path, records: list[RatingRecord]) -> Path:
    path.write_text("".join(r.to_json() + "\n" for r in records),
                    encoding="utf-8")
    return path


@pytest.fixture
def fixture_corpus(tmp_path) -> Corpus:
    return load_fixture_corpus(tmp_path / "fixture")
