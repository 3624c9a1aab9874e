"""Command-line entry points.

Exit codes: 0 success, 1 validation error, 2 I/O error, 64 usage error.

The --corpus flag names the manifest file; the corpus directory layout is
fixed by convention relative to it:

    manifest.tsv          doc_id<TAB>start<TAB>end (1-based inclusive)
    source.txt            one source sentence per line
    ref1.txt .. ref4.txt  reference files (contiguous from 1)
    synonyms.tsv          optional synset lexicon
    paraphrases.tsv       optional paraphrase table
    suffixes.txt          optional stemmer suffixes (packaged default used
                          otherwise)

Runs are reproducible: identical inputs and flags write byte-identical
score and report files.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bleu as bleu_mod
from .corpus import Corpus, attach_system, load_corpus
from .correlate import build_report, write_report_files
from .errors import AnuvadevalError
from .meteor import MatchResources
from .ratings import (
    RatingLog,
    aggregate_human,
    segment_human_score,
)
from .scoring import (
    CORRELATION_EPSILON,
    DEFAULT_CONFIG_IDS,
    ScoringContext,
    parse_config_ids,
    score_corpus,
    write_score_files,
)
from .textproc import (
    default_suffix_inventory,
    empty_paraphrase_table,
    empty_synonym_lexicon,
    load_paraphrase_table,
    load_suffix_inventory,
    load_synonym_lexicon,
    normalize,
    prepare,
    stem,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _corpus_paths(manifest: Path) -> tuple[Path, list[Path]]:
    base = manifest.parent
    source = base / "source.txt"
    refs = []
    for k in range(1, 5):
        candidate = base / f"ref{k}.txt"
        if not candidate.exists():
            break
        refs.append(candidate)
    if not refs:
        raise FileNotFoundError(f"no ref1.txt next to {manifest}")
    return source, refs


def _load_resources(manifest: Path,
                    suffix_override: str | None = None) -> MatchResources:
    base = manifest.parent
    if suffix_override:
        inventory = load_suffix_inventory(suffix_override)
    elif (base / "suffixes.txt").exists():
        inventory = load_suffix_inventory(base / "suffixes.txt")
    else:
        inventory = default_suffix_inventory()
    synonyms = (load_synonym_lexicon(base / "synonyms.tsv")
                if (base / "synonyms.tsv").exists()
                else empty_synonym_lexicon())
    paraphrases = (load_paraphrase_table(base / "paraphrases.tsv")
                   if (base / "paraphrases.tsv").exists()
                   else empty_paraphrase_table())
    return MatchResources(inventory=inventory, synonyms=synonyms,
                          paraphrases=paraphrases)


def _assemble_corpus(manifest: Path, system_specs: list[str],
                     parser: _Parser) -> Corpus:
    source, refs = _corpus_paths(manifest)
    corpus = load_corpus(source, refs, manifest)
    for spec in system_specs:
        if "=" not in spec:
            parser.error(f"--system needs id=path, got {spec!r}")
        system_id, path = spec.split("=", 1)
        corpus = attach_system(corpus, system_id, path)
    return corpus


def _add_corpus_flags(sub: argparse.ArgumentParser, with_systems=True):
    sub.add_argument("--corpus", required=True, type=Path,
                     help="manifest file of the corpus directory")
    if with_systems:
        sub.add_argument("--system", action="append", default=[],
                         metavar="ID=PATH",
                         help="attach a system's hypothesis file "
                              "(repeatable)")


def make_parser() -> _Parser:
    parser = _Parser(prog="anuvadeval",
                     description="English-Hindi MT evaluation toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_tok = sub.add_parser("tokenize", help="normalize and tokenize text")
    p_tok.add_argument("text")

    p_stem = sub.add_parser("stem", help="stem one token")
    p_stem.add_argument("token")
    p_stem.add_argument("--suffixes", help="suffix inventory file")

    p_score = sub.add_parser("score", help="write metric score records")
    _add_corpus_flags(p_score)
    p_score.add_argument("--configs", default=",".join(DEFAULT_CONFIG_IDS),
                         help="comma-separated config ids")
    p_score.add_argument("--refs", type=int, choices=(1, 4), default=4)
    p_score.add_argument("--out", required=True, type=Path)
    p_score.add_argument("--bp-mode", choices=bleu_mod.BP_MODES,
                         default=bleu_mod.BP_PAPER_LINEAR)
    p_score.add_argument("--smooth-epsilon", type=float, default=0.0,
                         help="additive n-gram smoothing (0 disables)")
    p_score.add_argument("--suffixes", help="suffix inventory file")

    p_corr = sub.add_parser("correlate",
                            help="correlate human vs metric scores")
    _add_corpus_flags(p_corr)
    p_corr.add_argument("--configs", default=",".join(DEFAULT_CONFIG_IDS))
    p_corr.add_argument("--method", choices=("pearson", "spearman"),
                        default="pearson")
    p_corr.add_argument("--ratings", required=True, type=Path,
                        help="rating log (JSONL)")
    p_corr.add_argument("--out", required=True, type=Path)
    p_corr.add_argument("--refs", type=int, choices=(1, 4),
                        help="restrict to one reference count")
    p_corr.add_argument("--level", choices=("segment", "document",
                                            "system"),
                        default="segment")
    p_corr.add_argument("--bp-mode", choices=bleu_mod.BP_MODES,
                        default=bleu_mod.BP_PAPER_LINEAR)
    p_corr.add_argument("--suffixes", help="suffix inventory file")

    p_serve = sub.add_parser("serve", help="run the annotation service")
    _add_corpus_flags(p_serve)
    p_serve.add_argument("--judges", required=True,
                         help="comma-separated judge ids (= session ids)")
    p_serve.add_argument("--out", required=True, type=Path,
                         help="directory for the rating log")
    p_serve.add_argument("--port", type=int, default=8040)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--ui", type=Path,
                         help="directory of built UI assets to serve at /")

    p_export = sub.add_parser("export-report",
                              help="write human score roll-ups from a log")
    _add_corpus_flags(p_export)
    p_export.add_argument("--ratings", required=True, type=Path)
    p_export.add_argument("--out", required=True, type=Path)

    return parser


def _cmd_tokenize(args) -> int:
    print(" ".join(prepare(args.text)))
    return EXIT_OK


def _cmd_stem(args) -> int:
    inventory = (load_suffix_inventory(args.suffixes) if args.suffixes
                 else default_suffix_inventory())
    token = normalize(args.token).lower()
    if not token:
        print("error: empty token", file=sys.stderr)
        return EXIT_VALIDATION
    print(stem(token, inventory))
    return EXIT_OK


def _cmd_score(args, parser) -> int:
    corpus = _assemble_corpus(args.corpus, args.system, parser)
    if not corpus.systems:
        parser.error("score requires at least one --system")
    try:
        config_ids = parse_config_ids(args.configs)
    except ValueError as err:
        parser.error(str(err))
    ctx = ScoringContext(resources=_load_resources(args.corpus,
                                                   args.suffixes),
                         bp_mode=args.bp_mode,
                         epsilon=args.smooth_epsilon)
    table = score_corpus(corpus, config_ids, args.refs, ctx)
    for path in write_score_files(table, args.out):
        print(f"wrote {path}")
    return EXIT_OK


def _cmd_correlate(args, parser) -> int:
    corpus = _assemble_corpus(args.corpus, args.system, parser)
    if not corpus.systems:
        parser.error("correlate requires at least one --system")
    try:
        config_ids = parse_config_ids(args.configs)
    except ValueError as err:
        parser.error(str(err))
    if args.refs is not None:
        ref_counts: tuple[int, ...] = (args.refs,)
    elif corpus.max_reference_count >= 4:
        ref_counts = (1, 4)
    else:
        ref_counts = (1,)
    ctx = ScoringContext(resources=_load_resources(args.corpus,
                                                   args.suffixes),
                         bp_mode=args.bp_mode,
                         epsilon=CORRELATION_EPSILON)
    log = RatingLog(args.ratings)
    report = build_report(corpus, log, config_ids, ref_counts,
                          method=args.method, level=args.level, ctx=ctx)
    for path in write_report_files(report, args.out):
        print(f"wrote {path}")
    return EXIT_OK


def _cmd_serve(args, parser) -> int:
    import uvicorn

    from .service import create_app

    corpus = _assemble_corpus(args.corpus, args.system, parser)
    if not corpus.systems:
        parser.error("serve requires at least one --system")
    judges = [j.strip() for j in args.judges.split(",") if j.strip()]
    if not judges:
        parser.error("--judges must name at least one judge")
    args.out.mkdir(parents=True, exist_ok=True)
    app = create_app(corpus, judges, args.out / "ratings.jsonl",
                     ui_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def _cmd_export_report(args, parser) -> int:
    corpus = _assemble_corpus(args.corpus, args.system, parser)
    if not corpus.systems:
        parser.error("export-report requires at least one --system")
    log = RatingLog(args.ratings)
    args.out.mkdir(parents=True, exist_ok=True)

    seg_path = args.out / "human_segment.tsv"
    doc_path = args.out / "human_document.tsv"
    sys_path = args.out / "human_system.tsv"
    with open(seg_path, "w", encoding="utf-8") as seg_fh, \
            open(doc_path, "w", encoding="utf-8") as doc_fh, \
            open(sys_path, "w", encoding="utf-8") as sys_fh:
        seg_fh.write("system_id\tdoc_id\tseg_id\tvalue\tnormalized\n")
        doc_fh.write("system_id\tdoc_id\tvalue\tnormalized\n")
        sys_fh.write("system_id\tvalue\tnormalized\n")
        for system_id in corpus.system_ids:
            system_scores = []
            for doc in corpus.documents:
                doc_scores = []
                for seg in doc.segments:
                    records = log.records_for_item(system_id, seg.doc_id,
                                                   seg.seg_id)
                    if not records:
                        continue
                    score = segment_human_score(records)
                    doc_scores.append(score)
                    seg_fh.write(
                        f"{system_id}\t{seg.doc_id}\t{seg.seg_id}\t"
                        f"{score.value:.6f}\t{score.normalized:.6f}\n")
                if doc_scores:
                    pooled = aggregate_human("document", doc_scores)
                    doc_fh.write(f"{system_id}\t{doc.doc_id}\t"
                                 f"{pooled.value:.6f}\t"
                                 f"{pooled.normalized:.6f}\n")
                    system_scores.extend(doc_scores)
            if system_scores:
                pooled = aggregate_human("system", system_scores)
                sys_fh.write(f"{system_id}\t{pooled.value:.6f}\t"
                             f"{pooled.normalized:.6f}\n")
    for path in (seg_path, doc_path, sys_path):
        print(f"wrote {path}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "tokenize":
            return _cmd_tokenize(args)
        if args.command == "stem":
            return _cmd_stem(args)
        if args.command == "score":
            return _cmd_score(args, parser)
        if args.command == "correlate":
            return _cmd_correlate(args, parser)
        if args.command == "serve":
            return _cmd_serve(args, parser)
        if args.command == "export-report":
            return _cmd_export_report(args, parser)
        parser.error(f"unknown command {args.command!r}")
    except AnuvadevalError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
