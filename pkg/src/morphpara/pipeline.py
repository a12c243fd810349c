"""End-to-end system: analysis, alignment, tables, lattices and decoding."""
from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .aligner import align_corpus
from .config import PipelineConfig
from .corpus import BitextCorpus, SentencePair, read_bitext, read_sentences, write_bitext, write_lines
from .decoder import Decoder, Hypothesis
from .lattice import Lattice, build_lattice, linear_lattice, write_lattices
from .phrasetable import Origin, PhraseTable, build_table, collect_phrase_pairs, merge_tables
from .pivotphrase import PhraseFormsIndex, PhrasePivotCounts, annotate_pivot_feature
from .pivotword import WordPivot, dump_table, format_dump
from .sentpar import paraphrase_bitext, write_provenance

log = logging.getLogger(__name__)


@dataclass
class SystemResult:
    config: PipelineConfig
    aligned: BitextCorpus
    table: PhraseTable
    lattices: list[Lattice] = field(default_factory=list)
    hypotheses: list[Hypothesis] = field(default_factory=list)
    augmented: Optional[BitextCorpus] = None
    word_pivot: Optional[WordPivot] = None
    analyzer: object = None

    @property
    def outputs(self) -> list[str]:
        return [h.text for h in self.hypotheses]


def lemmatize_corpus(corpus: BitextCorpus, analyzer) -> BitextCorpus:
    return BitextCorpus(tuple(
        SentencePair(tuple(analyzer.lemma(t) for t in p.source), p.target, p.alignment)
        for p in corpus))


def ensure_aligned(corpus: BitextCorpus, cfg: PipelineConfig) -> BitextCorpus:
    if corpus.aligned:
        return corpus
    return align_corpus(corpus, cfg.em_iterations, cfg.diagonal_grow)


def build_system_table(aligned: BitextCorpus, analyzer, cfg: PipelineConfig):
    """The phrase table for a preset; also returns the augmented bitext when built."""
    if cfg.concat_lemma:
        lemmatized = ensure_aligned(lemmatize_corpus(aligned, analyzer).without_alignments(), cfg)
        both = BitextCorpus(aligned.pairs + lemmatized.pairs)
        return build_table(both, cfg.max_phrase_len), None

    table = build_table(aligned, cfg.max_phrase_len, Origin.T_ONLY)
    if not cfg.sent_par:
        return table, None

    augmented = ensure_aligned(paraphrase_bitext(aligned, analyzer), cfg)
    tprime = build_table(augmented, cfg.max_phrase_len, Origin.TPRIME_ONLY)
    merged = merge_tables(table, tprime, cfg.num_indicators)
    if cfg.phrase_pivot:
        counts = PhrasePivotCounts.from_pairs(collect_phrase_pairs(aligned, cfg.max_phrase_len))
        index = PhraseFormsIndex.build(counts.by_malay, analyzer)
        merged = annotate_pivot_feature(merged, counts, index, cfg.pivot_floor)
    return merged, augmented


def build_input_lattices(sentences: Sequence[Sequence[str]], analyzer, word_pivot,
                         cfg: PipelineConfig) -> list[Lattice]:
    if cfg.lemmatize_all:
        sentences = [[analyzer.lemma(t) for t in s] for s in sentences]
    if cfg.lattice_mode is None:
        return [linear_lattice(s) for s in sentences]
    return [build_lattice(s, analyzer, word_pivot, cfg.lattice_mode) for s in sentences]


def run_system(train: BitextCorpus, test: Sequence[Sequence[str]], cfg: PipelineConfig) -> SystemResult:
    analyzer = cfg.analyzer(train.source_vocab())
    if cfg.lemmatize_all:
        train = lemmatize_corpus(train, analyzer)
    aligned = ensure_aligned(train, cfg)
    table, augmented = build_system_table(aligned, analyzer, cfg)

    word_pivot = None
    if cfg.lattice_mode == "full":
        word_pivot = WordPivot.from_corpus(aligned, analyzer, unseen_weight=cfg.unseen_weight)
    lattices = build_input_lattices(test, analyzer, word_pivot, cfg)
    decoder = Decoder(table, cfg.decoder_weights(), cfg.oov_policy, cfg.oov_penalty)
    hyps = [decoder.decode(lat) for lat in lattices]
    return SystemResult(cfg, aligned, table, lattices, hyps, augmented, word_pivot, analyzer)


def run_pipeline(cfg: PipelineConfig, train_src, train_tgt, test_src, outdir,
                 train_align=None) -> SystemResult:
    """File-level driver; every artifact lands in ``outdir``."""
    os.makedirs(outdir, exist_ok=True)
    train = read_bitext(train_src, train_tgt, train_align)
    test = read_sentences(test_src)
    result = run_system(train, test, cfg)

    path = lambda name: os.path.join(outdir, name)
    write_bitext(result.aligned, path("train.src"), path("train.tgt"), path("train.align"))
    if result.augmented is not None:
        write_bitext(result.augmented, path("augmented.src"), path("augmented.tgt"),
                     path("augmented.align"))
        _, prov = paraphrase_bitext(result.aligned, result.analyzer, with_provenance=True)
        write_provenance(path("augmented.prov"), prov)
    if result.word_pivot is not None:
        rows = dump_table({t for s in test for t in s}, result.analyzer, result.word_pivot)
        write_lines(path("word-pivot.tsv"), format_dump(rows))
    result.table.write(path("phrase-table.txt"))
    write_lattices(path("test.lattices"), result.lattices)
    write_lines(path("output.txt"), result.outputs)
    write_lines(path("output.scores"), (repr(h.score) for h in result.hypotheses))
    with open(path("config.json"), "w", encoding="utf-8") as fh:
        json.dump(result.config.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return result
