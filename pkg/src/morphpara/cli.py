"""Command-line entry point: ``morphpara <subcommand> ...``.

Exit codes: 0 ok, 1 usage, 2 data error, 3 internal error.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import __version__
from .aligner import WordAligner
from .config import PRESETS, ConfigError, load_config
from .corpus import CorpusError, read_bitext, read_sentences, read_vocab, write_bitext, write_lines
from .decoder import DecodeError, Decoder
from .lattice import LatticeError, Mode, build_lattice, read_lattices, write_lattices
from .phrasetable import Origin, PhraseTable, build_table, collect_phrase_pairs, merge_tables
from .pipeline import run_pipeline
from .pivotphrase import PhraseFormsIndex, PhrasePivotCounts, annotate_pivot_feature
from .pivotword import WordPivot, dump_table, format_dump
from .sentpar import paraphrase_bitext, write_provenance

EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 1, 2, 3

log = logging.getLogger("morphpara")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: usage error: {message}\n")


def _config(args, **overrides):
    return load_config(getattr(args, "config", None), getattr(args, "preset", None), **overrides)


def _analyzer(args, vocab=()):
    cfg = _config(args)
    vocab = set(vocab)
    if getattr(args, "vocab", None):
        vocab |= read_vocab(args.vocab)
    return cfg, cfg.analyzer(vocab)


# ---------------------------------------------------------------- commands

def cmd_analyze(args):
    _, analyzer = _analyzer(args)
    words = list(args.word or [])
    if args.input:
        words += [t for s in read_sentences(args.input) for t in s]
    if not words:
        raise UsageError("give --word or --input")
    for w in words:
        forms = analyzer.forms(w.lower())
        if args.lemma:
            print(analyzer.lemma(w.lower()))
            continue
        if len(words) > 1:
            print(f"# {w}")
        for v in sorted(forms.variants, key=lambda v: v.surface):
            if args.rules:
                print(f"{v.surface}\t{','.join(sorted(r.value for r in v.rules))}")
            else:
                print(v.surface)


def cmd_align(args):
    cfg = _config(args, em_iterations=args.iterations)
    corpus = read_bitext(args.src, args.tgt)
    aligned = WordAligner(cfg.em_iterations, args.diagonal or cfg.diagonal_grow).fit(corpus).align(corpus)
    write_lines(args.out, (" ".join(f"{i}-{j}" for i, j in sorted(p.alignment)) for p in aligned))


def cmd_pivot_words(args):
    corpus = read_bitext(args.src, args.tgt, args.align)
    _, analyzer = _analyzer(args, corpus.source_vocab())
    pivot = WordPivot.from_corpus(corpus, analyzer)
    words = [t for s in read_sentences(args.words) for t in s] if args.words else corpus.source_vocab()
    write_lines(args.out, format_dump(dump_table(words, analyzer, pivot)))


def cmd_build_lattices(args):
    corpus = read_bitext(args.src, args.tgt, args.align)
    cfg, analyzer = _analyzer(args, corpus.source_vocab())
    mode = Mode(args.mode or cfg.lattice_mode or "full")
    pivot = WordPivot.from_corpus(corpus, analyzer, unseen_weight=cfg.unseen_weight) \
        if mode is Mode.FULL else None
    lattices = [build_lattice(s, analyzer, pivot, mode) for s in read_sentences(args.input)]
    write_lattices(args.out, lattices)


def cmd_paraphrase_train(args):
    corpus = read_bitext(args.src, args.tgt)
    _, analyzer = _analyzer(args, corpus.source_vocab())
    out, prov = paraphrase_bitext(corpus, analyzer, with_provenance=True)
    write_bitext(out, args.out_src, args.out_tgt)
    if args.provenance:
        write_provenance(args.provenance, prov)


def cmd_extract_phrases(args):
    cfg = _config(args)
    corpus = read_bitext(args.src, args.tgt, args.align)
    origin = Origin.TPRIME_ONLY if args.paraphrased else Origin.T_ONLY
    build_table(corpus, args.max_len or cfg.max_phrase_len, origin).write(args.out)


def cmd_merge_tables(args):
    merged = merge_tables(PhraseTable.read(args.t), PhraseTable.read(args.tprime), args.indicators)
    merged.write(args.out)


def cmd_pivot_phrases(args):
    cfg = _config(args)
    corpus = read_bitext(args.src, args.tgt, args.align)
    _, analyzer = _analyzer(args, corpus.source_vocab())
    pairs = collect_phrase_pairs(corpus, args.max_len or cfg.max_phrase_len)
    merged = PhraseTable.read(args.table)
    # phrase pairs extracted from the original bitext are exactly the entries of T
    for key, entry in list(merged.items()):
        origin = Origin.T_ONLY if key in pairs else Origin.TPRIME_ONLY
        merged.entries[key] = type(entry)(entry.features, origin)
    counts = PhrasePivotCounts.from_pairs(pairs)
    index = PhraseFormsIndex.build(counts.by_malay, analyzer)
    annotate_pivot_feature(merged, counts, index, cfg.pivot_floor).write(args.out)


def cmd_decode(args):
    cfg = _config(args)
    table = PhraseTable.read(args.table)
    weights = [float(w) for w in args.weights.split(",")] if args.weights else \
        [1.0] * table.feature_count + [1.0, 0.0]
    decoder = Decoder(table, weights, args.oov_policy or cfg.oov_policy, cfg.oov_penalty)
    lines = []
    for lat in read_lattices(args.lattices):
        hyp = decoder.decode(lat)
        lines.append(f"{hyp.text}\t{hyp.score!r}" if args.scores else hyp.text)
    write_lines(args.out, lines)


def cmd_pipeline(args):
    overrides = {}
    if args.indicators is not None:
        overrides["num_indicators"] = args.indicators
    if args.lexicon:
        overrides["lexicon"] = args.lexicon
    cfg = _config(args, **overrides)
    result = run_pipeline(cfg, args.src, args.tgt, args.test, args.outdir, args.align)
    log.info("preset %s: %d table entries, %d features", cfg.preset, len(result.table),
             result.table.feature_count)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="morphpara", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help):
        p = sub.add_parser(name, help=help, description=help)
        p.set_defaults(func=func)
        p.add_argument("--config", help="YAML configuration file")
        return p

    def bitext(p, align=True, align_required=True):
        p.add_argument("--src", required=True, help="Malay side, one tokenized sentence per line")
        p.add_argument("--tgt", required=True, help="English side")
        if align:
            p.add_argument("--align", required=align_required, help="alignment file of i-j pairs")

    def vocab(p):
        p.add_argument("--vocab", help="extra attested words, one per line")
        p.add_argument("--preset", choices=sorted(PRESETS), help="preset supplying defaults")

    p = add("analyze", cmd_analyze, "list the simpler word forms of Malay words")
    p.add_argument("--word", action="append", help="word to analyze (repeatable)")
    p.add_argument("--input", help="file of words or sentences to analyze")
    p.add_argument("--lemma", action="store_true", help="print only the lemma")
    p.add_argument("--rules", action="store_true", help="show generating rule tags")
    vocab(p)

    p = add("align", cmd_align, "word-align a bitext (Model 1 EM + intersect+grow)")
    bitext(p, align=False)
    p.add_argument("--out", required=True, help="output alignment file")
    p.add_argument("--iterations", type=int, help="EM iterations (default 10)")
    p.add_argument("--diagonal", action="store_true", help="grow over diagonal neighbors too")

    p = add("pivot-words", cmd_pivot_words, "dump word paraphrase probabilities Pr(w'|w)")
    bitext(p)
    p.add_argument("--words", help="file whose tokens are scored (default: training vocabulary)")
    p.add_argument("--out", required=True, help="TSV output: w, w', prob")
    vocab(p)

    p = add("build-lattices", cmd_build_lattices, "encode sentences and their paraphrases as lattices")
    bitext(p)
    p.add_argument("--input", required=True, help="sentences to encode")
    p.add_argument("--out", required=True, help="lattice file, one per line")
    p.add_argument("--mode", choices=[m.value for m in Mode], help="arc weighting / variant filter")
    vocab(p)

    p = add("paraphrase-train", cmd_paraphrase_train, "one-substitution sentence paraphrases of a bitext")
    bitext(p, align=False)
    p.add_argument("--out-src", required=True)
    p.add_argument("--out-tgt", required=True)
    p.add_argument("--provenance", help="sidecar: line, position, variant per output line")
    vocab(p)

    p = add("extract-phrases", cmd_extract_phrases, "extract and score a phrase table")
    bitext(p)
    p.add_argument("--out", required=True)
    p.add_argument("--max-len", type=int, help="maximum phrase length (default 7)")
    p.add_argument("--paraphrased", action="store_true", help="mark entries as coming from T'")

    p = add("merge-tables", cmd_merge_tables, "merge T with T' and add indicator features")
    p.add_argument("--t", required=True, help="table from the original bitext")
    p.add_argument("--tprime", required=True, help="table from the augmented bitext")
    p.add_argument("--indicators", type=int, choices=(0, 1, 2, 3), default=3)
    p.add_argument("--out", required=True)

    p = add("pivot-phrases", cmd_pivot_phrases, "append the phrase-pivot feature to a merged table")
    bitext(p)
    p.add_argument("--table", required=True, help="merged table")
    p.add_argument("--out", required=True)
    p.add_argument("--max-len", type=int)
    vocab(p)

    p = add("decode", cmd_decode, "monotone lattice decoding")
    p.add_argument("--lattices", required=True)
    p.add_argument("--table", required=True)
    p.add_argument("--weights", help="comma-separated: one per table feature, then lattice, word penalty")
    p.add_argument("--oov-policy", choices=("copy", "fail"))
    p.add_argument("--scores", action="store_true", help="append a tab-separated score column")
    p.add_argument("--out", required=True)

    p = add("pipeline", cmd_pipeline, "run a full system preset end to end")
    bitext(p, align_required=False)
    p.add_argument("--test", required=True, help="Malay sentences to translate")
    p.add_argument("--outdir", required=True)
    p.add_argument("--preset", choices=sorted(PRESETS), default=None)
    p.add_argument("--indicators", type=int, choices=(0, 1, 2, 3))
    p.add_argument("--lexicon", help="attested-word list for the analyzers")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CorpusError, LatticeError, DecodeError, OSError, ValueError, KeyError) as exc:
        print(f"data error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return 0


if __name__ == "__main__":
    sys.exit(main())
