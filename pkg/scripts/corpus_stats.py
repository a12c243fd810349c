"""Report how much a Malay corpus grows under sentence-level paraphrasing.

Prints pair count, mean variants per sentence and the share of tokens with
at least one simpler form, for the default analyzer.
"""
import argparse

from morphpara.config import preset
from morphpara.corpus import read_bitext
from morphpara.sentpar import paraphrase_bitext


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--src", required=True)
    ap.add_argument("--tgt", required=True)
    ap.add_argument("--lexicon", help="attested-word list for the analyzer")
    args = ap.parse_args()
    corpus = read_bitext(args.src, args.tgt)
    analyzer = preset("full", lexicon=args.lexicon).analyzer(corpus.source_vocab())
    augmented = paraphrase_bitext(corpus, analyzer)
    tokens = [t for p in corpus for t in p.source]
    reducible = sum(1 for t in tokens if analyzer.forms(t).alternatives())
    print(f"pairs               {len(corpus)}")
    print(f"augmented pairs     {len(augmented)}")
    print(f"variants / sentence {(len(augmented) - len(corpus)) / len(corpus):.2f}")
    print(f"reducible tokens    {reducible}/{len(tokens)} ({reducible / len(tokens):.1%})")


if __name__ == "__main__":
    main()
