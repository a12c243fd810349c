"""Translate the reduplicated-OOV demo sentence with every preset.

Prints one line per preset: name, table arity, output and score.  The
baseline copies ``bekalan-bekalan`` through untranslated; presets with
morphological lattices translate it via the ``bekalan`` arc.
"""
import argparse

from morphpara.config import PRESETS, preset
from morphpara.demo import test_sentences, train_corpus
from morphpara.pipeline import run_system


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--preset", action="append", choices=sorted(PRESETS),
                    help="preset to run (repeatable; default: all)")
    args = ap.parse_args()
    train, test = train_corpus(), test_sentences()
    print("input:", " ".join(test[0]))
    for name in args.preset or sorted(PRESETS):
        result = run_system(train, test, preset(name))
        hyp = result.hypotheses[0]
        print(f"{name:38s} {result.table.feature_count:2d} features  {hyp.text:30s} {hyp.score:.3f}")


if __name__ == "__main__":
    main()
