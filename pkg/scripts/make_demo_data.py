"""Write the synthetic bekalan-bekalan bitext to a directory."""
import argparse
import os

from morphpara.corpus import write_bitext, write_lines
from morphpara.demo import test_sentences, train_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir")
    args = ap.parse_args()
    os.makedirs(args.outdir, exist_ok=True)
    write_bitext(train_corpus(), os.path.join(args.outdir, "train.ms"), os.path.join(args.outdir, "train.en"))
    write_lines(os.path.join(args.outdir, "test.ms"), (" ".join(s) for s in test_sentences()))


if __name__ == "__main__":
    main()
