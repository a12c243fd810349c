"""Shared builders and brute-force oracles for the test suite."""
from fractions import Fraction
from itertools import product
import random

from morphpara.corpus import BitextCorpus, SentencePair
from morphpara.morphology import FormVariant, ParaphraseSet, Rule

GOLDEN_VOCAB = {
    "adik", "beradik", "ajar", "ajaran", "pelajar", "pelajaran", "berpelajaran",
    "kereta", "api", "kerja", "sama", "aceh", "nias", "gunung", "makan", "makanan",
    "bekal", "bekalan", "minum", "minuman",
}


class DictForms:
    """forms_fn backed by a dict word -> list of alternative surfaces."""

    def __init__(self, table):
        self.table = {w: list(alts) for w, alts in table.items()}

    def __call__(self, word):
        variants = {FormVariant((word,), frozenset({Rule.ORIGINAL}))}
        for alt in self.table.get(word, ()):
            rule = Rule.CLITIC_SEG if " " in alt else Rule.AFFIX
            variants.add(FormVariant(tuple(alt.split()), frozenset({rule})))
        return ParaphraseSet(word, frozenset(variants))

    def lemma(self, word):
        singles = [a for a in self.table.get(word, ()) if " " not in a] or [word]
        return min(singles, key=lambda s: (len(s), s))


def bitext(*triples):
    return BitextCorpus(tuple(
        SentencePair.from_strings(s, t, a if a is None else set(a)) for s, t, a in triples))


def random_aligned_corpus(rng: random.Random, max_pairs=20, max_len=6, src_vocab=None, tgt_vocab=None):
    src_vocab = src_vocab or [f"w{k}" for k in range(8)]
    tgt_vocab = tgt_vocab or [f"E{k}" for k in range(6)]
    pairs = []
    for _ in range(rng.randint(1, max_pairs)):
        s = [rng.choice(src_vocab) for _ in range(rng.randint(1, max_len))]
        t = [rng.choice(tgt_vocab) for _ in range(rng.randint(1, max_len))]
        links = {(i, j) for i in range(len(s)) for j in range(len(t)) if rng.random() < 0.3}
        pairs.append(SentencePair(tuple(s), tuple(t), frozenset(links)))
    return BitextCorpus(tuple(pairs))


def random_forms(rng: random.Random, vocab, extra_pool=("x", "y z", "w0", "w1", "q r s")):
    table = {}
    pool = list(vocab) + list(extra_pool)
    for w in vocab:
        k = rng.randint(0, 3)
        alts = {rng.choice(pool) for _ in range(k)} - {w}
        table[w] = sorted(alts)
    return DictForms(table)


# ---------------------------------------------------------------- oracles

def brute_word_pivot(corpus, forms_fn, wprime, w):
    """Nested loops over raw links; no cached marginals."""
    links = [(p.source[i], p.target[j]) for p in corpus for i, j in p.alignment]
    vocab = {tok for p in corpus for tok in p.source}
    total_w = sum(1 for x, _ in links if x == w)
    if total_w == 0:
        return Fraction(0)
    reducible = [v for v in sorted(vocab) if wprime in {f.surface for f in forms_fn(v).variants}]
    result = Fraction(0)
    for e in sorted({e for x, e in links if x == w}):
        p_e_w = Fraction(sum(1 for x, ee in links if x == w and ee == e), total_w)
        total_e = sum(1 for _, ee in links if ee == e)
        p_wp_e = sum((Fraction(sum(1 for x, ee in links if x == v and ee == e), total_e)
                      for v in reducible), Fraction(0))
        result += p_wp_e * p_e_w
    return result


def brute_par(q, forms_fn):
    opts = [[(t,)] + [v.tokens for v in forms_fn(t).variants if not v.is_original] for t in q]
    out = set()
    for choice in product(*opts):
        flat = tuple(x for part in choice for x in part)
        if flat != tuple(q):
            out.add(flat)
    return out


def brute_phrase_pivot(phrase_list, forms_fn, pprime, p):
    """phrase_list: list of (src, tgt) occurrences (with repetition)."""
    total_p = sum(1 for s, _ in phrase_list if s == p)
    result = Fraction(0)
    srcs = sorted({s for s, _ in phrase_list})
    qs = [q for q in srcs if pprime in brute_par(q, forms_fn)]
    for e in sorted({t for s, t in phrase_list if s == p}):
        p_e_p = Fraction(sum(1 for s, t in phrase_list if s == p and t == e), total_p)
        total_e = sum(1 for _, t in phrase_list if t == e)
        p_pp_e = sum((Fraction(sum(1 for s, t in phrase_list if s == q and t == e), total_e)
                      for q in qs), Fraction(0))
        result += p_pp_e * p_e_p
    return result


def consistent_boxes(pair, max_len=7):
    """Every rectangle with >= 1 link and no link crossing its border."""
    out = set()
    n, m = len(pair.source), len(pair.target)
    for s0 in range(n):
        for s1 in range(s0, min(n, s0 + max_len)):
            for t0 in range(m):
                for t1 in range(t0, min(m, t0 + max_len)):
                    inside = [(i, j) for i, j in pair.alignment if s0 <= i <= s1 and t0 <= j <= t1]
                    crossing = [(i, j) for i, j in pair.alignment
                                if (s0 <= i <= s1) != (t0 <= j <= t1)]
                    if inside and not crossing:
                        out.add((pair.source[s0:s1 + 1], pair.target[t0:t1 + 1]))
    return out
