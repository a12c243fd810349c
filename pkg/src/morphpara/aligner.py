"""Model-1 EM word alignment with intersect+grow symmetrization.

A desk-scale stand-in for a full fertility/distortion alignment pipeline.
Externally produced ``i-j`` alignment files can replace this module.
"""
from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .corpus import BitextCorpus, Link, SentencePair

log = logging.getLogger(__name__)

NULL = "<null>"
S2T = "s2t"
T2S = "t2s"


@dataclass
class LexTable:
    """t[f][e] = t(e|f); ``f`` may be :data:`NULL`."""
    t: dict[str, dict[str, float]] = field(default_factory=dict)
    log_likelihood: list[float] = field(default_factory=list)

    def prob(self, e: str, f: str) -> float:
        return self.t.get(f, {}).get(e, 0.0)

    def __getitem__(self, key: tuple[str, str]) -> float:
        e, f = key
        return self.prob(e, f)


def _sentences(corpus, direction):
    for p in corpus:
        if direction == S2T:
            yield p.source, p.target
        else:
            yield p.target, p.source


def corpus_log_likelihood(t: dict, sents: Sequence[tuple[Sequence[str], Sequence[str]]]) -> float:
    ll = 0.0
    for f_sent, e_sent in sents:
        fs = (NULL,) + tuple(f_sent)
        for e in e_sent:
            s = sum(t.get(f, {}).get(e, 0.0) for f in fs)
            ll += math.log(s / len(fs)) if s > 0 else float("-inf")
    return ll


def train_lex(corpus: BitextCorpus | Iterable[SentencePair], iterations: int = 10,
              direction: str = S2T) -> LexTable:
    """EM for t(e|f) with a NULL source token, uniform start, fixed iteration count."""
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    sents = list(_sentences(corpus, direction))
    if not sents:
        raise ValueError("cannot train on an empty corpus")

    e_vocab = {e for _, es in sents for e in es}
    uniform = 1.0 / len(e_vocab)
    t: dict[str, dict[str, float]] = defaultdict(dict)
    for f_sent, e_sent in sents:
        for f in (NULL,) + tuple(f_sent):
            row = t[f]
            for e in e_sent:
                row[e] = uniform
    t = dict(t)

    history = []
    for it in range(iterations):
        counts: dict[str, dict[str, float]] = defaultdict(lambda: defaultdict(float))
        ll = 0.0
        for f_sent, e_sent in sents:
            fs = (NULL,) + tuple(f_sent)
            for e in e_sent:
                probs = [t[f][e] for f in fs]
                z = sum(probs)
                ll += math.log(z / len(fs))
                for f, p in zip(fs, probs):
                    counts[f][e] += p / z
        history.append(ll)
        t = {}
        for f, row in counts.items():
            total = sum(row.values())
            t[f] = {e: c / total for e, c in row.items()}
        log.debug("EM iteration %d: log-likelihood %.6f", it + 1, ll)
    history.append(corpus_log_likelihood(t, sents))
    return LexTable(t, history)


def viterbi_align(table: LexTable, pair: SentencePair, direction: str = S2T) -> frozenset[Link]:
    """Link each generated word to its most probable conditioning word (or to nothing)."""
    if direction == S2T:
        fs, es = pair.source, pair.target
    else:
        fs, es = pair.target, pair.source
    links = set()
    for j, e in enumerate(es):
        best, best_i = table.prob(e, NULL), None
        for i, f in enumerate(fs):
            p = table.prob(e, f)
            # real words beat NULL on ties; earlier positions beat later ones
            if p > best or (p == best and p > 0 and best_i is None):
                best, best_i = p, i
        if best_i is not None:
            links.add((best_i, j) if direction == S2T else (j, best_i))
    return frozenset(links)


_NEIGHBORS_4 = ((-1, 0), (0, -1), (1, 0), (0, 1))
_NEIGHBORS_8 = _NEIGHBORS_4 + ((-1, -1), (-1, 1), (1, -1), (1, 1))


def symmetrize(fwd: Iterable[Link], rev: Iterable[Link], diagonal: bool = False) -> frozenset[Link]:
    """Intersection, grown with adjacent union links that cover an unaligned word."""
    fwd, rev = set(fwd), set(rev)
    union = fwd | rev
    current = fwd & rev
    src_aligned = {i for i, _ in current}
    tgt_aligned = {j for _, j in current}
    neighbors = _NEIGHBORS_8 if diagonal else _NEIGHBORS_4
    added = True
    while added:
        added = False
        for i, j in sorted(current):
            for di, dj in neighbors:
                cand = (i + di, j + dj)
                if cand in union and cand not in current and (
                        cand[0] not in src_aligned or cand[1] not in tgt_aligned):
                    current.add(cand)
                    src_aligned.add(cand[0])
                    tgt_aligned.add(cand[1])
                    added = True
    return frozenset(current)


@dataclass
class WordAligner:
    iterations: int = 10
    diagonal: bool = False

    def fit(self, corpus: BitextCorpus) -> "WordAligner":
        self.s2t = train_lex(corpus, self.iterations, S2T)
        self.t2s = train_lex(corpus, self.iterations, T2S)
        return self

    def align_pair(self, pair: SentencePair) -> frozenset[Link]:
        return symmetrize(viterbi_align(self.s2t, pair, S2T),
                          viterbi_align(self.t2s, pair, T2S), self.diagonal)

    def align(self, corpus: BitextCorpus) -> BitextCorpus:
        return corpus.with_alignments([self.align_pair(p) for p in corpus])


def align_corpus(corpus: BitextCorpus, iterations: int = 10, diagonal: bool = False) -> BitextCorpus:
    return WordAligner(iterations, diagonal).fit(corpus.without_alignments()).align(corpus)
