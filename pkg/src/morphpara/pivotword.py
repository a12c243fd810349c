"""Word-level paraphrase probabilities by pivoting through aligned English words.

    Pr(w'|w) = sum_e Pr(w'|e) Pr(e|w)
    Pr(e|w)  = #(w,e) / sum_e' #(w,e')
    Pr(w'|e) = sum over v with w' in forms(v) of #(v,e) / sum_u #(u,e)

A generated form ``w'`` acts as a pseudoword covering every training word
that reduces to it.  Multi-token forms are keyed by their space-joined
surface.  All arithmetic is exact (``Fraction``).
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .corpus import BitextCorpus
from .morphology import ParaphraseSet

FormsFn = Callable[[str], ParaphraseSet]


@dataclass
class PivotCounts:
    cooc: Counter = field(default_factory=Counter)
    by_malay: Counter = field(default_factory=Counter)
    by_english: Counter = field(default_factory=Counter)
    # w -> {e: #(w,e)}; kept alongside cooc for fast row access
    rows: dict = field(default_factory=lambda: defaultdict(Counter))

    def add(self, w: str, e: str, n: int = 1) -> None:
        self.cooc[w, e] += n
        self.by_malay[w] += n
        self.by_english[e] += n
        self.rows[w][e] += n

    def merge(self, other: "PivotCounts") -> "PivotCounts":
        out = PivotCounts()
        for counts in (self, other):
            for (w, e), n in counts.cooc.items():
                out.add(w, e, n)
        return out



class MissingAlignmentError(ValueError):
    pass


def collect_counts(corpus: BitextCorpus) -> PivotCounts:
    """#(w,e): one count per alignment link."""
    counts = PivotCounts()
    for pair in corpus:
        if pair.alignment is None:
            raise MissingAlignmentError("pivot counts need a word-aligned corpus")
        for i, j in pair.alignment:
            counts.add(pair.source[i], pair.target[j])
    return counts


@dataclass
class FormsIndex:
    reducible_to: dict[str, set[str]] = field(default_factory=lambda: defaultdict(set))

    @classmethod
    def build(cls, vocab: Iterable[str], forms_fn: FormsFn) -> "FormsIndex":
        index = cls()
        for v in sorted(vocab):
            for variant in forms_fn(v).variants:
                index.reducible_to[variant.surface].add(v)
        return index

    def sources(self, form: str) -> set[str]:
        return self.reducible_to.get(form, set())


def p_e_given_w(counts: PivotCounts, w: str) -> dict[str, Fraction]:
    total = counts.by_malay.get(w, 0)
    if not total:
        return {}
    return {e: Fraction(n, total) for e, n in counts.rows[w].items() if n}


def p_form_given_e(counts: PivotCounts, index: FormsIndex, wprime: str, e: str) -> Fraction:
    total = counts.by_english.get(e, 0)
    if not total:
        raise KeyError(f"english word {e!r} never aligned in training data")
    mass = sum(counts.cooc.get((v, e), 0) for v in index.sources(wprime))
    return Fraction(mass, total)


def word_paraphrase_prob(counts: PivotCounts, index: FormsIndex, wprime: str, w: str) -> Fraction:
    dist = p_e_given_w(counts, w)
    if not dist or not index.sources(wprime):
        return Fraction(0)
    return sum((p_form_given_e(counts, index, wprime, e) * pe for e, pe in dist.items()), Fraction(0))


class WordPivot:
    """Bundles counts, index and the fallback for words unseen in training.

    ``Pr(e|w)`` is undefined for a test word absent from the bitext (the
    reduplicated OOVs this method targets); such words give each of their
    alternatives ``unseen_weight`` instead.
    """

    def __init__(self, counts: PivotCounts, index: FormsIndex, unseen_weight: Optional[float] = 0.5):
        self.counts = counts
        self.index = index
        self.unseen_weight = unseen_weight
        self._cache: dict[tuple[str, str], float] = {}

    @classmethod
    def from_corpus(cls, corpus: BitextCorpus, forms_fn: FormsFn, **kw) -> "WordPivot":
        counts = collect_counts(corpus)
        return cls(counts, FormsIndex.build(corpus.source_vocab(), forms_fn), **kw)

    def __call__(self, wprime: str, w: str) -> float:
        key = (wprime, w)
        if key not in self._cache:
            if w not in self.counts.by_malay and self.unseen_weight is not None:
                self._cache[key] = self.unseen_weight
            else:
                self._cache[key] = float(word_paraphrase_prob(self.counts, self.index, wprime, w))
        return self._cache[key]


def dump_table(words: Iterable[str], forms_fn: FormsFn, prob_fn: Callable[[str, str], float]):
    """Rows ``(w, w', prob)`` sorted by w, then descending prob, then w'.

    ``prob_fn(w', w)`` is typically a :class:`WordPivot`, so dumped values
    match the lattice weights, fallback included.
    """
    rows = []
    for w in sorted(set(words)):
        scored = [(v.surface, prob_fn(v.surface, w)) for v in forms_fn(w).alternatives()]
        scored.sort(key=lambda x: (-x[1], x[0]))
        rows.extend((w, s, p) for s, p in scored)
    return rows


def format_dump(rows) -> list[str]:
    return [f"{w}\t{s}\t{float(p):.12g}" for w, s, p in rows]
