"""Phrase-level paraphrase feature via pivoting over English phrases.

For a phrase ``p'`` that only the paraphrased bitext produced, the feature
is ``max_p Pr(p'|p)`` over original phrases ``p`` that reduce to ``p'``;
entries from the original bitext get exactly 1.  Counts come from the
phrase-pair list extracted from the original bitext.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable

from .morphology import ParaphraseSet
from .phrasetable import Entry, Origin, Phrase, PhrasePair, PhraseTable

PIVOT_FLOOR = 0.5


@dataclass
class PhrasePivotCounts:
    cooc: Counter = field(default_factory=Counter)
    by_malay: Counter = field(default_factory=Counter)
    by_english: Counter = field(default_factory=Counter)
    rows: dict = field(default_factory=lambda: defaultdict(Counter))

    def add(self, p: Phrase, e: Phrase, n: int = 1) -> None:
        self.cooc[p, e] += n
        self.by_malay[p] += n
        self.by_english[e] += n
        self.rows[p][e] += n

    @classmethod
    def from_pairs(cls, pairs: dict | Iterable[PhrasePair]) -> "PhrasePivotCounts":
        if isinstance(pairs, dict):
            pairs = pairs.values()
        counts = cls()
        for pp in pairs:
            counts.add(pp.src, pp.tgt, pp.count)
        return counts


def par(q: Phrase, forms_fn: Callable[[str], ParaphraseSet]) -> set[Phrase]:
    """Every phrase made by replacing a non-empty subset of q's tokens with simpler forms."""
    if not q:
        raise ValueError("par() needs a non-empty phrase")
    options = []
    for tok in q:
        options.append([(tok,)] + [v.tokens for v in forms_fn(tok).alternatives()])
    out = set()
    for choice in product(*options):
        if all(c == (tok,) for c, tok in zip(choice, q)):
            continue
        out.add(tuple(t for part in choice for t in part))
    out.discard(tuple(q))
    return out


@dataclass
class PhraseFormsIndex:
    reducible_to: dict[Phrase, set[Phrase]] = field(default_factory=lambda: defaultdict(set))

    @classmethod
    def build(cls, phrases: Iterable[Phrase], forms_fn) -> "PhraseFormsIndex":
        index = cls()
        for q in sorted(set(phrases)):
            for pprime in par(q, forms_fn):
                index.reducible_to[pprime].add(q)
        return index

    def sources(self, pprime: Phrase) -> set[Phrase]:
        return self.reducible_to.get(pprime, set())


def phrase_paraphrase_prob(pprime: Phrase, p: Phrase, counts: PhrasePivotCounts,
                           index: PhraseFormsIndex) -> Fraction:
    total = counts.by_malay.get(p, 0)
    if not total:
        raise KeyError(f"phrase {' '.join(p)!r} not attested in the original phrase list")
    qs = index.sources(pprime)
    if not qs:
        return Fraction(0)
    prob = Fraction(0)
    for e, n in counts.rows[p].items():
        mass = sum(counts.cooc.get((q, e), 0) for q in qs)
        prob += Fraction(mass, counts.by_english[e]) * Fraction(n, total)
    return prob


def pivot_feature(pprime: Phrase, counts: PhrasePivotCounts, index: PhraseFormsIndex,
                  floor: float = PIVOT_FLOOR) -> float:
    candidates = [p for p in index.sources(pprime) if counts.by_malay.get(p, 0)]
    if not candidates:
        return floor
    best = max(phrase_paraphrase_prob(pprime, p, counts, index) for p in candidates)
    return float(best) if best > 0 else floor


def annotate_pivot_feature(merged: PhraseTable, counts: PhrasePivotCounts, index: PhraseFormsIndex,
                           floor: float = PIVOT_FLOOR) -> PhraseTable:
    cache: dict[Phrase, float] = {}
    entries = {}
    for (src, tgt), entry in merged.items():
        if entry.origin is None:
            raise ValueError("pivot annotation needs origin marks on every entry")
        if entry.origin is Origin.TPRIME_ONLY:
            if src not in cache:
                cache[src] = pivot_feature(src, counts, index, floor)
            value = cache[src]
        else:
            value = 1.0
        entries[src, tgt] = Entry(entry.features + (value,), entry.origin)
    return PhraseTable(entries)

