"""Sentence-level paraphrasing of the training bitext.

Each paraphrase replaces exactly one source token with one of its simpler
forms and keeps the original English side.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .corpus import BitextCorpus, SentencePair, write_lines
from .morphology import ParaphraseSet


@dataclass(frozen=True)
class Provenance:
    line: int                   # 1-based line of the original pair
    position: Optional[int]     # substituted source position; None for the original
    variant: str = ""

    def format(self) -> str:
        pos = "-" if self.position is None else str(self.position)
        return f"{self.line}\t{pos}\t{self.variant}"


def sentence_variants(source: tuple[str, ...], forms_fn: Callable[[str], ParaphraseSet]):
    """Yield ``(position, variant_surface, new_source)`` in position-then-surface order."""
    seen = {source}
    for pos, tok in enumerate(source):
        alts = sorted(forms_fn(tok).alternatives(), key=lambda v: v.surface)
        for v in alts:
            new = source[:pos] + v.tokens + source[pos + 1:]
            if new in seen:
                continue
            seen.add(new)
            yield pos, v.surface, new


def paraphrase_bitext(corpus: BitextCorpus, forms_fn: Callable[[str], ParaphraseSet],
                      with_provenance: bool = False):
    """Original pairs first, then every one-substitution variant of each pair.

    Alignments are dropped; the augmented bitext is meant to be re-aligned as
    a whole so originals and paraphrases interact during alignment.
    """
    if not len(corpus):
        raise ValueError("cannot paraphrase an empty corpus")
    pairs = [p.with_alignment(None) for p in corpus]
    prov = [Provenance(n, None) for n in range(1, len(pairs) + 1)]
    for n, pair in enumerate(corpus, 1):
        for pos, surface, src in sentence_variants(pair.source, forms_fn):
            pairs.append(SentencePair(src, pair.target))
            prov.append(Provenance(n, pos, surface))
    out = BitextCorpus(tuple(pairs))
    return (out, prov) if with_provenance else out


def write_provenance(path, provenance) -> None:
    write_lines(path, (p.format() for p in provenance))
