"""Phrase extraction, scoring, merging and the ``|||`` table format.

Core features per entry, in order: p(tgt|src), p(src|tgt), lex(tgt|src),
lex(src|tgt), phrase penalty.  Merging appends provenance indicators; the
phrase pivot feature, when present, is the last column.
"""
from __future__ import annotations

import enum
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

from .aligner import NULL, LexTable
from .corpus import BitextCorpus, Link, SentencePair, read_lines, write_lines

Phrase = tuple[str, ...]
Key = tuple[Phrase, Phrase]

MAX_PHRASE_LEN = 7
# -log(penalty) == 1
PHRASE_PENALTY = math.exp(-1)
INDICATOR_TRUE = 1.0
INDICATOR_FALSE = 0.5
LEX_FLOOR = 1e-10
NUM_CORE = 5


class Origin(str, enum.Enum):
    T_ONLY = "T"
    TPRIME_ONLY = "T'"
    BOTH = "T+T'"


@dataclass(frozen=True)
class PhrasePair:
    src: Phrase
    tgt: Phrase
    count: int = 1
    # most frequent within-phrase alignment, local indices
    alignment: frozenset[Link] = frozenset()

    @property
    def key(self) -> Key:
        return self.src, self.tgt


# ------------------------------------------------------------ extraction

def extract_spans(pair: SentencePair, max_len: int = MAX_PHRASE_LEN):
    """Inclusive (s0, s1, t0, t1) boxes consistent with the alignment."""
    if pair.alignment is None:
        raise ValueError("phrase extraction needs an aligned sentence pair")
    links = pair.alignment
    n_src, n_tgt = len(pair.source), len(pair.target)
    tgt_aligned = {j for _, j in links}
    spans = []
    for s0 in range(n_src):
        for s1 in range(s0, min(n_src, s0 + max_len)):
            inside = [j for i, j in links if s0 <= i <= s1]
            if not inside:
                continue
            t0, t1 = min(inside), max(inside)
            if t1 - t0 + 1 > max_len:
                continue
            if any(t0 <= j <= t1 and not s0 <= i <= s1 for i, j in links):
                continue
            lo = t0
            while lo >= 0 and (lo == t0 or lo not in tgt_aligned):
                hi = t1
                while hi < n_tgt and (hi == t1 or hi not in tgt_aligned):
                    if hi - lo + 1 <= max_len:
                        spans.append((s0, s1, lo, hi))
                    hi += 1
                lo -= 1
    return spans


def _local_alignment(links, s0, s1, t0, t1) -> frozenset[Link]:
    return frozenset((i - s0, j - t0) for i, j in links if s0 <= i <= s1 and t0 <= j <= t1)


def _phrase_occurrences(pair: SentencePair, max_len: int):
    for s0, s1, t0, t1 in extract_spans(pair, max_len):
        yield (pair.source[s0:s1 + 1], pair.target[t0:t1 + 1],
               _local_alignment(pair.alignment, s0, s1, t0, t1))


def _aggregate(occurrences) -> dict[Key, PhrasePair]:
    counts: Counter = Counter()
    aligns: dict[Key, Counter] = defaultdict(Counter)
    for src, tgt, local in occurrences:
        counts[src, tgt] += 1
        aligns[src, tgt][local] += 1
    out = {}
    for key, n in counts.items():
        best = min(aligns[key].items(), key=lambda kv: (-kv[1], sorted(kv[0])))[0]
        out[key] = PhrasePair(key[0], key[1], n, best)
    return out


def extract_phrases(pair: SentencePair, max_len: int = MAX_PHRASE_LEN) -> set[PhrasePair]:
    return set(_aggregate(_phrase_occurrences(pair, max_len)).values())


def collect_phrase_pairs(corpus: BitextCorpus, max_len: int = MAX_PHRASE_LEN) -> dict[Key, PhrasePair]:
    """Extraction multiset over a corpus, keyed by (src, tgt)."""
    def occurrences():
        for pair in corpus:
            yield from _phrase_occurrences(pair, max_len)
    return _aggregate(occurrences())


# ------------------------------------------------------------ lexical tables

def lexical_tables_from_alignments(corpus: BitextCorpus) -> tuple[LexTable, LexTable]:
    """Relative-frequency w(e|f) and w(f|e) from word links; unaligned words pair with NULL."""
    s2t: dict = defaultdict(Counter)
    t2s: dict = defaultdict(Counter)
    for p in corpus:
        if p.alignment is None:
            raise ValueError("lexical tables need an aligned corpus")
        src_linked = {i for i, _ in p.alignment}
        tgt_linked = {j for _, j in p.alignment}
        for i, j in p.alignment:
            s2t[p.source[i]][p.target[j]] += 1
            t2s[p.target[j]][p.source[i]] += 1
        for j, e in enumerate(p.target):
            if j not in tgt_linked:
                s2t[NULL][e] += 1
        for i, f in enumerate(p.source):
            if i not in src_linked:
                t2s[NULL][f] += 1

    def normalize(table):
        return LexTable({f: {e: c / sum(row.values()) for e, c in row.items()}
                         for f, row in table.items()})

    return normalize(s2t), normalize(t2s)


def lexical_weight(src: Phrase, tgt: Phrase, alignment: frozenset[Link], table: LexTable) -> float:
    """prod over tgt words of the mean t(e|f) over linked src words (NULL when unlinked)."""
    weight = 1.0
    for j, e in enumerate(tgt):
        linked = [i for i, jj in alignment if jj == j]
        if linked:
            weight *= sum(table.prob(e, src[i]) for i in linked) / len(linked)
        else:
            weight *= table.prob(e, NULL)
    return min(1.0, max(weight, LEX_FLOOR))


# ------------------------------------------------------------ tables

@dataclass(frozen=True)
class Entry:
    features: tuple[float, ...]
    origin: Optional[Origin] = None


@dataclass
class PhraseTable:
    entries: dict[Key, Entry] = field(default_factory=dict)

    def __len__(self):
        return len(self.entries)

    def __contains__(self, key):
        return key in self.entries

    def __getitem__(self, key) -> Entry:
        return self.entries[key]

    def keys(self):
        return self.entries.keys()

    def items(self):
        return self.entries.items()

    @property
    def feature_count(self) -> int:
        counts = {len(e.features) for e in self.entries.values()}
        if len(counts) > 1:
            raise ValueError(f"inconsistent feature arity {sorted(counts)}")
        return counts.pop() if counts else NUM_CORE

    def by_source(self) -> dict[Phrase, list[tuple[Phrase, Entry]]]:
        out: dict = defaultdict(list)
        for (src, tgt), entry in sorted(self.entries.items()):
            out[src].append((tgt, entry))
        return dict(out)

    def max_source_length(self) -> int:
        return max((len(s) for s, _ in self.entries), default=0)

    # ---- text format
    def to_lines(self) -> list[str]:
        return [f"{' '.join(s)} ||| {' '.join(t)} ||| {' '.join(repr(float(x)) for x in e.features)}"
                for (s, t), e in sorted(self.entries.items())]

    @classmethod
    def from_lines(cls, lines: Iterable[str], origin: Optional[Origin] = None) -> "PhraseTable":
        entries = {}
        for n, line in enumerate(lines, 1):
            if not line.strip():
                continue
            parts = [p.strip() for p in line.split("|||")]
            if len(parts) != 3 or not parts[0] or not parts[1]:
                raise ValueError(f"line {n}: expected 'src ||| tgt ||| features'")
            try:
                feats = tuple(float(x) for x in parts[2].split())
            except ValueError:
                raise ValueError(f"line {n}: non-numeric feature") from None
            entries[tuple(parts[0].split()), tuple(parts[1].split())] = Entry(feats, origin)
        table = cls(entries)
        table.feature_count  # arity check
        return table

    def write(self, path) -> None:
        write_lines(path, self.to_lines())

    @classmethod
    def read(cls, path, origin: Optional[Origin] = None) -> "PhraseTable":
        return cls.from_lines(read_lines(path), origin)


def score_table(pairs: dict[Key, PhrasePair] | Iterable[PhrasePair],
                lex_s2t: LexTable, lex_t2s: LexTable,
                origin: Origin = Origin.T_ONLY) -> PhraseTable:
    """MLE phrase probabilities, lexical weights and the constant penalty."""
    if isinstance(pairs, dict):
        pairs = list(pairs.values())
    else:
        merged: dict[Key, PhrasePair] = {}
        for p in pairs:
            if p.key in merged:
                old = merged[p.key]
                merged[p.key] = replace(old, count=old.count + p.count)
            else:
                merged[p.key] = p
        pairs = list(merged.values())
    if not pairs:
        raise ValueError("cannot score an empty phrase multiset")

    src_total: Counter = Counter()
    tgt_total: Counter = Counter()
    for p in pairs:
        src_total[p.src] += p.count
        tgt_total[p.tgt] += p.count

    entries = {}
    for p in pairs:
        reverse_align = frozenset((j, i) for i, j in p.alignment)
        feats = (
            p.count / src_total[p.src],
            p.count / tgt_total[p.tgt],
            lexical_weight(p.src, p.tgt, p.alignment, lex_s2t),
            lexical_weight(p.tgt, p.src, reverse_align, lex_t2s),
            PHRASE_PENALTY,
        )
        entries[p.key] = Entry(feats, origin)
    return PhraseTable(entries)


def build_table(corpus: BitextCorpus, max_len: int = MAX_PHRASE_LEN,
                origin: Origin = Origin.T_ONLY) -> PhraseTable:
    s2t, t2s = lexical_tables_from_alignments(corpus)
    return score_table(collect_phrase_pairs(corpus, max_len), s2t, t2s, origin)


def indicator_values(origin: Origin, num_indicators: int) -> tuple[float, ...]:
    flags = (origin is Origin.T_ONLY, origin is Origin.TPRIME_ONLY, origin is Origin.BOTH)
    return tuple(INDICATOR_TRUE if f else INDICATOR_FALSE for f in flags[:num_indicators])


def merge_tables(t: PhraseTable, tprime: PhraseTable, num_indicators: int = 3) -> PhraseTable:
    """All of T (its own features win), plus T' entries missing from T, plus indicators."""
    if num_indicators not in (0, 1, 2, 3):
        raise ValueError("num_indicators must be between 0 and 3")
    entries = {}
    for key, entry in t.items():
        origin = Origin.BOTH if key in tprime else Origin.T_ONLY
        entries[key] = Entry(entry.features[:NUM_CORE] + indicator_values(origin, num_indicators), origin)
    for key, entry in tprime.items():
        if key not in t:
            entries[key] = Entry(entry.features[:NUM_CORE]
                                 + indicator_values(Origin.TPRIME_ONLY, num_indicators),
                                 Origin.TPRIME_ONLY)
    return PhraseTable(entries)
