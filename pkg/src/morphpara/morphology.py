"""Reverse Malay word formation to list morphologically simpler forms.

For a word ``x`` the analyzer returns ``forms(x)``: the word itself plus
every simpler word or alternative segmentation reachable by undoing
affixation, compounding, reduplication and clitic attachment, and by
combining those steps.

Two rule profiles are provided (``LEMMATIZER`` and ``STEMMER``); a
:class:`MorphAnalyzer` unions the outputs of any number of profiles.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional


class Rule(str, enum.Enum):
    ORIGINAL = "ORIGINAL"
    AFFIX = "AFFIX"
    COMPOUND = "COMPOUND"
    REDUP = "REDUP"
    CLITIC_STRIP = "CLITIC_STRIP"
    CLITIC_SEG = "CLITIC_SEG"
    DASH_SEG = "DASH_SEG"


DASH = "-"


@dataclass(frozen=True)
class FormVariant:
    tokens: tuple[str, ...]
    rules: frozenset[Rule]

    @property
    def surface(self) -> str:
        return " ".join(self.tokens)

    @property
    def is_original(self) -> bool:
        return Rule.ORIGINAL in self.rules


@dataclass(frozen=True)
class ParaphraseSet:
    original: str
    variants: frozenset[FormVariant]

    def surfaces(self) -> set[str]:
        return {v.surface for v in self.variants}

    def alternatives(self) -> list[FormVariant]:
        """Non-original variants, sorted by surface."""
        return sorted((v for v in self.variants if not v.is_original), key=lambda v: v.tokens)

    def __len__(self):
        return len(self.variants)

    def __contains__(self, surface: str):
        return surface in self.surfaces()


@dataclass(frozen=True)
class RuleConfig:
    name: str = "custom"
    prefixes: tuple[str, ...] = ("meN", "peN", "ber", "ter", "di", "ke", "se", "per", "memper")
    suffixes: tuple[str, ...] = ("kan", "an", "i")
    circumfixes: tuple[tuple[str, str], ...] = (
        ("ke", "an"), ("peN", "an"), ("per", "an"), ("ber", "an"),
        ("meN", "kan"), ("meN", "i"), ("di", "kan"), ("di", "i"),
    )
    enclitics: tuple[str, ...] = ("nya", "lah", "kah", "ku", "mu")
    proclitics: tuple[str, ...] = ("ku", "kau")
    nasal_replacements: Mapping[str, tuple[str, ...]] = field(default_factory=lambda: {
        "meN": ("me", "mem", "men", "meng", "meny", "menge"),
        # pel- is the irregular allomorph seen in pelajar
        "peN": ("pe", "pem", "pen", "peng", "peny", "penge", "pel"),
    })
    # non-nasal prefix allomorphs, e.g. ber- -> be-, bel-
    allomorphs: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    # surface nasal -> initial consonants it may have replaced
    nasal_restorations: Mapping[str, tuple[str, ...]] = field(default_factory=lambda: {
        "mem": ("p",), "men": ("t",), "meng": ("k",), "meny": ("s",),
        "pem": ("p",), "pen": ("t",), "peng": ("k",), "peny": ("s",),
    })
    min_stem_length: int = 2
    vocab: frozenset[str] = frozenset()
    lcs_threshold: Fraction = Fraction(1, 2)
    closure_depth: int = 4
    compounds: bool = True
    segment_compounds: bool = False
    min_compound_part: int = 3
    dash_rules: bool = True

    def __post_init__(self):
        if self.min_stem_length < 2:
            raise ValueError("min_stem_length must be >= 2")
        threshold = Fraction(self.lcs_threshold)
        if not 0 < threshold <= 1:
            raise ValueError("lcs_threshold must lie in (0, 1]")
        object.__setattr__(self, "lcs_threshold", threshold)
        object.__setattr__(self, "vocab", frozenset(self.vocab))
        object.__setattr__(self, "nasal_replacements", _freeze(self.nasal_replacements))
        object.__setattr__(self, "allomorphs", _freeze(self.allomorphs))
        object.__setattr__(self, "nasal_restorations", _freeze(self.nasal_restorations))
        object.__setattr__(self, "circumfixes", tuple(tuple(c) for c in self.circumfixes))
        for attr in ("prefixes", "suffixes", "enclitics", "proclitics"):
            object.__setattr__(self, attr, tuple(getattr(self, attr)))

    def __hash__(self):
        return hash((self.name, self.prefixes, self.suffixes, self.circumfixes, self.enclitics,
                     self.proclitics, self.nasal_replacements, self.allomorphs,
                     self.nasal_restorations, self.min_stem_length, self.vocab,
                     self.lcs_threshold, self.closure_depth, self.compounds,
                     self.segment_compounds, self.min_compound_part, self.dash_rules))

    def with_vocab(self, vocab: Iterable[str]) -> "RuleConfig":
        return replace(self, vocab=frozenset(vocab))

    def surface_prefixes(self, prefix: str) -> tuple[str, ...]:
        if prefix in self.nasal_replacements:
            return self.nasal_replacements[prefix]
        return self.allomorphs.get(prefix, (prefix,))


class _FrozenMap(dict):
    def __hash__(self):
        return hash(tuple(sorted(self.items())))

    def _readonly(self, *a, **k):
        raise TypeError("read-only mapping")

    __setitem__ = __delitem__ = update = pop = clear = setdefault = _readonly


def _freeze(mapping: Mapping[str, Iterable[str]]) -> _FrozenMap:
    return _FrozenMap({k: tuple(v) for k, v in mapping.items()})


LEMMATIZER = RuleConfig(name="lemmatizer")

STEMMER = RuleConfig(
    name="stemmer",
    enclitics=("lah", "kah", "pun", "tah", "ku", "mu", "nya"),
    proclitics=(),
    allomorphs={"ber": ("ber", "be", "bel"), "ter": ("ter", "te"), "per": ("per", "pe", "pel")},
    compounds=False,
    dash_rules=False,
)

PROFILES = {"lemmatizer": LEMMATIZER, "stemmer": STEMMER}


# ---------------------------------------------------------------- LCS guard

def lcs_length(a: str, b: str) -> int:
    prev = [0] * (len(b) + 1)
    for ca in a:
        cur = [0]
        for j, cb in enumerate(b):
            cur.append(prev[j] + 1 if ca == cb else max(prev[j + 1], cur[j]))
        prev = cur
    return prev[-1]


def lcs_ratio(l: str, r: str) -> Fraction:
    """|LCS(l, r)| / min(|l|, |r|) over characters, not necessarily contiguous."""
    if not l or not r:
        raise ValueError("lcs_ratio needs two non-empty strings")
    return Fraction(lcs_length(l, r), min(len(l), len(r)))


def split_dash(word: str) -> Optional[tuple[str, str]]:
    if word.count(DASH) != 1:
        return None
    l, _, r = word.partition(DASH)
    if not l or not r:
        return None
    return l, r


def dash_seg_allowed(word: str, cfg: RuleConfig = LEMMATIZER) -> bool:
    """True when the dash may be split off as its own token (not a reduplication)."""
    sides = split_dash(word)
    if sides is None:
        return False
    return lcs_ratio(*sides) < cfg.lcs_threshold


def is_reduplication(word: str, cfg: RuleConfig = LEMMATIZER) -> bool:
    return split_dash(word) is not None and not dash_seg_allowed(word, cfg)


# ---------------------------------------------------------------- rules

def _attested(stem: str, cfg: RuleConfig) -> bool:
    return len(stem) >= cfg.min_stem_length and (not cfg.vocab or stem in cfg.vocab)


def _clitic_host_ok(host: str, cfg: RuleConfig) -> bool:
    if len(host) < cfg.min_stem_length:
        return False
    # reduplicated hosts are rarely listed in a lexicon
    return not cfg.vocab or host in cfg.vocab or DASH in host


def _restore(surface: str, rest: str, cfg: RuleConfig) -> list[str]:
    return [rest] + [c + rest for c in cfg.nasal_restorations.get(surface, ())]


def strip_affixes(word: str, cfg: RuleConfig) -> set[str]:
    """Stems reachable by removing one prefix, suffix or circumfix layer."""
    stems = set()
    for prefix in cfg.prefixes:
        for surface in cfg.surface_prefixes(prefix):
            if word.startswith(surface):
                stems.update(_restore(surface, word[len(surface):], cfg))
    for suffix in cfg.suffixes:
        if word.endswith(suffix):
            stems.add(word[:-len(suffix)])
    for prefix, suffix in cfg.circumfixes:
        if not word.endswith(suffix):
            continue
        for surface in cfg.surface_prefixes(prefix):
            if word.startswith(surface) and len(word) > len(surface) + len(suffix):
                stems.update(_restore(surface, word[len(surface):-len(suffix)], cfg))
    return {s for s in stems if s != word and _attested(s, cfg)}


def split_compound(word: str, cfg: RuleConfig) -> list[tuple[str, str]]:
    if not cfg.vocab:
        return []
    k = cfg.min_compound_part
    return [(word[:i], word[i:]) for i in range(k, len(word) - k + 1)
            if word[:i] in cfg.vocab and word[i:] in cfg.vocab]


def expand_once(word: str, cfg: RuleConfig = LEMMATIZER, allow_dash_seg: bool = True) -> set[FormVariant]:
    """One application of every applicable reversal rule to a single token."""
    out: dict[tuple[str, ...], set[Rule]] = {}

    def emit(tokens, rule):
        tokens = tuple(tokens)
        if tokens != (word,):
            out.setdefault(tokens, set()).add(rule)

    enclitic_found = False
    for clitic in cfg.enclitics:
        if word.endswith(clitic) and _clitic_host_ok(word[:-len(clitic)], cfg):
            host = word[:-len(clitic)]
            enclitic_found = True
            emit([host], Rule.CLITIC_STRIP)
            emit([host, clitic], Rule.CLITIC_SEG)
    for clitic in cfg.proclitics:
        if word.startswith(clitic) and _clitic_host_ok(word[len(clitic):], cfg):
            host = word[len(clitic):]
            emit([host], Rule.CLITIC_STRIP)
            emit([clitic, host], Rule.CLITIC_SEG)

    if DASH in word:
        if cfg.dash_rules:
            for side in word.split(DASH):
                if len(side) >= cfg.min_stem_length:
                    emit([side], Rule.REDUP)
            if allow_dash_seg and dash_seg_allowed(word, cfg):
                l, r = split_dash(word)
                emit([l, DASH, r], Rule.DASH_SEG)
    else:
        # affixes sit inside clitics, so they are undone only once the clitic is gone
        if not enclitic_found:
            for stem in strip_affixes(word, cfg):
                emit([stem], Rule.AFFIX)
        if cfg.compounds:
            for left, right in split_compound(word, cfg):
                emit([left], Rule.COMPOUND)
                emit([right], Rule.COMPOUND)
                if cfg.segment_compounds:
                    emit([left, right], Rule.COMPOUND)

    return {FormVariant(t, frozenset(r)) for t, r in out.items()}


def generate_forms(word: str, cfg: RuleConfig = LEMMATIZER) -> ParaphraseSet:
    """Closure of :func:`expand_once` up to ``cfg.closure_depth`` substitutions."""
    root = (word,)
    # a reduplication never gets its dash split off, whatever path leads there
    allow_dash = not is_reduplication(word, cfg)
    edges: list[tuple[tuple[str, ...], tuple[str, ...], frozenset[Rule]]] = []
    seen = {root}
    frontier = [root]
    for _ in range(cfg.closure_depth):
        nxt = []
        for seq in frontier:
            for pos, tok in enumerate(seq):
                if tok == DASH:
                    continue
                for v in sorted(_expand_cached(tok, cfg, allow_dash), key=lambda v: v.tokens):
                    child = seq[:pos] + v.tokens + seq[pos + 1:]
                    if child == root:
                        continue
                    edges.append((seq, child, v.rules))
                    if child not in seen:
                        seen.add(child)
                        nxt.append(child)
        frontier = nxt
        if not frontier:
            break

    tags: dict[tuple[str, ...], set[Rule]] = {s: set() for s in seen}
    changed = True
    while changed:
        changed = False
        for parent, child, rules in edges:
            new = tags[child] | tags[parent] | rules
            if new != tags[child]:
                tags[child] = new
                changed = True
    tags[root] = {Rule.ORIGINAL}
    return ParaphraseSet(word, frozenset(FormVariant(s, frozenset(r)) for s, r in tags.items()))


@lru_cache(maxsize=200_000)
def _expand_cached(word: str, cfg: RuleConfig, allow_dash: bool) -> frozenset[FormVariant]:
    return frozenset(expand_once(word, cfg, allow_dash))


def lemma_of(forms: ParaphraseSet) -> str:
    singles = [v.tokens[0] for v in forms.variants if len(v.tokens) == 1]
    if not singles:
        return forms.original
    return min(singles, key=lambda s: (len(s), s))


def lemma(word: str, cfg: RuleConfig = LEMMATIZER) -> str:
    """Shortest single-token form of ``word`` (ties broken alphabetically)."""
    return lemma_of(generate_forms(word, cfg))


class MorphAnalyzer:
    """Union of several rule profiles; callable as a ``forms_fn``."""

    def __init__(self, configs: Iterable[RuleConfig] = (LEMMATIZER, STEMMER)):
        self.configs = tuple(configs)
        if not self.configs:
            raise ValueError("at least one RuleConfig is required")
        self._cache: dict[str, ParaphraseSet] = {}

    @classmethod
    def with_vocab(cls, vocab: Iterable[str], configs=(LEMMATIZER, STEMMER)) -> "MorphAnalyzer":
        vocab = frozenset(vocab)
        return cls(c.with_vocab(vocab) for c in configs)

    def forms(self, word: str) -> ParaphraseSet:
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        merged: dict[tuple[str, ...], set[Rule]] = {}
        for cfg in self.configs:
            for v in generate_forms(word, cfg).variants:
                merged.setdefault(v.tokens, set()).update(v.rules)
        result = ParaphraseSet(word, frozenset(FormVariant(t, frozenset(r)) for t, r in merged.items()))
        self._cache[word] = result
        return result

    __call__ = forms

    def lemma(self, word: str) -> str:
        return lemma_of(self.forms(word))


class IdentityAnalyzer:
    """forms(x) = {x}; the no-morphology path."""

    def forms(self, word: str) -> ParaphraseSet:
        return ParaphraseSet(word, frozenset({FormVariant((word,), frozenset({Rule.ORIGINAL}))}))

    __call__ = forms

    def lemma(self, word: str) -> str:
        return word
