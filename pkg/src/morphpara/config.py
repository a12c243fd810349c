"""Pipeline configuration and the system presets.

A YAML file may set any :class:`PipelineConfig` field; command-line flags
override file values, and the file overrides the preset.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields, replace
from fractions import Fraction
from typing import Optional

import yaml

from .corpus import read_vocab
from .lattice import Mode
from .morphology import PROFILES, IdentityAnalyzer, MorphAnalyzer


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class PipelineConfig:
    preset: str = "full"
    morphology: bool = True
    lemmatize_all: bool = False
    lattice_mode: Optional[str] = "full"      # None -> plain linear input
    sent_par: bool = True
    num_indicators: int = 3
    phrase_pivot: bool = True
    # 'noisier'-channel approximation: original + lemmatized bitext, aligned apart, concatenated
    concat_lemma: bool = False

    profiles: tuple[str, ...] = ("lemmatizer", "stemmer")
    lexicon: Optional[str] = None
    min_stem_length: int = 2
    closure_depth: int = 4
    lcs_threshold: str = "1/2"
    segment_compounds: bool = False

    em_iterations: int = 10
    diagonal_grow: bool = False
    max_phrase_len: int = 7
    unseen_weight: float = 0.5
    pivot_floor: float = 0.5

    weights: Optional[tuple[float, ...]] = None
    oov_policy: str = "copy"
    oov_penalty: float = -100.0

    def __post_init__(self):
        if self.lattice_mode is not None:
            Mode(self.lattice_mode)
        if self.num_indicators not in (0, 1, 2, 3):
            raise ConfigError("num_indicators must be 0..3")
        for p in self.profiles:
            if p not in PROFILES:
                raise ConfigError(f"unknown analyzer profile {p!r}")
        if self.em_iterations < 1:
            raise ConfigError("em_iterations must be >= 1")
        object.__setattr__(self, "profiles", tuple(self.profiles))
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))

    def feature_count(self) -> int:
        if not self.sent_par:
            return 5
        return 5 + self.num_indicators + (1 if self.phrase_pivot else 0)

    def analyzer(self, vocab=()):
        if not self.morphology:
            return IdentityAnalyzer()
        vocab = set(vocab)
        if self.lexicon:
            vocab |= read_vocab(self.lexicon)
        cfgs = [replace(PROFILES[p], vocab=frozenset(vocab), min_stem_length=self.min_stem_length,
                        closure_depth=self.closure_depth, lcs_threshold=Fraction(self.lcs_threshold),
                        segment_compounds=self.segment_compounds)
                for p in self.profiles]
        return MorphAnalyzer(cfgs)

    def decoder_weights(self) -> tuple[float, ...]:
        if self.weights is not None:
            return self.weights
        return (1.0,) * self.feature_count() + (1.0, 0.0)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["profiles"] = list(self.profiles)
        if self.weights is not None:
            d["weights"] = list(self.weights)
        return d


_NO_MORPH = dict(morphology=False, lattice_mode=None, sent_par=False, num_indicators=0,
                 phrase_pivot=False)

PRESETS: dict[str, dict] = {
    "baseline": dict(_NO_MORPH),
    "lemmatize-all": dict(_NO_MORPH, morphology=True, lemmatize_all=True),
    "noisier": dict(_NO_MORPH, morphology=True, lattice_mode="lemma_only", concat_lemma=True),
    "orig+lemma": dict(lattice_mode="lemma_only", phrase_pivot=False),
    "lattice+sent-par": dict(lattice_mode="zero_weights", phrase_pivot=False),
    "lattice+sent-par+word-par": dict(lattice_mode="full", phrase_pivot=False),
    "full": dict(lattice_mode="full", phrase_pivot=True),
}
PRESETS["lattice+sent-par+word-par+phrase-par"] = PRESETS["full"]


def preset(name: str, **overrides) -> PipelineConfig:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(sorted(PRESETS))}")
    return PipelineConfig(preset=name, **{**PRESETS[name], **overrides})


_FIELDS = {f.name for f in fields(PipelineConfig)}


def load_config(path: Optional[str] = None, preset_name: Optional[str] = None, **overrides) -> PipelineConfig:
    values: dict = {}
    if path:
        with open(path, encoding="utf-8") as fh:
            loaded = yaml.safe_load(fh) or {}
        if not isinstance(loaded, dict):
            raise ConfigError(f"{path}: top level must be a mapping")
        unknown = set(loaded) - _FIELDS
        if unknown:
            raise ConfigError(f"{path}: unknown keys {sorted(unknown)}")
        values.update(loaded)
    name = preset_name or values.pop("preset", None) or "full"
    values.pop("preset", None)
    values.update({k: v for k, v in overrides.items() if v is not None})
    return preset(name, **values)
