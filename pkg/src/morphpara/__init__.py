"""Paraphrase-based handling of Malay derivational morphology for phrase-based MT."""

__version__ = "0.1.0"

from .corpus import BitextCorpus, SentencePair, read_bitext, write_bitext
from .morphology import MorphAnalyzer, RuleConfig, generate_forms, lcs_ratio, lemma

__all__ = [
    "BitextCorpus", "SentencePair", "read_bitext", "write_bitext",
    "MorphAnalyzer", "RuleConfig", "generate_forms", "lcs_ratio", "lemma",
]
