"""Small synthetic Malay-English bitext for end-to-end checks.

The base word ``bekalan`` (supply) occurs in training; its reduplication
``bekalan-bekalan`` does not, so it is OOV at test time.
"""
from __future__ import annotations

from .corpus import BitextCorpus, SentencePair

TRAIN = [
    ("bekalan makanan", "food supply"),
    ("bekalan air", "water supply"),
    ("bekalan lain", "other supply"),
    ("bekalan ubat", "medicine supply"),
    ("bekalan baru", "new supply"),
    ("bekalan itu besar", "the supply is big"),
    ("khemah lain", "other tents"),
    ("khemah baru", "new tents"),
    ("khemah itu besar", "the tents are big"),
    ("makanan lain", "other food"),
    ("makanan baru", "new food"),
    ("makanannya baik", "his food is good"),
    ("air itu baik", "the water is good"),
    ("air lain", "other water"),
    ("ubat lain", "other medicine"),
    ("ubat itu baik", "the medicine is good"),
    ("ubat baru", "new medicine"),
    ("mangsa gempa", "quake victims"),
    ("mangsa lain", "other victims"),
    ("mangsa itu baik", "the victims are good"),
    ("dua khemah", "two tents"),
    ("dua mangsa", "two victims"),
    ("banyak makanan", "much food"),
    ("banyak air", "much water"),
    ("banyak ubat", "much medicine"),
    ("gempa besar", "big quake"),
    ("gempa itu besar", "the quake is big"),
    ("rumah lain", "other houses"),
    ("rumah baru", "new houses"),
    ("rumahnya kecil", "his houses are small"),
]

TEST = [("bekalan-bekalan", "lain")]


def train_corpus() -> BitextCorpus:
    return BitextCorpus(tuple(SentencePair.from_strings(s, t) for s, t in TRAIN))


def test_sentences() -> list[tuple[str, ...]]:
    return [tuple(s) for s in TEST]
