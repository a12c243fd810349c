import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import bitext, consistent_boxes, random_aligned_corpus
from morphpara.aligner import LexTable
from morphpara.corpus import SentencePair
from morphpara.phrasetable import (INDICATOR_FALSE, INDICATOR_TRUE, NUM_CORE, PHRASE_PENALTY, Entry,
                                   Origin, PhrasePair, PhraseTable, build_table, collect_phrase_pairs,
                                   extract_phrases, indicator_values, lexical_weight, merge_tables,
                                   score_table)


def keys(pairs):
    return {(" ".join(p.src), " ".join(p.tgt)) for p in pairs}


@pytest.mark.parametrize("src, tgt, links, expected", [
    ("a b", "A B", {(0, 0), (1, 1)}, {("a", "A"), ("b", "B"), ("a b", "A B")}),
    ("a", "A", {(0, 0)}, {("a", "A")}),
    ("a b", "A", {(0, 0), (1, 0)}, {("a b", "A")}),
])
def test_extraction_examples(src, tgt, links, expected):
    assert keys(extract_phrases(SentencePair.from_strings(src, tgt, links))) == expected


def test_unaligned_word_extension():
    pair = SentencePair.from_strings("a x b", "A B", {(0, 0), (2, 1)})
    got = keys(extract_phrases(pair))
    assert {("a x", "A"), ("x b", "B"), ("a x b", "A B")} <= got
    assert ("x", "A") not in got


def test_max_length_respected():
    n = 9
    words = " ".join(f"w{k}" for k in range(n))
    pair = SentencePair.from_strings(words, words.upper(), {(k, k) for k in range(n)})
    assert max(len(p.src) for p in extract_phrases(pair)) == 7
    assert max(len(p.src) for p in extract_phrases(pair, 3)) == 3


def test_extraction_needs_alignment():
    with pytest.raises(ValueError):
        extract_phrases(SentencePair.from_strings("a", "A"))


def test_score_single_pair():
    table = score_table([PhrasePair(("a",), ("A",), 1, frozenset({(0, 0)}))], LexTable(), LexTable())
    feats = table[("a",), ("A",)].features
    assert feats[:2] == (1.0, 1.0)
    assert feats[4] == PHRASE_PENALTY


def test_score_mle():
    pairs = [PhrasePair(("a",), ("A",), 3), PhrasePair(("a",), ("B",), 1)]
    table = score_table(pairs, LexTable(), LexTable())
    assert table[("a",), ("A",)].features[0] == 0.75
    assert table[("a",), ("B",)].features[0] == 0.25
    assert table[("a",), ("B",)].features[1] == 1.0


def test_score_repeated_pairs_are_summed():
    pairs = [PhrasePair(("a",), ("A",)), PhrasePair(("a",), ("A",)), PhrasePair(("a",), ("B",))]
    assert score_table(pairs, LexTable(), LexTable())[("a",), ("A",)].features[0] == pytest.approx(2 / 3)


def test_score_empty_rejected():
    with pytest.raises(ValueError):
        score_table([], LexTable(), LexTable())


def test_lexical_weight_averages_links():
    lex = LexTable({"a": {"A": 0.5}, "b": {"A": 0.3}})
    assert lexical_weight(("a", "b"), ("A",), frozenset({(0, 0), (1, 0)}), lex) == pytest.approx(0.4)
    lex_null = LexTable({"<null>": {"A": 0.2}})
    assert lexical_weight(("a",), ("A",), frozenset(), lex_null) == pytest.approx(0.2)


def _t_and_tprime():
    t = PhraseTable({(("a",), ("A",)): Entry((0.9,) * 5, Origin.T_ONLY)})
    tprime = PhraseTable({(("a",), ("A",)): Entry((0.1,) * 5, Origin.TPRIME_ONLY),
                          (("b",), ("B",)): Entry((0.2,) * 5, Origin.TPRIME_ONLY)})
    return t, tprime


def test_merge_example():
    merged = merge_tables(*_t_and_tprime(), 3)
    a = merged[("a",), ("A",)]
    b = merged[("b",), ("B",)]
    assert a.features == (0.9,) * 5 + (0.5, 0.5, 1.0) and a.origin is Origin.BOTH
    assert b.features == (0.2,) * 5 + (0.5, 1.0, 0.5) and b.origin is Origin.TPRIME_ONLY


def test_merge_one_indicator():
    merged = merge_tables(*_t_and_tprime(), 1)
    assert merged.feature_count == 6
    assert merged[("a",), ("A",)].features[5:] == (INDICATOR_FALSE,)


def test_merge_subset_adds_no_rows():
    t, _ = _t_and_tprime()
    merged = merge_tables(t, t, 2)
    assert set(merged.keys()) == set(t.keys())
    assert merged[("a",), ("A",)].features == (0.9,) * 5 + (0.5, 0.5)


def test_merge_rejects_bad_count():
    with pytest.raises(ValueError):
        merge_tables(*_t_and_tprime(), 4)


def test_indicator_values():
    assert indicator_values(Origin.T_ONLY, 3) == (INDICATOR_TRUE, INDICATOR_FALSE, INDICATOR_FALSE)
    assert indicator_values(Origin.BOTH, 2) == (0.5, 0.5)


def test_text_round_trip(tmp_path):
    corpus = bitext(("a b c", "A B C", {(0, 0), (1, 2), (2, 1)}), ("a d", "A D", {(0, 0), (1, 1)}))
    table = build_table(corpus)
    path = tmp_path / "t.txt"
    table.write(path)
    again = PhraseTable.read(path)
    assert {k: e.features for k, e in again.items()} == {k: e.features for k, e in table.items()}
    assert again.to_lines() == table.to_lines()
    assert " ||| " in path.read_text().splitlines()[0]


@pytest.mark.parametrize("line", ["a ||| A", "a ||| A ||| x", " ||| A ||| 1"])
def test_table_parse_errors(line):
    with pytest.raises(ValueError):
        PhraseTable.from_lines([line])


def test_table_arity_mismatch():
    with pytest.raises(ValueError):
        PhraseTable.from_lines(["a ||| A ||| 1 1", "b ||| B ||| 1"])


# ---------------------------------------------------------------- properties

@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_extraction_matches_box_oracle_and_swap(seed):
    rng = random.Random(seed)
    corpus = random_aligned_corpus(rng, max_pairs=3, max_len=5)
    for pair in corpus:
        got = {(p.src, p.tgt) for p in extract_phrases(pair)}
        # every consistent box is found; extensions only add unaligned words
        assert consistent_boxes(pair) <= got
        for src, tgt in got:
            assert 1 <= len(src) <= 7 and 1 <= len(tgt) <= 7
        swapped = SentencePair(pair.target, pair.source, frozenset((j, i) for i, j in pair.alignment))
        assert {(t, s) for s, t in got} == {(p.src, p.tgt) for p in extract_phrases(swapped)}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_scored_table_invariants(seed):
    corpus = random_aligned_corpus(random.Random(seed), max_pairs=6, max_len=5)
    if not collect_phrase_pairs(corpus):
        return
    table = build_table(corpus)
    for src, rows in table.by_source().items():
        assert math.isclose(sum(e.features[0] for _, e in rows), 1.0, abs_tol=1e-9)
    for e in table.entries.values():
        assert len(e.features) == NUM_CORE
        assert all(0 < f <= 1 for f in e.features)
        assert e.features[4] == PHRASE_PENALTY


def _nonempty_table(rng, origin=Origin.T_ONLY):
    corpus = random_aligned_corpus(rng, max_pairs=4, max_len=4)
    anchor = SentencePair(("w0",), ("E0",), frozenset({(0, 0)}))
    return build_table(type(corpus)(corpus.pairs + (anchor,)), origin=origin)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 3))
def test_merge_properties(seed, n):
    rng = random.Random(seed)
    t = _nonempty_table(rng)
    tp = _nonempty_table(rng, Origin.TPRIME_ONLY)
    merged = merge_tables(t, tp, n)
    assert len(merged) == len(t) + len(set(tp.keys()) - set(t.keys()))
    assert merged.feature_count == NUM_CORE + n
    for key, entry in merged.items():
        if key in t:
            assert entry.features[:NUM_CORE] == t[key].features
        ind = entry.features[NUM_CORE:]
        assert set(ind) <= {0.5, 1.0}
        if n == 3:
            assert ind.count(1.0) == 1
