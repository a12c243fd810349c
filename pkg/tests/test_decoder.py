import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import DictForms
from morphpara.decoder import OOV_PENALTY, DecodeError, Decoder, decode, score_derivation, step_score
from morphpara.lattice import Arc, Lattice, build_lattice, linear_lattice
from morphpara.phrasetable import Entry, PhraseTable


def table(rows, n=5):
    return PhraseTable({(tuple(s.split()), tuple(t.split())): Entry(tuple(f) if f else (1.0,) * n)
                        for s, t, f in rows})


def unit(tab):
    return [1.0] * tab.feature_count + [1.0, 0.0]


def test_simple_linear():
    tab = table([("a", "A", None), ("b", "B", None)])
    assert decode(linear_lattice(["a", "b"]), tab, unit(tab)) == (("A", "B"), 0.0)


def test_paraphrase_arc_rescues_oov():
    tab = table([("bekalan", "supply", None), ("lain", "other", None)])
    lat = build_lattice(["bekalan-bekalan", "lain"], DictForms({"bekalan-bekalan": ["bekalan"]}),
                        lambda *_: 0.5)
    tokens, _ = decode(lat, tab, unit(tab))
    assert tokens == ("supply", "other")
    assert decode(linear_lattice(["bekalan-bekalan", "lain"]), tab, unit(tab))[0] == \
        ("bekalan-bekalan", "other")


def test_empty_table_copies_best_path():
    lat = Lattice(3, (Arc(0, 1, "x", 0.5), Arc(0, 1, "y", 1.0), Arc(1, 2, "z")))
    tokens, score = decode(lat, PhraseTable(), [1.0] * 5 + [1.0, 0.0])
    assert tokens == ("y", "z")
    assert score == 2 * OOV_PENALTY


def test_fail_policy_names_node():
    tab = table([("a", "A", None)])
    with pytest.raises(DecodeError, match="node 1"):
        decode(linear_lattice(["a", "b"]), tab, unit(tab), oov_policy="fail")


def test_weight_count_checked():
    with pytest.raises(ValueError):
        Decoder(table([("a", "A", None)]), [1.0] * 5)
    with pytest.raises(ValueError):
        Decoder(PhraseTable(), [1.0] * 7, oov_policy="drop")


def test_multi_word_phrase_preferred_when_better():
    tab = table([("a", "A", [0.1] * 5), ("b", "B", [0.1] * 5), ("a b", "AB", [0.9] * 5)])
    assert decode(linear_lattice(["a", "b"]), tab, unit(tab))[0] == ("AB",)


def test_tie_break_by_target_order():
    tab = table([("a", "Z", None), ("a", "M", None)])
    assert decode(linear_lattice(["a"]), tab, unit(tab))[0] == ("M",)


def test_phrase_spanning_multi_token_arc_chain():
    lat = build_lattice(["keretanya"], DictForms({"keretanya": ["kereta nya"]}), lambda *_: 0.5)
    tab = table([("kereta nya", "his car", None)])
    assert decode(lat, tab, unit(tab))[0] == ("his", "car")


def test_word_penalty_weight():
    tab = table([("a", "A B", None), ("a", "C", None)])
    w = [1.0] * 5 + [1.0, 1.0]
    assert decode(linear_lattice(["a"]), tab, w)[0] == ("A", "B")
    w[-1] = -1.0
    assert decode(linear_lattice(["a"]), tab, w)[0] == ("C",)


# ---------------------------------------------------------------- exhaustive oracle

def enumerate_best(lat, tab, weights):
    """Every (path, segmentation) pair, scored from scratch."""
    options = tab.by_source()
    best = None
    for path in lat.paths():
        labels = [a.label for a in path]
        n = len(labels)
        for cuts in itertools.product([0, 1], repeat=n - 1):
            bounds = [0] + [k + 1 for k, c in enumerate(cuts) if c] + [n]
            choices = []
            for lo, hi in zip(bounds, bounds[1:]):
                src = tuple(labels[lo:hi])
                opts = [(tgt, e.features) for tgt, e in options.get(src, ())]
                if not opts and hi - lo == 1:
                    opts = [(src, None)]
                choices.append([(path[lo:hi], o) for o in opts])
            for combo in itertools.product(*choices):
                score, toks = 0.0, ()
                for arcs, (tgt, feats) in combo:
                    lat_lp = sum(math.log(a.weight) for a in arcs)
                    ph = OOV_PENALTY if feats is None else sum(w * math.log(f) for w, f in zip(weights, feats))
                    score += ph + weights[-2] * lat_lp + weights[-1] * len(tgt)
                    toks += tgt
                if best is None or score > best[0] + 1e-9 or (abs(score - best[0]) <= 1e-9 and toks < best[1]):
                    best = (score, toks)
    return best


@st.composite
def decoding_cases(draw):
    n = draw(st.integers(1, 3))
    tokens = [f"t{k}" for k in range(n)]
    forms = DictForms({t: draw(st.lists(st.sampled_from(["a", "b", "c d"]), max_size=2, unique=True))
                       for t in tokens})
    weight = draw(st.sampled_from([0.2, 0.5, 0.9]))
    lat = build_lattice(tokens, forms, lambda *_: weight)
    src_pool = tokens + ["a", "b", "c", "d", "c d", "t0 a", "a b"]
    rows = {}
    for _ in range(draw(st.integers(0, 12))):
        s = draw(st.sampled_from(src_pool))
        t = draw(st.sampled_from(["X", "Y", "Z W"]))
        rows[s, t] = tuple(draw(st.sampled_from([0.1, 0.3, 0.6, 1.0])) for _ in range(5))
    tab = table([(s, t, f) for (s, t), f in rows.items()])
    weights = [draw(st.sampled_from([0.5, 1.0])) for _ in range(5)] + \
        [draw(st.sampled_from([0.0, 1.0, 2.0])), draw(st.sampled_from([-0.5, 0.0, 0.5]))]
    return lat, tab, weights


@settings(max_examples=80, deadline=None)
@given(decoding_cases())
def test_matches_exhaustive_enumeration(case):
    lat, tab, weights = case
    hyp = Decoder(tab, weights).decode(lat)
    best = enumerate_best(lat, tab, weights)
    assert math.isclose(hyp.score, best[0], abs_tol=1e-9)
    assert math.isclose(score_derivation(hyp.steps, weights), hyp.score, abs_tol=1e-9)
    assert sum(len(s.tgt) for s in hyp.steps) == len(hyp.tokens)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([0.1, 0.3, 0.6]), st.sampled_from([0.0, 0.5, 1.0, 3.0]))
def test_lattice_weight_monotone(low, w_lat):
    # two alternatives with identical table features; only arc weight differs
    lat = Lattice(2, (Arc(0, 1, "x", low), Arc(0, 1, "y", 1.0)))
    tab = table([("x", "A", None), ("y", "B", None)])
    tokens, _ = decode(lat, tab, [1.0] * 5 + [w_lat, 0.0])
    assert tokens == (("B",) if w_lat > 0 else ("A",))
