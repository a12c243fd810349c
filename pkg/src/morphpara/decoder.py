"""Monotone lattice decoder for integration tests.

No reordering and no language model.  A derivation walks the lattice from
source to sink, each step consuming a sub-path whose labels spell a table
source phrase (or a single arc copied through as an OOV).  Its score is

    sum_k w_k log f_k  +  w_lat * sum log(arc weight)  +  w_wp * |tgt|

with ``weights = [w_1 .. w_F, w_lat, w_wp]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .lattice import Arc, Lattice
from .phrasetable import Phrase, PhraseTable

COPY = "copy"
FAIL = "fail"
OOV_PENALTY = -100.0


class DecodeError(RuntimeError):
    pass


@dataclass(frozen=True)
class Step:
    arcs: tuple[Arc, ...]
    src: Phrase
    tgt: Phrase
    features: Optional[tuple[float, ...]]  # None for a copied OOV arc


@dataclass(frozen=True)
class Hypothesis:
    tokens: tuple[str, ...]
    score: float
    steps: tuple[Step, ...]

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


def step_score(step: Step, weights: Sequence[float], oov_penalty: float = OOV_PENALTY) -> float:
    w_lat, w_wp = weights[-2], weights[-1]
    lat = sum(math.log(a.weight) for a in step.arcs)
    if step.features is None:
        phrase = oov_penalty
    else:
        phrase = sum(w * math.log(f) for w, f in zip(weights, step.features))
    return phrase + w_lat * lat + w_wp * len(step.tgt)


def score_derivation(steps: Sequence[Step], weights: Sequence[float],
                     oov_penalty: float = OOV_PENALTY) -> float:
    return sum(step_score(s, weights, oov_penalty) for s in steps)


class Decoder:
    def __init__(self, table: PhraseTable, weights: Sequence[float],
                 oov_policy: str = COPY, oov_penalty: float = OOV_PENALTY):
        if oov_policy not in (COPY, FAIL):
            raise ValueError(f"unknown OOV policy {oov_policy!r}")
        self.table = table
        self.weights = tuple(float(w) for w in weights)
        if len(self.weights) != table.feature_count + 2:
            raise ValueError(f"expected {table.feature_count + 2} weights "
                             f"(table features + lattice + word penalty), got {len(self.weights)}")
        self.oov_policy = oov_policy
        self.oov_penalty = oov_penalty
        self.options = table.by_source()
        self.prefixes = {src[:k] for src in self.options for k in range(1, len(src) + 1)}

    def _transitions(self, lat: Lattice, out: list[list[Arc]], node: int):
        def walk(n, labels, arcs):
            for a in out[n]:
                lab = labels + (a.label,)
                if lab not in self.prefixes:
                    continue
                path = arcs + (a,)
                for tgt, entry in self.options.get(lab, ()):
                    yield Step(path, lab, tgt, entry.features)
                yield from walk(a.end, lab, path)

        yield from walk(node, (), ())
        if self.oov_policy == COPY:
            for a in out[node]:
                if (a.label,) not in self.options:
                    yield Step((a,), (a.label,), (a.label,), None)

    def decode(self, lat: Lattice) -> Hypothesis:
        out = lat.out_arcs()
        # best[node] = (score, tokens, steps)
        best: list[Optional[tuple[float, tuple, tuple]]] = [None] * lat.node_count
        best[0] = (0.0, (), ())
        stuck = None
        for node in range(lat.node_count - 1):
            if best[node] is None:
                continue
            score, toks, steps = best[node]
            moved = False
            for step in self._transitions(lat, out, node):
                moved = True
                end = step.arcs[-1].end
                cand = (score + step_score(step, self.weights, self.oov_penalty),
                        toks + step.tgt, steps + (step,))
                cur = best[end]
                if cur is None or cand[0] > cur[0] or (cand[0] == cur[0] and cand[1] < cur[1]):
                    best[end] = cand
            if not moved and stuck is None:
                stuck = node
        final = best[-1]
        if final is None:
            raise DecodeError(f"no derivation covers the lattice; stuck at node "
                              f"{stuck if stuck is not None else 0}")
        return Hypothesis(final[1], final[0], final[2])


def decode(lattice: Lattice, table: PhraseTable, weights: Sequence[float],
           oov_policy: str = COPY, oov_penalty: float = OOV_PENALTY) -> tuple[tuple[str, ...], float]:
    hyp = Decoder(table, weights, oov_policy, oov_penalty).decode(lattice)
    return hyp.tokens, hyp.score
