"""Weighted word lattices over one source sentence.

Text format: one lattice per line, written as a Python-literal tuple of node
blocks; block ``k`` lists the arcs leaving node ``k`` as
``(label, weight, offset)`` triples with ``offset = to - from >= 1``.  The
sink node has no block.  Arcs produced by the zero-weight configurations
carry a fourth element, the string ``"zero"``::

    ((('a',1.0,1),),(('b',1.0,1),),)
"""
from __future__ import annotations

import ast
import enum
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .morphology import ParaphraseSet, lemma_of

ZERO_FLAG = "zero"


class Mode(str, enum.Enum):
    FULL = "full"
    ZERO_WEIGHTS = "zero_weights"
    LEMMA_ONLY = "lemma_only"


class LatticeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Arc:
    start: int
    end: int
    label: str
    weight: float = 1.0
    zero: bool = False


@dataclass(frozen=True)
class Lattice:
    node_count: int
    arcs: tuple[Arc, ...]

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(sorted(self.arcs)))
        validate(self)

    def out_arcs(self) -> list[list[Arc]]:
        out: list[list[Arc]] = [[] for _ in range(self.node_count)]
        for a in self.arcs:
            out[a.start].append(a)
        return out

    @property
    def sink(self) -> int:
        return self.node_count - 1

    def paths(self):
        """All source-to-sink arc sequences (exponential; for tests and oracles)."""
        out = self.out_arcs()

        def walk(node):
            if node == self.sink:
                yield ()
                return
            for a in out[node]:
                for rest in walk(a.end):
                    yield (a,) + rest

        return list(walk(0))


def validate(lat: Lattice) -> None:
    n = lat.node_count
    if n < 2:
        raise LatticeError("a lattice needs at least two nodes")
    has_out = [False] * n
    has_in = [False] * n
    seen = set()
    for a in lat.arcs:
        if not 0 <= a.start < a.end < n:
            raise LatticeError(f"arc {a.start}->{a.end} breaks topological order")
        if not 0.0 < a.weight <= 1.0:
            raise LatticeError(f"arc weight {a.weight} outside (0, 1]")
        if (a.start, a.label, a.end) in seen:
            raise LatticeError(f"duplicate arc {a.label!r} {a.start}->{a.end}")
        seen.add((a.start, a.label, a.end))
        has_out[a.start] = True
        has_in[a.end] = True
    for k in range(n):
        if k != n - 1 and not has_out[k]:
            raise LatticeError(f"node {k} has no outgoing arc")
        if k != 0 and not has_in[k]:
            raise LatticeError(f"node {k} is unreachable")


def build_lattice(tokens: Sequence[str],
                  forms_fn: Callable[[str], ParaphraseSet],
                  prob_fn: Optional[Callable[[str, str], float]] = None,
                  mode: Mode | str = Mode.FULL) -> Lattice:
    """Original token weight 1; each alternative ``w'`` weighted ``Pr(w'|w)``.

    A multi-token alternative becomes a chain through fresh nodes: its
    first arc carries the probability and the remaining arcs carry 1.
    """
    mode = Mode(mode)
    if not tokens:
        raise LatticeError("cannot build a lattice for an empty sentence")
    if mode is Mode.FULL and prob_fn is None:
        raise ValueError("full mode needs a probability function")

    # plan each position first so node ids are known before arcs are laid
    plans = []
    for w in tokens:
        forms = forms_fn(w)
        alts = forms.alternatives()
        if mode is Mode.LEMMA_ONLY:
            lem = lemma_of(forms)
            alts = [v for v in alts if v.tokens == (lem,)]
        chosen = []
        for v in alts:
            if mode is Mode.FULL:
                p = prob_fn(v.surface, w)
                if p > 0:
                    chosen.append((v.tokens, min(float(p), 1.0), False))
            else:
                chosen.append((v.tokens, 1.0, True))
        plans.append((w, chosen))

    arcs = []
    node = 0
    for w, chosen in plans:
        extra = sum(len(t) - 1 for t, _, _ in chosen)
        start, end = node, node + extra + 1
        arcs.append(Arc(start, end, w, 1.0))
        fresh = start + 1
        for toks, p, zero in chosen:
            prev = start
            for k, label in enumerate(toks):
                if k == len(toks) - 1:
                    nxt = end
                else:
                    nxt, fresh = fresh, fresh + 1
                arcs.append(Arc(prev, nxt, label, p if k == 0 else 1.0, zero and k == 0))
                prev = nxt
        node = end
    return Lattice(node + 1, tuple(arcs))


def linear_lattice(tokens: Sequence[str]) -> Lattice:
    return Lattice(len(tokens) + 1, tuple(Arc(k, k + 1, t) for k, t in enumerate(tokens)))


def count_paths(lat: Lattice) -> int:
    ways = [0] * lat.node_count
    ways[0] = 1
    for a in lat.arcs:  # sorted by start, so predecessors finish first
        ways[a.end] += ways[a.start]
    return ways[-1]


def serialize_lattice(lat: Lattice) -> str:
    blocks = []
    for arcs in lat.out_arcs()[:-1]:
        items = []
        for a in arcs:
            fields = [repr(a.label), repr(float(a.weight)), str(a.end - a.start)]
            if a.zero:
                fields.append(repr(ZERO_FLAG))
            items.append("(" + ",".join(fields) + "),")
        blocks.append("(" + "".join(items) + "),")
    return "(" + "".join(blocks) + ")"


def parse_lattice(text: str) -> Lattice:
    try:
        data = ast.literal_eval(text.strip())
    except (SyntaxError, ValueError) as exc:
        raise LatticeError(f"unparseable lattice: {exc}") from None
    if not isinstance(data, tuple):
        raise LatticeError("lattice must be a tuple of node blocks")
    n = len(data) + 1
    arcs = []
    for k, block in enumerate(data):
        if not isinstance(block, tuple):
            raise LatticeError(f"node {k}: block is not a tuple")
        for m, item in enumerate(block):
            where = f"node {k}, arc {m}"
            if not isinstance(item, tuple) or len(item) not in (3, 4):
                raise LatticeError(f"{where}: expected (label, weight, offset)")
            label, weight, offset = item[:3]
            zero = len(item) == 4
            if zero and item[3] != ZERO_FLAG:
                raise LatticeError(f"{where}: unknown arc flag {item[3]!r}")
            if not isinstance(label, str) or not label:
                raise LatticeError(f"{where}: bad label {label!r}")
            if isinstance(offset, bool) or not isinstance(offset, int) or offset < 1:
                raise LatticeError(f"{where}: offset {offset!r} must be a positive integer")
            if isinstance(weight, bool) or not isinstance(weight, (int, float)) or not 0 < weight <= 1:
                raise LatticeError(f"{where}: weight {weight!r} outside (0, 1]")
            if k + offset >= n:
                raise LatticeError(f"{where}: offset {offset} runs past the final node")
            arcs.append(Arc(k, k + offset, label, float(weight), zero))
    try:
        return Lattice(n, tuple(arcs))
    except LatticeError as exc:
        raise LatticeError(f"invalid lattice: {exc}") from None


def write_lattices(path, lattices: Iterable[Lattice]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for lat in lattices:
            fh.write(serialize_lattice(lat) + "\n")


def read_lattices(path) -> list[Lattice]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                out.append(parse_lattice(line))
            except LatticeError as exc:
                raise LatticeError(f"{path}: line {n}: {exc}") from None
    return out
