"""Tokenized parallel text with optional word alignments.

Files are UTF-8, one sentence per line, tokens separated by single spaces.
Alignment lines hold space-separated zero-indexed ``i-j`` pairs, source
index first.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

Link = tuple[int, int]


class CorpusError(ValueError):
    """Raised for structural or parse problems in corpus files."""


class LineCountError(CorpusError):
    pass


class AlignmentParseError(CorpusError):
    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


def _check_tokens(tokens: Sequence[str]) -> tuple[str, ...]:
    if not tokens:
        raise CorpusError("empty sentence")
    for tok in tokens:
        if not tok or any(c.isspace() for c in tok):
            raise CorpusError(f"invalid token {tok!r}")
    return tuple(tokens)


@dataclass(frozen=True)
class SentencePair:
    source: tuple[str, ...]
    target: tuple[str, ...]
    alignment: Optional[frozenset[Link]] = None

    def __post_init__(self):
        object.__setattr__(self, "source", _check_tokens(self.source))
        object.__setattr__(self, "target", _check_tokens(self.target))
        if self.alignment is not None:
            links = frozenset(self.alignment)
            for i, j in links:
                if not (0 <= i < len(self.source) and 0 <= j < len(self.target)):
                    raise CorpusError(
                        f"link {i}-{j} out of range for {len(self.source)}x{len(self.target)} pair"
                    )
            object.__setattr__(self, "alignment", links)

    @classmethod
    def from_strings(cls, source: str, target: str, alignment: Optional[Iterable[Link]] = None):
        return cls(tuple(source.split()), tuple(target.split()),
                   None if alignment is None else frozenset(alignment))

    def with_alignment(self, alignment: Optional[Iterable[Link]]) -> "SentencePair":
        return SentencePair(self.source, self.target,
                            None if alignment is None else frozenset(alignment))


@dataclass(frozen=True)
class BitextCorpus:
    pairs: tuple[SentencePair, ...] = ()

    def __post_init__(self):
        pairs = tuple(self.pairs)
        object.__setattr__(self, "pairs", pairs)
        flags = {p.alignment is not None for p in pairs}
        if len(flags) > 1:
            raise CorpusError("corpus mixes aligned and unaligned sentence pairs")

    @property
    def aligned(self) -> bool:
        return bool(self.pairs) and self.pairs[0].alignment is not None

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def source_vocab(self) -> set[str]:
        return {tok for p in self.pairs for tok in p.source}

    def without_alignments(self) -> "BitextCorpus":
        return BitextCorpus(tuple(p.with_alignment(None) for p in self.pairs))

    def with_alignments(self, alignments: Sequence[Iterable[Link]]) -> "BitextCorpus":
        if len(alignments) != len(self.pairs):
            raise CorpusError(f"{len(alignments)} alignments for {len(self.pairs)} pairs")
        return BitextCorpus(tuple(p.with_alignment(a) for p, a in zip(self.pairs, alignments)))


def parse_alignment(text: str, line_number: int = 1) -> frozenset[Link]:
    links = set()
    for tok in text.split():
        left, sep, right = tok.partition("-")
        if not sep or not left.isdigit() or not right.isdigit():
            raise AlignmentParseError(f"malformed alignment token {tok!r}", line_number)
        links.add((int(left), int(right)))
    return frozenset(links)


def format_alignment(links: Iterable[Link]) -> str:
    return " ".join(f"{i}-{j}" for i, j in sorted(links))


def read_lines(path: str | os.PathLike) -> list[str]:
    with open(path, encoding="utf-8", newline="") as fh:
        text = fh.read()
    if not text:
        return []
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    return [line.rstrip("\r") for line in lines]


def read_sentences(path: str | os.PathLike) -> list[tuple[str, ...]]:
    """One lowercased token tuple per line; empty lines are corruption."""
    out = []
    for n, line in enumerate(read_lines(path), 1):
        tokens = line.lower().split()
        if not tokens:
            raise CorpusError(f"{path}: line {n}: empty line")
        out.append(tuple(tokens))
    return out


def read_bitext(source_path, target_path, alignment_path=None) -> BitextCorpus:
    src = read_sentences(source_path)
    tgt = read_sentences(target_path)
    if len(src) != len(tgt):
        raise LineCountError(
            f"line-count mismatch: {source_path} has {len(src)} lines, {target_path} has {len(tgt)}"
        )
    aligns: list[Optional[frozenset[Link]]] = [None] * len(src)
    if alignment_path is not None:
        raw = read_lines(alignment_path)
        if len(raw) != len(src):
            raise LineCountError(
                f"line-count mismatch: {source_path} has {len(src)} lines, "
                f"{alignment_path} has {len(raw)}"
            )
        aligns = [parse_alignment(line, n) for n, line in enumerate(raw, 1)]

    pairs = []
    for n, (s, t, a) in enumerate(zip(src, tgt, aligns), 1):
        if a is not None:
            for i, j in a:
                if i >= len(s) or j >= len(t):
                    raise AlignmentParseError(
                        f"link {i}-{j} out of range for {len(s)} source / {len(t)} target tokens", n
                    )
        pairs.append(SentencePair(s, t, a))
    return BitextCorpus(tuple(pairs))


def write_lines(path, lines: Iterable[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line)
            fh.write("\n")


def write_bitext(corpus: BitextCorpus, source_path, target_path, alignment_path=None) -> None:
    if alignment_path is not None and corpus.pairs and not corpus.aligned:
        raise CorpusError("alignment output requested for a corpus without alignments")
    write_lines(source_path, (" ".join(p.source) for p in corpus))
    write_lines(target_path, (" ".join(p.target) for p in corpus))
    if alignment_path is not None:
        write_lines(alignment_path, (format_alignment(p.alignment) for p in corpus))


def read_vocab(path) -> set[str]:
    return {line.strip().lower() for line in read_lines(path) if line.strip()}
