"""Corpus construction helpers: polarity split, frequency tables, concordances."""
from __future__ import annotations

import io
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, TextIO, Union

from .lexicon import POLARITY_TAGS, Lexicon, build_lattice, segment_eojeol


@dataclass(frozen=True)
class Corpus:
    sentences: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))

    @property
    def sentence_count(self) -> int:
        return len(self.sentences)

    @property
    def token_count(self) -> int:
        """Whitespace-delimited units (eojeols) over all sentences."""
        return sum(len(s.split()) for s in self.sentences)

    def __len__(self):
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)


def load_corpus(source: Union[TextIO, str, Iterable[str]]) -> Corpus:
    """One sentence per line; blank lines are skipped."""
    if isinstance(source, str):
        source = io.StringIO(source)
    return Corpus(line.rstrip("\r\n") for line in source if line.strip())


def split_by_polarity(corpus: Corpus, lexicon: Lexicon) -> tuple:
    """Partition sentences into (with polarity words, without).

    A sentence goes to the first group when any lattice edge carries QXPO
    or QXNG; QXDE alone does not count.
    """
    with_, without = [], []
    for sent in corpus:
        lattice = build_lattice(lexicon, sent)
        polar = any(t.entry is not None and t.entry.semtags & POLARITY_TAGS for t in lattice.edges)
        (with_ if polar else without).append(sent)
    return Corpus(with_), Corpus(without)


def best_segmentation(lexicon: Lexicon, eojeol: str, offset: int = 0) -> tuple:
    """The decomposition with the longest known stem (deterministic tie-break)."""
    paths = segment_eojeol(lexicon, eojeol, offset)

    def rank(path):
        head = path[0]
        known = head.entry is not None
        return (not known, -(head.end - head.start), [t.sort_key for t in path])

    return min(paths, key=rank)


def _tokens(lexicon: Lexicon, sentence: str):
    lattice = build_lattice(lexicon, sentence)
    for start, end in lattice.units:
        piece = sentence[start:end]
        yield from best_segmentation(lexicon, piece, start)


@dataclass(frozen=True)
class FreqRow:
    surface: str
    lemma: str
    pos: str
    count: int


class FreqTable(tuple):
    """Rows sorted by count descending, then surface, lemma, POS ascending."""

    def __new__(cls, rows: Iterable[FreqRow] = ()):
        return super().__new__(cls, sorted(rows, key=lambda r: (-r.count, r.surface, r.lemma, r.pos)))

    @property
    def total(self) -> int:
        return sum(r.count for r in self)

    def to_tsv(self) -> str:
        lines = ["surface\tlemma\tpos\tcount"]
        lines += [f"{r.surface}\t{r.lemma}\t{r.pos}\t{r.count}" for r in self]
        return "\n".join(lines) + "\n"


def term_frequency(corpus: Corpus, lexicon: Lexicon, semtag_filter: Optional[str] = None) -> FreqTable:
    """Count (surface, lemma, POS) over best-effort segmentations of every sentence."""
    counts = Counter()
    for sent in corpus:
        for tok in _tokens(lexicon, sent):
            if semtag_filter is not None and (tok.entry is None or semtag_filter not in tok.entry.semtags):
                continue
            counts[(tok.surface, tok.lemma, tok.pos)] += 1
    return FreqTable(FreqRow(s, l, p, c) for (s, l, p), c in counts.items())


@dataclass(frozen=True)
class KwicLine:
    left: str
    keyword: str
    right: str
    sentence_index: int
    start: int
    window: int

    @property
    def end(self) -> int:
        return self.start + len(self.keyword)

    def to_tsv(self) -> str:
        return f"{self.sentence_index}\t{self.start}\t{self.left}\t{self.keyword}\t{self.right}"


def _occurrences(sentence: str, pattern: str, lexicon: Optional[Lexicon]) -> dict:
    hits = {}
    i = sentence.find(pattern)
    while i != -1:
        hits[i] = i + len(pattern)
        i = sentence.find(pattern, i + 1)
    if lexicon is not None and lexicon.by_lemma(pattern):
        lattice = build_lattice(lexicon, sentence)
        units = dict(lattice.units)
        for tok in lattice.edges:
            if tok.entry is not None and tok.entry.lemma == pattern and tok.start not in hits:
                unit_end = next(e for s, e in sorted(units.items()) if s <= tok.start < e)
                hits[tok.start] = unit_end
    return hits


def concordance(corpus: Corpus, pattern: str, window: int, lexicon: Optional[Lexicon] = None) -> list:
    """Keyword-in-context lines for a surface string, or a lemma when ``lexicon`` is given.

    Lemma hits use the inflected form running to the end of its eojeol as
    the keyword. Contexts are cut to ``window`` characters on each side.
    """
    if window < 0:
        raise ValueError("window must be >= 0")
    if not pattern:
        return []
    lines = []
    for idx, sent in enumerate(corpus):
        for start, end in sorted(_occurrences(sent, pattern, lexicon).items()):
            lines.append(KwicLine(sent[max(0, start - window):start], sent[start:end],
                                  sent[end:end + window], idx, start, window))
    return lines


def format_kwic(lines: Iterable[KwicLine]) -> str:
    """Aligned plain-text rendering (keywords in one column)."""
    lines = list(lines)
    if not lines:
        return ""
    width = max(len(l.left) for l in lines)
    return "".join(f"{l.left:>{width}} [{l.keyword}] {l.right}\n" for l in lines)
