"""Document annotation: match selection, normalization and inline tags."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .fst import CompiledTransducer, GraphInfo, match_from
from .grammar import ALLOWED_TAGS
from .lexicon import Lexicon, build_lattice

SENTENCE_END = re.compile(r"[.!?\n]")


class OverlapError(ValueError):
    """Annotations handed to :func:`render` overlap or are out of order."""


@dataclass(frozen=True)
class Annotation:
    start: int
    end: int
    category: str
    tag: str
    surface: str
    canonical: str = ""
    graph: str = ""

    def __post_init__(self):
        if not 0 <= self.start < self.end:
            raise ValueError(f"bad span ({self.start}, {self.end})")
        if self.category not in ALLOWED_TAGS or self.tag not in ALLOWED_TAGS[self.category]:
            raise ValueError(f"bad category/tag pair {self.category}/{self.tag}")
        if not self.canonical:
            object.__setattr__(self, "canonical", self.surface)

    @property
    def span(self) -> tuple:
        return (self.start, self.end)

    @property
    def key(self) -> tuple:
        """Identity used for comparison with gold data."""
        return (self.start, self.end, self.category, self.tag)

    @property
    def open_tag(self) -> str:
        return f"<{self.category}_{self.tag}>"

    @property
    def close_tag(self) -> str:
        return f"</{self.tag}>"


@dataclass(frozen=True)
class MatchPolicy:
    """Leftmost-longest selection; ties go to higher priority, then graph name.

    ``priorities`` overrides the PRIORITY declared in the grammar, per graph.
    """

    strategy: str = "LEFTMOST_LONGEST"
    priorities: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.strategy != "LEFTMOST_LONGEST":
            raise ValueError(f"unsupported strategy {self.strategy!r}")

    def priority(self, info: GraphInfo) -> int:
        return self.priorities.get(info.name, info.priority)

    def rank(self, cand: "_Candidate", t: CompiledTransducer) -> tuple:
        info = t.graphs[cand.graph]
        return (cand.start, -(cand.end - cand.start), -self.priority(info), cand.graph, cand.canonical)


DEFAULT_POLICY = MatchPolicy()


@dataclass(frozen=True)
class _Candidate:
    start: int
    end: int
    graph: str
    canonical: str


def split_sentences(text: str) -> list:
    """(start, end) spans of sentences; terminators are excluded from the spans."""
    spans = []
    pos = 0
    for m in SENTENCE_END.finditer(text):
        if text[pos:m.start()].strip():
            spans.append((pos, m.start()))
        pos = m.end()
    if text[pos:].strip():
        spans.append((pos, len(text)))
    return spans


def normalize(surface: str, info: GraphInfo, outputs: str = "") -> str:
    """Canonical form: CANON template, else concatenated arc outputs, else the surface."""
    if info.canonical is not None:
        return info.canonical.replace("$0", surface)
    if outputs:
        return outputs
    return surface


def collect_matches(sentence: str, lexicon: Lexicon, t: CompiledTransducer) -> set:
    """All matches of ``t`` starting at any lattice node of ``sentence``."""
    lattice = build_lattice(lexicon, sentence)
    found = set()
    for node in lattice.nodes:
        found |= match_from(t, lattice, node, lexicon)
    return found


def select(candidates: Iterable[_Candidate], t: CompiledTransducer, policy: MatchPolicy) -> list:
    ordered = sorted(set(candidates), key=lambda c: policy.rank(c, t))
    chosen = []
    frontier = -1
    for c in ordered:
        if c.start >= frontier:
            chosen.append(c)
            frontier = c.end
    return chosen


def annotate(text: str, lexicon: Lexicon, t: CompiledTransducer,
             policy: Optional[MatchPolicy] = None) -> list:
    """Recognize MWEs in ``text`` and return non-overlapping annotations in document order."""
    policy = policy or DEFAULT_POLICY
    result = []
    for s_start, s_end in split_sentences(text):
        sentence = text[s_start:s_end]
        cands = []
        for m in collect_matches(sentence, lexicon, t):
            surface = sentence[m.start_node:m.end_node]
            info = t.graphs[m.graph]
            cands.append(_Candidate(s_start + m.start_node, s_start + m.end_node, m.graph,
                                    normalize(surface, info, m.outputs)))
        for c in select(cands, t, policy):
            info = t.graphs[c.graph]
            result.append(Annotation(c.start, c.end, info.category, info.tag,
                                     text[c.start:c.end], c.canonical, c.graph))
    return result


def render(text: str, annotations: Iterable[Annotation]) -> str:
    """Insert ``<CAT_TAG>`` / ``</TAG>`` around every annotation span."""
    parts = []
    pos = 0
    for a in annotations:
        if a.start < pos:
            raise OverlapError(f"annotation {a.span} overlaps or precedes offset {pos}")
        if a.end > len(text):
            raise OverlapError(f"annotation {a.span} runs past the end of the text")
        parts += [text[pos:a.start], a.open_tag, text[a.start:a.end], a.close_tag]
        pos = a.end
    parts.append(text[pos:])
    return "".join(parts)
