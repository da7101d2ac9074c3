"""Morpheme lexicon, inflection tables and all-ways eojeol segmentation.

A lexicon file is line-based UTF-8 with tab-separated fields::

    # surface  lemma  pos  semtags  inflclass
    CLASS   JNC   JN   이,을,은,에,에서
    마음    -     N    -        JNC
    들      들다  V    QXDE     EVE

``-`` stands for an empty field (lemma defaults to the surface).
"""
from __future__ import annotations

import bisect
import io
import unicodedata
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional, TextIO, Union

POS_TAGS = frozenset({"N", "V", "A", "D", "JN", "EV", "UNK"})
SEMTAGS = frozenset({"QXPO", "QXNG", "QXDE", "XXPR", "XQFT"})
POLARITY_TAGS = frozenset({"QXPO", "QXNG"})
CLASS_KINDS = frozenset({"JN", "EV"})
INFLECTING = {"N": "JN", "V": "EV", "A": "EV"}


class LexiconError(ValueError):
    def __init__(self, lineno: int, reason: str):
        super().__init__(f"line {lineno}: {reason}")
        self.lineno = lineno
        self.reason = reason


@dataclass(frozen=True)
class LexEntry:
    surface: str
    lemma: str = ""
    pos: str = "N"
    semtags: frozenset = frozenset()
    inflclass: Optional[str] = None

    def __post_init__(self):
        if not self.lemma:
            object.__setattr__(self, "lemma", self.surface)
        object.__setattr__(self, "semtags", frozenset(self.semtags))
        if not self.surface or any(c.isspace() for c in self.surface):
            raise ValueError(f"bad surface {self.surface!r}")
        if self.pos not in POS_TAGS:
            raise ValueError(f"unknown POS code {self.pos!r}")
        unknown = self.semtags - SEMTAGS
        if unknown:
            raise ValueError(f"unknown semantic tag(s) {sorted(unknown)}")
        if POLARITY_TAGS <= self.semtags:
            raise ValueError("entry carries both QXPO and QXNG")
        if (self.inflclass is None) != (self.pos not in INFLECTING):
            raise ValueError(f"POS {self.pos} requires inflclass to be "
                             f"{'set' if self.pos in INFLECTING else 'empty'}")

    @property
    def sort_key(self) -> tuple:
        return (self.surface, self.pos, self.lemma, tuple(sorted(self.semtags)), self.inflclass or "")

    def to_line(self) -> str:
        return "\t".join([
            self.surface,
            "-" if self.lemma == self.surface else self.lemma,
            self.pos,
            ",".join(sorted(self.semtags)) or "-",
            self.inflclass or "-",
        ])


@dataclass(frozen=True)
class PostpositionClass:
    id: str
    kind: str
    suffixes: tuple

    def __post_init__(self):
        object.__setattr__(self, "suffixes", tuple(self.suffixes))
        if self.kind not in CLASS_KINDS:
            raise ValueError(f"class kind must be JN or EV, got {self.kind!r}")
        if not self.suffixes:
            raise ValueError(f"class {self.id} has no suffixes")
        if any(not s or any(c.isspace() for c in s) for s in self.suffixes):
            raise ValueError(f"class {self.id} has an empty or spaced suffix")
        if len(set(self.suffixes)) != len(self.suffixes):
            raise ValueError(f"class {self.id} lists a suffix twice")

    def to_line(self) -> str:
        return "\t".join(["CLASS", self.id, self.kind, ",".join(self.suffixes)])


@dataclass(frozen=True)
class MorphToken:
    """One lattice edge. ``entry`` is None for UNKNOWN material."""

    start: int
    end: int
    surface: str
    entry: Optional[LexEntry] = None

    @property
    def sort_key(self) -> tuple:
        return (self.start, self.end, self.surface) + (() if self.entry is None else self.entry.sort_key)

    @property
    def span(self) -> tuple:
        return (self.start, self.end)

    @property
    def unknown(self) -> bool:
        return self.entry is None

    @property
    def pos(self) -> str:
        return "UNK" if self.entry is None else self.entry.pos

    @property
    def lemma(self) -> str:
        return self.surface if self.entry is None else self.entry.lemma

    def shifted(self, offset: int) -> "MorphToken":
        return MorphToken(self.start + offset, self.end + offset, self.surface, self.entry)

    def __str__(self):
        return f"{self.surface}/{self.pos}"


class Lexicon:
    """Immutable collection of entries and postposition classes with indexes."""

    def __init__(self, entries: Iterable[LexEntry] = (), classes: Iterable[PostpositionClass] = ()):
        classes = tuple(classes)
        by_id = {}
        for c in classes:
            if c.id in by_id and by_id[c.id] != c:
                raise ValueError(f"class {c.id} declared twice with different content")
            by_id[c.id] = c
        entries = tuple(dict.fromkeys(entries))
        by_surface: dict = {}
        by_lemma: dict = {}
        for e in entries:
            if e.inflclass is not None:
                cls = by_id.get(e.inflclass)
                if cls is None:
                    raise ValueError(f"entry {e.surface} references unknown class {e.inflclass}")
                if cls.kind != INFLECTING[e.pos]:
                    raise ValueError(f"entry {e.surface}/{e.pos} cannot use {cls.kind} class {cls.id}")
            by_surface.setdefault(e.surface, []).append(e)
            by_lemma.setdefault(e.lemma, []).append(e)
        self._entries = entries
        self._classes = MappingProxyType(by_id)
        self._suffix_sets = MappingProxyType({c.id: frozenset(c.suffixes) for c in by_id.values()})
        self._by_surface = MappingProxyType({k: tuple(v) for k, v in by_surface.items()})
        self._by_lemma = MappingProxyType({k: tuple(v) for k, v in by_lemma.items()})
        self._suffix_entries = MappingProxyType({
            (c.kind, s): LexEntry(s, s, c.kind) for c in by_id.values() for s in c.suffixes
        })
        self._max_stem = max((len(s) for s in by_surface), default=0)

    @property
    def entries(self) -> tuple:
        return self._entries

    @property
    def classes(self) -> Mapping[str, PostpositionClass]:
        return self._classes

    def __len__(self):
        return len(self._entries)

    def __contains__(self, entry) -> bool:
        return entry in self._by_surface.get(getattr(entry, "surface", None), ())

    def by_surface(self, surface: str) -> tuple:
        return self._by_surface.get(surface, ())

    def by_lemma(self, lemma: str) -> tuple:
        return self._by_lemma.get(lemma, ())

    def suffixes(self, entry: LexEntry) -> tuple:
        if entry.inflclass is None:
            return ()
        return self._classes[entry.inflclass].suffixes

    def accepts_suffix(self, entry: LexEntry, suffix: str) -> bool:
        if not suffix:
            return True
        if entry.inflclass is None:
            return False
        return suffix in self._suffix_sets[entry.inflclass]

    def suffix_entry(self, entry: LexEntry, suffix: str) -> LexEntry:
        return self._suffix_entries[(self._classes[entry.inflclass].kind, suffix)]

    def dumps(self) -> str:
        """Canonical text form; ``load_lexicon(dumps())`` rebuilds an equal lexicon."""
        lines = [c.to_line() for c in sorted(self._classes.values(), key=lambda c: c.id)]
        lines += sorted(e.to_line() for e in self._entries)
        return "".join(line + "\n" for line in lines)


def _split_list(value: str) -> list:
    if value in ("", "-"):
        return []
    return [v.strip() for v in value.split(",") if v.strip()]


def load_lexicon(source: Union[TextIO, str, Iterable[str]]) -> Lexicon:
    """Parse lexicon text into a validated :class:`Lexicon`.

    ``source`` may be an open text stream, a string holding the whole file,
    or any iterable of lines. Errors raise :class:`LexiconError` with the
    offending 1-based line number.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    entries = {}
    classes = {}
    pending_refs = []
    for lineno, raw in enumerate(source, 1):
        line = raw.rstrip("\r\n").rstrip("\r")
        if lineno == 1 and line.startswith("\ufeff"):
            raise LexiconError(lineno, "byte-order mark not allowed")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if fields[0] == "CLASS":
            if len(fields) != 4:
                raise LexiconError(lineno, f"CLASS line needs 4 fields, got {len(fields)}")
            _, cid, kind, suffixes = fields
            try:
                cls = PostpositionClass(cid, kind, _split_list(suffixes))
            except ValueError as exc:
                raise LexiconError(lineno, str(exc)) from None
            if cid in classes and classes[cid] != cls:
                raise LexiconError(lineno, f"class {cid} redeclared with different suffixes")
            classes[cid] = cls
            continue
        if len(fields) != 5:
            raise LexiconError(lineno, f"entry line needs 5 fields, got {len(fields)}")
        surface, lemma, pos, semtags, inflclass = (f.strip() for f in fields)
        if pos not in POS_TAGS:
            raise LexiconError(lineno, f"unknown POS code {pos!r}")
        try:
            entry = LexEntry(
                surface,
                "" if lemma == "-" else lemma,
                pos,
                frozenset(_split_list(semtags)),
                None if inflclass in ("", "-") else inflclass,
            )
        except ValueError as exc:
            raise LexiconError(lineno, str(exc)) from None
        entries.setdefault(entry, lineno)
        if entry.inflclass is not None:
            pending_refs.append((lineno, entry))
    for lineno, entry in pending_refs:
        cls = classes.get(entry.inflclass)
        if cls is None:
            raise LexiconError(lineno, f"unknown inflclass {entry.inflclass!r}")
        if cls.kind != INFLECTING[entry.pos]:
            raise LexiconError(lineno, f"{entry.pos} entry cannot take {cls.kind} class {cls.id}")
    return Lexicon(entries, classes.values())


def expand_inflections(lexicon: Lexicon, entry: LexEntry) -> set:
    """All surface strings the entry can take: the bare stem plus every class suffix."""
    return {entry.surface} | {entry.surface + s for s in lexicon.suffixes(entry)}


def segment_eojeol(lexicon: Lexicon, eojeol: str, offset: int = 0) -> set:
    """Every stem + suffix-chain decomposition of one whitespace-free unit.

    Returns a set of token tuples. Falls back to a single UNKNOWN token
    when nothing in the lexicon covers the unit. ``offset`` shifts spans
    into sentence coordinates.
    """
    if any(c.isspace() for c in eojeol):
        raise ValueError(f"eojeol contains whitespace: {eojeol!r}")
    if not eojeol:
        return set()
    found = set()
    for k in range(1, min(len(eojeol), lexicon._max_stem) + 1):
        stem, suffix = eojeol[:k], eojeol[k:]
        for entry in lexicon.by_surface(stem):
            if not lexicon.accepts_suffix(entry, suffix):
                continue
            head = MorphToken(offset, offset + k, stem, entry)
            if suffix:
                tail = MorphToken(offset + k, offset + len(eojeol), suffix,
                                  lexicon.suffix_entry(entry, suffix))
                found.add((head, tail))
            else:
                found.add((head,))
    if not found:
        found.add((MorphToken(offset, offset + len(eojeol), eojeol, None),))
    return found


def _sorted_tokens(tokens) -> tuple:
    return tuple(sorted(tokens, key=lambda t: t.sort_key))


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch)[0] in "PS"


def _pieces(unit: str, offset: int) -> Iterator[tuple]:
    # leading/trailing punctuation runs become pieces of their own
    i, j = 0, len(unit)
    while i < j and _is_punct(unit[i]):
        i += 1
    while j > i and _is_punct(unit[j - 1]):
        j -= 1
    if i:
        yield offset, unit[:i], True
    if i < j:
        yield offset + i, unit[i:j], False
    if j < len(unit):
        yield offset + j, unit[j:], True


class SentenceLattice:
    """All candidate segmentations of a sentence.

    Edges are :class:`MorphToken` objects in sentence coordinates. Besides
    the flat edge set the lattice remembers which edge may follow which,
    so that paths never mix a stem with a suffix licensed only by a
    homographic stem.
    """

    def __init__(self, text: str, decompositions: Mapping):
        self.text = text
        self._pieces = sorted(decompositions)
        self._piece_end = {s: e for s, e in self._pieces}
        starts = {}
        follow = {}
        for (s, e), paths in decompositions.items():
            for path in paths:
                starts.setdefault(s, set()).add(path[0])
                for a, b in zip(path, path[1:]):
                    follow.setdefault(a, set()).add(b)
        self._starts = {k: _sorted_tokens(v) for k, v in starts.items()}
        self._follow = {k: _sorted_tokens(v) for k, v in follow.items()}
        self._piece_starts = [s for s, _ in self._pieces]
        self._next_piece = {}
        for (s, e), nxt in zip(self._pieces, self._pieces[1:]):
            self._next_piece[e] = nxt[0]
        self.edges = _sorted_tokens({t for paths in decompositions.values() for p in paths for t in p})
        nodes = {0}
        for t in self.edges:
            nodes.update(t.span)
        self.nodes = tuple(sorted(nodes))
        self._by_start = {}
        for t in self.edges:
            self._by_start.setdefault(t.start, []).append(t)

    @property
    def units(self) -> tuple:
        """(start, end) spans of the whitespace/punctuation pieces."""
        return tuple(self._pieces)

    def edges_at(self, node: int) -> tuple:
        """Edges leaving ``node``: path-initial edges of a piece, or any edge starting there."""
        if node in self._starts:
            return self._starts[node]
        return tuple(self._by_start.get(node, ()))

    def following(self, token: MorphToken) -> tuple:
        """Edges that may directly follow ``token`` on some lattice path."""
        if self._piece_end.get(self._piece_of(token)) == token.end:
            nxt = self._next_piece.get(token.end)
            return self._starts.get(nxt, ()) if nxt is not None else ()
        return self._follow.get(token, ())

    def _piece_of(self, token: MorphToken) -> int:
        return self._piece_starts[bisect.bisect_right(self._piece_starts, token.start) - 1]

    def paths(self, start: int, end: int) -> list:
        """Every token path from ``start`` to ``end`` (small spans only; used by tests)."""
        out = []

        def walk(cands, acc):
            for t in cands:
                if t.end == end:
                    out.append(tuple(acc + [t]))
                if t.end < end:
                    walk(self.following(t), acc + [t])

        walk(self.edges_at(start), [])
        return out

    def __len__(self):
        return len(self.edges)


def build_lattice(lexicon: Lexicon, sentence: str) -> SentenceLattice:
    """Lattice over a sentence: union of per-unit segmentations in sentence coordinates."""
    decompositions = {}
    pos = 0
    for unit in sentence.split():
        start = sentence.index(unit, pos)
        pos = start + len(unit)
        for off, piece, punct in _pieces(unit, start):
            if punct:
                paths = {(MorphToken(off, off + len(piece), piece, None),)}
            else:
                paths = segment_eojeol(lexicon, piece, off)
            decompositions[(off, off + len(piece))] = paths
    return SentenceLattice(sentence, decompositions)
