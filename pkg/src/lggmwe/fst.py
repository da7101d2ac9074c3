"""Flattening of grammar sets into a transducer, and lattice matching."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Optional

from .grammar import (
    CategoryMask,
    Epsilon,
    GrammarSet,
    LemmaMask,
    Literal,
    SubgraphCall,
    mask_key,
    parse_mask,
)
from .lexicon import Lexicon, MorphToken, SentenceLattice

MAX_STATES = 10_000
DS_CAP = 3


class CompileError(ValueError):
    pass


@dataclass(frozen=True)
class GraphInfo:
    name: str
    category: str
    tag: str
    canonical: Optional[str] = None
    priority: int = 0
    structure: Optional[str] = None


@dataclass(frozen=True)
class FstArc:
    src: int
    dst: int
    mask: object
    output: Optional[str] = None
    origin: str = ""

    @property
    def sort_key(self) -> tuple:
        return (self.src, mask_key(self.mask), self.output or "", self.origin, self.dst)


@dataclass(frozen=True)
class Match:
    graph: str
    start_node: int
    end_node: int
    tokens: tuple
    outputs: str = ""

    @property
    def span(self) -> tuple:
        return (self.start_node, self.end_node)


class CompiledTransducer:
    """Epsilon-free automaton over masks with per-final graph metadata."""

    def __init__(self, n_states: int, arcs, finals: Mapping, graphs: Mapping, start: int = 0):
        self.n_states = n_states
        self.start = start
        self.arcs = tuple(sorted(arcs, key=lambda a: a.sort_key))
        self.finals = MappingProxyType({s: tuple(sorted(v)) for s, v in finals.items()})
        self.graphs = MappingProxyType(dict(graphs))
        out = {}
        for a in self.arcs:
            out.setdefault(a.src, []).append(a)
        self._out = {k: tuple(v) for k, v in out.items()}

    @property
    def states(self) -> range:
        return range(self.n_states)

    def arcs_from(self, state: int) -> tuple:
        return self._out.get(state, ())

    def accepted_sequences(self, max_len: int, graph: Optional[str] = None) -> set:
        """Mask sequences of length <= max_len reaching an accepting state."""
        found = set()
        frontier = {(): frozenset([self.start])}
        for depth in range(max_len + 1):
            step = {}
            for seq, states in frontier.items():
                for s in states:
                    names = self.finals.get(s, ())
                    if names and (graph is None or graph in names):
                        found.add(seq)
                    if depth < max_len:
                        for a in self.arcs_from(s):
                            step.setdefault(seq + (a.mask,), set()).add(a.dst)
            frontier = {seq: frozenset(v) for seq, v in step.items()}
        return found

    def dump(self) -> str:
        """Human-readable listing of states, finals and arcs."""
        lines = [f"states {self.n_states}", f"start {self.start}"]
        for s in sorted(self.finals):
            lines.append(f"final {s} " + " ".join(self.finals[s]))
        for a in self.arcs:
            line = f"arc {a.src} {a.dst} {a.mask} [{a.origin}]"
            if a.output is not None:
                line += f" -> {a.output!r}"
            lines.append(line)
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "states": self.n_states,
            "start": self.start,
            "finals": {str(s): list(v) for s, v in sorted(self.finals.items())},
            "arcs": [[a.src, a.dst, str(a.mask), a.output, a.origin] for a in self.arcs],
            "graphs": {
                name: {"category": g.category, "tag": g.tag, "canonical": g.canonical,
                       "priority": g.priority, "structure": g.structure}
                for name, g in sorted(self.graphs.items())
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CompiledTransducer":
        arcs = [FstArc(s, d, parse_mask(m), o, g) for s, d, m, o, g in data["arcs"]]
        finals = {int(s): tuple(v) for s, v in data["finals"].items()}
        graphs = {name: GraphInfo(name, **info) for name, info in data["graphs"].items()}
        return cls(data["states"], arcs, finals, graphs, data["start"])


def compile_grammar(gs: GrammarSet, max_states: int = MAX_STATES) -> CompiledTransducer:
    """Inline subgraph calls, remove empty arcs and trim to a compact transducer.

    ``gs`` must be valid (see :func:`grammar.validate`).
    """
    # raw automaton with epsilon arcs; state 0 is the global start
    eps = {0: []}
    arcs = []
    finals = {}
    counter = [1]

    def new_state():
        if counter[0] >= max_states:
            raise CompileError(f"compiled automaton exceeds {max_states} states")
        s = counter[0]
        counter[0] += 1
        eps[s] = []
        return s

    def instantiate(name: str, entry: int, exit_: Optional[int], main: Optional[str]):
        g = gs.graphs[name]
        ids = {}
        for node in sorted(g.nodes):
            ids[node] = new_state()
        eps[entry].append(ids[g.start])
        for f in sorted(g.finals):
            if exit_ is not None:
                eps[ids[f]].append(exit_)
            else:
                finals.setdefault(ids[f], set()).add(main)
        for a in g.arcs:
            if isinstance(a.mask, Epsilon):
                eps[ids[a.src]].append(ids[a.dst])
            elif isinstance(a.mask, SubgraphCall):
                instantiate(a.mask.name, ids[a.src], ids[a.dst], None)
            else:
                arcs.append(FstArc(ids[a.src], ids[a.dst], a.mask, a.output, name))

    infos = {}
    for name in gs.mains:
        g = gs.graphs[name]
        infos[name] = GraphInfo(name, g.category, g.tag, g.canonical, g.priority, g.structure)
        instantiate(name, 0, None, name)

    def closure(s: int) -> list:
        seen = {s}
        order = [s]
        todo = [s]
        while todo:
            for t in eps[todo.pop()]:
                if t not in seen:
                    seen.add(t)
                    order.append(t)
                    todo.append(t)
        return order

    out = {}
    for a in arcs:
        out.setdefault(a.src, []).append(a)

    # BFS over closures, renumbering states in discovery order
    new_id = {0: 0}
    queue = deque([0])
    new_arcs = set()
    new_finals = {}
    while queue:
        s = queue.popleft()
        cl = closure(s)
        accept = set()
        for p in cl:
            accept |= finals.get(p, set())
        if accept:
            new_finals[new_id[s]] = accept
        for p in cl:
            for a in out.get(p, ()):
                if a.dst not in new_id:
                    new_id[a.dst] = len(new_id)
                    queue.append(a.dst)
                new_arcs.add(FstArc(new_id[s], new_id[a.dst], a.mask, a.output, a.origin))

    return _trim(CompiledTransducer(len(new_id), new_arcs, new_finals, infos))


def _trim(t: CompiledTransducer) -> CompiledTransducer:
    """Drop states that cannot reach an accepting state, then renumber by BFS."""
    back = {}
    for a in t.arcs:
        back.setdefault(a.dst, []).append(a.src)
    live = set(t.finals)
    todo = list(live)
    while todo:
        for p in back.get(todo.pop(), ()):
            if p not in live:
                live.add(p)
                todo.append(p)
    live.add(t.start)
    ids = {t.start: 0}
    queue = deque([t.start])
    while queue:
        s = queue.popleft()
        for a in t.arcs_from(s):
            if a.dst in live and a.dst not in ids:
                ids[a.dst] = len(ids)
                queue.append(a.dst)
    arcs = [FstArc(ids[a.src], ids[a.dst], a.mask, a.output, a.origin)
            for a in t.arcs if a.src in ids and a.dst in ids]
    finals = {ids[s]: v for s, v in t.finals.items() if s in ids}
    return CompiledTransducer(len(ids), arcs, finals, t.graphs)


def mask_matches(mask, token: MorphToken, lexicon: Optional[Lexicon] = None) -> bool:
    """Does a single lattice token satisfy ``mask``?

    ``<DS>`` is tested per token here (an adverb); its zero-to-three
    repetition is handled by :func:`match_from`.
    """
    if isinstance(mask, Literal):
        return token.surface == mask.surface
    entry = token.entry
    if entry is None:
        return False
    if isinstance(mask, LemmaMask):
        return entry.lemma == mask.lemma and (mask.pos is None or entry.pos == mask.pos)
    if isinstance(mask, CategoryMask):
        if mask.code == "DS":
            return entry.pos == "D"
        return entry.pos == mask.code or mask.code in entry.semtags
    return False


def match_from(t: CompiledTransducer, lattice: SentenceLattice, node: int,
               lexicon: Optional[Lexicon] = None) -> set:
    """Every non-empty match of ``t`` whose token path starts at lattice ``node``."""
    found = set()

    def candidates(last):
        return lattice.edges_at(node) if last is None else lattice.following(last)

    def walk(state, last, tokens, outs, idle):
        # idle: states entered since the last consumed token (guards <DS> zero loops)
        if tokens:
            for name in t.finals.get(state, ()):
                found.add(Match(name, tokens[0].start, tokens[-1].end, tokens, "".join(outs)))
        for arc in t.arcs_from(state):
            out = outs + (arc.output,) if arc.output else outs
            if isinstance(arc.mask, CategoryMask) and arc.mask.code == "DS":
                if arc.dst not in idle:
                    walk(arc.dst, last, tokens, out, idle | {arc.dst})
                chain = [(last, tokens)]
                for _ in range(DS_CAP):
                    step = []
                    for prev, toks in chain:
                        for tok in candidates(prev):
                            if mask_matches(arc.mask, tok, lexicon):
                                step.append((tok, toks + (tok,)))
                    for tok, toks in step:
                        walk(arc.dst, tok, toks, out, frozenset({arc.dst}))
                    chain = step
            else:
                for tok in candidates(last):
                    if mask_matches(arc.mask, tok, lexicon):
                        walk(arc.dst, tok, tokens + (tok,), out, frozenset({arc.dst}))

    walk(t.start, None, (), (), frozenset({t.start}))
    return found
