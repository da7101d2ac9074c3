"""Textual local-grammar graphs: masks, graphs, parsing, validation.

The DSL is line based::

    GRAPH MaeumEDeulda CATEGORY SMWE TAG QXPO STRUCT NPRED
    START 0
    FINAL 4
    ARC 0 1 "마음"
    ARC 1 2 <JN>
    ARC 2 3 <들다>
    ARC 3 4 <EV>
    END
    MAIN MaeumEDeulda

Masks are ``"literal"``, ``<lemma>``, ``<lemma.POS>``, ``<CODE>``
(POS or semantic code, ``<E>`` being the empty path) and ``@Subgraph``.
"""
from __future__ import annotations

import io
import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, TextIO, Union

from .lexicon import POS_TAGS, SEMTAGS

CATEGORIES = ("SMWE", "DMWE", "EMWE", "FMWE")
TAGS = ("QXPO", "QXNG", "XXPR", "XQFT")
STRUCTURES = ("NN", "NPRED", "PREDPRED", "ETC")
ALLOWED_TAGS = {
    "SMWE": {"QXPO", "QXNG"},
    "DMWE": {"QXPO", "QXNG"},
    "EMWE": {"XXPR"},
    "FMWE": {"XQFT"},
}
CATEGORY_CODES = (POS_TAGS - {"UNK"}) | SEMTAGS | {"DS"}

_NAME = re.compile(r"^[A-Za-z_][\w\-]*$")
_TOKEN = re.compile(r'"(?:[^"\\]|\\.)*"|\S+')


class GrammarError(ValueError):
    """Syntax or structural error in a grammar source."""

    def __init__(self, reason: str, lineno: Optional[int] = None, violations=()):
        prefix = f"line {lineno}: " if lineno is not None else ""
        super().__init__(prefix + reason)
        self.lineno = lineno
        self.reason = reason
        self.violations = tuple(violations)


# -- masks -------------------------------------------------------------------

@dataclass(frozen=True)
class Literal:
    surface: str

    def __post_init__(self):
        if not self.surface or any(c.isspace() for c in self.surface):
            raise ValueError(f"literal must be non-empty and space-free: {self.surface!r}")

    def __str__(self):
        return _quote(self.surface)


@dataclass(frozen=True)
class LemmaMask:
    lemma: str
    pos: Optional[str] = None

    def __str__(self):
        return f"<{self.lemma}.{self.pos}>" if self.pos else f"<{self.lemma}>"


@dataclass(frozen=True)
class CategoryMask:
    code: str

    def __post_init__(self):
        if self.code not in CATEGORY_CODES:
            raise ValueError(f"unknown category code {self.code!r}")

    def __str__(self):
        return f"<{self.code}>"


@dataclass(frozen=True)
class Epsilon:
    def __str__(self):
        return "<E>"


@dataclass(frozen=True)
class SubgraphCall:
    name: str

    def __str__(self):
        return f"@{self.name}"


EPSILON = Epsilon()
DS = CategoryMask("DS")
Mask = Union[Literal, LemmaMask, CategoryMask, Epsilon, SubgraphCall]


def mask_key(mask) -> tuple:
    return (type(mask).__name__, str(mask))


def parse_mask(text: str) -> Mask:
    """Parse one mask token of the DSL."""
    if len(text) >= 2 and text[0] == '"' and text[-1] == '"':
        body = re.sub(r"\\(.)", r"\1", text[1:-1])
        return Literal(body)
    if text.startswith("@"):
        name = text[1:]
        if not _NAME.match(name):
            raise ValueError(f"bad subgraph name {name!r}")
        return SubgraphCall(name)
    if len(text) >= 3 and text[0] == "<" and text[-1] == ">":
        body = text[1:-1]
        if body == "E":
            return EPSILON
        if body in CATEGORY_CODES:
            return CategoryMask(body)
        lemma, dot, pos = body.rpartition(".")
        if dot and lemma and pos in POS_TAGS:
            return LemmaMask(lemma, pos)
        if any(c.isspace() for c in body) or "<" in body or ">" in body:
            raise ValueError(f"bad lemma mask {text!r}")
        return LemmaMask(body)
    raise ValueError(f"unrecognized mask {text!r}")


# -- graphs ------------------------------------------------------------------

@dataclass(frozen=True)
class Arc:
    src: str
    dst: str
    mask: Mask
    output: Optional[str] = None


@dataclass(frozen=True)
class Graph:
    name: str
    start: str
    finals: frozenset
    arcs: tuple = ()
    category: Optional[str] = None
    tag: Optional[str] = None
    canonical: Optional[str] = None
    priority: int = 0
    structure: Optional[str] = None

    @property
    def nodes(self) -> frozenset:
        nodes = {self.start, *self.finals}
        for a in self.arcs:
            nodes.update((a.src, a.dst))
        return frozenset(nodes)

    @property
    def annotating(self) -> bool:
        return self.category is not None

    def arcs_from(self, node: str) -> list:
        return [a for a in self.arcs if a.src == node]

    def calls(self) -> list:
        return sorted({a.mask.name for a in self.arcs if isinstance(a.mask, SubgraphCall)})


@dataclass(frozen=True)
class GrammarSet:
    graphs: Mapping = field(default_factory=dict)
    mains: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "graphs", MappingProxyType(dict(self.graphs)))
        object.__setattr__(self, "mains", tuple(self.mains))

    def __getitem__(self, name: str) -> Graph:
        return self.graphs[name]

    def __contains__(self, name) -> bool:
        return name in self.graphs

    def __len__(self):
        return len(self.graphs)

    def merged(self, other: "GrammarSet") -> "GrammarSet":
        dup = set(self.graphs) & set(other.graphs)
        if dup:
            raise GrammarError(f"graph(s) defined twice: {', '.join(sorted(dup))}")
        mains = tuple(dict.fromkeys(self.mains + other.mains))
        return GrammarSet({**self.graphs, **other.graphs}, mains)


@dataclass(frozen=True)
class Violation:
    kind: str
    graphs: tuple
    message: str

    def __str__(self):
        return f"{self.kind}: {self.message}"


# -- parsing -----------------------------------------------------------------

def _unquote(tok: str, lineno: int) -> str:
    if len(tok) < 2 or tok[0] != '"' or tok[-1] != '"':
        raise GrammarError(f"expected a quoted string, got {tok!r}", lineno)
    return re.sub(r"\\(.)", r"\1", tok[1:-1])


def _tokens(line: str) -> list:
    out = []
    for tok in _TOKEN.findall(line):
        if tok.startswith("#"):
            break
        out.append(tok)
    return out


def parse_grammar(source: Union[TextIO, str, Iterable[str]], check: bool = True) -> GrammarSet:
    """Parse DSL text into a :class:`GrammarSet`.

    With ``check`` (the default) the result is validated and any violation
    raises :class:`GrammarError`.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    graphs = {}
    mains = []
    cur = None
    for lineno, raw in enumerate(source, 1):
        line = raw.rstrip("\r\n").rstrip("\r")
        if lineno == 1 and line.startswith("\ufeff"):
            raise GrammarError("byte-order mark not allowed", lineno)
        toks = _tokens(line)
        if not toks:
            continue
        kw, args = toks[0], toks[1:]
        if kw == "GRAPH":
            if cur is not None:
                raise GrammarError(f"GRAPH {cur['name']} not closed with END", lineno)
            if not args or not _NAME.match(args[0]):
                raise GrammarError("GRAPH needs a valid name", lineno)
            if args[0] in graphs:
                raise GrammarError(f"graph {args[0]} defined twice", lineno)
            cur = {"name": args[0], "start": None, "finals": set(), "arcs": [], "line": lineno,
                   "category": None, "tag": None, "canonical": None, "priority": 0, "structure": None}
            opts = args[1:]
            seen = set()
            while opts:
                key = opts.pop(0)
                if not opts:
                    raise GrammarError(f"option {key} needs a value", lineno)
                if key in seen:
                    raise GrammarError(f"option {key} repeated", lineno)
                seen.add(key)
                val = opts.pop(0)
                if key == "CATEGORY":
                    if val not in CATEGORIES:
                        raise GrammarError(f"unknown category {val!r}", lineno)
                    cur["category"] = val
                elif key == "TAG":
                    if val not in TAGS:
                        raise GrammarError(f"unknown tag {val!r}", lineno)
                    cur["tag"] = val
                elif key == "CANON":
                    cur["canonical"] = _unquote(val, lineno)
                elif key == "PRIORITY":
                    try:
                        cur["priority"] = int(val)
                    except ValueError:
                        raise GrammarError(f"PRIORITY must be an integer, got {val!r}", lineno) from None
                elif key == "STRUCT":
                    if val.upper() not in STRUCTURES:
                        raise GrammarError(f"unknown structure {val!r}", lineno)
                    cur["structure"] = val.upper()
                else:
                    raise GrammarError(f"unknown GRAPH option {key!r}", lineno)
        elif kw == "MAIN":
            if cur is not None:
                raise GrammarError("MAIN inside a GRAPH block", lineno)
            if not args:
                raise GrammarError("MAIN needs at least one graph name", lineno)
            mains.extend(a for a in args if a not in mains)
        elif cur is None:
            raise GrammarError(f"{kw} outside a GRAPH block", lineno)
        elif kw == "START":
            if len(args) != 1:
                raise GrammarError("START takes exactly one node", lineno)
            if cur["start"] is not None:
                raise GrammarError("START given twice", lineno)
            cur["start"] = args[0]
        elif kw == "FINAL":
            if not args:
                raise GrammarError("FINAL needs at least one node", lineno)
            cur["finals"].update(args)
        elif kw == "ARC":
            if len(args) not in (3, 5) or (len(args) == 5 and args[3] != "OUTPUT"):
                raise GrammarError('ARC syntax is: ARC <from> <to> <mask> [OUTPUT "<text>"]', lineno)
            try:
                mask = parse_mask(args[2])
            except ValueError as exc:
                raise GrammarError(str(exc), lineno) from None
            output = _unquote(args[4], lineno) if len(args) == 5 else None
            cur["arcs"].append(Arc(args[0], args[1], mask, output))
        elif kw == "END":
            if args:
                raise GrammarError("END takes no arguments", lineno)
            if cur["start"] is None:
                raise GrammarError(f"graph {cur['name']} has no START", lineno)
            if not cur["finals"]:
                raise GrammarError(f"graph {cur['name']} has no FINAL", lineno)
            graphs[cur["name"]] = Graph(
                cur["name"], cur["start"], frozenset(cur["finals"]), tuple(cur["arcs"]),
                cur["category"], cur["tag"], cur["canonical"], cur["priority"], cur["structure"],
            )
            cur = None
        else:
            raise GrammarError(f"unknown keyword {kw!r}", lineno)
    if cur is not None:
        raise GrammarError(f"graph {cur['name']} not closed with END", cur["line"])
    gs = GrammarSet(graphs, tuple(mains))
    if check:
        problems = validate(gs)
        if problems:
            raise GrammarError("; ".join(map(str, problems)), violations=problems)
    return gs


def render_grammar(gs: GrammarSet) -> str:
    """Canonical DSL text for ``gs``."""
    out = []
    for g in gs.graphs.values():
        head = ["GRAPH", g.name]
        if g.category:
            head += ["CATEGORY", g.category]
        if g.tag:
            head += ["TAG", g.tag]
        if g.canonical is not None:
            head += ["CANON", _quote(g.canonical)]
        if g.priority:
            head += ["PRIORITY", str(g.priority)]
        if g.structure:
            head += ["STRUCT", g.structure]
        out.append(" ".join(head))
        out.append(f"START {g.start}")
        out.append("FINAL " + " ".join(sorted(g.finals)))
        for a in g.arcs:
            line = f"ARC {a.src} {a.dst} {a.mask}"
            if a.output is not None:
                line += " OUTPUT " + _quote(a.output)
            out.append(line)
        out.append("END")
    if gs.mains:
        out.append("MAIN " + " ".join(gs.mains))
    return "".join(line + "\n" for line in out)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


# -- validation --------------------------------------------------------------

def _reachable(graph: Graph, start: str, arcs=None) -> set:
    arcs = graph.arcs if arcs is None else arcs
    seen = {start}
    todo = [start]
    while todo:
        n = todo.pop()
        for a in arcs:
            if a.src == n and a.dst not in seen:
                seen.add(a.dst)
                todo.append(a.dst)
    return seen


def _find_cycle(nodes, edges) -> Optional[list]:
    """Return one directed cycle as a node list, or None. ``edges``: node -> successors."""
    color = {}
    stack = []

    def dfs(n):
        color[n] = 1
        stack.append(n)
        for m in edges.get(n, ()):
            if color.get(m) == 1:
                return stack[stack.index(m):]
            if m not in color:
                found = dfs(m)
                if found:
                    return found
        color[n] = 2
        stack.pop()
        return None

    for n in sorted(nodes):
        if n not in color:
            found = dfs(n)
            if found:
                return found
    return None


def nullable_graphs(gs: GrammarSet) -> set:
    """Graphs whose language contains the empty sequence (fixpoint)."""
    nullable = set()
    changed = True
    while changed:
        changed = False
        for g in gs.graphs.values():
            if g.name in nullable:
                continue
            arcs = [a for a in g.arcs if isinstance(a.mask, Epsilon)
                    or (isinstance(a.mask, SubgraphCall) and a.mask.name in nullable)]
            if _reachable(g, g.start, arcs) & g.finals:
                nullable.add(g.name)
                changed = True
    return nullable


def validate(gs: GrammarSet) -> list:
    """List every structural invariant violated by ``gs`` (empty when valid)."""
    problems = []
    called = set()
    for g in gs.graphs.values():
        nodes = g.nodes
        if g.start not in nodes or not g.finals or not g.finals <= nodes:
            problems.append(Violation("bad-node", (g.name,), f"graph {g.name} has undeclared start/final nodes"))
        for a in g.arcs:
            if isinstance(a.mask, SubgraphCall):
                called.add(a.mask.name)
                if a.mask.name not in gs.graphs:
                    problems.append(Violation("undefined-subgraph", (g.name, a.mask.name),
                                              f"graph {g.name} calls undefined graph {a.mask.name}"))
            if a.output is not None and isinstance(a.mask, (Epsilon, SubgraphCall)):
                problems.append(Violation("output-on-empty-arc", (g.name,),
                                          f"graph {g.name}: OUTPUT only allowed on consuming arcs"))
        if not (_reachable(g, g.start) & g.finals):
            problems.append(Violation("unreachable-final", (g.name,),
                                      f"graph {g.name}: no final node reachable from start"))
        if (g.category is None) != (g.tag is None):
            problems.append(Violation("category-tag", (g.name,),
                                      f"graph {g.name}: CATEGORY and TAG must be given together"))
        elif g.category is not None and g.tag not in ALLOWED_TAGS[g.category]:
            problems.append(Violation("category-tag", (g.name,),
                                      f"graph {g.name}: tag {g.tag} not allowed with {g.category}"))
    for name in gs.mains:
        if name not in gs.graphs:
            problems.append(Violation("undefined-main", (name,), f"MAIN names undefined graph {name}"))
        elif not gs.graphs[name].annotating:
            problems.append(Violation("main-without-category", (name,),
                                      f"main graph {name} needs CATEGORY and TAG"))
    for name in sorted(called & set(gs.graphs)):
        if gs.graphs[name].annotating:
            problems.append(Violation("annotating-subgraph", (name,),
                                      f"graph {name} is called as a subgraph but carries a CATEGORY"))

    call_edges = {g.name: [c for c in g.calls() if c in gs.graphs] for g in gs.graphs.values()}
    cycle = _find_cycle(gs.graphs, call_edges)
    if cycle:
        problems.append(Violation("recursion", tuple(cycle),
                                  "recursive subgraph calls: " + " -> ".join(cycle + cycle[:1])))
        return problems

    nullable = nullable_graphs(gs)
    for g in gs.graphs.values():
        empty_edges = {}
        for a in g.arcs:
            if isinstance(a.mask, Epsilon) or (isinstance(a.mask, SubgraphCall) and a.mask.name in nullable):
                empty_edges.setdefault(a.src, []).append(a.dst)
        cyc = _find_cycle(g.nodes, empty_edges)
        if cyc:
            problems.append(Violation("epsilon-cycle", (g.name,),
                                      f"graph {g.name}: cycle of empty arcs through {' -> '.join(cyc)}"))
    return problems


# -- language enumeration (reference interpreter) ----------------------------

def graph_language(gs: GrammarSet, name: str, max_len: int) -> set:
    """All mask sequences (tuples) of length <= max_len accepted by graph ``name``.

    Subgraph calls are expanded and empty arcs elided, so the result holds
    only Literal, LemmaMask and CategoryMask objects.
    """
    memo = {}

    def lang(gname: str, node: str, budget: int) -> frozenset:
        key = (gname, node, budget)
        if key in memo:
            return memo[key]
        g = gs.graphs[gname]
        out = set()
        if node in g.finals:
            out.add(())
        for a in g.arcs_from(node):
            if isinstance(a.mask, Epsilon):
                out |= lang(gname, a.dst, budget)
            elif isinstance(a.mask, SubgraphCall):
                sub = gs.graphs[a.mask.name]
                for head in lang(sub.name, sub.start, budget):
                    for tail in lang(gname, a.dst, budget - len(head)):
                        out.add(head + tail)
            elif budget > 0:
                for tail in lang(gname, a.dst, budget - 1):
                    out.add((a.mask,) + tail)
        memo[key] = frozenset(out)
        return memo[key]

    if max_len < 0:
        return set()
    g = gs.graphs[name]
    return set(lang(name, g.start, max_len))
