"""Shared fixtures and independent oracles for the test suite."""
import random

from lggmwe import load_lexicon, parse_grammar

# two-entry lexicon with a three-suffix josa class and a three-suffix eomi class
TOY_LEXICON = """\
CLASS\tJN1\tJN\t이,을,에
CLASS\tEV1\tEV\t다,어요,었다
마음\t-\tN\t-\tJN1
들\t들다\tV\t-\tEV1
"""

FIGURE2 = """\
GRAPH Fig2 CATEGORY SMWE TAG QXPO
START 0
FINAL 4
ARC 0 1 "마음"
ARC 1 2 <JN>
ARC 2 3 <들다>
ARC 3 4 <EV>
END
MAIN Fig2
"""

FIGURE4 = """\
GRAPH Fig4 CATEGORY DMWE TAG QXPO
START 0
FINAL 4
ARC 0 1 "커버"
ARC 1 2 <JN>
ARC 1 2 <E>
ARC 2 3 <DS>
ARC 3 4 <되다>
ARC 4 5 <EV>
FINAL 5
END
MAIN Fig4
"""

OPTIONAL_BRAND = """\
GRAPH Brand
START 0
FINAL 2
ARC 0 1 "헤라"
ARC 1 2 "셀"
END
GRAPH Product CATEGORY EMWE TAG XXPR
START 0
FINAL 2
ARC 0 1 @Brand
ARC 0 1 <E>
ARC 1 2 "에센스"
END
MAIN Product
"""


def toy_lexicon():
    return load_lexicon(TOY_LEXICON)


def oracle_segment(lexicon, eojeol):
    """Try every split point and check both halves against the raw tables."""
    found = set()
    for k in range(len(eojeol) + 1):
        stem, suffix = eojeol[:k], eojeol[k:]
        for entry in lexicon.entries:
            if entry.surface != stem:
                continue
            cls = lexicon.classes.get(entry.inflclass) if entry.inflclass else None
            if suffix and (cls is None or suffix not in cls.suffixes):
                continue
            shape = ((stem, entry.lemma, entry.pos),)
            if suffix:
                shape += ((suffix, suffix, cls.kind),)
            found.add(shape)
    if not found:
        found.add(((eojeol, eojeol, "UNK"),))
    return found


def shapes(decompositions):
    return {tuple((t.surface, t.lemma, t.pos) for t in path) for path in decompositions}


# -- random grammar sets ------------------------------------------------------

MASK_POOL = ['"가"', "<N>", "<들다>", "<DS>"]


def random_grammar_text(rng: random.Random) -> str:
    """A random grammar set: <= 3 graphs, <= 6 nodes each, calls only to later graphs."""
    n_graphs = rng.randint(1, 3)
    names = [f"G{i}" for i in range(n_graphs)]
    out = []
    for gi, name in enumerate(names):
        n_nodes = rng.randint(1, 6)
        header = f"GRAPH {name}"
        if gi == 0:
            header += " CATEGORY SMWE TAG QXPO"
        out += [header, "START 0", "FINAL " + " ".join(
            str(n) for n in sorted(rng.sample(range(n_nodes), rng.randint(1, min(2, n_nodes)))))]
        for _ in range(rng.randint(0, 8)):
            src, dst = rng.randrange(n_nodes), rng.randrange(n_nodes)
            roll = rng.random()
            if roll < 0.15:
                mask = "<E>"
            elif roll < 0.35 and gi + 1 < n_graphs:
                mask = "@" + rng.choice(names[gi + 1:])
            else:
                mask = rng.choice(MASK_POOL)
            out.append(f"ARC {src} {dst} {mask}")
        out.append("END")
    out.append("MAIN G0")
    return "\n".join(out) + "\n"


def random_valid_grammars(seed: int, count: int):
    """Yield ``count`` random grammar sets that pass validation."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        text = random_grammar_text(rng)
        try:
            gs = parse_grammar(text)
        except ValueError:
            continue
        made += 1
        yield text, gs


# -- random eojeols -----------------------------------------------------------

def random_eojeol(rng: random.Random, lexicon) -> str:
    entries = lexicon.entries
    roll = rng.random()
    if roll < 0.15:
        # junk that no stem covers
        return "".join(rng.choice("뷁뙇쀍휑") for _ in range(rng.randint(1, 4)))
    entry = rng.choice(entries)
    suffixes = lexicon.suffixes(entry)
    if roll < 0.3:
        # a stem followed by something outside its class
        return entry.surface + rng.choice(["뷁", "쀍다", "요요"])
    if suffixes and rng.random() < 0.7:
        return entry.surface + rng.choice(suffixes)
    return entry.surface

