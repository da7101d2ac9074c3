import itertools

import pytest

from helpers import FIGURE2, FIGURE4, OPTIONAL_BRAND, MASK_POOL, random_valid_grammars, toy_lexicon
from lggmwe import (
    build_lattice, compile_grammar, graph_language, load_lexicon, mask_matches, match_from,
    parse_grammar, sample_grammar, sample_lexicon,
)
from lggmwe.fst import CompileError, CompiledTransducer
from lggmwe.grammar import DS, CategoryMask, LemmaMask, Literal, parse_mask
from lggmwe.lexicon import MorphToken


def language_union(gs, n):
    return set().union(*(graph_language(gs, m, n) for m in gs.mains))


def test_figure2_chain():
    t = compile_grammar(parse_grammar(FIGURE2))
    assert t.n_states == 5
    assert len(t.arcs) == 4
    assert t.accepted_sequences(10) == {
        (Literal("마음"), CategoryMask("JN"), LemmaMask("들다"), CategoryMask("EV"))}


def test_empty_main():
    t = compile_grammar(parse_grammar("GRAPH A CATEGORY SMWE TAG QXPO\nSTART 0\nFINAL 0\nEND\nMAIN A\n"))
    assert t.accepted_sequences(5) == {()}


def test_optional_brand_compiled():
    gs = parse_grammar(OPTIONAL_BRAND)
    t = compile_grammar(gs)
    seqs = t.accepted_sequences(5)
    assert (Literal("에센스"),) in seqs
    assert (Literal("헤라"), Literal("셀"), Literal("에센스")) in seqs
    assert seqs == language_union(gs, 5)


def test_sample_grammar_equivalence():
    gs = sample_grammar()
    t = compile_grammar(gs)
    assert t.accepted_sequences(4) == language_union(gs, 4)
    for name in gs.mains:
        assert t.accepted_sequences(4, graph=name) == graph_language(gs, name, 4)


def test_random_equivalence_small():
    for _, gs in random_valid_grammars(99, 80):
        assert compile_grammar(gs).accepted_sequences(6) == language_union(gs, 6)


def test_state_cap():
    with pytest.raises(CompileError):
        compile_grammar(sample_grammar(), max_states=3)


def test_dict_roundtrip():
    t = compile_grammar(sample_grammar())
    again = CompiledTransducer.from_dict(t.to_dict())
    assert again.to_dict() == t.to_dict()
    assert again.accepted_sequences(4) == t.accepted_sequences(4)


def test_compile_is_deterministic():
    a = compile_grammar(sample_grammar()).dump()
    b = compile_grammar(parse_grammar(FIGURE2).merged(sample_grammar())).dump()
    assert a == compile_grammar(sample_grammar()).dump()
    assert a != b


# -- mask evaluation -----------------------------------------------------------

def _tok(surface, lexicon=None, pos=None):
    if lexicon is None:
        return MorphToken(0, len(surface), surface, None)
    (entry,) = [e for e in lexicon.by_surface(surface) if pos is None or e.pos == pos]
    return MorphToken(0, len(surface), surface, entry)


def test_mask_matches():
    lex = toy_lexicon()
    deul = _tok("들", lex)
    assert mask_matches(LemmaMask("들다"), deul)
    assert mask_matches(LemmaMask("들다", "V"), deul)
    assert not mask_matches(LemmaMask("들다", "A"), deul)
    assert not mask_matches(CategoryMask("EV"), MorphToken(0, 1, "에", lex.suffix_entry(lex.by_surface("마음")[0], "에")))
    assert mask_matches(Literal("들"), deul)


def test_mask_semtag_membership():
    lex = sample_lexicon()
    for entry in lex.entries:
        tok = MorphToken(0, len(entry.surface), entry.surface, entry)
        for tag in ("QXPO", "QXNG", "QXDE", "XXPR", "XQFT"):
            assert mask_matches(CategoryMask(tag), tok) == (tag in entry.semtags)
        assert mask_matches(CategoryMask(entry.pos), tok)


def test_unknown_matches_only_literal():
    tok = _tok("zz")
    assert mask_matches(Literal("zz"), tok)
    for text in ("<zz>", "<N>", "<D>", "<QXPO>"):
        assert not mask_matches(parse_mask(text), tok)


# -- matching on lattices ----------------------------------------------------

def test_figure2_match():
    lex = toy_lexicon()
    t = compile_grammar(parse_grammar(FIGURE2))
    lat = build_lattice(lex, "마음에 들어요")
    (m,) = match_from(t, lat, 0, lex)
    assert [x.surface for x in m.tokens] == ["마음", "에", "들", "어요"]
    assert m.graph == "Fig2" and m.span == (0, 7)
    assert match_from(t, lat, 4, lex) == set()


def test_figure4_adverb_insertion():
    lex = sample_lexicon()
    t = compile_grammar(parse_grammar(FIGURE4))
    for text, n_tokens in [("커버가 잘 되다", 5), ("커버가 되다", 4), ("커버 완전히 잘 되어요", 5)]:
        lat = build_lattice(lex, text)
        ends = {m.end_node: m for m in match_from(t, lat, 0, lex)}
        assert len(text) in ends, text
        assert len(ends[len(text)].tokens) == n_tokens


def test_ds_cap():
    lex = load_lexicon("CLASS\tJ\tJN\t가\nCLASS\tE\tEV\t다\n커버\t-\tN\t-\tJ\n되\t되다\tV\t-\tE\n"
                       "잘\t-\tD\t-\t-\n")
    t = compile_grammar(parse_grammar(FIGURE4))
    for k in range(6):
        text = "커버가 " + "잘 " * k + "되다"
        found = any(m.end_node == len(text) for m in match_from(t, build_lattice(lex, text), 0, lex))
        assert found == (k <= 3), k


def test_matches_stay_inside_lattice():
    lex = sample_lexicon()
    t = compile_grammar(sample_grammar())
    text = "헤라 셀 에센스는 마음에 들어요 커버가 잘 돼요"
    lat = build_lattice(lex, text)
    edges = set(lat.edges)
    for node in lat.nodes:
        for m in match_from(t, lat, node, lex):
            assert set(m.tokens) <= edges
            assert m.tokens[0].start == node
            for a, b in zip(m.tokens, m.tokens[1:]):
                assert b in lat.following(a)


# synthetic realization of one mask per eojeol
REALIZE = {'"가"': "가", "<N>": "마음", "<들다>": "들", "<DS>": "잘"}
REALIZE_LEX = "CLASS\tJ\tJN\t이\nCLASS\tE\tEV\t다\n마음\t-\tN\t-\tJ\n들\t들다\tV\t-\tE\n잘\t-\tD\t-\t-\n"


def _realizations(seq, realize, limit):
    """Word tuples (length <= limit) consumed by ``seq``, <DS> taking 0-3 adverbs."""
    out = {()}
    for m in seq:
        choices = [(realize[DS],) * k for k in range(4)] if m == DS else [(realize[m],)]
        out = {w + c for w in out for c in choices if len(w) + len(c) <= limit}
    return out


def test_equivalence_via_synthetic_lattices():
    lex = load_lexicon(REALIZE_LEX)
    pool = [parse_mask(m) for m in MASK_POOL]
    realize = {parse_mask(k): v for k, v in REALIZE.items()}
    for _, gs in random_valid_grammars(5, 25):
        t = compile_grammar(gs)
        covered = set()
        for s in language_union(gs, 8):
            covered |= _realizations(s, realize, 4)
        for n in range(1, 5):
            for seq in itertools.product(pool, repeat=n):
                words = tuple(realize[m] for m in seq)
                text = " ".join(words)
                lat = build_lattice(lex, text)
                hit = any(m.end_node == len(text) for m in match_from(t, lat, 0, lex))
                assert hit == (words in covered), (seq, text)
