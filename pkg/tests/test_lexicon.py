import io
import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import TOY_LEXICON, oracle_segment, random_eojeol, shapes, toy_lexicon
from lggmwe import build_lattice, expand_inflections, load_lexicon, sample_lexicon, segment_eojeol
from lggmwe.lexicon import LexEntry, LexiconError


def test_empty_stream():
    lex = load_lexicon(io.StringIO(""))
    assert len(lex) == 0 and len(lex.classes) == 0


def test_two_entry_lexicon():
    lex = toy_lexicon()
    assert len(lex) == 2
    assert [e.lemma for e in lex.by_surface("들")] == ["들다"]
    assert lex.by_lemma("마음")[0].pos == "N"


def test_surface_and_lemma_indexes():
    lex = load_lexicon("CLASS\tJ\tJN\t가\nCLASS\tE\tEV\t다\n"
                       "커버\t-\tN\t-\tJ\n되\t되다\tV\t-\tE\n")
    assert lex.by_surface("커버")[0].lemma == "커버"
    assert lex.by_lemma("되다")[0].surface == "되"
    assert lex.by_surface("되다") == ()


def test_duplicate_lines_deduplicated():
    lex = load_lexicon(TOY_LEXICON + "마음\t-\tN\t-\tJN1\n")
    assert len(lex) == 2


@pytest.mark.parametrize("line, lineno", [
    ("마음\t-\tN\t-", 1),                      # wrong field count
    ("마음\t-\tNOUN\t-\t-", 1),                 # unknown POS
    ("마음\t-\tN\t-\tJN9", 1),                  # unknown class
    ("CLASS\tJN1\tJN\t이\n잘\t-\tD\t-\tJN1", 2),  # adverbs do not inflect
    ("마음\t-\tN\tHAPPY\t-", 1),                # unknown semtag
])
def test_malformed_lines_report_line_number(line, lineno):
    with pytest.raises(LexiconError) as info:
        load_lexicon(line + "\n")
    assert info.value.lineno == lineno


def test_comments_and_crlf():
    lex = load_lexicon("# header\r\n\r\n잘\t-\tD\t-\t-\r\n")
    assert lex.entries[0].surface == "잘"


def test_bom_rejected():
    with pytest.raises(LexiconError):
        load_lexicon("\ufeff잘\t-\tD\t-\t-\n")


def test_expand_noun():
    lex = toy_lexicon()
    entry = lex.by_surface("마음")[0]
    assert expand_inflections(lex, entry) == {"마음", "마음이", "마음을", "마음에"}


def test_expand_verb_uses_stem():
    lex = toy_lexicon()
    entry = lex.by_surface("들")[0]
    assert expand_inflections(lex, entry) == {"들", "들다", "들어요", "들었다"}


def test_expand_without_class():
    lex = load_lexicon("잘\t-\tD\t-\t-\n")
    assert expand_inflections(lex, lex.entries[0]) == {"잘"}


def test_expand_cardinality_on_sample():
    lex = sample_lexicon()
    for entry in lex.entries:
        forms = expand_inflections(lex, entry)
        assert entry.surface in forms
        assert len(forms) == 1 + len(set(lex.suffixes(entry)))


def test_segment_examples():
    lex = toy_lexicon()
    assert shapes(segment_eojeol(lex, "마음에")) == {(("마음", "마음", "N"), ("에", "에", "JN"))}
    assert shapes(segment_eojeol(lex, "들어요")) == {(("들", "들다", "V"), ("어요", "어요", "EV"))}
    assert shapes(segment_eojeol(load_lexicon(""), "zzz")) == {(("zzz", "zzz", "UNK"),)}


def test_segment_offsets():
    (path,) = segment_eojeol(toy_lexicon(), "마음에", offset=5)
    assert [t.span for t in path] == [(5, 7), (7, 8)]


def test_segment_all_ways():
    # two stems that both cover a prefix of the same unit
    lex = load_lexicon("CLASS\tC\tJN\t나,가나\n가\t-\tN\t-\tC\n가가\t-\tN\t-\tC\n")
    assert shapes(segment_eojeol(lex, "가가나")) == {
        (("가", "가", "N"), ("가나", "가나", "JN")),
        (("가가", "가가", "N"), ("나", "나", "JN")),
    }


def test_segment_rejects_whitespace():
    with pytest.raises(ValueError):
        segment_eojeol(toy_lexicon(), "마음 에")


def test_segment_matches_oracle_on_sample():
    lex = sample_lexicon()
    rng = random.Random(11)
    for _ in range(300):
        word = random_eojeol(rng, lex)
        assert shapes(segment_eojeol(lex, word)) == oracle_segment(lex, word), word


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="마음에들어요이을다었가", min_size=1, max_size=6))
def test_segment_oracle_property(word):
    lex = toy_lexicon()
    paths = segment_eojeol(lex, word)
    assert shapes(paths) == oracle_segment(lex, word)
    for path in paths:
        assert "".join(t.surface for t in path) == word
        assert path[0].start == 0 and path[-1].end == len(word)


def test_lattice_empty():
    lat = build_lattice(toy_lexicon(), "")
    assert len(lat.nodes) == 1 and len(lat.edges) == 0


def test_lattice_two_eojeols():
    lat = build_lattice(toy_lexicon(), "마음에 들어요")
    assert sorted(t.surface for t in lat.edges) == sorted(["마음", "에", "들", "어요"])
    assert len(lat.units) == 2


def test_lattice_adverb_example():
    lat = build_lattice(sample_lexicon(), "커버가 잘 되다")
    got = {(t.surface, t.pos) for t in lat.edges}
    assert {("커버", "N"), ("가", "JN"), ("잘", "D"), ("되", "V"), ("다", "EV")} <= got


def test_lattice_punctuation_is_peeled():
    lat = build_lattice(sample_lexicon(), "(마음에)")
    assert ("마음", "N") in {(t.surface, t.pos) for t in lat.edges}
    assert {t.surface for t in lat.edges if t.unknown} == {"(", ")"}


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from(["마음에", "들어요", "zz", "마음", "들었다", "을을"]), max_size=6),
       st.sampled_from([" ", "  ", "\t"]))
def test_lattice_invariants(words, sep):
    text = sep.join(words)
    lat = build_lattice(toy_lexicon(), text)
    assert len(lat.edges) >= len(words)
    for start, end in lat.units:
        paths = lat.paths(start, end)
        assert paths
        for path in paths:
            assert "".join(t.surface for t in path) == text[start:end]
    for t in lat.edges:
        assert not any(c.isspace() for c in text[t.start:t.end])


@pytest.mark.parametrize("args", [
    ("잘", "잘", "D", frozenset(), "JN1"),
    ("마음", "마음", "N", frozenset(), None),
    ("좋", "좋다", "A", {"QXPO", "QXNG"}, "EV1"),
    ("마 음", "", "N", frozenset(), "JN1"),
])
def test_entry_invariants(args):
    with pytest.raises(ValueError):
        LexEntry(*args)
