# A lexicon entry knows its stem, its citation lemma and which suffix class
# it takes. Segmenting an eojeol tries every stem + suffix-chain split.
from lggmwe import build_lattice, expand_inflections, load_lexicon, sample_lexicon, segment_eojeol

toy = load_lexicon("""\
CLASS\tJN1\tJN\t이,을,에
CLASS\tEV1\tEV\t다,어요,었다
마음\t-\tN\t-\tJN1
들\t들다\tV\t-\tEV1
""")

for entry in toy.entries:
    print(entry.surface, "->", sorted(expand_inflections(toy, entry)))

for word in ["마음에", "들어요", "zzz"]:
    for path in segment_eojeol(toy, word):
        print(word, "=", " + ".join(str(t) for t in path))

# The bundled sample lexicon is bigger; a sentence becomes a lattice of
# candidate tokens, one or more paths per whitespace unit.
lex = sample_lexicon()
print(len(lex), "entries,", len(lex.classes), "suffix classes")

sentence = "커버가 잘 되다"
lattice = build_lattice(lex, sentence)
for start, end in lattice.units:
    for path in lattice.paths(start, end):
        print(repr(sentence[start:end]), [str(t) for t in path])
