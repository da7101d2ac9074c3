# Corpus-construction helpers: polarity split, term frequency, concordance.
from lggmwe import concordance, load_corpus, sample_lexicon, split_by_polarity, term_frequency
from lggmwe.corpus import format_kwic
from lggmwe.evaluation import parse_gold
from lggmwe.resources import read_data

lex = sample_lexicon()
corpus = load_corpus([parse_gold(line).text for line in read_data("gold_mini.txt").splitlines()])
print(corpus.sentence_count, "sentences,", corpus.token_count, "eojeols")

with_, without = split_by_polarity(corpus, lex)
print(len(with_), "with polarity words,", len(without), "without")
for s in without.sentences[:3]:
    print("   ", s)

# Neutral (QXDE) words are where polarity MWEs hide.
print(term_frequency(without, lex, "QXDE").to_tsv())

print(format_kwic(concordance(corpus, "마음", 8)))
# with a lexicon the pattern may be a lemma; hits show the inflected form
print(format_kwic(concordance(corpus, "되다", 6, lex)))
