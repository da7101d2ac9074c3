# Scoring predictions against tagged gold text.
from lggmwe import annotate, parse_gold, sample_lexicon, sample_transducer, score
from lggmwe.evaluation import CategoryScore, EvalReport
from lggmwe.resources import read_data

lex, t = sample_lexicon(), sample_transducer()

# Self-evaluation on the bundled gold mini-corpus.
report = EvalReport()
for line in read_data("gold_mini.txt").splitlines():
    gold = parse_gold(line)
    report = report + score(annotate(gold.text, lex, t), gold)
print(report.summary())

# A wrong guess: the span is right but the category is not.
gold = parse_gold("<SMWE_QXPO>마음에 들어요</QXPO>")
wrong = [a.__class__(a.start, a.end, "DMWE", "QXPO", a.surface) for a in gold.annotations]
print(score(wrong, gold).to_tsv())

# Feeding per-category counts (tp, predicted, gold) straight in gives the
# published results table back.
counts = {"SMWE": (28, 30, 36), "DMWE": (59, 63, 79), "EMWE": (205, 257, 266), "FMWE": (37, 39, 46)}
print(EvalReport({c: CategoryScore.from_counts(*n) for c, n in counts.items()}).summary())
