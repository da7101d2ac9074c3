# Tag a handful of review sentences with the bundled resources.
from lggmwe import MatchPolicy, annotate, render, sample_lexicon, sample_transducer

lex, t = sample_lexicon(), sample_transducer()

reviews = [
    "이 제품 정말 마음에 들어요.",
    "커버가 완전히 잘 돼요!",
    "헤라 셀 에센스는 촉촉하게 스며들어요.",
    "칼라감이 예쁘고 컬러밝기도 딱 좋아요.",
    "라스트 파데 샀는데 바가지를 썼어요.",
]
for text in reviews:
    anns = annotate(text, lex, t)
    print(render(text, anns))
    for a in anns:
        print(f"    {a.category}/{a.tag:5} {a.surface!r} -> {a.canonical!r}  ({a.graph})")

# Overlapping candidates: leftmost first, then longest, then priority.
# LastingFoundation outranks the generic product graph by default...
print(annotate("라스트 파운데이션", lex, t)[0].graph)
# ...and a policy can override grammar priorities.
policy = MatchPolicy(priorities={"EMWE_Product": 5})
print(annotate("라스트 파운데이션", lex, t, policy)[0].graph)
