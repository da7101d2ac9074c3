# Graphs are written in a small line-based DSL. Quoted strings match surfaces,
# <lemma> matches a lemma, <EV>/<JN>/<DS> match categories, <E> is empty and
# @Name calls another graph.
from lggmwe import compile_grammar, graph_language, parse_grammar, sample_grammar
from lggmwe.grammar import GrammarError

figure2 = parse_grammar("""\
GRAPH MaeumEDeulda CATEGORY SMWE TAG QXPO
START 0
FINAL 4
ARC 0 1 "마음"
ARC 1 2 <JN>
ARC 2 3 <들다>
ARC 3 4 <EV>
END
MAIN MaeumEDeulda
""")
for seq in graph_language(figure2, "MaeumEDeulda", 4):
    print(" ".join(map(str, seq)))

t = compile_grammar(figure2)
print(t.n_states, "states")
print(t.dump())

# Recursion is refused at parse time.
try:
    parse_grammar("GRAPH A\nSTART 0\nFINAL 1\nARC 0 1 @B\nEND\n"
                  "GRAPH B\nSTART 0\nFINAL 1\nARC 0 1 @A\nEND\n")
except GrammarError as exc:
    print("rejected:", exc)

# The sample grammar: four categories, subgraph calls inlined on compile.
gs = sample_grammar()
big = compile_grammar(gs)
print(len(gs), "graphs,", len(gs.mains), "mains ->", big.n_states, "states,", len(big.arcs), "arcs")
print(len(big.accepted_sequences(3)), "mask sequences of length <= 3")
