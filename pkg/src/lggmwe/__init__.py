"""Recognition, chunking and normalization of Korean multiword expressions
with local grammar graphs compiled to finite-state transducers."""

from .annotate import Annotation, MatchPolicy, annotate, normalize, render, split_sentences
from .corpus import Corpus, FreqTable, KwicLine, concordance, load_corpus, split_by_polarity, term_frequency
from .evaluation import EvalReport, GoldDocument, aggregate, parse_gold, score
from .fst import CompiledTransducer, Match, compile_grammar, mask_matches, match_from
from .grammar import GrammarSet, graph_language, parse_grammar, render_grammar, validate
from .lexicon import Lexicon, LexEntry, MorphToken, SentenceLattice, build_lattice, expand_inflections, load_lexicon, segment_eojeol
from .resources import Bundle, sample_grammar, sample_lexicon, sample_transducer

__version__ = "0.1.0"
