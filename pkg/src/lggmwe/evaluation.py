"""Exact-span scoring of predicted MWE annotations against tagged gold text."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .annotate import Annotation
from .grammar import CATEGORIES, TAGS

_TAG = re.compile(r"<(%s)_(%s)>|</(%s)>" % ("|".join(CATEGORIES), "|".join(TAGS), "|".join(TAGS)))


class GoldParseError(ValueError):
    def __init__(self, offset: int, reason: str):
        super().__init__(f"offset {offset}: {reason}")
        self.offset = offset


class TextMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class GoldDocument:
    text: str
    annotations: tuple = ()


def parse_gold(tagged: str) -> GoldDocument:
    """Strip inline tags, returning the plain text and re-based annotations.

    Raises :class:`GoldParseError` on nested, unbalanced or mismatched tags.
    """
    plain = []
    length = 0
    pos = 0
    open_ = None
    annotations = []
    for m in _TAG.finditer(tagged):
        chunk = tagged[pos:m.start()]
        plain.append(chunk)
        length += len(chunk)
        pos = m.end()
        if m.group(1):
            if open_ is not None:
                raise GoldParseError(m.start(), f"nested tag {m.group(0)} inside <{open_[0]}_{open_[1]}>")
            open_ = (m.group(1), m.group(2), length, m.start())
        else:
            if open_ is None:
                raise GoldParseError(m.start(), f"closing tag {m.group(0)} without opening tag")
            cat, tag, start, _ = open_
            if m.group(3) != tag:
                raise GoldParseError(m.start(), f"closing tag {m.group(0)} does not match <{cat}_{tag}>")
            if length == start:
                raise GoldParseError(m.start(), "empty annotation")
            annotations.append((start, length, cat, tag))
            open_ = None
    if open_ is not None:
        raise GoldParseError(open_[3], f"unclosed tag <{open_[0]}_{open_[1]}>")
    plain.append(tagged[pos:])
    text = "".join(plain)
    return GoldDocument(text, tuple(
        Annotation(s, e, c, t, text[s:e], graph="gold") for s, e, c, t in annotations))


@dataclass
class CategoryScore:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tag_mismatch: int = 0

    @property
    def precision(self) -> float:
        return self.tp / (self.tp + self.fp) if self.tp + self.fp else 0.0

    @property
    def recall(self) -> float:
        return self.tp / (self.tp + self.fn) if self.tp + self.fn else 0.0

    @property
    def f_measure(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0

    @property
    def precision_undefined(self) -> bool:
        return self.tp + self.fp == 0

    @property
    def recall_undefined(self) -> bool:
        return self.tp + self.fn == 0

    @property
    def f_undefined(self) -> bool:
        return self.precision + self.recall == 0

    @property
    def predicted(self) -> int:
        return self.tp + self.fp

    @property
    def gold(self) -> int:
        return self.tp + self.fn

    @classmethod
    def from_counts(cls, tp: int, predicted: int, gold: int) -> "CategoryScore":
        if not 0 <= tp <= min(predicted, gold):
            raise ValueError("need 0 <= tp <= min(predicted, gold)")
        return cls(tp, predicted - tp, gold - tp)

    def __add__(self, other: "CategoryScore") -> "CategoryScore":
        return CategoryScore(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn,
                             self.tag_mismatch + other.tag_mismatch)


@dataclass
class EvalReport:
    categories: dict = field(default_factory=lambda: {c: CategoryScore() for c in CATEGORIES})

    def __getitem__(self, category: str) -> CategoryScore:
        return self.categories[category]

    @property
    def total(self) -> CategoryScore:
        return aggregate(self)

    def __add__(self, other: "EvalReport") -> "EvalReport":
        return EvalReport({c: self.categories[c] + other.categories[c] for c in CATEGORIES})

    def to_tsv(self) -> str:
        rows = ["category\ttp\tfp\tfn\tprecision\trecall\tf_measure\tflags"]
        for name, s in [*self.categories.items(), ("Total", self.total)]:
            flags = ",".join(f for f, on in [("P_undefined", s.precision_undefined),
                                              ("R_undefined", s.recall_undefined),
                                              ("F_undefined", s.f_undefined),
                                              (f"tag_mismatch={s.tag_mismatch}", s.tag_mismatch)] if on)
            rows.append(f"{name}\t{s.tp}\t{s.fp}\t{s.fn}\t{s.precision:.3f}\t{s.recall:.3f}"
                        f"\t{s.f_measure:.3f}\t{flags or '-'}")
        return "\n".join(rows) + "\n"

    def summary(self) -> str:
        """Plain-text table: metrics as rows, categories as columns."""
        cols = [*self.categories.items(), ("Total", self.total)]
        head = f"{'':<10}" + "".join(f"{name:>8}" for name, _ in cols)

        def row(label, attr):
            return f"{label:<10}" + "".join(f"{getattr(s, attr):>8.3f}" for _, s in cols)

        def count_row(label, attr):
            return f"{label:<10}" + "".join(f"{getattr(s, attr):>8d}" for _, s in cols)

        return "\n".join([head, row("Precision", "precision"), row("Recall", "recall"),
                          row("F-Measure", "f_measure"), count_row("Gold", "gold"),
                          count_row("Predicted", "predicted")]) + "\n"


def aggregate(report: EvalReport) -> CategoryScore:
    """Micro totals: per-category counts summed, ratios recomputed."""
    total = CategoryScore()
    for s in report.categories.values():
        total = total + s
    return total


def score(pred: Iterable[Annotation], gold: GoldDocument, text: Optional[str] = None) -> EvalReport:
    """Exact (span, category) matching of predictions against one gold document.

    A predicted annotation whose surface differs from the gold text at its
    span, or an explicit ``text`` differing from the gold text, raises
    :class:`TextMismatchError`.
    """
    if text is not None and text != gold.text:
        raise TextMismatchError("prediction text differs from gold text")
    report = EvalReport()
    pred = list(pred)
    for a in pred:
        if gold.text[a.start:a.end] != a.surface:
            raise TextMismatchError(f"prediction {a.span} {a.surface!r} not found in gold text")
    gold_by_key = {(a.start, a.end, a.category): a for a in gold.annotations}
    matched = set()

    def claim_order(a):
        # a same-tag prediction claims its gold span first, so order never matters
        g = gold_by_key.get((a.start, a.end, a.category))
        return (g is None or g.tag != a.tag, a.key)

    for a in sorted(pred, key=claim_order):
        key = (a.start, a.end, a.category)
        s = report.categories[a.category]
        if key in gold_by_key and key not in matched:
            matched.add(key)
            s.tp += 1
            if gold_by_key[key].tag != a.tag:
                s.tag_mismatch += 1
        else:
            s.fp += 1
    for key, g in gold_by_key.items():
        if key not in matched:
            report.categories[g.category].fn += 1
    return report
