"""Bundled sample resources and the compiled-bundle file format."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Union

from .fst import CompiledTransducer, compile_grammar
from .grammar import GrammarSet, parse_grammar, render_grammar
from .lexicon import Lexicon, load_lexicon

BUNDLE_FORMAT = "lggmwe-bundle"
BUNDLE_VERSION = 1


class BundleError(ValueError):
    pass


def data_path(name: str) -> Path:
    return Path(str(resources.files("lggmwe") / "data" / name))


def read_data(name: str) -> str:
    return data_path(name).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def sample_lexicon() -> Lexicon:
    return load_lexicon(read_data("sample.lex"))


@lru_cache(maxsize=None)
def sample_grammar() -> GrammarSet:
    return parse_grammar(read_data("sample.grm"))


@lru_cache(maxsize=None)
def sample_transducer() -> CompiledTransducer:
    return compile_grammar(sample_grammar())


@dataclass(frozen=True)
class Bundle:
    lexicon: Lexicon
    grammar: GrammarSet
    transducer: CompiledTransducer

    @classmethod
    def build(cls, lexicon: Lexicon, grammar: GrammarSet) -> "Bundle":
        return cls(lexicon, grammar, compile_grammar(grammar))

    def dumps(self) -> str:
        payload = {
            "format": BUNDLE_FORMAT,
            "version": BUNDLE_VERSION,
            "lexicon": self.lexicon.dumps(),
            "grammar": render_grammar(self.grammar),
            "transducer": self.transducer.to_dict(),
        }
        return json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=1) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Bundle":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise BundleError(f"not a bundle: {exc}") from None
        if not isinstance(payload, dict) or payload.get("format") != BUNDLE_FORMAT:
            raise BundleError("not a compiled bundle")
        if payload.get("version") != BUNDLE_VERSION:
            raise BundleError(f"bundle version {payload.get('version')!r} unsupported "
                              f"(expected {BUNDLE_VERSION})")
        return cls(load_lexicon(payload["lexicon"]), parse_grammar(payload["grammar"]),
                   CompiledTransducer.from_dict(payload["transducer"]))

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Bundle":
        return cls.loads(Path(path).read_text(encoding="utf-8"))
