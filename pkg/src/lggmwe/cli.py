"""Command-line front end.

Exit codes: 0 success, 1 usage, 2 grammar/lexicon error, 3 missing
artifact, 4 input mismatch or unreadable input.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .annotate import MatchPolicy, annotate, render
from .corpus import concordance, format_kwic, load_corpus, split_by_polarity, term_frequency
from .evaluation import EvalReport, GoldParseError, TextMismatchError, parse_gold, score
from .fst import CompileError
from .grammar import GrammarError, GrammarSet, parse_grammar, validate
from .lexicon import SEMTAGS, LexiconError, load_lexicon
from .resources import Bundle, BundleError

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_MISSING, EXIT_MISMATCH = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path, code=EXIT_MISMATCH) -> str:
    p = Path(path)
    if not p.is_file():
        raise CliError(EXIT_MISSING, f"no such file: {path}")
    data = p.read_bytes()
    if data.startswith(b"\xef\xbb\xbf"):
        raise CliError(code, f"{path}: byte-order mark not allowed")
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CliError(code, f"{path}: invalid UTF-8 at byte {exc.start}") from None


def _write(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        _write(args.out, text)
    else:
        sys.stdout.write(text)


def _lexicon(path):
    try:
        return load_lexicon(_read(path, EXIT_RESOURCE))
    except LexiconError as exc:
        raise CliError(EXIT_RESOURCE, f"{path}: {exc}") from None


def _grammar(paths) -> GrammarSet:
    gs = GrammarSet()
    try:
        for p in paths:
            gs = gs.merged(parse_grammar(_read(p, EXIT_RESOURCE), check=False))
        problems = validate(gs)
    except GrammarError as exc:
        raise CliError(EXIT_RESOURCE, str(exc)) from None
    if problems:
        raise CliError(EXIT_RESOURCE, "\n".join(map(str, problems)))
    return gs


def cmd_compile(args) -> int:
    lexicon = _lexicon(args.lexicon)
    gs = _grammar(args.grammar)
    try:
        bundle = Bundle.build(lexicon, gs)
    except CompileError as exc:
        raise CliError(EXIT_RESOURCE, str(exc)) from None
    _write(args.out, bundle.dumps())
    return EXIT_OK


def _load_bundle(path) -> Bundle:
    if not path or not Path(path).is_file():
        raise CliError(EXIT_MISSING, f"compiled bundle not found: {path}")
    try:
        return Bundle.loads(_read(path, EXIT_MISSING))
    except (BundleError, LexiconError, GrammarError) as exc:
        raise CliError(EXIT_MISSING, f"{path}: {exc}") from None


def _priorities(items) -> dict:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        try:
            out[name] = int(value)
        except ValueError:
            sep = ""
        if not sep:
            raise CliError(EXIT_USAGE, f"--priority expects NAME=INT, got {item!r}")
    return out


def cmd_annotate(args) -> int:
    bundle = _load_bundle(args.bundle)
    policy = MatchPolicy(priorities=_priorities(args.priority))
    texts = [(p, _read(p)) for p in args.inputs]

    def tag(text: str) -> str:
        if args.lines:
            return "".join(render(line, annotate(line, bundle.lexicon, bundle.transducer, policy)) + nl
                           for line, nl in _lines(text))
        return render(text, annotate(text, bundle.lexicon, bundle.transducer, policy))

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        tagged = list(pool.map(tag, [t for _, t in texts]))
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        for (src, _), result in zip(texts, tagged):
            dest = out_dir / Path(src).name
            if dest.resolve() == Path(src).resolve():
                raise CliError(EXIT_USAGE, f"refusing to overwrite input {src}")
            _write(dest, result)
    else:
        sys.stdout.write("".join(tagged))
    return EXIT_OK


def _lines(text: str):
    for line in text.splitlines(keepends=True):
        body = line.rstrip("\r\n")
        yield body, line[len(body):]


def _pairs(gold_args, pred_arg) -> list:
    pred = Path(pred_arg)
    if len(gold_args) == 1 and Path(gold_args[0]).is_dir():
        gold_dir = Path(gold_args[0])
        if not pred.is_dir():
            raise CliError(EXIT_MISMATCH, "gold is a directory but predictions are not")
        gold_names = sorted(p.name for p in gold_dir.iterdir() if p.is_file())
        pred_names = sorted(p.name for p in pred.iterdir() if p.is_file())
        if gold_names != pred_names:
            missing = sorted(set(gold_names) ^ set(pred_names))
            raise CliError(EXIT_MISMATCH, "gold and prediction files differ: " + ", ".join(missing))
        return [(gold_dir / n, pred / n) for n in gold_names]
    if pred.is_dir():
        pairs = [(Path(g), pred / Path(g).name) for g in gold_args]
    elif len(gold_args) == 1:
        pairs = [(Path(gold_args[0]), pred)]
    else:
        raise CliError(EXIT_MISMATCH, "several gold files need a prediction directory")
    for g, p in pairs:
        for f in (g, p):
            if not f.is_file():
                raise CliError(EXIT_MISMATCH if f == p else EXIT_MISSING, f"no such file: {f}")
    return pairs


def cmd_eval(args) -> int:
    report = EvalReport()
    for gold_path, pred_path in _pairs(args.gold, args.pred):
        try:
            gold = parse_gold(_read(gold_path))
            pred = parse_gold(_read(pred_path))
            report = report + score(pred.annotations, gold, pred.text)
        except GoldParseError as exc:
            raise CliError(EXIT_MISMATCH, f"{exc}") from None
        except TextMismatchError:
            raise CliError(EXIT_MISMATCH, f"{pred_path}: text differs from {gold_path}") from None
    if args.out:
        _write(args.out, report.to_tsv())
    sys.stdout.write(report.summary())
    return EXIT_OK


def _corpus(paths):
    sentences = []
    for p in paths:
        sentences.extend(load_corpus(_read(p)).sentences)
    return load_corpus(sentences)


def cmd_concord(args) -> int:
    lexicon = _lexicon(args.lexicon) if args.lexicon else None
    lines = concordance(_corpus(args.inputs), args.pattern, args.window, lexicon)
    if args.tsv:
        text = "".join(l.to_tsv() + "\n" for l in lines)
    else:
        text = format_kwic(lines)
    _emit(args, text)
    return EXIT_OK


def cmd_freq(args) -> int:
    if args.filter is not None and args.filter not in SEMTAGS:
        raise CliError(EXIT_USAGE, f"unknown semantic tag {args.filter!r}")
    table = term_frequency(_corpus(args.inputs), _lexicon(args.lexicon), args.filter)
    _emit(args, table.to_tsv())
    return EXIT_OK


def cmd_split(args) -> int:
    with_, without = split_by_polarity(_corpus(args.inputs), _lexicon(args.lexicon))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write(out / "with_polarity.txt", "".join(s + "\n" for s in with_))
    _write(out / "without_polarity.txt", "".join(s + "\n" for s in without))
    print(f"{len(with_)} sentences with polarity words, {len(without)} without")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lggmwe", description="Local-grammar MWE recognition for Korean review text.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compile", help="compile lexicon + grammars into a bundle")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--grammar", required=True, action="append")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("annotate", help="tag MWEs in text files")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--bundle", required=True)
    p.add_argument("--out", help="output directory (default: stdout)")
    p.add_argument("--lines", action="store_true", help="treat every line as its own document")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--priority", action="append", metavar="GRAPH=INT")
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("eval", help="score tagged predictions against tagged gold files")
    p.add_argument("--gold", required=True, nargs="+")
    p.add_argument("--pred", required=True)
    p.add_argument("--out", help="write the TSV report here")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("concord", help="keyword-in-context concordance")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--pattern", required=True)
    p.add_argument("--window", type=int, default=10)
    p.add_argument("--lexicon", help="enables lemma lookup of the pattern")
    p.add_argument("--tsv", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_concord)

    p = sub.add_parser("freq", help="term-frequency table")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--filter", metavar="TAG")
    p.add_argument("--out")
    p.set_defaults(func=cmd_freq)

    p = sub.add_parser("split", help="split a corpus by presence of polarity words")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_split)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "window", 0) < 0 or getattr(args, "jobs", 1) < 1:
        print("lggmwe: --window must be >= 0 and --jobs >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except CliError as exc:
        print(f"lggmwe: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
