"""Command-line interface: ``sentlang tag | evaluate | lexicon-check``.

Exit status: 0 on success (ambiguous or undetermined tags included), 1 on
I/O failure, 2 on configuration or usage errors. Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from itertools import islice
from pathlib import Path
from typing import Iterator, Optional, TextIO

from .classifier import TaggedTree, classify_node
from .evaluator import (
    CorpusFormatError,
    EvaluationError,
    evaluate,
    format_report,
    load_corpus,
)
from .lexicon import (
    LexiconConfigError,
    LexiconParseError,
    LexiconSet,
    UnknownLanguageError,
    available_languages,
    default_lexicon_root,
    load_lexicon_set,
)
from .tokenizer import build_segment_tree, iter_sentences

EXIT_OK, EXIT_IO, EXIT_CONFIG = 0, 1, 2

FORMATS = ("plain", "tsv", "jsonl")


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    mode: str
    lexicon_root: Path
    languages: list[str]
    input: Optional[str] = None
    output_format: str = "plain"
    emit_segments: bool = False
    emit_scores: bool = False
    workers: int = 1
    corpus: Optional[str] = None
    report_json: Optional[str] = None

    def __post_init__(self):
        if not self.languages:
            raise ConfigError("no languages configured")
        if self.output_format not in FORMATS:
            raise ConfigError(f"unknown format {self.output_format!r}")
        if self.workers < 1:
            raise ConfigError("--workers must be at least 1")


def _err(msg: str) -> None:
    print(f"sentlang: {msg}", file=sys.stderr)


# ---------------------------------------------------------------------------
# reading

def iter_paragraphs(stream: TextIO) -> Iterator[tuple[str, int]]:
    """Yield ``(paragraph_text, offset)``; memory is bounded by one paragraph."""
    buf: list[str] = []
    start = pos = 0
    for line in stream:
        if line.strip():
            if not buf:
                start = pos
            buf.append(line)
        elif buf:
            yield "".join(buf), start
            buf = []
        pos += len(line)
    if buf:
        yield "".join(buf), start


def iter_sentence_units(stream: TextIO, lex: LexiconSet):
    abbrevs = lex.abbreviations or None
    for para, offset in iter_paragraphs(stream):
        for text, span in iter_sentences(para, abbrevs, base=offset):
            yield text, span


# ---------------------------------------------------------------------------
# classification, optionally sharded across processes

_WORKER_LEX: Optional[LexiconSet] = None


def _init_worker(root, languages):
    global _WORKER_LEX
    _WORKER_LEX = load_lexicon_set(root, languages)


def _classify_batch(batch):
    return [classify_node(_WORKER_LEX, build_segment_tree(text, offset=span[0])) for text, span in batch]


def _batches(it, size):
    it = iter(it)
    while True:
        chunk = list(islice(it, size))
        if not chunk:
            return
        yield chunk


def iter_tagged(units, lex: LexiconSet, config: RunConfig) -> Iterator[tuple[str, TaggedTree]]:
    if config.workers == 1:
        for text, span in units:
            yield text, classify_node(lex, build_segment_tree(text, offset=span[0]))
        return
    with ProcessPoolExecutor(config.workers, initializer=_init_worker,
                             initargs=(config.lexicon_root, lex.languages)) as pool:
        window = config.workers * 4
        batches = _batches(units, 256)
        while True:
            group = list(islice(batches, window))
            if not group:
                return
            for batch, trees in zip(group, pool.map(_classify_batch, group)):
                for (text, _), tree in zip(batch, trees):
                    yield text, tree


# ---------------------------------------------------------------------------
# writing

def _clean(text: str) -> str:
    return " ".join(text.split())


def _slice(text: str, base: int, span) -> str:
    return text[span[0] - base:span[1] - base]


def _record(tree: TaggedTree, text: str, base: int, config: RunConfig, kind: str) -> dict:
    rec = {
        "kind": kind,
        "start": tree.span[0],
        "end": tree.span[1],
        "tag": sorted(tree.tag.languages),
        "words": tree.total_words,
        "text": _slice(text, base, tree.span),
    }
    if config.emit_scores:
        rec["scores"] = tree.likelihood.as_dict()
    if config.emit_segments:
        rec["segments"] = [_record(c, text, base, config, c.kind) for c in tree.children]
    return rec


def _code(tags: list[str]) -> str:
    return "+".join(tags) if tags else "und"


def _flatten(rec: dict, depth: int = 0):
    yield depth, rec
    for child in rec.get("segments", ()):
        yield from _flatten(child, depth + 1)


def write_record(out: TextIO, rec: dict, fmt: str) -> None:
    if fmt == "jsonl":
        out.write(json.dumps(rec, ensure_ascii=False) + "\n")
        return
    for depth, r in _flatten(rec):
        scores = " ".join(f"{k}={v}" for k, v in r["scores"].items()) if "scores" in r else None
        if fmt == "tsv":
            cols = [r["kind"], str(depth), str(r["start"]), str(r["end"]), _code(r["tag"]), str(r["words"])]
            if scores is not None:
                cols.append(scores.replace(" ", ","))
            cols.append(_clean(r["text"]))
            out.write("\t".join(cols) + "\n")
        else:
            line = f"{'  ' * depth}[{r['start']}:{r['end']}] {_code(r['tag'])} ({r['words']} words)"
            if depth:
                line += f" {r['kind']}"
            if scores is not None:
                line += f" {{{scores}}}"
            out.write(f"{line} {_clean(r['text'])}\n")


# ---------------------------------------------------------------------------
# commands

def _diagnostic_printer(source):
    def report(text, tree):
        for d in tree.diagnostics:
            _err(f"warning: {source}: {d.message} ({d.kind}) at offset {d.position}")
    return report


def run_tag(config: RunConfig, stdin: TextIO = None, stdout: TextIO = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    lex = load_lexicon_set(config.lexicon_root, config.languages)
    source = config.input or "<stdin>"
    warn = _diagnostic_printer(source)
    try:
        stream = open(config.input, encoding="utf-8") if config.input else stdin
    except OSError as exc:
        _err(f"cannot read {config.input}: {exc.strerror or exc}")
        return EXIT_IO
    try:
        with stream if config.input else _nullcontext(stream):
            units = iter_sentence_units(stream, lex)
            for text, tree in iter_tagged(units, lex, config):
                warn(text, tree)
                write_record(stdout, _record(tree, text, tree.span[0], config, "sentence"),
                             config.output_format)
    except (OSError, UnicodeDecodeError) as exc:
        _err(f"I/O error on {source}: {exc}")
        return EXIT_IO
    return EXIT_OK


class _nullcontext:
    def __init__(self, obj):
        self.obj = obj

    def __enter__(self):
        return self.obj

    def __exit__(self, *exc):
        return False


def default_corpus() -> Path:
    return Path(str(resources.files("sentlang") / "data" / "corpus" / "desk.tsv"))


def run_evaluate(config: RunConfig, stdout: TextIO = None) -> int:
    stdout = stdout or sys.stdout
    lex = load_lexicon_set(config.lexicon_root, config.languages)
    path = config.corpus or default_corpus()
    try:
        corpus = load_corpus(path)
    except OSError as exc:
        _err(f"cannot read corpus {path}: {exc.strerror or exc}")
        return EXIT_IO
    report = evaluate(lex, corpus)
    stdout.write(format_report(report) + "\n")
    if config.report_json:
        try:
            Path(config.report_json).write_text(report.to_json(indent=2) + "\n", encoding="utf-8")
        except OSError as exc:
            _err(f"cannot write {config.report_json}: {exc.strerror or exc}")
            return EXIT_IO
    return EXIT_OK


def run_lexicon_check(config: RunConfig, stdout: TextIO = None) -> int:
    stdout = stdout or sys.stdout
    if not Path(config.lexicon_root).is_dir():
        raise ConfigError(f"lexicon root {config.lexicon_root} is not a directory")
    lex = load_lexicon_set(config.lexicon_root, config.languages)
    stdout.write(f"{'lang':<6}{'words':>7}{'alphabet':>10}  exclusive characters\n")
    for code in lex.languages:
        n = len(lex.lexicons[code])
        if n == 0:
            _err(f"warning: language {code!r} has an empty word list")
        excl = "".join(sorted(c for c, owner in lex.exclusive_index.items() if owner == code))
        stdout.write(f"{code:<6}{n:>7}{len(lex.alphabets[code]):>10}  {excl}\n")
    shared = lex.shared_words()
    stdout.write(f"\nwords in two or more lexicons: {len(shared)}\n")
    for word, codes in shared.items():
        stdout.write(f"  {word}\t{','.join(codes)}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lexicon-root", type=Path, default=None,
                        help="directory with one sub-directory per language (default: shipped data)")
    common.add_argument("--languages", default=None,
                        help="comma-separated language codes (default: all under the root)")

    parser = argparse.ArgumentParser(prog="sentlang", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="mode", required=True)

    tag = sub.add_parser("tag", parents=[common], help="tag the sentences of a text")
    tag.add_argument("input", nargs="?", help="UTF-8 text file (default: stdin)")
    tag.add_argument("--format", dest="output_format", choices=FORMATS, default="plain")
    tag.add_argument("--segments", action="store_true", help="also emit embedded segments")
    tag.add_argument("--scores", action="store_true", help="emit the per-language scores")
    tag.add_argument("--workers", type=int, default=1, help="worker processes, sharded by sentence")

    ev = sub.add_parser("evaluate", parents=[common], help="evaluate against a labeled corpus")
    ev.add_argument("--corpus", default=None, help="TSV corpus '<lang>\\t<sentence>' (default: shipped)")
    ev.add_argument("--report-json", default=None, help="also write the report as JSON")

    sub.add_parser("lexicon-check", parents=[common], help="validate and summarize the lexicons")
    return parser


def config_from_args(args) -> RunConfig:
    root = args.lexicon_root or default_lexicon_root()
    if args.languages is None:
        languages = available_languages(root)
        if not languages:
            raise ConfigError(f"no language directories under {root}")
    else:
        languages = [c.strip() for c in args.languages.split(",") if c.strip()]
    return RunConfig(
        mode=args.mode,
        lexicon_root=root,
        languages=languages,
        input=getattr(args, "input", None),
        output_format=getattr(args, "output_format", "plain"),
        emit_segments=getattr(args, "segments", False),
        emit_scores=getattr(args, "scores", False),
        workers=getattr(args, "workers", 1),
        corpus=getattr(args, "corpus", None),
        report_json=getattr(args, "report_json", None),
    )


COMMANDS = {"tag": run_tag, "evaluate": run_evaluate, "lexicon-check": run_lexicon_check}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        return COMMANDS[config.mode](config)
    except (ConfigError, LexiconConfigError, LexiconParseError, EvaluationError, CorpusFormatError) as exc:
        _err(str(exc))
        return EXIT_CONFIG
    except UnknownLanguageError as exc:
        _err(str(exc))
        return EXIT_CONFIG
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
