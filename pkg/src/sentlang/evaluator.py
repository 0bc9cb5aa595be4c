"""Corpus evaluation: accuracy, length profiles, decisive lengths, error inventory."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .classifier import Tag, classify_node
from .lexicon import LexiconSet
from .tokenizer import build_segment_tree

__all__ = [
    "CorpusEntry",
    "CorpusFormatError",
    "Counters",
    "ErrorRecord",
    "EvalReport",
    "EvaluationError",
    "MAX_EXACT_BUCKET",
    "error_inventory",
    "evaluate",
    "format_report",
    "load_corpus",
    "parse_corpus",
]

MAX_EXACT_BUCKET = 20
OVERFLOW_BUCKET = f"{MAX_EXACT_BUCKET + 1}+"
VERY_SHORT = 3

VERY_SHORT_ERROR = "very-short"
UNEXPECTED_LANGUAGE = "unexpected-language"
OTHER_ERROR = "other"


class EvaluationError(ValueError):
    pass


class CorpusFormatError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    text: str
    gold: str


def parse_corpus(lines: Iterable[str], source: str = "<corpus>") -> list[CorpusEntry]:
    """Parse ``<code>\\t<sentence>`` lines; ``#`` comments and blank lines are skipped."""
    entries = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        code, sep, text = line.partition("\t")
        if not sep or not code or not text.strip():
            raise CorpusFormatError(f"{source}:{lineno}: expected '<lang>\\t<sentence>'")
        entries.append(CorpusEntry(text, code))
    return entries


def load_corpus(path) -> list[CorpusEntry]:
    with open(path, encoding="utf-8") as fh:
        return parse_corpus(fh, str(path))


@dataclass
class Counters:
    n_sentences: int = 0
    n_unique_correct: int = 0
    n_unique_wrong: int = 0
    n_ambiguous: int = 0
    n_undetermined: int = 0
    # unique-correct plus ambiguous tags that still include the gold language
    n_contains_gold: int = 0

    def add(self, tag: Tag, gold: str) -> None:
        self.n_sentences += 1
        if tag.undetermined:
            self.n_undetermined += 1
        elif tag.unique:
            if gold in tag.languages:
                self.n_unique_correct += 1
            else:
                self.n_unique_wrong += 1
        else:
            self.n_ambiguous += 1
        if gold in tag.languages:
            self.n_contains_gold += 1

    def merge(self, other: "Counters") -> "Counters":
        return Counters(*(a + b for a, b in zip(self.as_tuple(), other.as_tuple())))

    def as_tuple(self) -> tuple[int, ...]:
        return (self.n_sentences, self.n_unique_correct, self.n_unique_wrong,
                self.n_ambiguous, self.n_undetermined, self.n_contains_gold)

    def as_dict(self) -> dict[str, int]:
        return {
            "n_sentences": self.n_sentences,
            "n_unique_correct": self.n_unique_correct,
            "n_unique_wrong": self.n_unique_wrong,
            "n_ambiguous": self.n_ambiguous,
            "n_undetermined": self.n_undetermined,
            "n_contains_gold": self.n_contains_gold,
        }

    @property
    def n_unique(self) -> int:
        return self.n_unique_correct + self.n_unique_wrong


@dataclass(frozen=True)
class ErrorRecord:
    entry: CorpusEntry
    tag: Tag
    n_words: int
    n_unknown: int


def bucket_of(n_words: int) -> str:
    return str(n_words) if n_words <= MAX_EXACT_BUCKET else OVERFLOW_BUCKET


def _bucket_key(b: str) -> int:
    return MAX_EXACT_BUCKET + 1 if b == OVERFLOW_BUCKET else int(b)


@dataclass
class _LengthStats:
    lengths: Counter = field(default_factory=Counter)
    failed: Counter = field(default_factory=Counter)

    def merge(self, other):
        return _LengthStats(self.lengths + other.lengths, self.failed + other.failed)


@dataclass
class EvalReport:
    """Evaluation counters; every part merges by addition, so shards combine freely."""

    languages: tuple[str, ...]
    per_language: dict[str, Counters]
    by_length: dict[str, Counters]
    length_stats: dict[str, _LengthStats]
    density_sum: dict[str, float]
    density_n: dict[str, int]
    errors: list[ErrorRecord]

    @classmethod
    def empty(cls, languages: Sequence[str]) -> "EvalReport":
        return cls(tuple(languages), {l: Counters() for l in languages}, {},
                   {l: _LengthStats() for l in languages},
                   {l: 0.0 for l in languages}, {l: 0 for l in languages}, [])

    def merge(self, other: "EvalReport") -> "EvalReport":
        by_length = dict(self.by_length)
        for b, c in other.by_length.items():
            by_length[b] = by_length[b].merge(c) if b in by_length else c
        return EvalReport(
            self.languages,
            {l: self.per_language[l].merge(other.per_language[l]) for l in self.languages},
            by_length,
            {l: self.length_stats[l].merge(other.length_stats[l]) for l in self.languages},
            {l: self.density_sum[l] + other.density_sum[l] for l in self.languages},
            {l: self.density_n[l] + other.density_n[l] for l in self.languages},
            self.errors + other.errors,
        )

    @property
    def decisive_length(self) -> dict[str, Optional[int]]:
        """Smallest W such that every sentence of >= W words got a single language.

        ``None`` when the language has no sentences or its longest sentence
        was not isolated (no such W within the observed lengths).
        """
        out = {}
        for lang, st in self.length_stats.items():
            if not st.lengths:
                out[lang] = None
                continue
            longest = max(st.lengths)
            worst = max(st.failed, default=0)
            out[lang] = None if st.failed and worst >= longest else worst + 1
        return out

    @property
    def min_length(self) -> dict[str, Optional[int]]:
        return {l: min(s.lengths, default=None) for l, s in self.length_stats.items()}

    @property
    def max_length(self) -> dict[str, Optional[int]]:
        return {l: max(s.lengths, default=None) for l, s in self.length_stats.items()}

    @property
    def grammatical_density(self) -> dict[str, Optional[float]]:
        return {l: (self.density_sum[l] / self.density_n[l] if self.density_n[l] else None)
                for l in self.languages}

    def counters_for_lengths(self, lo: int, hi: Optional[int] = None) -> Counters:
        """Sum the length buckets with ``lo <= words <= hi`` (``hi=None``: no bound).

        Lengths above the exact buckets are only available through ``hi=None``.
        """
        total = Counters()
        for b, c in self.by_length.items():
            k = _bucket_key(b)
            if k >= lo and (hi is None or (k <= hi and b != OVERFLOW_BUCKET)):
                total = total.merge(c)
        return total

    def to_dict(self) -> dict:
        return {
            "languages": list(self.languages),
            "per_language": {l: c.as_dict() for l, c in self.per_language.items()},
            "by_length": {b: self.by_length[b].as_dict()
                          for b in sorted(self.by_length, key=_bucket_key)},
            "decisive_length": self.decisive_length,
            "min_length": self.min_length,
            "max_length": self.max_length,
            "grammatical_density": self.grammatical_density,
            "errors": [
                {"text": e.entry.text, "gold": e.entry.gold, "tag": sorted(e.tag.languages),
                 "n_words": e.n_words, "n_unknown": e.n_unknown}
                for e in self.errors
            ],
            "error_inventory": [{"category": cat, "text": e.entry.text, "gold": e.entry.gold,
                                 "tag": sorted(e.tag.languages)}
                                for cat, e in error_inventory(self)],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, **kw)


def evaluate(lex: LexiconSet, corpus: Sequence[CorpusEntry]) -> EvalReport:
    """Tag each entry as one sentence and score the root tag against its gold label."""
    if not corpus:
        raise EvaluationError("empty corpus")
    report = EvalReport.empty(lex.languages)
    for n, entry in enumerate(corpus, 1):
        if entry.gold not in lex.lexicons:
            raise EvaluationError(f"entry {n} ({entry.text[:40]!r}): gold language "
                                  f"{entry.gold!r} is not configured")
        _accumulate(lex, report, entry)
    return report


def _accumulate(lex: LexiconSet, report: EvalReport, entry: CorpusEntry) -> None:
    seg = build_segment_tree(entry.text)
    tree = classify_node(lex, seg)
    words = [t.canonical for node in seg.walk() for t in node.own_tokens if t.is_word]
    n_words = len(words)
    tag = tree.tag
    gold = entry.gold

    report.per_language[gold].add(tag, gold)
    bucket = bucket_of(n_words)
    report.by_length.setdefault(bucket, Counters()).add(tag, gold)
    stats = report.length_stats[gold]
    stats.lengths[n_words] += 1
    if not tag.unique:
        stats.failed[n_words] += 1
    if n_words:
        gold_lex = lex.lexicons[gold]
        report.density_sum[gold] += sum(w in gold_lex for w in words) / n_words
        report.density_n[gold] += 1
    if tag.unique and gold not in tag.languages:
        unknown = sum(w not in lex.word_index for w in words)
        report.errors.append(ErrorRecord(entry, tag, n_words, unknown))


def error_inventory(report: EvalReport) -> list[tuple[str, ErrorRecord]]:
    """Categorize each wrong unique tag.

    More than half of the words unknown to every lexicon points to a language
    outside the configured set; otherwise sentences of three words or fewer
    are very short; anything else is ``other``.
    """
    out = []
    for err in report.errors:
        if err.n_words and err.n_unknown * 2 > err.n_words:
            cat = UNEXPECTED_LANGUAGE
        elif err.n_words <= VERY_SHORT:
            cat = VERY_SHORT_ERROR
        else:
            cat = OTHER_ERROR
        out.append((cat, err))
    return out


def _pct(n: int, d: int) -> str:
    return f"{100.0 * n / d:6.2f}%" if d else "     - "


def format_report(report: EvalReport) -> str:
    lines = []
    head = f"{'lang':<6}{'sent':>7}{'uniq ok':>9}{'uniq bad':>10}{'ambig':>7}{'undet':>7}{'acc':>9}"
    lines.append("Per language")
    lines.append(head)
    total = Counters()
    for lang in report.languages:
        c = report.per_language[lang]
        total = total.merge(c)
        lines.append(f"{lang:<6}{c.n_sentences:>7}{c.n_unique_correct:>9}{c.n_unique_wrong:>10}"
                     f"{c.n_ambiguous:>7}{c.n_undetermined:>7}{_pct(c.n_unique_correct, c.n_sentences):>9}")
    lines.append(f"{'all':<6}{total.n_sentences:>7}{total.n_unique_correct:>9}{total.n_unique_wrong:>10}"
                 f"{total.n_ambiguous:>7}{total.n_undetermined:>7}{_pct(total.n_unique_correct, total.n_sentences):>9}")
    lines.append("")
    lines.append("Isolation of a single language")
    lines.append(f"{'lang':<6}{'min len':>9}{'decisive':>10}{'max len':>9}{'density':>9}")
    dec, lo, hi, dens = (report.decisive_length, report.min_length,
                         report.max_length, report.grammatical_density)
    for lang in report.languages:
        d = "-" if dec[lang] is None else str(dec[lang])
        g = "-" if dens[lang] is None else f"{dens[lang]:.3f}"
        lines.append(f"{lang:<6}{lo[lang] if lo[lang] is not None else '-':>9}{d:>10}"
                     f"{hi[lang] if hi[lang] is not None else '-':>9}{g:>9}")
    lines.append("")
    lines.append("By sentence length (words)")
    lines.append(f"{'words':<6}{'sent':>7}{'uniq ok':>9}{'uniq bad':>10}{'ambig':>7}{'undet':>7}")
    for b in sorted(report.by_length, key=_bucket_key):
        c = report.by_length[b]
        lines.append(f"{b:<6}{c.n_sentences:>7}{c.n_unique_correct:>9}{c.n_unique_wrong:>10}"
                     f"{c.n_ambiguous:>7}{c.n_undetermined:>7}")
    inv = error_inventory(report)
    lines.append("")
    lines.append(f"Errors (wrong single language): {len(inv)}")
    for cat, e in inv:
        lines.append(f"  [{cat}] gold={e.entry.gold} tag={e.tag.code} {e.entry.text}")
    return "\n".join(lines)
