"""Per-unit language scoring.

Every word adds one point to each language whose grammatical-word list
contains it, and one more point to the language owning any of its exclusive
alphabet characters. A unit is tagged with every language reaching the top
score; a top score of zero leaves the unit undetermined. Embedded segments
are scored on their own, starting from zero.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .lexicon import LexiconSet
from .tokenizer import (
    OTHER,
    SIGN,
    WORD,
    Diagnostic,
    RawDocument,
    SegmentTree,
    Token,
    build_segment_tree,
    iter_sentences,
)

__all__ = [
    "LikelihoodVector",
    "Tag",
    "TaggedTree",
    "UNDETERMINED",
    "UnbalancedDelimiterWarning",
    "classify_document",
    "classify_node",
    "classify_text",
    "score_word",
]

UNDETERMINED = "und"


class UnbalancedDelimiterWarning(UserWarning):
    def __init__(self, source_name: str, sentence_span: tuple[int, int], diagnostic: Diagnostic):
        self.source_name = source_name
        self.sentence_span = sentence_span
        self.diagnostic = diagnostic
        super().__init__(
            f"{source_name}:{sentence_span[0]}-{sentence_span[1]}: "
            f"{diagnostic.message} ({diagnostic.kind}) at {diagnostic.position}"
        )


@dataclass(frozen=True)
class LikelihoodVector:
    languages: tuple[str, ...]
    scores: tuple[int, ...]

    @classmethod
    def zeros(cls, lex: LexiconSet) -> "LikelihoodVector":
        return cls(lex.languages, (0,) * len(lex.languages))

    def __getitem__(self, language: str) -> int:
        return self.scores[self.languages.index(language)]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.languages, self.scores))


@dataclass(frozen=True)
class Tag:
    languages: frozenset
    max_score: int
    word_count: int

    @classmethod
    def from_scores(cls, vector: LikelihoodVector, word_count: int) -> "Tag":
        top = max(vector.scores, default=0)
        if top == 0:
            return cls(frozenset(), 0, word_count)
        langs = frozenset(l for l, s in zip(vector.languages, vector.scores) if s == top)
        return cls(langs, top, word_count)

    @property
    def undetermined(self) -> bool:
        return not self.languages

    @property
    def unique(self) -> bool:
        return len(self.languages) == 1

    @property
    def code(self) -> str:
        """``und``, a single code, or a sorted ``+``-joined list."""
        return "+".join(sorted(self.languages)) if self.languages else UNDETERMINED


@dataclass
class TaggedTree:
    kind: str
    span: tuple[int, int]
    tag: Tag
    likelihood: LikelihoodVector
    children: list["TaggedTree"] = field(default_factory=list)
    word_count: int = 0
    diagnostics: list[Diagnostic] = field(default_factory=list)

    def walk(self) -> Iterator["TaggedTree"]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    @property
    def total_words(self) -> int:
        return sum(n.word_count for n in self.walk())


def _evidence(lex: LexiconSet, token: Token) -> tuple[int, ...]:
    """Language positions incremented by ``token``, memoized per lexicon set."""
    key = (token.kind, token.canonical)
    cache = lex.evidence_cache
    hit = cache.get(key)
    if hit is not None:
        return hit
    if token.kind == OTHER:
        out: tuple[int, ...] = ()
    else:
        from_words = lex.word_index.get(token.canonical, ()) if token.kind == WORD else ()
        exclusive = lex.exclusive_index
        owners = {exclusive[c] for c in token.canonical if c in exclusive}
        out = from_words + tuple(sorted(lex.position(code) for code in owners))
    cache[key] = out
    return out


def score_word(lex: LexiconSet, token: Token, acc: LikelihoodVector) -> LikelihoodVector:
    """Return ``acc`` plus the evidence of one token; ``acc`` is left untouched.

    Inverted marks (``¿``, ``¡``) carry alphabet evidence only; numbers and
    punctuation carry none.
    """
    hits = _evidence(lex, token)
    if not hits:
        return acc
    scores = list(acc.scores)
    for i in hits:
        scores[i] += 1
    return LikelihoodVector(acc.languages, tuple(scores))


def _score_tokens(lex: LexiconSet, tokens) -> tuple[list[int], int]:
    scores = [0] * len(lex.languages)
    words = 0
    for tok in tokens:
        if tok.kind == WORD:
            words += 1
        elif tok.kind != SIGN:
            continue
        for i in _evidence(lex, tok):
            scores[i] += 1
    return scores, words


def classify_node(lex: LexiconSet, node: SegmentTree) -> TaggedTree:
    """Tag ``node`` and, independently, each embedded segment below it."""
    tagged: dict[int, TaggedTree] = {}
    order = list(node.walk())
    for seg in order:
        scores, words = _score_tokens(lex, seg.own_tokens)
        vec = LikelihoodVector(lex.languages, tuple(scores))
        tagged[id(seg)] = TaggedTree(seg.kind, seg.span, Tag.from_scores(vec, words), vec, word_count=words)
    for seg in order:
        tagged[id(seg)].children = [tagged[id(c)] for c in seg.children]
    root = tagged[id(node)]
    root.diagnostics = list(node.diagnostics)
    return root


def _warn(source_name, span, diag):
    warnings.warn(UnbalancedDelimiterWarning(source_name, span, diag), stacklevel=3)


def classify_text(lex: LexiconSet, text: str, base: int = 0, source_name: str = "<text>",
                  on_diagnostic: Optional[Callable] = _warn) -> Iterator[TaggedTree]:
    """Lazily tag every sentence of ``text``; spans are shifted by ``base``."""
    for sentence, span in iter_sentences(text, lex.abbreviations or None, base):
        tree = classify_node(lex, build_segment_tree(sentence, offset=span[0]))
        if on_diagnostic is not None:
            for diag in tree.diagnostics:
                on_diagnostic(source_name, span, diag)
        yield tree


def classify_document(lex: LexiconSet, doc, on_diagnostic: Optional[Callable] = _warn) -> list[TaggedTree]:
    """Split, segment and tag a whole document, one tree per sentence."""
    if not isinstance(doc, RawDocument):
        doc = RawDocument(doc)
    return list(classify_text(lex, doc.text, source_name=doc.source_name, on_diagnostic=on_diagnostic))
