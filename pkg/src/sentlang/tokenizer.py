"""Sentence splitting, embedded-segment trees and word tokenization.

A sentence is split into a tree of classification units: the root holds the
sentence's own words and each child is a segment embedded in it by quotes,
parentheses/brackets, a pair of spaced dashes, or a colon running to the end
of the enclosing unit. Nothing here ever raises on text input; unbalanced
delimiters are dissolved into the enclosing unit and reported as diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional

import regex

from .lexicon import canonicalize

__all__ = [
    "Diagnostic",
    "RawDocument",
    "SegmentTree",
    "Token",
    "build_segment_tree",
    "default_abbreviations",
    "iter_sentences",
    "split_sentences",
    "tokenize_words",
]

ROOT, QUOTE, PAREN, DASH, COLON = "root", "quote", "parenthesis", "dash", "colon"

WORD, SIGN, OTHER = "word", "sign", "other"

_TOKEN_RE = regex.compile(
    r"(?P<word>[\p{L}\p{M}][\p{L}\p{M}\p{Nd}]*(?:[-‐][\p{L}\p{M}\p{Nd}]+)*)"
    r"|(?P<number>\p{N}+(?:[.,:/]\p{N}+)*)"
    r"|(?P<sign>[¿¡])"
    r"|(?P<other>[^\s\x1c-\x1f\p{L}\p{M}\p{N}¿¡]+)"
)


@dataclass(frozen=True, slots=True)
class Token:
    """One token of a unit.

    ``kind`` is ``"word"`` for letter runs, ``"sign"`` for the inverted marks
    ``¿``/``¡`` (orthographic signs, alphabet evidence only) and ``"other"``
    for numbers and punctuation, which are kept only so every character is
    accounted for.
    """

    surface: str
    canonical: str
    offset: int
    kind: str = WORD

    @property
    def is_word(self) -> bool:
        return self.kind == WORD

    @property
    def end(self) -> int:
        return self.offset + len(self.surface)


@dataclass(frozen=True)
class RawDocument:
    text: str
    source_name: str = "<text>"


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    position: int
    message: str


@dataclass
class SegmentTree:
    kind: str
    span: tuple[int, int]
    own_tokens: list[Token] = field(default_factory=list)
    children: list["SegmentTree"] = field(default_factory=list)
    diagnostics: list[Diagnostic] = field(default_factory=list)

    def walk(self) -> Iterator["SegmentTree"]:
        """Pre-order traversal, iterative so deep nesting is safe."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    @property
    def words(self) -> list[Token]:
        return [t for t in self.own_tokens if t.kind == WORD]

    def word_count(self, recursive: bool = True) -> int:
        nodes = self.walk() if recursive else (self,)
        return sum(1 for n in nodes for t in n.own_tokens if t.kind == WORD)


@lru_cache(maxsize=65536)
def _canonical(surface: str) -> str:
    return canonicalize(surface)


def tokenize_words(text: str, start: int = 0, end: Optional[int] = None, offset: int = 0) -> list[Token]:
    """Tokenize ``text[start:end]``; token offsets are shifted by ``offset``.

    Apostrophes split words (``l'homme`` gives ``l``, ``'``, ``homme``),
    intra-word hyphens are kept, and every non-whitespace character ends up
    in exactly one token.
    """
    if end is None:
        end = len(text)
    tokens = []
    for m in _TOKEN_RE.finditer(text, start, end):
        surface = m.group()
        kind = m.lastgroup
        if kind == "number" or kind == "other":
            tokens.append(Token(surface, surface, m.start() + offset, OTHER))
        else:
            tokens.append(Token(surface, _canonical(surface), m.start() + offset,
                                WORD if kind == "word" else SIGN))
    return tokens


# ---------------------------------------------------------------------------
# sentences

_PARAGRAPH_BREAK = regex.compile(r"\n[^\S\n]*\n")
# A French closing guillemet is preceded by a space: "« oui. »" ends after the ».
_TERMINATOR = regex.compile(r"[.!?…]+(?:[^\S\n]»(?=\s|\Z))?[\"'»”’)\]]*(?=\s|\Z)")
_SENTENCE_OPENERS = "\"'«»“„‘([{¿¡—–"
_WORD_BEFORE = regex.compile(r"[\p{L}\p{M}]+\Z")


@lru_cache(maxsize=1)
def default_abbreviations() -> frozenset[str]:
    """Abbreviations of every language shipped with the package."""
    from .lexicon import load_lexicon_set

    return load_lexicon_set().abbreviations


def _is_boundary(text: str, m, end: int, abbreviations) -> bool:
    stop = m.end()
    nxt = stop
    while nxt < end and text[nxt].isspace():
        nxt += 1
    if nxt < end:
        c = text[nxt]
        if not (c.isupper() or c.istitle() or c in _SENTENCE_OPENERS):
            return False
    run = m.group()
    if run.rstrip("\"'»”’)] \t") == ".":
        before = _WORD_BEFORE.search(text, max(0, m.start() - 40), m.start())
        if before is not None:
            w = before.group()
            if len(w) == 1 or _canonical(w) in abbreviations:
                return False
        elif m.start() > 0 and text[m.start() - 1].isdigit() and nxt < end and text[nxt].isdigit():
            return False
    return True


def _split_paragraph(text: str, start: int, end: int, abbreviations) -> Iterator[tuple[int, int]]:
    pos = start
    for m in _TERMINATOR.finditer(text, start, end):
        if _is_boundary(text, m, end, abbreviations):
            yield pos, m.end()
            pos = m.end()
    yield pos, end


def _strip_span(text: str, a: int, b: int) -> Optional[tuple[int, int]]:
    while a < b and text[a].isspace():
        a += 1
    while b > a and text[b - 1].isspace():
        b -= 1
    return (a, b) if a < b else None


def split_sentences(doc, abbreviations: Optional[Iterable[str]] = None) -> list[tuple[str, tuple[int, int]]]:
    """Split a document into ``(sentence, (start, end))`` pairs.

    A boundary falls after ``.``, ``!``, ``?`` or ``…`` (plus closing quotes
    or brackets) when whitespace follows and the next character is an
    uppercase letter, an opening quote/bracket, or the end of the paragraph;
    a blank line always ends a sentence. A lone period does not end a
    sentence after a known abbreviation or a single letter. ``abbreviations``
    are canonical forms; the shipped lists are used when omitted.
    """
    text = doc.text if isinstance(doc, RawDocument) else doc
    return list(iter_sentences(text, abbreviations))


def iter_sentences(text: str, abbreviations: Optional[Iterable[str]] = None, base: int = 0):
    if abbreviations is None:
        abbreviations = default_abbreviations()
    elif not isinstance(abbreviations, (set, frozenset)):
        abbreviations = frozenset(abbreviations)
    pos = 0
    breaks = [(m.start(), m.end()) for m in _PARAGRAPH_BREAK.finditer(text)]
    breaks.append((len(text), len(text)))
    for b_start, b_end in breaks:
        for a, b in _split_paragraph(text, pos, b_start, abbreviations):
            span = _strip_span(text, a, b)
            if span is not None:
                yield text[span[0]:span[1]], (span[0] + base, span[1] + base)
        pos = b_end


# ---------------------------------------------------------------------------
# segment trees

_DELIMS = regex.compile(r"[\"'«»“”„‘’()\[\]{}:—–]")
_BRACKETS = {"(": ")", "[": "]", "{": "}"}
_CLOSE_BRACKETS = {")", "]", "}"}


class _Open:
    __slots__ = ("kind", "pos", "closers", "char")

    def __init__(self, kind, pos, closers, char):
        self.kind = kind
        self.pos = pos
        self.closers = closers
        self.char = char


def _introduces_quote(text: str, pos: int) -> bool:
    # "dit : « ... »": the quote itself is the embedded segment
    m = _NEXT_NONSPACE.match(text, pos)
    return m is not None and m.group(1) in _QUOTE_OPENERS


_NEXT_NONSPACE = regex.compile(r"\s*(\S)")
_QUOTE_OPENERS = set("\"'«»“„‘")


def _find_closing(stack, ch) -> int:
    for i in range(len(stack) - 1, -1, -1):
        if ch in stack[i].closers:
            return i
    return -1


def _match_delimiters(text: str):
    """Return properly nested ``(kind, start, end)`` spans plus diagnostics.

    Spans include their delimiters; a colon span starts at the colon and
    runs to the end of its enclosing unit.
    """
    n = len(text)
    stack: list[_Open] = []
    pairs = []
    diags = []

    def colon_open():
        return any(o.kind == COLON for o in stack)

    for m in _DELIMS.finditer(text):
        ch = m.group()
        p = m.start()
        prev = text[p - 1] if p > 0 else " "
        nxt = text[p + 1] if p + 1 < n else " "

        if ch in _BRACKETS:
            stack.append(_Open(PAREN, p, _BRACKETS[ch], ch))
            continue
        if ch in _CLOSE_BRACKETS or ch in "«»“”’\"'—–":
            # try to close a matching opener
            closable = True
            if ch in "’'":
                closable = not prev.isspace() and not nxt.isalnum()
            elif ch in "—–":
                closable = prev.isspace() and (nxt.isspace() or not nxt.isalnum())
            i = _find_closing(stack, ch) if closable else -1
            if i >= 0:
                # dissolve unbalanced openers above, end colon segments here
                while len(stack) > i + 1:
                    top = stack.pop()
                    if top.kind == COLON:
                        if text[top.pos + 1:p].strip():
                            pairs.append((COLON, top.pos, p))
                    else:
                        diags.append(Diagnostic(top.kind, top.pos, f"unbalanced opening {top.char!r}"))
                opener = stack.pop()
                pairs.append((opener.kind, opener.pos, p + 1))
                continue
            if ch in _CLOSE_BRACKETS or ch == "”":
                diags.append(Diagnostic(PAREN if ch in _CLOSE_BRACKETS else QUOTE, p,
                                        f"unbalanced closing {ch!r}"))
                continue
        # opening roles
        if ch == "«":
            stack.append(_Open(QUOTE, p, "»", ch))
        elif ch == "»":
            stack.append(_Open(QUOTE, p, "«", ch))
        elif ch == "“":
            stack.append(_Open(QUOTE, p, "”", ch))
        elif ch == "„":
            stack.append(_Open(QUOTE, p, "“”", ch))
        elif ch == "‘":
            stack.append(_Open(QUOTE, p, "’", ch))
        elif ch == '"':
            if not nxt.isspace():
                stack.append(_Open(QUOTE, p, '"', ch))
        elif ch == "'":
            if (prev.isspace() or prev in "([{«“„‘—–") and nxt.isalpha():
                stack.append(_Open(QUOTE, p, "'", ch))
        elif ch in "—–":
            if prev.isspace() and nxt.isspace():
                stack.append(_Open(DASH, p, ch, ch))
        elif ch == ":":
            if nxt.isspace() and not colon_open() and not _introduces_quote(text, p + 1):
                stack.append(_Open(COLON, p, "", ch))
    while stack:
        top = stack.pop()
        if top.kind == COLON:
            if text[top.pos + 1:].strip():
                pairs.append((COLON, top.pos, n))
        else:
            diags.append(Diagnostic(top.kind, top.pos, f"unbalanced opening {top.char!r}"))
    return pairs, diags


def _content(kind: str, start: int, end: int) -> tuple[int, int]:
    return (start + 1, end) if kind == COLON else (start + 1, end - 1)


def build_segment_tree(sentence: str, offset: int = 0) -> SegmentTree:
    """Decompose a sentence into its root unit and nested embedded segments.

    All spans and token offsets are shifted by ``offset`` so trees built from
    sentences of a larger document can address the document directly.
    """
    pairs, diags = _match_delimiters(sentence)
    # outer spans first; ties (equal start) are impossible for valid pairs
    pairs.sort(key=lambda t: (t[1], -t[2]))
    root = SegmentTree(ROOT, (0, len(sentence)))
    ranges = {id(root): (0, len(sentence))}
    stack = [root]
    for kind, s, e in pairs:
        while stack[-1] is not root and not (stack[-1].span[0] <= s and e <= stack[-1].span[1]):
            stack.pop()
        node = SegmentTree(kind, (s, e))
        ranges[id(node)] = _content(kind, s, e)
        stack[-1].children.append(node)
        stack.append(node)

    for node in root.walk():
        a, b = ranges[id(node)]
        pos = a
        toks = []
        for child in node.children:
            toks.extend(tokenize_words(sentence, pos, child.span[0], offset))
            pos = child.span[1]
        toks.extend(tokenize_words(sentence, pos, b, offset))
        node.own_tokens = toks
    if offset:
        for node in root.walk():
            node.span = (node.span[0] + offset, node.span[1] + offset)
    root.diagnostics = [Diagnostic(d.kind, d.position + offset, d.message) for d in diags]
    return root
