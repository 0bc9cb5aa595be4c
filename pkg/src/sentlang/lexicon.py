"""Grammatical-word lexicons and alphabets, one pair of files per language.

On-disk layout under a lexicon root::

    <root>/<code>/words.txt      one grammatical word per line
    <root>/<code>/alphabet.txt   one character per line
    <root>/<code>/abbrev.txt     optional, one abbreviation per line

Lines starting with ``#`` and blank lines are ignored. A trailing carriage
return is stripped; any other leading or trailing whitespace is an error.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterator, Mapping, Optional, Sequence

__all__ = [
    "DEFAULT_LANGUAGES",
    "LexiconConfigError",
    "LexiconParseError",
    "LexiconSet",
    "UnknownLanguageError",
    "available_languages",
    "canonicalize",
    "contains_word",
    "default_lexicon_root",
    "exclusive_language_of",
    "load_lexicon_set",
]

DEFAULT_LANGUAGES = ("fr", "en", "es", "de")

WORDS_FILE = "words.txt"
ALPHABET_FILE = "alphabet.txt"
ABBREV_FILE = "abbrev.txt"


class LexiconConfigError(ValueError):
    """Bad lexicon configuration: missing files, duplicate or empty language set."""


class LexiconParseError(ValueError):
    def __init__(self, path, lineno: int, message: str):
        self.path = Path(path)
        self.lineno = lineno
        super().__init__(f"{self.path}:{lineno}: {message}")


class UnknownLanguageError(KeyError):
    def __str__(self):
        return f"unknown language: {self.args[0]!r}"


def canonicalize(text: str) -> str:
    """NFC normalization followed by a simple (one-to-one) lowercase mapping.

    Characters whose full lowercase expands to several code points (``İ``)
    are left as they are, so the fold never changes string length.
    """
    text = unicodedata.normalize("NFC", text)
    lowered = text.lower()
    if len(lowered) != len(text):
        lowered = "".join(c if len(c.lower()) != 1 else c.lower() for c in text)
    return unicodedata.normalize("NFC", lowered)


def default_lexicon_root() -> Path:
    return Path(str(resources.files("sentlang") / "data"))


def available_languages(root) -> list[str]:
    root = Path(root)
    if not root.is_dir():
        return []
    return sorted(p.name for p in root.iterdir() if (p / WORDS_FILE).is_file())


def _read_entries(path: Path) -> Iterator[tuple[int, str]]:
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line or line.startswith("#"):
                continue
            if line != line.strip():
                raise LexiconParseError(path, lineno, "leading or trailing whitespace")
            yield lineno, line


def _read_words(path: Path) -> frozenset[str]:
    words = set()
    for lineno, line in _read_entries(path):
        if any(c.isspace() for c in line):
            raise LexiconParseError(path, lineno, f"embedded whitespace in {line!r}")
        word = canonicalize(line)
        if not word:
            raise LexiconParseError(path, lineno, "entry is empty after folding")
        words.add(word)
    return frozenset(words)


def _read_alphabet(path: Path) -> frozenset[str]:
    letters = set()
    for lineno, line in _read_entries(path):
        folded = canonicalize(line)
        if len(folded) != 1:
            raise LexiconParseError(path, lineno, f"expected one character, got {line!r}")
        letters.add(folded)
    return frozenset(letters)


def _exclusive_index(alphabets: Mapping[str, frozenset[str]]) -> dict[str, str]:
    owners: dict[str, list[str]] = {}
    for code, letters in alphabets.items():
        for c in letters:
            owners.setdefault(c, []).append(code)
    return {c: codes[0] for c, codes in owners.items() if len(codes) == 1}


@dataclass(frozen=True)
class LexiconSet:
    """Immutable per-language lexicons and alphabets.

    ``exclusive_index`` maps each canonical character found in exactly one
    configured alphabet to that language. ``word_index`` maps each word to
    the tuple of language positions (into ``languages``) whose list holds it.
    """

    languages: tuple[str, ...]
    lexicons: Mapping[str, frozenset[str]]
    alphabets: Mapping[str, frozenset[str]]
    abbreviations: frozenset[str] = frozenset()
    exclusive_index: Mapping[str, str] = field(init=False)
    word_index: Mapping[str, tuple[int, ...]] = field(init=False, repr=False)
    evidence_cache: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.languages:
            raise LexiconConfigError("empty language set")
        if len(set(self.languages)) != len(self.languages):
            dupes = sorted({c for c in self.languages if self.languages.count(c) > 1})
            raise LexiconConfigError(f"duplicate language code(s): {', '.join(dupes)}")
        keys = set(self.languages)
        if set(self.lexicons) != keys or set(self.alphabets) != keys:
            raise LexiconConfigError("languages, lexicons and alphabets disagree")
        object.__setattr__(self, "exclusive_index", _exclusive_index(self.alphabets))
        index: dict[str, list[int]] = {}
        for i, code in enumerate(self.languages):
            for w in self.lexicons[code]:
                index.setdefault(w, []).append(i)
        object.__setattr__(self, "word_index", {w: tuple(v) for w, v in index.items()})
        # canonical token -> language positions it increments; filled lazily
        object.__setattr__(self, "evidence_cache", {})

    def __hash__(self):
        return hash(self.languages)

    def position(self, language: str) -> int:
        try:
            return self.languages.index(language)
        except ValueError:
            raise UnknownLanguageError(language) from None

    def shared_words(self) -> dict[str, tuple[str, ...]]:
        """Words present in two or more lexicons, with their languages."""
        return {
            w: tuple(self.languages[i] for i in pos)
            for w, pos in sorted(self.word_index.items())
            if len(pos) > 1
        }


def load_lexicon_set(root=None, languages: Optional[Sequence[str]] = None) -> LexiconSet:
    """Load and validate the lexicons for ``languages`` from ``root``.

    ``root`` defaults to the data shipped with the package and ``languages``
    to every language directory found there. Passing an explicitly empty
    language list is an error.
    """
    root = default_lexicon_root() if root is None else Path(root)
    if languages is None:
        languages = available_languages(root)
        if not languages:
            raise LexiconConfigError(f"no language directories under {root}")
    languages = tuple(languages)
    if not languages:
        raise LexiconConfigError("empty language set")
    if len(set(languages)) != len(languages):
        dupes = sorted({c for c in languages if languages.count(c) > 1})
        raise LexiconConfigError(f"duplicate language code(s): {', '.join(dupes)}")

    lexicons, alphabets, abbrevs = {}, {}, set()
    for code in languages:
        if not code:
            raise LexiconConfigError("empty language code")
        words_path = root / code / WORDS_FILE
        alpha_path = root / code / ALPHABET_FILE
        for p in (words_path, alpha_path):
            if not p.is_file():
                raise LexiconConfigError(f"language {code!r}: missing {p}")
        lexicons[code] = _read_words(words_path)
        alphabets[code] = _read_alphabet(alpha_path)
        abbrev_path = root / code / ABBREV_FILE
        if abbrev_path.is_file():
            abbrevs |= _read_words(abbrev_path)
    return LexiconSet(languages, lexicons, alphabets, frozenset(abbrevs))


def contains_word(lex: LexiconSet, language: str, word: str) -> bool:
    if language not in lex.lexicons:
        raise UnknownLanguageError(language)
    return word in lex.lexicons[language]


def exclusive_language_of(lex: LexiconSet, c: str) -> Optional[str]:
    return lex.exclusive_index.get(canonicalize(c)) if len(c) == 1 else None
