"""Tag sentences and their embedded segments with the languages they are written in."""

from .classifier import (
    LikelihoodVector,
    Tag,
    TaggedTree,
    classify_document,
    classify_node,
    score_word,
)
from .lexicon import (
    LexiconSet,
    canonicalize,
    contains_word,
    exclusive_language_of,
    load_lexicon_set,
)
from .tokenizer import RawDocument, SegmentTree, Token, build_segment_tree, split_sentences, tokenize_words

__all__ = [
    "LexiconSet",
    "LikelihoodVector",
    "RawDocument",
    "SegmentTree",
    "Tag",
    "TaggedTree",
    "Token",
    "build_segment_tree",
    "canonicalize",
    "classify_document",
    "classify_node",
    "contains_word",
    "exclusive_language_of",
    "load_lexicon_set",
    "score_word",
    "split_sentences",
    "tokenize_words",
]

__version__ = "0.1.0"
