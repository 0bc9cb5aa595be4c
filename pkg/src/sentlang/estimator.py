"""scikit-learn style wrapper around the sentence tagger."""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .classifier import Tag, classify_node
from .lexicon import load_lexicon_set
from .tokenizer import build_segment_tree

__all__ = ["SentenceLanguageTagger", "check_texts"]


def check_texts(X) -> list[str]:
    """Validate a 1-d collection of strings and return it as a list.

    A bare string is rejected: it is almost always a missing pair of brackets.
    """
    if isinstance(X, (str, bytes)):
        raise TypeError("expected an iterable of strings, got a single string")
    if isinstance(X, np.ndarray):
        if X.ndim == 2 and X.shape[1] == 1:
            X = X[:, 0]
        elif X.ndim != 1:
            raise ValueError(f"expected a 1-d array of strings, got shape {X.shape}")
    if not isinstance(X, Iterable):
        raise TypeError(f"expected an iterable of strings, got {type(X).__name__}")
    texts = list(X)
    for i, x in enumerate(texts):
        if not isinstance(x, str):
            raise TypeError(f"element {i} is {type(x).__name__}, not str")
    return texts


class SentenceLanguageTagger(ClassifierMixin, TransformerMixin, BaseEstimator):
    """Tag each input sentence with its most likely language(s).

    Nothing is learned: ``fit`` only loads the lexicons. Each sample is taken
    as one sentence; its label is the code of the root tag (``"fr"``,
    ``"en+fr"`` for a tie, ``"und"`` when there is no evidence).
    ``transform`` returns the root likelihood scores, one column per language.

    Parameters
    ----------
    lexicon_root : path or None
        Directory holding one sub-directory per language; ``None`` uses the
        shipped data.
    languages : sequence of str or None
        Language codes to load; ``None`` loads every language found.
    """

    def __init__(self, lexicon_root=None, languages=None):
        self.lexicon_root = lexicon_root
        self.languages = languages

    def fit(self, X=None, y=None):
        self.lexicon_ = load_lexicon_set(self.lexicon_root, self.languages)
        self.classes_ = np.array(self.lexicon_.languages, dtype=object)
        self.n_features_in_ = 1
        if X is not None:
            X = check_texts(X)
        if y is not None:
            labels = {str(v) for v in y}
            unknown = labels - set(self.lexicon_.languages)
            if unknown:
                raise ValueError(f"labels not among configured languages: {sorted(unknown)}")
            if X is not None and len(X) != len(list(y)):
                raise ValueError("X and y have different lengths")
        return self

    def _root_trees(self, X):
        check_is_fitted(self, "lexicon_")
        return [classify_node(self.lexicon_, build_segment_tree(x)) for x in check_texts(X)]

    def predict_tags(self, X) -> list[Tag]:
        return [t.tag for t in self._root_trees(X)]

    def predict(self, X) -> np.ndarray:
        return np.array([t.tag.code for t in self._root_trees(X)], dtype=object)

    def decision_function(self, X) -> np.ndarray:
        trees = self._root_trees(X)
        out = np.zeros((len(trees), len(self.classes_)), dtype=np.int64)
        for i, t in enumerate(trees):
            out[i] = t.likelihood.scores
        return out

    def transform(self, X) -> np.ndarray:
        return self.decision_function(X)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "lexicon_")
        return np.array([f"score_{c}" for c in self.classes_], dtype=object)

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.input_tags.string = True
        tags.input_tags.two_d_array = False
        tags.requires_fit = True
        return tags
