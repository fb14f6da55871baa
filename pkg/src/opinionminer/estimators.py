"""Scikit-learn compatible wrappers around the mining pipeline stages.

These make the algorithm compose with the wider ecosystem, e.g.:

    from sklearn.pipeline import Pipeline
    clf = Pipeline([
        ("translate", GlossTranslator()),
        ("polarity", LexiconPolarityClassifier(translate=False)),
    ])
    clf.fit([]).predict(["ye mobile bohat acha ha"])

All estimators are stateless rule systems: fit only resolves and
validates resources, then returns self.
"""

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.exceptions import NotFittedError

from .corpus import Polarity
from .nlp import TagLexicon, pos_tag, split_sentences, tokenize
from .opinion import (
    DEFAULT_NOISE_KEYWORDS,
    OpinionLexicon,
    classify_comment,
    detect_noise,
    score_text,
)
from .resources import (
    default_gloss_dictionary,
    default_opinion_lexicon,
    default_tag_lexicon,
)
from .translate import GlossDictionary, dictionary_translate


def _check_texts(X):
    """Validate that X is an iterable of strings; return it as a list."""
    if isinstance(X, str):
        raise ValueError("X must be an iterable of texts, not a single string")
    texts = list(X)
    for item in texts:
        if not isinstance(item, str):
            raise ValueError(f"X must contain only strings, got {type(item).__name__}")
    return texts


def _require_fitted(estimator, attr):
    if not hasattr(estimator, attr):
        raise NotFittedError(
            f"{type(estimator).__name__} is not fitted yet; call fit() first"
        )


def _coerce_gloss(dictionary):
    if dictionary is None:
        return default_gloss_dictionary()
    if isinstance(dictionary, GlossDictionary):
        return dictionary
    return GlossDictionary(dictionary)


def _coerce_tags(lexicon):
    if lexicon is None:
        return default_tag_lexicon()
    if isinstance(lexicon, TagLexicon):
        return lexicon
    return TagLexicon(lexicon)


def _coerce_opinions(lexicon):
    if lexicon is None:
        return default_opinion_lexicon()
    if isinstance(lexicon, OpinionLexicon):
        return lexicon
    return OpinionLexicon(lexicon)


class GlossTranslator(BaseEstimator, TransformerMixin):
    """Word-by-word Roman Urdu -> English glossing as a transformer.

    Parameters
    ----------
    dictionary : mapping, GlossDictionary, or None
        Token -> gloss table; None uses the bundled dictionary.
    """

    def __init__(self, dictionary=None):
        self.dictionary = dictionary

    def fit(self, X=None, y=None):
        self.dictionary_ = _coerce_gloss(self.dictionary)
        return self

    def transform(self, X):
        _require_fitted(self, "dictionary_")
        return [dictionary_translate(text, self.dictionary_) for text in _check_texts(X)]


class RuleTagger(BaseEstimator, TransformerMixin):
    """Sentence-split, tokenize, and POS-tag texts.

    transform returns, per text, a list of sentences, each a list of
    (surface, tag-name) pairs.
    """

    def __init__(self, tag_lexicon=None):
        self.tag_lexicon = tag_lexicon

    def fit(self, X=None, y=None):
        self.tag_lexicon_ = _coerce_tags(self.tag_lexicon)
        return self

    def transform(self, X):
        _require_fitted(self, "tag_lexicon_")
        out = []
        for text in _check_texts(X):
            out.append(
                [
                    [(t.surface, t.tag.value) for t in pos_tag(tokenize(s), self.tag_lexicon_)]
                    for s in split_sentences(text)
                ]
            )
        return out


class LexiconPolarityClassifier(BaseEstimator, ClassifierMixin):
    """Adjective-lexicon polarity classification (aggregate mode).

    predict returns one of "positive"/"negative"/"neutral" per text;
    decision_function returns the summed net opinion score.
    """

    def __init__(self, opinion_lexicon=None, tag_lexicon=None, dictionary=None,
                 translate=True):
        self.opinion_lexicon = opinion_lexicon
        self.tag_lexicon = tag_lexicon
        self.dictionary = dictionary
        self.translate = translate

    def fit(self, X=None, y=None):
        self.opinion_lexicon_ = _coerce_opinions(self.opinion_lexicon)
        self.tag_lexicon_ = _coerce_tags(self.tag_lexicon)
        self.dictionary_ = _coerce_gloss(self.dictionary) if self.translate else None
        self.classes_ = np.array(
            [Polarity.NEGATIVE.value, Polarity.NEUTRAL.value, Polarity.POSITIVE.value]
        )
        return self

    def _scores(self, text):
        if self.dictionary_ is not None:
            text = dictionary_translate(text, self.dictionary_)
        return score_text(text, self.tag_lexicon_, self.opinion_lexicon_)

    def predict(self, X):
        _require_fitted(self, "classes_")
        return np.array(
            [classify_comment(self._scores(t), "aggregate").value for t in _check_texts(X)]
        )

    def decision_function(self, X):
        _require_fitted(self, "classes_")
        return np.array(
            [sum(s.net for s in self._scores(t)) for t in _check_texts(X)], dtype=float
        )


class AdvertisementDetector(BaseEstimator):
    """Rule-based noise/advertisement flagging over raw comment text.

    predict returns a boolean array; reasons() the per-text verdicts.
    """

    def __init__(self, keywords=None):
        self.keywords = keywords

    def fit(self, X=None, y=None):
        self.keywords_ = (
            DEFAULT_NOISE_KEYWORDS if self.keywords is None else tuple(self.keywords)
        )
        return self

    def predict(self, X):
        _require_fitted(self, "keywords_")
        return np.array(
            [detect_noise(t, self.keywords_).is_noise for t in _check_texts(X)]
        )

    def reasons(self, X):
        _require_fitted(self, "keywords_")
        return [detect_noise(t, self.keywords_) for t in _check_texts(X)]
