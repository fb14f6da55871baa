"""Opinion-word extraction, sentence/comment polarity, and noise flagging.

Polarity is lexicon-driven: adjectives (JJ/JJR/JJS) are looked up in an
adjective polarity lexicon; a sentence's net score is the count of +1
hits minus the count of -1 hits, with sign giving its orientation and
ties falling to neutral. Negation is deliberately not modeled.
"""

import logging
import re
from dataclasses import dataclass
from enum import Enum

from .corpus import Polarity
from .errors import DuplicateEntry, UnknownPolarity
from .nlp import ADJECTIVE_TAGS, pos_tag, split_sentences, tokenize

log = logging.getLogger(__name__)

POSITIVE = 1
NEGATIVE = -1

_POLARITY_TOKENS = {"positive": POSITIVE, "negative": NEGATIVE}


class OpinionLexicon:
    """Immutable lowercase adjective -> +1/-1 mapping."""

    def __init__(self, entries):
        table = {}
        for word, value in dict(entries).items():
            if value not in (POSITIVE, NEGATIVE):
                raise UnknownPolarity(value)
            table[word.lower()] = value
        self._table = table

    def __contains__(self, word):
        return word in self._table

    def __len__(self):
        return len(self._table)

    def get(self, word):
        return self._table.get(word)

    def items(self):
        return self._table.items()

    def count_by_sign(self, sign):
        return sum(1 for v in self._table.values() if v == sign)


def load_opinion_lexicon(path):
    """Load a `word<TAB>positive|negative` TSV; `#` starts a comment.

    Repeated words raise DuplicateEntry; bad polarity tokens raise
    UnknownPolarity. An empty file loads but logs a warning.
    """
    entries = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                word, token = line.split("\t")
            except ValueError:
                raise UnknownPolarity(line) from None
            word = word.strip().lower()
            token = token.strip().lower()
            if token not in _POLARITY_TOKENS:
                raise UnknownPolarity(token)
            if word in entries:
                raise DuplicateEntry(word)
            entries[word] = _POLARITY_TOKENS[token]
    if not entries:
        log.warning("opinion lexicon %s is empty", path)
    return OpinionLexicon(entries)


@dataclass(frozen=True)
class SentenceScore:
    """Lexicon hits and the resulting orientation of one sentence."""

    opinion_words: tuple
    pos_count: int
    neg_count: int

    @property
    def net(self):
        return self.pos_count - self.neg_count

    @property
    def polarity(self):
        return _sign_polarity(self.net)


def _sign_polarity(net):
    if net > 0:
        return Polarity.POSITIVE
    if net < 0:
        return Polarity.NEGATIVE
    return Polarity.NEUTRAL


def extract_opinion_words(tagged):
    """Lowercase surfaces of adjective-tagged tokens, in order."""
    return [t.surface.lower() for t in tagged if t.tag in ADJECTIVE_TAGS]


def score_sentence(tagged, lexicon):
    """Score one tagged sentence against the opinion lexicon.

    Only adjective-tagged tokens participate; a sentence with no lexicon
    hit is neutral.
    """
    hits = []
    pos = neg = 0
    for word in extract_opinion_words(tagged):
        value = lexicon.get(word)
        if value is None:
            continue
        hits.append((word, value))
        if value > 0:
            pos += 1
        else:
            neg += 1
    return SentenceScore(opinion_words=tuple(hits), pos_count=pos, neg_count=neg)


def classify_comment(scores, mode="aggregate"):
    """Combine sentence scores into comment polarity.

    aggregate (default): sign of the summed nets, ties neutral.
    paper: each sentence is an independent unit; returns one polarity
    per sentence, reproducing the multi-sentence splitting behavior.
    """
    if mode == "aggregate":
        return _sign_polarity(sum(s.net for s in scores))
    if mode == "paper":
        return [s.polarity for s in scores]
    raise ValueError(f"unknown classification mode {mode!r}")


@dataclass(frozen=True)
class CommentClassification:
    """Final verdict for one classification unit (comment or, in paper
    mode, a single sentence of one)."""

    comment_id: str
    product_id: str
    sentence_scores: tuple
    polarity: Polarity
    noise: "NoiseVerdict"


class NoiseReason(Enum):
    URL = "url"
    PHONE_NUMBER = "phone_number"
    SALE_KEYWORD = "sale_keyword"
    NONE = "none"


@dataclass(frozen=True)
class NoiseVerdict:
    is_noise: bool
    reasons: tuple


DEFAULT_NOISE_KEYWORDS = (
    "selling",
    "sale",
    "demand",
    "buyers",
    "contact",
    "warinti",
    "argent",
    "urgent",
)

_TLDS = (".com", ".net", ".org", ".pk", ".in", ".co", ".uk", ".info", ".io", ".edu", ".gov", ".biz")
_PHONE_RUN = re.compile(r"[\d\sxX-]+")
_PHONE_WINDOW = 14
_PHONE_MIN_DIGITS = 7


def _has_url(text):
    for token in text.split():
        t = token.lower().rstrip(".,!?;:()\"'")
        if "www." in t or "http" in t or t.endswith(_TLDS):
            return True
    return False


def _has_phone_number(text):
    for match in _PHONE_RUN.finditer(text):
        run = match.group()
        if sum(ch.isdigit() for ch in run) < _PHONE_MIN_DIGITS:
            continue
        for start in range(0, max(1, len(run) - _PHONE_WINDOW + 1)):
            window = run[start:start + _PHONE_WINDOW]
            if sum(ch.isdigit() for ch in window) >= _PHONE_MIN_DIGITS:
                return True
    return False


def _keyword_pattern(keywords):
    alts = "|".join(re.escape(k) for k in keywords)
    return re.compile(rf"\b(?:{alts})\b", re.IGNORECASE)


def detect_noise(comment, keywords=DEFAULT_NOISE_KEYWORDS):
    """Flag advertisement/spam comments from their raw (untranslated) text.

    Rules: web addresses, phone-number-like digit windows (masking with
    x allowed), and a configurable sale-vocabulary list.
    """
    text = comment.raw_text if hasattr(comment, "raw_text") else comment
    reasons = []
    if _has_url(text):
        reasons.append(NoiseReason.URL)
    if _has_phone_number(text):
        reasons.append(NoiseReason.PHONE_NUMBER)
    if keywords and _keyword_pattern(keywords).search(text):
        reasons.append(NoiseReason.SALE_KEYWORD)
    if not reasons:
        return NoiseVerdict(is_noise=False, reasons=(NoiseReason.NONE,))
    return NoiseVerdict(is_noise=True, reasons=tuple(reasons))


def load_noise_keywords(path):
    """One keyword per line; `#` comments and blanks ignored."""
    keywords = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                keywords.append(line.lower())
    return tuple(keywords)


def score_text(text, tag_lexicon, opinion_lexicon):
    """Segment, tokenize, tag, and score a whole text.

    Returns the list of per-sentence SentenceScores.
    """
    return [
        score_sentence(pos_tag(tokenize(sentence), tag_lexicon), opinion_lexicon)
        for sentence in split_sentences(text)
    ]
