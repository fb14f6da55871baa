"""Sentence segmentation, tokenization, and lexicon+suffix POS tagging.

The tagger is deterministic: a lexicon lookup backed by a handful of
suffix rules over a Penn-Treebank-style tag subset. Downstream polarity
only consumes the adjective tags (JJ/JJR/JJS), so fidelity on the other
classes is best-effort.
"""

import re
from dataclasses import dataclass
from enum import Enum

from .errors import DuplicateEntry, UnknownTag


class PosTag(Enum):
    DT = "DT"
    NNS = "NNS"
    NN = "NN"
    NNP = "NNP"
    VBP = "VBP"
    VB = "VB"
    VBD = "VBD"
    VBZ = "VBZ"
    RB = "RB"
    JJ = "JJ"
    JJR = "JJR"
    JJS = "JJS"
    PRP = "PRP"
    IN = "IN"
    CC = "CC"
    CD = "CD"
    UH = "UH"
    PUNCT = "PUNCT"
    OTHER = "OTHER"


ADJECTIVE_TAGS = frozenset({PosTag.JJ, PosTag.JJR, PosTag.JJS})


@dataclass(frozen=True)
class TaggedToken:
    surface: str
    tag: PosTag

    def __post_init__(self):
        if not self.surface:
            raise ValueError("token surface must be non-empty")


class TagLexicon:
    """Immutable lowercase word -> PosTag mapping."""

    def __init__(self, entries):
        table = {}
        for word, tag in dict(entries).items():
            table[word.lower()] = tag if isinstance(tag, PosTag) else PosTag(tag)
        self._table = table

    def __contains__(self, word):
        return word in self._table

    def __len__(self):
        return len(self._table)

    def get(self, word):
        return self._table.get(word)

    def items(self):
        return self._table.items()


def load_tag_lexicon(path):
    """Load a `word<TAB>TAG` TSV; `#` starts a comment line.

    Unknown tag strings and duplicate words are rejected.
    """
    entries = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                word, tag_token = line.split("\t")
            except ValueError:
                raise UnknownTag(line) from None
            word = word.strip().lower()
            tag_token = tag_token.strip()
            try:
                tag = PosTag(tag_token)
            except ValueError:
                raise UnknownTag(tag_token) from None
            if word in entries:
                raise DuplicateEntry(word)
            entries[word] = tag
    return TagLexicon(entries)


_BOUNDARY = re.compile(r"[.!?]+(?=\s|$)")


def split_sentences(text):
    """Split after maximal runs of .!? that precede whitespace or EOT.

    Delimiters stay with their sentence; blank segments are dropped, so
    "skype???" remains one sentence.
    """
    pieces = []
    start = 0
    for match in _BOUNDARY.finditer(text):
        pieces.append(text[start:match.end()])
        start = match.end()
    pieces.append(text[start:])
    return [p.strip() for p in pieces if p.strip()]


_PUNCT_CHARS = set(".,!?;:\"'()")


def tokenize(sentence):
    """Whitespace split, then detach leading/trailing punctuation runs.

    Each detached run is one token ("???" stays whole); interior
    characters (hyphens, slashes, digits, apostrophes) stay attached.
    """
    tokens = []
    for chunk in sentence.split():
        i, j = 0, len(chunk)
        while i < j and chunk[i] in _PUNCT_CHARS:
            i += 1
        if i == j:
            tokens.append(chunk)
            continue
        k = j
        while k > i and chunk[k - 1] in _PUNCT_CHARS:
            k -= 1
        if i:
            tokens.append(chunk[:i])
        tokens.append(chunk[i:k])
        if k < j:
            tokens.append(chunk[k:])
    return tokens


_CD_EXTRA = set(".,:/-")
_JJ_SUFFIXES = ("able", "ible", "ful", "ous", "ish", "ive")


def _is_punct(token):
    return all(not ch.isalnum() for ch in token)


def _is_number(token):
    return any(ch.isdigit() for ch in token) and all(
        ch.isdigit() or ch in _CD_EXTRA for ch in token
    )


def _adjective_stem(candidates, lexicon):
    return any(lexicon.get(c) is PosTag.JJ for c in candidates if c)


def _comparative_stems(word, strip):
    stem = word[:-strip]
    stems = [stem, stem + "e"]
    if len(stem) >= 2 and stem[-1] == stem[-2]:
        stems.append(stem[:-1])
    return stems


def _noun_stems(word):
    stems = [word[:-1]]
    if word.endswith("es"):
        stems.append(word[:-2])
    if word.endswith("ies"):
        stems.append(word[:-3] + "y")
    return stems


def tag_token(token, position, lexicon):
    """Tag one token; `position` is its index within the sentence."""
    if _is_punct(token):
        return PosTag.PUNCT
    if _is_number(token):
        return PosTag.CD
    lower = token.lower()
    from_lexicon = lexicon.get(lower)
    if from_lexicon is not None:
        return from_lexicon
    if lower.endswith("ly"):
        return PosTag.RB
    if lower.endswith(_JJ_SUFFIXES):
        return PosTag.JJ
    if lower.endswith("er") and _adjective_stem(_comparative_stems(lower, 2), lexicon):
        return PosTag.JJR
    if lower.endswith("est") and _adjective_stem(_comparative_stems(lower, 3), lexicon):
        return PosTag.JJS
    if lower.endswith("s") and any(
        lexicon.get(s) is PosTag.NN for s in _noun_stems(lower) if s
    ):
        return PosTag.NNS
    if token[0].isupper() and position > 0:
        return PosTag.NNP
    return PosTag.NN


def pos_tag(tokens, lexicon):
    """Tag a sentence's tokens. Length-preserving and deterministic."""
    return [
        TaggedToken(token, tag_token(token, idx, lexicon))
        for idx, token in enumerate(tokens)
    ]
