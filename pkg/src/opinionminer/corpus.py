"""Comment domain types and the line-delimited corpus file format.

A corpus file is UTF-8 JSON Lines: one object per line with keys
``id``, ``product_id``, ``raw_text`` and optional ``translated_text``,
``language_hint``, ``gold{polarity, relevancy, origin}``. Blank lines are
ignored; enum values are lowercase.
"""

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .errors import DuplicateId, MalformedRecord, MissingField

log = logging.getLogger(__name__)


class Polarity(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"


class Relevancy(Enum):
    RELEVANT = "relevant"
    NOISE = "noise"


class Origin(Enum):
    USER = "user"
    MACHINE = "machine"
    UNKNOWN = "unknown"


class LanguageHint(Enum):
    ROMAN_URDU = "roman_urdu"
    ENGLISH = "english"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class GoldLabel:
    """Manual annotation: polarity plus the relevancy/origin taxonomy."""

    polarity: Polarity
    relevancy: Relevancy
    origin: Origin


@dataclass(frozen=True)
class Comment:
    """One user comment, optionally translated and gold-labeled."""

    id: str
    product_id: str
    raw_text: str
    translated_text: Optional[str] = None
    language_hint: LanguageHint = LanguageHint.UNKNOWN
    gold: Optional[GoldLabel] = None

    def __post_init__(self):
        if not self.id:
            raise MissingField("id")
        trimmed = self.raw_text.strip()
        if not trimmed:
            raise MissingField("raw_text")
        object.__setattr__(self, "raw_text", trimmed)


@dataclass(frozen=True)
class CorpusBatch:
    """An ordered batch of comments with a provenance note.

    ``skipped_lines`` records 1-based line numbers dropped during a
    lenient load; empty for batches built any other way.
    """

    comments: tuple
    source: str = ""
    skipped_lines: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "comments", tuple(self.comments))
        seen = set()
        for c in self.comments:
            if c.id in seen:
                raise DuplicateId(c.id)
            seen.add(c.id)

    def __len__(self):
        return len(self.comments)

    def __iter__(self):
        return iter(self.comments)


def _enum_value(enum_cls, token, field_name, line_no=None):
    try:
        return enum_cls(token)
    except ValueError:
        raise MalformedRecord(
            f"bad value {token!r} for {field_name}", line_no
        ) from None


def parse_comment_record(line, line_no=None):
    """Parse one corpus-file line into a Comment.

    Unknown keys are ignored. Raises MalformedRecord / MissingField.
    """
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedRecord(f"not valid JSON: {exc.msg}", line_no) from None
    if not isinstance(obj, dict):
        raise MalformedRecord("record is not an object", line_no)

    for key in ("id", "product_id", "raw_text"):
        if key not in obj or obj[key] is None:
            raise MissingField(key, line_no)
        if not isinstance(obj[key], str):
            raise MalformedRecord(f"field {key!r} is not a string", line_no)

    raw_text = obj["raw_text"].strip()
    if not raw_text:
        raise MissingField("raw_text", line_no)

    hint = LanguageHint.UNKNOWN
    if obj.get("language_hint") is not None:
        hint = _enum_value(LanguageHint, obj["language_hint"], "language_hint", line_no)

    gold = None
    if obj.get("gold") is not None:
        g = obj["gold"]
        if not isinstance(g, dict):
            raise MalformedRecord("gold is not an object", line_no)
        for key in ("polarity", "relevancy", "origin"):
            if key not in g:
                raise MalformedRecord(f"gold label missing {key!r}", line_no)
        gold = GoldLabel(
            polarity=_enum_value(Polarity, g["polarity"], "gold.polarity", line_no),
            relevancy=_enum_value(Relevancy, g["relevancy"], "gold.relevancy", line_no),
            origin=_enum_value(Origin, g["origin"], "gold.origin", line_no),
        )

    translated = obj.get("translated_text")
    if translated is not None and not isinstance(translated, str):
        raise MalformedRecord("field 'translated_text' is not a string", line_no)

    return Comment(
        id=obj["id"],
        product_id=obj["product_id"],
        raw_text=raw_text,
        translated_text=translated,
        language_hint=hint,
        gold=gold,
    )


def comment_to_record(comment):
    """Comment -> plain dict in the corpus file schema (defaults omitted)."""
    rec = {
        "id": comment.id,
        "product_id": comment.product_id,
        "raw_text": comment.raw_text,
    }
    if comment.translated_text is not None:
        rec["translated_text"] = comment.translated_text
    if comment.language_hint is not LanguageHint.UNKNOWN:
        rec["language_hint"] = comment.language_hint.value
    if comment.gold is not None:
        rec["gold"] = {
            "polarity": comment.gold.polarity.value,
            "relevancy": comment.gold.relevancy.value,
            "origin": comment.gold.origin.value,
        }
    return rec


def load_corpus(path, strict=True):
    """Read a corpus file into a CorpusBatch.

    strict=True aborts on the first bad line; strict=False skips bad
    lines, logs them, and records their line numbers on the batch.
    Duplicate ids abort in either mode.
    """
    comments = []
    skipped = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                comments.append(parse_comment_record(line, line_no))
            except MalformedRecord as exc:
                if strict:
                    raise
                log.warning("skipping bad corpus line %d: %s", line_no, exc)
                skipped.append(line_no)
    return CorpusBatch(comments, source=str(path), skipped_lines=tuple(skipped))


def write_corpus(batch, path):
    """Write a batch as JSON Lines; load_corpus(write_corpus(b)) == b."""
    with open(path, "w", encoding="utf-8") as fh:
        for comment in batch:
            fh.write(json.dumps(comment_to_record(comment), ensure_ascii=False))
            fh.write("\n")
