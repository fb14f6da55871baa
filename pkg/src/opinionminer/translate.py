"""Roman Urdu -> English translation backends.

The offline backend glosses word-by-word from a TSV dictionary: crude,
but it surfaces the opinion adjectives the classifier needs. The remote
backend POSTs batches to an HTTP service and retries transient failures
with exponential backoff.
"""

import json
import logging
import os
import time
from dataclasses import dataclass, replace
from typing import Optional

import requests

from .corpus import CorpusBatch
from .errors import ConfigError, DuplicateEntry, RemoteError

log = logging.getLogger(__name__)


class GlossDictionary:
    """Immutable lowercase Roman-Urdu token -> English gloss mapping."""

    def __init__(self, entries):
        table = {}
        for word, gloss in dict(entries).items():
            if not gloss:
                raise ValueError(f"empty gloss for {word!r}")
            table[word.lower()] = gloss
        self._table = table

    def __contains__(self, word):
        return word in self._table

    def __len__(self):
        return len(self._table)

    def get(self, word):
        return self._table.get(word)

    def items(self):
        return self._table.items()


def load_gloss_dictionary(path):
    """Load a `roman_token<TAB>english_gloss` TSV; `#` starts a comment."""
    entries = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                word, gloss = line.split("\t")
            except ValueError:
                raise ValueError(f"bad gloss line: {line!r}") from None
            word = word.strip().lower()
            gloss = gloss.strip()
            if word in entries:
                raise DuplicateEntry(word)
            if not gloss:
                raise ValueError(f"empty gloss for {word!r}")
            entries[word] = gloss
    return GlossDictionary(entries)


def dictionary_translate(text, dictionary):
    """Word-by-word gloss: whitespace tokens, lowercase lookup,
    unknown tokens pass through unchanged. Total and deterministic."""
    out = []
    for token in text.split():
        gloss = dictionary.get(token.lower())
        out.append(gloss if gloss is not None else token)
    return " ".join(out)


@dataclass(frozen=True)
class TranslatorConfig:
    backend: str = "offline"  # offline | remote
    dictionary_path: Optional[str] = None
    endpoint_url: Optional[str] = None
    api_key_env_name: Optional[str] = None
    batch_size: int = 25
    skip_translated: bool = True
    retry_backoff: float = 0.5

    def __post_init__(self):
        if self.backend not in ("offline", "remote"):
            raise ConfigError(f"unknown translator backend {self.backend!r}")
        if self.batch_size < 1:
            raise ConfigError("batch_size must be >= 1")


_MAX_ATTEMPTS = 3


class RemoteTranslator:
    """Client for the batch translation endpoint.

    Wire contract: POST {"texts": [...], "from": "ur-Latn", "to": "en"}
    with a bearer token; response {"translations": [...]} aligned by
    index. Any other response shape is an error.
    """

    def __init__(self, endpoint_url, api_key, batch_size=25, retry_backoff=0.5,
                 timeout=30.0, session=None):
        self.endpoint_url = endpoint_url
        self.api_key = api_key
        self.batch_size = batch_size
        self.retry_backoff = retry_backoff
        self.timeout = timeout
        self.session = session or requests.Session()

    def translate(self, texts):
        out = []
        for start in range(0, len(texts), self.batch_size):
            out.extend(self._translate_group(texts[start:start + self.batch_size]))
        return out

    def _translate_group(self, group):
        body = {"texts": list(group), "from": "ur-Latn", "to": "en"}
        headers = {"Authorization": f"Bearer {self.api_key}"}
        last_error = None
        for attempt in range(_MAX_ATTEMPTS):
            if attempt:
                time.sleep(self.retry_backoff * (2 ** (attempt - 1)))
            try:
                response = self.session.post(
                    self.endpoint_url, json=body, headers=headers, timeout=self.timeout
                )
            except requests.RequestException as exc:
                last_error = RemoteError(0, str(exc))
                log.warning("translation request failed (attempt %d): %s", attempt + 1, exc)
                continue
            if response.status_code >= 500:
                last_error = RemoteError(response.status_code, response.text)
                log.warning(
                    "translation service %d (attempt %d)", response.status_code, attempt + 1
                )
                continue
            if response.status_code != 200:
                raise RemoteError(response.status_code, response.text)
            return self._parse_response(response, len(group))
        raise last_error

    @staticmethod
    def _parse_response(response, expected):
        try:
            payload = response.json()
        except (json.JSONDecodeError, ValueError):
            raise RemoteError(response.status_code, response.text) from None
        translations = payload.get("translations") if isinstance(payload, dict) else None
        if (
            not isinstance(translations, list)
            or len(translations) != expected
            or not all(isinstance(t, str) for t in translations)
        ):
            raise RemoteError(response.status_code, response.text)
        return translations


def _make_remote(config):
    if not config.endpoint_url:
        raise ConfigError("remote backend needs endpoint_url")
    if not config.api_key_env_name:
        raise ConfigError("remote backend needs api_key_env_name")
    api_key = os.environ.get(config.api_key_env_name)
    if not api_key:
        raise ConfigError(
            f"environment variable {config.api_key_env_name!r} is not set"
        )
    return RemoteTranslator(
        config.endpoint_url,
        api_key,
        batch_size=config.batch_size,
        retry_backoff=config.retry_backoff,
    )


def translate_batch(batch, config, dictionary=None):
    """Fill translated_text on every comment of a batch.

    Comments that already carry a translation are left untouched when
    skip_translated is set. Order, ids, and raw_text never change.
    """
    if config.backend == "offline":
        if dictionary is None:
            if not config.dictionary_path:
                raise ConfigError("offline backend needs dictionary_path")
            dictionary = load_gloss_dictionary(config.dictionary_path)
        translate = lambda texts: [dictionary_translate(t, dictionary) for t in texts]
    else:
        translate = _make_remote(config).translate

    pending = [
        c for c in batch
        if not (config.skip_translated and c.translated_text is not None)
    ]
    translations = translate([c.raw_text for c in pending])
    translated = {
        c.id: replace(c, translated_text=text)
        for c, text in zip(pending, translations)
    }
    comments = [translated.get(c.id, c) for c in batch]
    return CorpusBatch(comments, source=batch.source, skipped_lines=batch.skipped_lines)
