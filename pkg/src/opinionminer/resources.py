"""Access to the bundled lexicons and dictionaries."""

from functools import lru_cache
from importlib.resources import as_file, files

from .nlp import load_tag_lexicon
from .opinion import load_noise_keywords, load_opinion_lexicon
from .translate import load_gloss_dictionary


def resource_path(name):
    """Filesystem path of a bundled data file."""
    ref = files("opinionminer").joinpath("data", name)
    with as_file(ref) as path:
        return str(path)


@lru_cache(maxsize=None)
def default_tag_lexicon():
    return load_tag_lexicon(resource_path("tag_lexicon.tsv"))


@lru_cache(maxsize=None)
def default_opinion_lexicon():
    return load_opinion_lexicon(resource_path("opinion_lexicon.tsv"))


@lru_cache(maxsize=None)
def default_gloss_dictionary():
    return load_gloss_dictionary(resource_path("gloss_dictionary.tsv"))


@lru_cache(maxsize=None)
def default_noise_keywords():
    return load_noise_keywords(resource_path("noise_keywords.txt"))
