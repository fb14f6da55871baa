"""Comment extraction from product pages via declarative selector rules.

Documents are parsed error-tolerantly with the stdlib HTML parser into a
small node tree; selection uses a CSS subset (tag, .class, #id, and the
descendant combinator), which is all the extraction rules need. A
fixture-backed fetcher keeps crawling reproducible offline.
"""

import logging
import os
import re
import time
from dataclasses import dataclass
from html.parser import HTMLParser
from typing import Optional
from urllib.parse import urljoin

import requests

from .corpus import Comment, CorpusBatch
from .errors import CrawlCycle, FetchError, InvalidSelector

log = logging.getLogger(__name__)

_VOID_ELEMENTS = frozenset(
    "area base br col embed hr img input link meta param source track wbr".split()
)


class Node:
    """One element: tag, attributes, ordered children (Node or str)."""

    __slots__ = ("tag", "attrs", "children", "parent")

    def __init__(self, tag, attrs=None, parent=None):
        self.tag = tag
        self.attrs = dict(attrs or {})
        self.children = []
        self.parent = parent

    @property
    def classes(self):
        return self.attrs.get("class", "").split()

    def walk(self):
        """All element descendants (self excluded), document order."""
        for child in self.children:
            if isinstance(child, Node):
                yield child
                yield from child.walk()

    def text(self):
        """Whitespace-normalized text content of the subtree."""
        chunks = []

        def collect(node):
            for child in node.children:
                if isinstance(child, Node):
                    collect(child)
                else:
                    chunks.append(child)

        collect(self)
        return " ".join("".join(chunks).split())


class _TreeBuilder(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.root = Node("#document")
        self.stack = [self.root]

    def handle_starttag(self, tag, attrs):
        node = Node(tag, attrs, parent=self.stack[-1])
        self.stack[-1].children.append(node)
        if tag not in _VOID_ELEMENTS:
            self.stack.append(node)

    def handle_startendtag(self, tag, attrs):
        self.stack[-1].children.append(Node(tag, attrs, parent=self.stack[-1]))

    def handle_endtag(self, tag):
        for idx in range(len(self.stack) - 1, 0, -1):
            if self.stack[idx].tag == tag:
                del self.stack[idx:]
                return
        # stray end tag: ignore

    def handle_data(self, data):
        if data:
            self.stack[-1].children.append(data)


def parse_html(document):
    """Parse HTML text into the root Node (error-tolerant)."""
    builder = _TreeBuilder()
    builder.feed(document)
    builder.close()
    return builder.root


_NAME = r"[A-Za-z][\w-]*"
_SIMPLE_RE = re.compile(
    rf"^(?P<tag>{_NAME}|\*)?(?P<quals>(?:[.#]{_NAME})*)$"
)
_QUAL_RE = re.compile(rf"[.#]{_NAME}")


@dataclass(frozen=True)
class _SimpleSelector:
    tag: Optional[str]
    id: Optional[str]
    classes: tuple

    def matches(self, node):
        if self.tag and node.tag != self.tag:
            return False
        if self.id and node.attrs.get("id") != self.id:
            return False
        node_classes = node.classes
        return all(c in node_classes for c in self.classes)


def parse_selector(selector):
    """Parse a descendant chain of simple selectors; InvalidSelector on
    anything outside the tag/.class/#id subset."""
    if not isinstance(selector, str) or not selector.strip():
        raise InvalidSelector(selector, "empty")
    chain = []
    for part in selector.split():
        match = _SIMPLE_RE.match(part)
        if not match or (not match.group("tag") and not match.group("quals")):
            raise InvalidSelector(selector, f"bad component {part!r}")
        quals = match.group("quals")
        if quals and "".join(_QUAL_RE.findall(quals)) != quals:
            raise InvalidSelector(selector, f"bad component {part!r}")
        sel_id = None
        classes = []
        for qual in _QUAL_RE.findall(quals):
            if qual[0] == "#":
                if sel_id is not None:
                    raise InvalidSelector(selector, f"multiple ids in {part!r}")
                sel_id = qual[1:]
            else:
                classes.append(qual[1:])
        tag = match.group("tag")
        chain.append(
            _SimpleSelector(
                tag=None if tag in (None, "*") else tag.lower(),
                id=sel_id,
                classes=tuple(classes),
            )
        )
    return tuple(chain)


def _ancestors_match(node, chain, stop):
    """node matched chain[-1]; check the rest against its ancestors,
    not looking above `stop`."""
    idx = len(chain) - 2
    current = node.parent
    while idx >= 0 and current is not None and current is not stop:
        if current.tag != "#document" and chain[idx].matches(current):
            idx -= 1
        current = current.parent
    return idx < 0


def select(root, selector):
    """All elements under `root` matching the selector, document order."""
    chain = selector if isinstance(selector, tuple) else parse_selector(selector)
    return [
        node
        for node in root.walk()
        if chain[-1].matches(node) and _ancestors_match(node, chain, root)
    ]


@dataclass(frozen=True)
class ExtractionRules:
    """Where comments live on a page, and how to page through them."""

    comment_selector: str
    text_selector: Optional[str] = None
    next_page_selector: Optional[str] = None

    def __post_init__(self):
        parse_selector(self.comment_selector)
        if self.text_selector is not None:
            parse_selector(self.text_selector)
        if self.next_page_selector is not None:
            parse_selector(self.next_page_selector)


def extract_comments(document, rules, product_id, first_ordinal=1):
    """One Comment per node matched by comment_selector, document order.

    Ids are `product_id#ordinal`; text is whitespace-normalized. Nodes
    whose selected text is empty are skipped with a warning.
    """
    root = document if isinstance(document, Node) else parse_html(document)
    text_chain = (
        parse_selector(rules.text_selector) if rules.text_selector else None
    )
    comments = []
    ordinal = first_ordinal
    for node in select(root, rules.comment_selector):
        if text_chain is not None:
            text = " ".join(
                t for t in (sub.text() for sub in select(node, text_chain)) if t
            )
        else:
            text = node.text()
        if not text:
            log.warning("empty comment node for %s; skipping", product_id)
            continue
        comments.append(Comment(id=f"{product_id}#{ordinal}", product_id=product_id, raw_text=text))
        ordinal += 1
    return comments


class FixtureFetcher:
    """Deterministic fetcher resolving urls from a url -> file map."""

    def __init__(self, mapping, base_dir="."):
        self.mapping = dict(mapping)
        self.base_dir = base_dir

    @classmethod
    def from_map_file(cls, path):
        """Load `url<TAB>relative-path` lines; paths relative to the map."""
        mapping = {}
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                url, rel = line.split("\t")
                mapping[url.strip()] = rel.strip()
        return cls(mapping, base_dir=os.path.dirname(os.path.abspath(path)))

    def fetch(self, url):
        if url not in self.mapping:
            raise FetchError(url, "not in fixture map")
        path = os.path.join(self.base_dir, self.mapping[url])
        try:
            with open(path, "rb") as fh:
                return fh.read()
        except OSError as exc:
            raise FetchError(url, exc) from exc


class NetworkFetcher:
    """Live HTTP fetcher; never used by tests or default configs."""

    def __init__(self, timeout=30.0, user_agent="opinionminer/0.1", delay=0.0):
        self.timeout = timeout
        self.user_agent = user_agent
        self.delay = delay

    def fetch(self, url):
        if self.delay:
            time.sleep(self.delay)
        try:
            response = requests.get(
                url, timeout=self.timeout, headers={"User-Agent": self.user_agent}
            )
            response.raise_for_status()
        except requests.RequestException as exc:
            raise FetchError(url, exc) from exc
        return response.content


def _decode(payload):
    return payload.decode("utf-8", errors="replace") if isinstance(payload, bytes) else payload


def crawl_product_page(start_url, rules, fetcher, page_limit=1, product_id=None):
    """Follow next-page links up to page_limit pages and collect comments.

    Urls are visited at most once; a repeat aborts with CrawlCycle.
    """
    if page_limit < 1:
        raise ValueError("page_limit must be >= 1")
    product_id = product_id or start_url
    next_chain = (
        parse_selector(rules.next_page_selector) if rules.next_page_selector else None
    )
    visited = set()
    comments = []
    url = start_url
    for _ in range(page_limit):
        if url in visited:
            raise CrawlCycle(url)
        visited.add(url)
        try:
            payload = fetcher.fetch(url)
        except FetchError:
            raise
        except Exception as exc:
            raise FetchError(url, exc) from exc
        root = parse_html(_decode(payload))
        comments.extend(
            extract_comments(root, rules, product_id, first_ordinal=len(comments) + 1)
        )
        if next_chain is None:
            break
        links = select(root, next_chain)
        href = next((n.attrs.get("href") for n in links if n.attrs.get("href")), None)
        if not href:
            break
        url = urljoin(url, href)
    return CorpusBatch(comments, source=start_url)
