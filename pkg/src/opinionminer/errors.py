"""Exception hierarchy shared across the package.

Three broad families map onto the CLI exit codes: configuration/usage
problems (exit 1), data problems (exit 2), and remote-service problems
(exit 3).
"""


class OpinionMinerError(Exception):
    """Base class for all package errors."""


class ConfigError(OpinionMinerError):
    """Invalid or incomplete configuration (missing file, unset env var...)."""


class DataError(OpinionMinerError):
    """Malformed or inconsistent input data."""


class RemoteServiceError(OpinionMinerError):
    """A remote backend failed or misbehaved."""


# corpus

class MalformedRecord(DataError):
    def __init__(self, message, line_no=None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class MissingField(MalformedRecord):
    def __init__(self, field, line_no=None):
        self.field = field
        super().__init__(f"missing required field {field!r}", line_no)


class DuplicateId(DataError):
    def __init__(self, comment_id):
        self.comment_id = comment_id
        super().__init__(f"duplicate comment id {comment_id!r}")


# lexicon files

class DuplicateEntry(DataError):
    def __init__(self, word):
        self.word = word
        super().__init__(f"duplicate lexicon entry {word!r}")


class UnknownPolarity(DataError):
    def __init__(self, token):
        self.token = token
        super().__init__(f"unknown polarity value {token!r} (expected positive/negative)")


class UnknownTag(DataError):
    def __init__(self, token):
        self.token = token
        super().__init__(f"unknown part-of-speech tag {token!r}")


# ingest

class InvalidSelector(DataError):
    def __init__(self, selector, reason=""):
        self.selector = selector
        detail = f": {reason}" if reason else ""
        super().__init__(f"invalid selector {selector!r}{detail}")


class FetchError(RemoteServiceError):
    def __init__(self, url, cause):
        self.url = url
        self.cause = cause
        super().__init__(f"failed to fetch {url}: {cause}")


class CrawlCycle(DataError):
    def __init__(self, url):
        self.url = url
        super().__init__(f"crawl revisited {url}; aborting")


# translate

class RemoteError(RemoteServiceError):
    def __init__(self, status, body_excerpt=""):
        self.status = status
        self.body_excerpt = body_excerpt
        super().__init__(f"translation service error (status {status}): {body_excerpt[:200]}")


# rating / eval

class EmptyProduct(DataError):
    def __init__(self, product_id):
        self.product_id = product_id
        super().__init__(f"no classifications for product {product_id!r}")


class UnsupportedFormat(DataError):
    def __init__(self, fmt):
        self.fmt = fmt
        super().__init__(f"unsupported chart format {fmt!r}")


class EmptyInput(DataError):
    def __init__(self, what="input"):
        super().__init__(f"empty {what}")


class TotalMismatch(DataError):
    def __init__(self, total_a, total_b):
        self.totals = (total_a, total_b)
        super().__init__(f"summaries cover different totals: {total_a} vs {total_b}")
