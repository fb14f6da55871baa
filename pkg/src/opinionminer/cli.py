"""Command-line front end.

Subcommands mirror the pipeline stages (crawl, translate, classify,
rate, eval) plus `pipeline` for the whole flow. A flat key=value config
file supplies defaults; individual flags override it. Diagnostics go to
stderr; machine-readable output goes to files or stdout.

Exit codes: 0 success, 1 usage/config error, 2 data error, 3
remote-service error.
"""

import argparse
import json
import logging
import sys

from .corpus import load_corpus, write_corpus
from .errors import ConfigError, DataError, OpinionMinerError, RemoteServiceError
from .pipeline import (
    PipelineConfig,
    StageError,
    classify_batch,
    evaluate_classifications,
    read_classifications,
    run_pipeline,
    write_classifications,
    _dumps,
    _gold_index,
    _load_resources,
    _safe_name,
    _write_file,
)
from .rating import CHART_FORMATS, render_chart, summarize_product, summary_to_record
from .translate import TranslatorConfig, translate_batch

log = logging.getLogger(__name__)

USAGE_EXIT = 1
DATA_EXIT = 2
REMOTE_EXIT = 3

_BOOL_VALUES = {"true": True, "1": True, "yes": True, "on": True,
                "false": False, "0": False, "no": False, "off": False}

_CONFIG_KEYS = {
    "corpus": str, "corpus_path": str, "out_dir": str,
    "gloss_dictionary": str, "tag_lexicon": str, "opinion_lexicon": str,
    "noise_keywords": str, "backend": str, "endpoint_url": str,
    "api_key_env": str, "batch_size": int, "mode": str,
    "noise_filter": bool, "strict": bool, "start_url": str,
    "fixture_map": str, "comment_selector": str, "text_selector": str,
    "next_page_selector": str, "page_limit": int, "product_id": str,
    "timeout": float, "user_agent": str,
}


class _Parser(argparse.ArgumentParser):
    # usage problems are exit code 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def load_config_file(path):
    """Parse a flat key=value config file (# comments, blank lines ok)."""
    values = {}
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    with fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{line_no}: expected key=value")
            key, _, raw = line.partition("=")
            key = key.strip()
            raw = raw.strip()
            if key not in _CONFIG_KEYS:
                raise ConfigError(f"{path}:{line_no}: unknown key {key!r}")
            kind = _CONFIG_KEYS[key]
            if kind is bool:
                if raw.lower() not in _BOOL_VALUES:
                    raise ConfigError(f"{path}:{line_no}: bad boolean {raw!r}")
                values[key] = _BOOL_VALUES[raw.lower()]
            else:
                try:
                    values[key] = kind(raw)
                except ValueError as exc:
                    raise ConfigError(f"{path}:{line_no}: {exc}") from exc
    if "corpus" in values:
        values["corpus_path"] = values.pop("corpus")
    return values


def _merge_config(args):
    values = load_config_file(args.config) if args.config else {}
    for key in _CONFIG_KEYS:
        if key == "corpus":
            continue
        arg_val = getattr(args, key, None)
        if arg_val is not None:
            values[key] = arg_val
    known = {f for f in PipelineConfig.__dataclass_fields__}
    return PipelineConfig(**{k: v for k, v in values.items() if k in known})


def _add_common(parser):
    parser.add_argument("--config", help="flat key=value config file")
    parser.add_argument("--gloss-dictionary", dest="gloss_dictionary", metavar="TSV")
    parser.add_argument("--tag-lexicon", dest="tag_lexicon", metavar="TSV")
    parser.add_argument("--opinion-lexicon", dest="opinion_lexicon", metavar="TSV")
    parser.add_argument("--noise-keywords", dest="noise_keywords", metavar="FILE")


def build_parser():
    parser = _Parser(prog="opinionminer",
                     description="Mine product-comment polarity from Roman Urdu reviews.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("crawl", parents=[], help="extract comments from product pages")
    _add_common(p)
    p.add_argument("--start-url", dest="start_url")
    p.add_argument("--fixture-map", dest="fixture_map",
                   help="url<TAB>file map for offline fetching")
    p.add_argument("--comment-selector", dest="comment_selector")
    p.add_argument("--text-selector", dest="text_selector")
    p.add_argument("--next-page-selector", dest="next_page_selector")
    p.add_argument("--page-limit", dest="page_limit", type=int)
    p.add_argument("--product-id", dest="product_id")
    p.add_argument("--timeout", dest="timeout", type=float)
    p.add_argument("--user-agent", dest="user_agent")
    p.add_argument("-o", "--out", required=True, help="corpus file to write")

    p = sub.add_parser("translate", help="fill translated_text on a corpus")
    _add_common(p)
    p.add_argument("-i", "--in", dest="input", required=True)
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--backend", choices=("offline", "remote"))
    p.add_argument("--endpoint-url", dest="endpoint_url")
    p.add_argument("--api-key-env", dest="api_key_env")
    p.add_argument("--batch-size", dest="batch_size", type=int)
    p.add_argument("--retranslate", action="store_true",
                   help="also re-translate comments that already have a translation")

    p = sub.add_parser("classify", help="classify a translated corpus")
    _add_common(p)
    p.add_argument("-i", "--in", dest="input", required=True)
    p.add_argument("-o", "--out", required=True, help="classifications JSONL to write")
    p.add_argument("--mode", choices=("aggregate", "paper"))
    p.add_argument("--strict", action="store_const", const=True, default=None,
                   help="abort on malformed corpus lines")

    p = sub.add_parser("rate", help="summarize classifications into ratings/charts")
    _add_common(p)
    p.add_argument("-i", "--in", dest="input", required=True,
                   help="classifications JSONL")
    p.add_argument("-d", "--out-dir", dest="out_dir")
    p.add_argument("--no-noise-filter", dest="noise_filter",
                   action="store_const", const=False, default=None,
                   help="count noise-flagged comments by their lexicon polarity")
    p.add_argument("--formats", default="ascii,svg_bar,svg_pie",
                   help="comma-separated subset of ascii,svg_bar,svg_pie")

    p = sub.add_parser("eval", help="score classifications against gold labels")
    _add_common(p)
    p.add_argument("--classifications", required=True)
    p.add_argument("--corpus", dest="corpus_path", required=True)
    p.add_argument("--mode", choices=("aggregate", "paper"))
    p.add_argument("--no-noise-filter", dest="noise_filter",
                   action="store_const", const=False, default=None)
    p.add_argument("-o", "--out", help="report file (default: stdout)")

    p = sub.add_parser("pipeline", help="run every stage end to end")
    _add_common(p)
    p.add_argument("--corpus", dest="corpus_path")
    p.add_argument("-d", "--out-dir", dest="out_dir")
    p.add_argument("--mode", choices=("aggregate", "paper"))
    p.add_argument("--backend", choices=("offline", "remote"))
    p.add_argument("--endpoint-url", dest="endpoint_url")
    p.add_argument("--api-key-env", dest="api_key_env")
    p.add_argument("--batch-size", dest="batch_size", type=int)
    p.add_argument("--no-noise-filter", dest="noise_filter",
                   action="store_const", const=False, default=None)
    p.add_argument("--strict", action="store_const", const=True, default=None)
    p.add_argument("--start-url", dest="start_url")
    p.add_argument("--fixture-map", dest="fixture_map")
    p.add_argument("--comment-selector", dest="comment_selector")
    p.add_argument("--text-selector", dest="text_selector")
    p.add_argument("--next-page-selector", dest="next_page_selector")
    p.add_argument("--page-limit", dest="page_limit", type=int)
    p.add_argument("--product-id", dest="product_id")

    return parser


def _cmd_crawl(args):
    config = _merge_config(args)
    config.corpus_path = None
    config.validate()
    from .ingest import ExtractionRules, FixtureFetcher, NetworkFetcher, crawl_product_page

    rules = ExtractionRules(
        comment_selector=config.comment_selector,
        text_selector=config.text_selector,
        next_page_selector=config.next_page_selector,
    )
    if config.fixture_map:
        fetcher = FixtureFetcher.from_map_file(config.fixture_map)
    else:
        fetcher = NetworkFetcher(timeout=config.timeout, user_agent=config.user_agent)
    batch = crawl_product_page(
        config.start_url, rules, fetcher,
        page_limit=config.page_limit, product_id=config.product_id,
    )
    write_corpus(batch, args.out)
    log.info("crawled %d comments from %s", len(batch), config.start_url)
    return 0


def _cmd_translate(args):
    config = _merge_config(args)
    gloss, _, _, _ = _load_resources(config)
    batch = load_corpus(args.input, strict=config.strict)
    translator = TranslatorConfig(
        backend=config.backend,
        endpoint_url=config.endpoint_url,
        api_key_env_name=config.api_key_env,
        batch_size=config.batch_size,
        skip_translated=not args.retranslate,
    )
    write_corpus(translate_batch(batch, translator, dictionary=gloss), args.out)
    return 0


def _cmd_classify(args):
    config = _merge_config(args)
    _, tag_lex, opinion_lex, keywords = _load_resources(config)
    batch = load_corpus(args.input, strict=config.strict)
    classifications = classify_batch(
        batch, tag_lex, opinion_lex, keywords, mode=config.mode
    )
    write_classifications(classifications, args.out)
    return 0


def _cmd_rate(args):
    config = _merge_config(args)
    classifications = read_classifications(args.input)
    if not classifications:
        raise DataError("no classifications to rate")
    formats = [f.strip() for f in args.formats.split(",") if f.strip()]
    for fmt in formats:
        if fmt not in CHART_FORMATS:
            raise ConfigError(f"unknown chart format {fmt!r}")
    import os

    os.makedirs(config.out_dir, exist_ok=True)
    summaries = []
    for pid in sorted({c.product_id for c in classifications}):
        summary = summarize_product(
            classifications, pid, noise_as_neutral=config.noise_filter
        )
        summaries.append(summary)
        safe = _safe_name(pid)
        suffix = {"ascii": ".txt", "svg_bar": "_bar.svg", "svg_pie": "_pie.svg"}
        for fmt in formats:
            _write_file(config.out_dir, f"rating_{safe}{suffix[fmt]}",
                        render_chart(summary, fmt))
    _write_file(config.out_dir, "ratings.jsonl",
                "".join(_dumps(summary_to_record(s)) + "\n" for s in summaries))
    return 0


def _cmd_eval(args):
    config = _merge_config(args)
    classifications = read_classifications(args.classifications)
    batch = load_corpus(config.corpus_path, strict=config.strict)
    gold_index = _gold_index(batch, config.mode)
    report = evaluate_classifications(
        classifications, gold_index, noise_as_neutral=config.noise_filter
    )
    if report is None:
        raise DataError("no gold labels found in corpus")
    payload = _dumps(report) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return 0


def _cmd_pipeline(args):
    config = _merge_config(args)
    written = run_pipeline(config)
    log.info("wrote %d report files to %s", len(written), config.out_dir)
    return 0


_COMMANDS = {
    "crawl": _cmd_crawl,
    "translate": _cmd_translate,
    "classify": _cmd_classify,
    "rate": _cmd_rate,
    "eval": _cmd_eval,
    "pipeline": _cmd_pipeline,
}


def _exit_code_for(exc):
    if isinstance(exc, StageError):
        exc = exc.cause
    if isinstance(exc, ConfigError):
        return USAGE_EXIT
    if isinstance(exc, RemoteServiceError):
        return REMOTE_EXIT
    return DATA_EXIT


def main(argv=None):
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (OpinionMinerError, OSError, json.JSONDecodeError) as exc:
        print(f"opinionminer: error: {exc}", file=sys.stderr)
        return _exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())
