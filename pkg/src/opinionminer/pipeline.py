"""End-to-end orchestration: load/crawl -> translate -> classify ->
noise-filter -> rate -> evaluate, with deterministic report files.

Every stage also exists as a CLI subcommand over the same file formats,
so any stage can be rerun on its own.
"""

import json
import logging
import os
import re
from dataclasses import dataclass, field
from typing import Optional

from .corpus import Polarity, load_corpus
from .errors import ConfigError, OpinionMinerError
from .evaluation import (
    build_contingency,
    compute_metrics,
    metrics_to_record,
    proportion_deviation,
)
from .ingest import ExtractionRules, FixtureFetcher, NetworkFetcher, crawl_product_page
from .nlp import pos_tag, split_sentences, tokenize
from .opinion import (
    CommentClassification,
    NoiseReason,
    NoiseVerdict,
    classify_comment,
    detect_noise,
    score_sentence,
)
from .rating import render_chart, summarize_product, summary_to_record
from .resources import (
    default_gloss_dictionary,
    default_noise_keywords,
    default_opinion_lexicon,
    default_tag_lexicon,
)
from .translate import TranslatorConfig, load_gloss_dictionary, translate_batch
from .nlp import load_tag_lexicon
from .opinion import load_noise_keywords, load_opinion_lexicon

log = logging.getLogger(__name__)


@dataclass
class PipelineConfig:
    """Declarative configuration for the full pipeline run."""

    corpus_path: Optional[str] = None
    out_dir: str = "out"
    gloss_dictionary: Optional[str] = None
    tag_lexicon: Optional[str] = None
    opinion_lexicon: Optional[str] = None
    noise_keywords: Optional[str] = None
    backend: str = "offline"
    endpoint_url: Optional[str] = None
    api_key_env: Optional[str] = None
    batch_size: int = 25
    mode: str = "aggregate"
    noise_filter: bool = True
    strict: bool = False
    # crawl stage (optional; used when corpus_path is not given)
    start_url: Optional[str] = None
    fixture_map: Optional[str] = None
    comment_selector: Optional[str] = None
    text_selector: Optional[str] = None
    next_page_selector: Optional[str] = None
    page_limit: int = 1
    product_id: Optional[str] = None
    timeout: float = 30.0
    user_agent: str = "opinionminer/0.1"

    def validate(self):
        if self.mode not in ("aggregate", "paper"):
            raise ConfigError(f"unknown classification mode {self.mode!r}")
        if self.backend not in ("offline", "remote"):
            raise ConfigError(f"unknown translator backend {self.backend!r}")
        if not self.corpus_path and not self.start_url:
            raise ConfigError("either corpus_path or start_url is required")
        if self.start_url and not self.comment_selector:
            raise ConfigError("crawling needs comment_selector")
        for name in ("corpus_path", "gloss_dictionary", "tag_lexicon",
                     "opinion_lexicon", "noise_keywords", "fixture_map"):
            path = getattr(self, name)
            if path is not None and not os.path.exists(path):
                raise ConfigError(f"{name} file not found: {path}")


class StageError(OpinionMinerError):
    """A pipeline stage failed; carries the stage name and the cause."""

    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage {stage!r} failed: {cause}")


def _load_resources(config):
    tag_lex = (
        load_tag_lexicon(config.tag_lexicon) if config.tag_lexicon
        else default_tag_lexicon()
    )
    opinion_lex = (
        load_opinion_lexicon(config.opinion_lexicon) if config.opinion_lexicon
        else default_opinion_lexicon()
    )
    keywords = (
        load_noise_keywords(config.noise_keywords) if config.noise_keywords
        else default_noise_keywords()
    )
    gloss = (
        load_gloss_dictionary(config.gloss_dictionary) if config.gloss_dictionary
        else default_gloss_dictionary()
    )
    return gloss, tag_lex, opinion_lex, keywords


def classify_batch(batch, tag_lexicon, opinion_lexicon, keywords, mode="aggregate"):
    """Classify every comment of a (translated) batch.

    aggregate mode yields one classification per comment; paper mode one
    per sentence, with unit ids `<comment_id>#s<n>`.
    """
    classifications = []
    for comment in batch:
        text = comment.translated_text if comment.translated_text is not None else comment.raw_text
        scores = [
            score_sentence(pos_tag(tokenize(s), tag_lexicon), opinion_lexicon)
            for s in split_sentences(text)
        ]
        noise = detect_noise(comment, keywords)
        if mode == "paper":
            polarities = classify_comment(scores, "paper")
            if not polarities:
                classifications.append(
                    CommentClassification(
                        comment_id=comment.id, product_id=comment.product_id,
                        sentence_scores=(), polarity=Polarity.NEUTRAL, noise=noise,
                    )
                )
                continue
            for idx, (score, polarity) in enumerate(zip(scores, polarities), start=1):
                classifications.append(
                    CommentClassification(
                        comment_id=f"{comment.id}#s{idx}", product_id=comment.product_id,
                        sentence_scores=(score,), polarity=polarity, noise=noise,
                    )
                )
        else:
            classifications.append(
                CommentClassification(
                    comment_id=comment.id, product_id=comment.product_id,
                    sentence_scores=tuple(scores),
                    polarity=classify_comment(scores, "aggregate"), noise=noise,
                )
            )
    return classifications


def effective_polarity(classification, noise_as_neutral=True):
    """Polarity used downstream: noise-flagged units count as neutral."""
    if noise_as_neutral and classification.noise.is_noise:
        return Polarity.NEUTRAL
    return classification.polarity


def classification_to_record(cls):
    return {
        "id": cls.comment_id,
        "product_id": cls.product_id,
        "polarity": cls.polarity.value,
        "net": sum(s.net for s in cls.sentence_scores),
        "noise": {
            "is_noise": cls.noise.is_noise,
            "reasons": [r.value for r in cls.noise.reasons],
        },
        "sentences": [
            {
                "net": s.net,
                "polarity": s.polarity.value,
                "opinion_words": [[w, v] for w, v in s.opinion_words],
            }
            for s in cls.sentence_scores
        ],
    }


def classification_from_record(obj):
    from .opinion import SentenceScore

    scores = []
    for s in obj.get("sentences", ()):
        words = tuple((w, v) for w, v in s.get("opinion_words", ()))
        pos = sum(1 for _, v in words if v > 0)
        neg = sum(1 for _, v in words if v < 0)
        scores.append(SentenceScore(opinion_words=words, pos_count=pos, neg_count=neg))
    reasons = tuple(NoiseReason(r) for r in obj["noise"]["reasons"])
    return CommentClassification(
        comment_id=obj["id"],
        product_id=obj["product_id"],
        sentence_scores=tuple(scores),
        polarity=Polarity(obj["polarity"]),
        noise=NoiseVerdict(is_noise=obj["noise"]["is_noise"], reasons=reasons),
    )


def write_classifications(classifications, path):
    with open(path, "w", encoding="utf-8") as fh:
        for cls in classifications:
            fh.write(_dumps(classification_to_record(cls)))
            fh.write("\n")


def read_classifications(path):
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                out.append(classification_from_record(json.loads(line)))
    return out


def _dumps(obj):
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, separators=(", ", ": "))


def _safe_name(product_id):
    return re.sub(r"[^\w.-]+", "_", product_id)


def evaluate_classifications(classifications, gold_by_unit, noise_as_neutral=True):
    """Contingency/metrics/deviation plus per-product predicted-vs-manual
    counts, over the units that carry gold labels."""
    pairs = []
    per_product = {}
    for cls in classifications:
        gold = gold_by_unit.get(cls.comment_id)
        if gold is None:
            continue
        predicted = effective_polarity(cls, noise_as_neutral)
        pairs.append((predicted, gold.polarity))
        bucket = per_product.setdefault(
            cls.product_id,
            {"predicted": dict.fromkeys(("positive", "negative", "neutral"), 0),
             "manual": dict.fromkeys(("positive", "negative", "neutral"), 0)},
        )
        bucket["predicted"][predicted.value] += 1
        bucket["manual"][gold.polarity.value] += 1
    if not pairs:
        return None
    contingency = build_contingency(pairs)
    metrics = compute_metrics(contingency)
    predicted_totals = [0, 0, 0]
    manual_totals = [0, 0, 0]
    for bucket in per_product.values():
        for idx, key in enumerate(("positive", "negative", "neutral")):
            predicted_totals[idx] += bucket["predicted"][key]
            manual_totals[idx] += bucket["manual"][key]
    deviation = proportion_deviation(tuple(predicted_totals), tuple(manual_totals))
    return {
        "n_evaluated": len(pairs),
        "contingency": {
            "tp": contingency.tp, "fp": contingency.fp,
            "fn": contingency.fn, "tn": contingency.tn,
        },
        "metrics": metrics_to_record(metrics),
        "deviation": {
            "positive": deviation.dev_positive,
            "negative": deviation.dev_negative,
            "neutral": deviation.dev_neutral,
            "average": deviation.average,
        },
        "per_product": [
            {"product_id": pid, **per_product[pid]} for pid in sorted(per_product)
        ],
    }


def _gold_index(batch, mode):
    """Map classification unit ids to gold labels (paper mode expands
    each comment's gold to all its sentence units)."""
    index = {}
    for comment in batch:
        if comment.gold is None:
            continue
        if mode == "paper":
            text = comment.translated_text if comment.translated_text is not None else comment.raw_text
            n = max(1, len(split_sentences(text)))
            if n == 1:
                index[f"{comment.id}#s1"] = comment.gold
                index[comment.id] = comment.gold
            else:
                for idx in range(1, n + 1):
                    index[f"{comment.id}#s{idx}"] = comment.gold
        else:
            index[comment.id] = comment.gold
    return index


def run_pipeline(config):
    """Run every stage per the config; returns the report-file paths."""
    config.validate()
    stage = "setup"
    try:
        gloss, tag_lex, opinion_lex, keywords = _load_resources(config)

        stage = "ingest"
        if config.corpus_path:
            batch = load_corpus(config.corpus_path, strict=config.strict)
        else:
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

        stage = "translate"
        translator = TranslatorConfig(
            backend=config.backend,
            endpoint_url=config.endpoint_url,
            api_key_env_name=config.api_key_env,
            batch_size=config.batch_size,
        )
        batch = translate_batch(batch, translator, dictionary=gloss)

        stage = "classify"
        classifications = classify_batch(
            batch, tag_lex, opinion_lex, keywords, mode=config.mode
        )

        stage = "rate"
        os.makedirs(config.out_dir, exist_ok=True)
        written = []
        written.append(_write_file(
            config.out_dir, "classifications.jsonl",
            "".join(_dumps(classification_to_record(c)) + "\n" for c in classifications),
        ))
        noise_lines = [
            f"{c.comment_id}\t{','.join(r.value for r in c.noise.reasons)}"
            for c in classifications if c.noise.is_noise
        ]
        written.append(_write_file(
            config.out_dir, "noise_report.txt",
            "".join(line + "\n" for line in noise_lines),
        ))
        product_ids = sorted({c.product_id for c in classifications})
        ratings = []
        for pid in product_ids:
            summary = summarize_product(
                classifications, pid, noise_as_neutral=config.noise_filter
            )
            ratings.append(summary)
            safe = _safe_name(pid)
            written.append(_write_file(
                config.out_dir, f"rating_{safe}.txt", render_chart(summary, "ascii")
            ))
            written.append(_write_file(
                config.out_dir, f"rating_{safe}_bar.svg", render_chart(summary, "svg_bar")
            ))
            written.append(_write_file(
                config.out_dir, f"rating_{safe}_pie.svg", render_chart(summary, "svg_pie")
            ))
        written.append(_write_file(
            config.out_dir, "ratings.jsonl",
            "".join(_dumps(summary_to_record(s)) + "\n" for s in ratings),
        ))

        stage = "evaluate"
        gold_index = _gold_index(batch, config.mode)
        report = evaluate_classifications(
            classifications, gold_index, noise_as_neutral=config.noise_filter
        )
        if report is not None:
            written.append(_write_file(
                config.out_dir, "evaluation.json", _dumps(report) + "\n"
            ))
    except OpinionMinerError as exc:
        raise StageError(stage, exc) from exc
    except OSError as exc:
        raise StageError(stage, exc) from exc
    return written


def _write_file(out_dir, name, content):
    path = os.path.join(out_dir, name)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(content)
    return path
