"""Prediction-vs-gold evaluation: contingency counts, precision/recall/F,
and proportion deviation between predicted and manual class shares.

The contingency's positive class is "opinionated" (positive or negative
polarity); by default the sign does not have to agree for a true
positive, only the opinionated-vs-neutral detection. A strict mode
requiring sign agreement is available behind a flag.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .corpus import Polarity
from .errors import EmptyInput, TotalMismatch
from .rounding import round_half_up


@dataclass(frozen=True)
class Contingency:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def n_pairs(self):
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class Metrics:
    """Precision/recall/F rounded to 3 decimals; None marks undefined
    (zero-denominator) values, rendered as "n/a"."""

    precision: Optional[float]
    recall: Optional[float]
    f_measure: Optional[float]


def _opinionated(polarity):
    return polarity is not Polarity.NEUTRAL


def build_contingency(pairs, strict_sign=False):
    """Bucket (predicted, actual) polarity pairs into TP/FP/FN/TN.

    tp: both opinionated (and same sign, if strict_sign); fp: predicted
    opinionated without a qualifying opinionated actual; fn: predicted
    neutral, actual opinionated; tn: both neutral.
    """
    pairs = list(pairs)
    if not pairs:
        raise EmptyInput("pair list")
    tp = fp = fn = tn = 0
    for predicted, actual in pairs:
        if _opinionated(predicted):
            match = _opinionated(actual) and (not strict_sign or predicted is actual)
            if match:
                tp += 1
            else:
                fp += 1
        elif _opinionated(actual):
            fn += 1
        else:
            tn += 1
    return Contingency(tp=tp, fp=fp, fn=fn, tn=tn)


def _ratio(numerator, denominator):
    if denominator == 0:
        return None
    return Fraction(numerator, denominator)


def compute_metrics(contingency):
    """Precision = tp/(tp+fp), recall = tp/(tp+fn), F = 2PR/(P+R).

    Any zero denominator makes that value undefined (None); F is
    undefined whenever either input is.
    """
    c = contingency
    precision = _ratio(c.tp, c.tp + c.fp)
    recall = _ratio(c.tp, c.tp + c.fn)
    f_measure = None
    if precision is not None and recall is not None and precision + recall > 0:
        f_measure = 2 * precision * recall / (precision + recall)
    return Metrics(
        precision=None if precision is None else round_half_up(precision, 3),
        recall=None if recall is None else round_half_up(recall, 3),
        f_measure=None if f_measure is None else round_half_up(f_measure, 3),
    )


@dataclass(frozen=True)
class DeviationReport:
    """Absolute per-class share differences (3 decimals) and their mean."""

    dev_positive: float
    dev_negative: float
    dev_neutral: float
    average: float


def _counts_of(summary_like):
    if hasattr(summary_like, "counts"):
        return tuple(summary_like.counts)
    counts = tuple(summary_like)
    if len(counts) != 3:
        raise ValueError("expected (positive, negative, neutral) counts")
    return counts


def proportion_deviation(predicted, manual):
    """Per-class |predicted share - manual share| over a common total.

    Accepts RatingSummary objects or (positive, negative, neutral)
    count triples. Shares are exact ratios; each deviation is rounded to
    3 decimals, the average is the mean of the unrounded deviations.
    """
    pred = _counts_of(predicted)
    man = _counts_of(manual)
    total_pred, total_man = sum(pred), sum(man)
    if total_pred != total_man:
        raise TotalMismatch(total_pred, total_man)
    if total_pred == 0:
        raise EmptyInput("count totals")
    devs = [abs(Fraction(p, total_pred) - Fraction(m, total_man)) for p, m in zip(pred, man)]
    return DeviationReport(
        dev_positive=round_half_up(devs[0], 3),
        dev_negative=round_half_up(devs[1], 3),
        dev_neutral=round_half_up(devs[2], 3),
        average=round_half_up(sum(devs) / 3, 3),
    )


def metrics_to_record(metrics):
    def render(value):
        return "n/a" if value is None else value

    return {
        "precision": render(metrics.precision),
        "recall": render(metrics.recall),
        "f_measure": render(metrics.f_measure),
    }
