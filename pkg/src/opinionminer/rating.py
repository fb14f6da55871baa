"""Per-product rating summaries and chart rendering.

Percentages are half-up rounded to one decimal from exact count ratios.
All chart output is deterministic byte-for-byte for a given summary.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .corpus import Polarity
from .errors import EmptyProduct, UnsupportedFormat
from .rounding import round_half_up

CHART_FORMATS = ("svg_bar", "svg_pie", "ascii")

_COLORS = {"positive": "#4caf50", "negative": "#e53935", "neutral": "#9e9e9e"}


@dataclass(frozen=True)
class RatingSummary:
    """Counts and percentages of one product's comment polarity.

    net_score ((positive - negative) / total, 3 decimals) is an
    auxiliary convenience field on top of the count/percentage summary.
    """

    product_id: str
    n_positive: int
    n_negative: int
    n_neutral: int
    total: int
    pct_positive: float
    pct_negative: float
    pct_neutral: float
    net_score: float

    @property
    def counts(self):
        return (self.n_positive, self.n_negative, self.n_neutral)


def make_summary(product_id, n_positive, n_negative, n_neutral):
    """Build a RatingSummary from raw counts."""
    total = n_positive + n_negative + n_neutral
    if total < 1:
        raise EmptyProduct(product_id)
    return RatingSummary(
        product_id=product_id,
        n_positive=n_positive,
        n_negative=n_negative,
        n_neutral=n_neutral,
        total=total,
        pct_positive=round_half_up(Fraction(100 * n_positive, total), 1),
        pct_negative=round_half_up(Fraction(100 * n_negative, total), 1),
        pct_neutral=round_half_up(Fraction(100 * n_neutral, total), 1),
        net_score=round_half_up(Fraction(n_positive - n_negative, total), 3),
    )


def summarize_product(classifications, product_id, noise_as_neutral=True):
    """Count a product's classifications by polarity.

    Noise-flagged units are counted as neutral (and reported separately
    by the pipeline) unless noise_as_neutral is off.
    """
    counts = {Polarity.POSITIVE: 0, Polarity.NEGATIVE: 0, Polarity.NEUTRAL: 0}
    matched = 0
    for cls in classifications:
        if cls.product_id != product_id:
            continue
        matched += 1
        if noise_as_neutral and cls.noise.is_noise:
            counts[Polarity.NEUTRAL] += 1
        else:
            counts[cls.polarity] += 1
    if not matched:
        raise EmptyProduct(product_id)
    return make_summary(
        product_id,
        counts[Polarity.POSITIVE],
        counts[Polarity.NEGATIVE],
        counts[Polarity.NEUTRAL],
    )


def summary_to_record(summary):
    """RatingSummary -> plain dict mirroring its fields."""
    return {
        "product_id": summary.product_id,
        "n_positive": summary.n_positive,
        "n_negative": summary.n_negative,
        "n_neutral": summary.n_neutral,
        "total": summary.total,
        "pct_positive": summary.pct_positive,
        "pct_negative": summary.pct_negative,
        "pct_neutral": summary.pct_neutral,
        "net_score": summary.net_score,
    }


def render_chart(summary, format="ascii"):
    """Render a summary as svg_bar, svg_pie, or an ascii table."""
    if format == "ascii":
        return _render_ascii(summary)
    if format == "svg_bar":
        return _render_svg_bar(summary)
    if format == "svg_pie":
        return _render_svg_pie(summary)
    raise UnsupportedFormat(format)


def _rows(summary):
    return (
        ("positive", summary.n_positive, summary.pct_positive),
        ("negative", summary.n_negative, summary.pct_negative),
        ("neutral", summary.n_neutral, summary.pct_neutral),
    )


def _render_ascii(summary):
    lines = [
        f"Product: {summary.product_id}",
        f"{'Class':<10}{'Comments':>10}  {'Percentage':>10}",
    ]
    for name, count, pct in _rows(summary):
        lines.append(f"{name:<10}{count:>10}  {pct:>8.1f} %")
    lines.append(f"{'total':<10}{summary.total:>10}")
    return "\n".join(lines) + "\n"


_SVG_HEADER = (
    '<?xml version="1.0" encoding="UTF-8"?>\n'
    '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
    'width="{w}" height="{h}" viewBox="0 0 {w} {h}">\n'
)


def _render_svg_bar(summary):
    width, height = 380, 240
    plot_h, base_y, bar_w = 170, 200, 70
    xs = (60, 160, 260)
    out = [_SVG_HEADER.format(w=width, h=height)]
    out.append(
        f'<text x="{width // 2}" y="18" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{_escape(summary.product_id)}'
        "</text>\n"
    )
    out.append(f'<line x1="40" y1="{base_y}" x2="{width - 20}" y2="{base_y}" stroke="#333"/>\n')
    for (name, count, _), x in zip(_rows(summary), xs):
        bar_h = plot_h * count / summary.total
        y = base_y - bar_h
        out.append(
            f'<rect x="{x}" y="{y:.2f}" width="{bar_w}" height="{bar_h:.2f}" '
            f'fill="{_COLORS[name]}"/>\n'
        )
        out.append(
            f'<text x="{x + bar_w // 2}" y="{base_y + 16}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{name}</text>\n'
        )
        out.append(
            f'<text x="{x + bar_w // 2}" y="{y - 4:.2f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{count}</text>\n'
        )
    out.append("</svg>\n")
    return "".join(out)


def _pie_point(cx, cy, r, angle_deg):
    rad = math.radians(angle_deg)
    return cx + r * math.cos(rad), cy + r * math.sin(rad)


def _render_svg_pie(summary):
    width, height = 340, 230
    cx, cy, r = 110, 115, 90
    out = [_SVG_HEADER.format(w=width, h=height)]
    angle = -90.0  # start at 12 o'clock, sweep clockwise
    for name, count, _ in _rows(summary):
        if count == 0:
            continue
        sweep = 360.0 * count / summary.total
        if count == summary.total:
            out.append(f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="{_COLORS[name]}"/>\n')
            angle += sweep
            continue
        x0, y0 = _pie_point(cx, cy, r, angle)
        x1, y1 = _pie_point(cx, cy, r, angle + sweep)
        large = 1 if sweep > 180.0 else 0
        out.append(
            f'<path d="M {cx} {cy} L {x0:.3f} {y0:.3f} '
            f'A {r} {r} 0 {large} 1 {x1:.3f} {y1:.3f} Z" fill="{_COLORS[name]}"/>\n'
        )
        angle += sweep
    legend_y = 40
    for name, count, pct in _rows(summary):
        out.append(
            f'<rect x="220" y="{legend_y - 10}" width="12" height="12" '
            f'fill="{_COLORS[name]}"/>\n'
        )
        out.append(
            f'<text x="238" y="{legend_y}" font-family="sans-serif" font-size="12">'
            f"{name}: {count} ({pct:.1f} %)</text>\n"
        )
        legend_y += 22
    out.append("</svg>\n")
    return "".join(out)


def _escape(text):
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )
